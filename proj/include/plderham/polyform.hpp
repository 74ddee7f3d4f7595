#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "plderham/polynomial.hpp"

namespace plderham {

// Element of ∇(p,q): polynomial differential q-form on the standard
// p-simplex in affine coordinates t1..tp (t0 eliminated). Terms are keyed by
// strictly increasing 0-based index sets I (dt_{i+1} for i in I) with
// polynomial coefficients; zero coefficients are pruned. ∇(p,q) = 0 for
// q > p or q < 0 by construction.
class PolyForm {
 public:
  PolyForm() = default;
  PolyForm(int p, int q);

  static PolyForm from_polynomial(int p, const Polynomial& f);  // q = 0
  static PolyForm constant(int p, const Rational& c);
  static PolyForm dt(int p, int k);  // k 0-based: the 1-form dt_{k+1}

  int simplex_dim() const { return p_; }
  int degree() const { return q_; }
  bool is_zero() const { return terms_.empty(); }
  int max_coeff_degree() const;  // -1 when zero
  const std::map<std::vector<int>, Polynomial>& terms() const { return terms_; }
  Polynomial coefficient(const std::vector<int>& index_set) const;
  void set_term(const std::vector<int>& index_set, Polynomial f);

  PolyForm operator+(const PolyForm& o) const;
  PolyForm operator-(const PolyForm& o) const;
  PolyForm operator-() const;
  PolyForm scaled(const Rational& c) const;
  PolyForm wedge(const PolyForm& o) const;

  PolyForm d() const;
  // Pullback along the i-th coface: ∇(p,q) → ∇(p-1,q).
  PolyForm face(int i) const;
  // Pullback along the j-th codegeneracy: ∇(p,q) → ∇(p+1,q).
  PolyForm degeneracy(int j) const;
  // Alternating sum of faces Σ(-1)^i ∂_i; requires p >= 1.
  PolyForm total_boundary() const;
  // Exact integral over |Δ^p| for top forms (q == p).
  Rational integrate() const;

  // Pullback along the affine-coordinate map sending t_{k+1} to images[k];
  // differentials transform by the map's derivative.
  PolyForm pullback(const std::vector<Polynomial>& images, int target_p) const;

  std::string to_string() const;

  bool operator==(const PolyForm& o) const = default;

 private:
  int p_ = 0;
  int q_ = 0;
  std::map<std::vector<int>, Polynomial> terms_;
};

struct IncompatibleFaces : std::invalid_argument {
  IncompatibleFaces(int i, int j)
      : std::invalid_argument("incompatible faces at pair (" + std::to_string(i) +
                              "," + std::to_string(j) + ")"),
        i(i),
        j(j) {}
  int i, j;
};

// Whether (w_0..w_p) satisfies ∂_i w_j = ∂_{j-1} w_i for all i < j.
void check_extension_input(const std::vector<PolyForm>& faces);

// The extension operator E: given compatible faces w_0..w_p in ∇(p-1,q),
// produce ω in ∇(p,q) with ∂_i ω = w_i for all i. Implemented as a linear
// solve over the unknown coefficients with a degree bound that starts at
// (max input coefficient degree)+1 and grows until solvable; with columns in
// degree-major order and the canonical free-variables-zero solution the
// resulting operator is linear, so E(w)+E(w') = E(w+w') holds exactly.
PolyForm extend(const std::vector<PolyForm>& faces);

}  // namespace plderham
