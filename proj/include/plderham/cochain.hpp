#pragma once

#include <functional>
#include <map>
#include <optional>

#include "plderham/linalg.hpp"
#include "plderham/simplicial.hpp"

namespace plderham {

// Finite graded complex over Q with differentials raising degree by one.
// d[q] maps degree q to degree q+1 (a dims[q+1] × dims[q] matrix); the top
// differential is the zero map with no rows.
struct ChainComplexQ {
  std::vector<int> dims;
  std::vector<SparseMatrix> d;
  int top() const { return static_cast<int>(dims.size()) - 1; }
  std::vector<std::string> check_d2() const;  // empty = d∘d = 0
};

// Exact-rational cohomology with deterministic representatives: canonical
// kernel bases, image bases from the unique RREF, greedy completion of the
// image to the kernel in basis order.
class Cohomology {
 public:
  explicit Cohomology(ChainComplexQ c);

  const ChainComplexQ& complex() const { return c_; }
  int top() const { return c_.top(); }
  int betti(int q) const;
  std::vector<int> betti_vector() const;
  const std::vector<SparseVec>& reps(int q) const;

  struct Reduction {
    std::vector<Rational> coords;   // class in the representative basis
    std::vector<Rational> witness;  // c with z = Σ coords·reps + d(c)
  };
  // nullopt when z is not a cocycle of the complex.
  std::optional<Reduction> reduce(int q, const std::vector<Rational>& z) const;

 private:
  ChainComplexQ c_;
  std::vector<std::vector<SparseVec>> reps_;
  std::vector<SparseMatrix> solver_;  // [reps | d_{q-1}] per degree
};

// Matrix of a map on cohomology: push(rep) produces the target-complex chain
// vector of each source representative; entries are target classes.
SparseMatrix induced_on_cohomology(
    const Cohomology& src, const Cohomology& dst, int q,
    const std::function<std::vector<Rational>(const SparseVec&)>& push);

bool is_iso(const SparseMatrix& m);
SparseMatrix inverse_of(const SparseMatrix& m);  // m must be invertible

// ---- cochain complexes of simplicial sets ----

struct NormalizedBasis {
  std::vector<std::vector<SimplexRef>> refs;  // per degree
  std::vector<std::vector<int>> index_of;     // host index -> basis index or -1
  int top() const { return static_cast<int>(refs.size()) - 1; }
};

// Normalized cochains NC^*(X) or NC^*(X, A): the basis consists of the
// non-degenerate simplices (outside A), the differential is the alternating
// sum of faces with degenerate faces dropped.
ChainComplexQ normalized_cochains(const SimplicialSetPtr& x, const SubSet* rel,
                                  NormalizedBasis* basis_out = nullptr);

struct FullBasis {
  std::vector<std::vector<SimplexPtr>> elems;   // per degree, incl. degenerates
  std::vector<std::map<SimplexPtr, int>> index_of;
};

// Full cochains C^* including degenerate simplices, truncated at top_degree.
// Cohomology in degrees < top_degree is unaffected by the truncation.
ChainComplexQ full_cochains(const SimplicialSetPtr& x, int top_degree,
                            FullBasis* basis_out = nullptr);

// Alexander-Whitney cup product on normalized cochains.
std::vector<Rational> cup(const SimplicialSetPtr& x, const NormalizedBasis& basis,
                          int r, const std::vector<Rational>& alpha, int s,
                          const std::vector<Rational>& beta);

// f^*: NC^*(target) -> NC^*(source), per degree.
std::vector<SparseMatrix> pullback_cochain_matrices(const SimplicialMap& f,
                                                    const NormalizedBasis& src_basis,
                                                    const NormalizedBasis& dst_basis);

}  // namespace plderham
