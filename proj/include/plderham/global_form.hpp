#pragma once

#include <map>

#include "plderham/polyform.hpp"
#include "plderham/simplicial.hpp"

namespace plderham {

// Element of A^qX (sparse): a face/degeneracy-compatible assignment of a
// ∇(dim σ, q) form to each non-degenerate simplex σ, zero entries omitted.
// Values on degenerate simplices are derived through the degeneracy word,
// never stored.
class GlobalForm {
 public:
  GlobalForm() = default;
  GlobalForm(SimplicialSetPtr host, int degree);
  static GlobalForm constant(SimplicialSetPtr host, const Rational& c);

  const SimplicialSetPtr& host() const { return host_; }
  int degree() const { return q_; }
  bool is_zero() const { return values_.empty(); }
  const std::map<SimplexRef, PolyForm>& values() const { return values_; }
  PolyForm value_at(SimplexRef s) const;
  PolyForm value_at_ptr(const SimplexPtr& x) const;  // degeneracy transport
  void set_value(SimplexRef s, PolyForm w);
  int max_coeff_degree() const;  // -1 when zero

  GlobalForm operator+(const GlobalForm& o) const;
  GlobalForm operator-(const GlobalForm& o) const;
  GlobalForm operator-() const;
  GlobalForm scaled(const Rational& c) const;
  GlobalForm wedge(const GlobalForm& o) const;
  GlobalForm d() const;

  // Face compatibility on every simplex of the host; empty = valid.
  std::vector<std::string> validate() const;
  bool vanishes_on(const SubSet& k) const;

  // Restriction along the inclusion of a subcomplex.
  GlobalForm restrict_to(const SubComplex& sc) const;
  // Contravariant transport along an arbitrary simplicial map (f^*ω)|σ = ω|f(σ).
  GlobalForm pullback(const SimplicialMap& f) const;

  bool operator==(const GlobalForm& o) const;

 private:
  void check_host(const GlobalForm& o) const;
  SimplicialSetPtr host_;
  int q_ = 0;
  std::map<SimplexRef, PolyForm> values_;
};

// Pullback of a compactly supported form along a proper map. The properness
// report acts as the gate demanded by the theory; a non-proper verdict is
// rejected.
GlobalForm pullback_compact(const GlobalForm& w, const SimplicialMap& f,
                            const ProperReport& properness);

struct SupportResult {
  SubSet support;        // face closure of all simplices with nonzero value
  bool compact = true;   // false: "not compactly supported at truncation"
  int truncation = -1;
};

// Support of a form on a finite host (always compact).
SupportResult support(const GlobalForm& w);

// Support at a truncation level of an exhaustion: indeterminate when the
// support touches simplices that acquire new cofaces at the next level.
SupportResult support_truncated(const GlobalForm& w, const Exhaustion& ex, int level);

}  // namespace plderham
