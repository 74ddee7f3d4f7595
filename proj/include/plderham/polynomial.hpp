#pragma once

#include <map>
#include <string>
#include <vector>

#include "plderham/rational.hpp"

namespace plderham {

// Multivariate polynomial over Q in a fixed number of variables. Variables
// are 0-based internally and print as t1..tp. Terms are kept in a sorted map
// with zero coefficients pruned, so equal polynomials compare equal.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int k);
  static Polynomial monomial(int nvars, Exponents e, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  Rational coefficient(const Exponents& e) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;

  Polynomial derivative(int var) const;
  Polynomial antiderivative(int var) const;
  // Substitute variable k by images[k]; images share a common variable count.
  // target_nvars is only needed when there are no images to infer it from.
  Polynomial substitute(const std::vector<Polynomial>& images,
                        int target_nvars = -1) const;
  Rational evaluate(const std::vector<Rational>& point) const;

  std::string to_string(const std::string& var_prefix = "t") const;

  bool operator==(const Polynomial& o) const = default;

 private:
  void add_term(const Exponents& e, const Rational& c);
  int nvars_ = 0;
  std::map<Exponents, Rational> terms_;
};

// All exponent vectors of the given length with total degree <= maxdeg,
// sorted by (total degree, lexicographic). Degree-major order matters for
// the extension operator's stability across degree bounds.
std::vector<Polynomial::Exponents> monomials_up_to(int nvars, int maxdeg);

}  // namespace plderham
