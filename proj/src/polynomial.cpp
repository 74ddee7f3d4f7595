#include "plderham/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace plderham {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int k) {
  if (k < 0 || k >= nvars) throw std::out_of_range("variable index");
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[k] = 1;
  p.add_term(e, Rational(1));
  return p;
}

Polynomial Polynomial::monomial(int nvars, Exponents e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars)
    throw std::invalid_argument("monomial exponent length");
  for (int x : e)
    if (x < 0) throw std::invalid_argument("negative exponent");
  Polynomial p(nvars);
  p.add_term(e, c);
  return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (plderham::is_zero(c)) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (plderham::is_zero(it->second)) terms_.erase(it);
  }
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("nvars mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("nvars mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r -= o;
  return r;
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("nvars mismatch");
  Polynomial r(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(nvars_);
      for (int k = 0; k < nvars_; ++k) e[k] = ea[k] + eb[k];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(nvars_);
  if (plderham::is_zero(c)) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw std::out_of_range("derivative variable");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents e2 = e;
    e2[var] -= 1;
    r.add_term(e2, c * e[var]);
  }
  return r;
}

Polynomial Polynomial::antiderivative(int var) const {
  if (var < 0 || var >= nvars_) throw std::out_of_range("antiderivative variable");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents e2 = e;
    e2[var] += 1;
    r.add_term(e2, c / e2[var]);
  }
  return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images,
                                  int target_nvars) const {
  if (static_cast<int>(images.size()) != nvars_)
    throw std::invalid_argument("substitute: image count mismatch");
  int target_vars = nvars_ == 0 ? std::max(target_nvars, 0) : images[0].nvars();
  if (target_nvars >= 0 && target_vars != target_nvars)
    throw std::invalid_argument("substitute: target nvars mismatch");
  for (const auto& img : images)
    if (img.nvars() != target_vars)
      throw std::invalid_argument("substitute: inconsistent image nvars");

  // Power tables per variable, built to the maximum exponent used.
  std::vector<int> max_exp(nvars_, 0);
  for (const auto& [e, c] : terms_)
    for (int k = 0; k < nvars_; ++k) max_exp[k] = std::max(max_exp[k], e[k]);
  std::vector<std::vector<Polynomial>> powers(nvars_);
  for (int k = 0; k < nvars_; ++k) {
    powers[k].push_back(Polynomial::constant(target_vars, Rational(1)));
    for (int e = 1; e <= max_exp[k]; ++e)
      powers[k].push_back(powers[k].back() * images[k]);
  }

  Polynomial r(target_vars);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(target_vars, c);
    for (int k = 0; k < nvars_; ++k)
      if (e[k] > 0) term = term * powers[k][e[k]];
    r += term;
  }
  return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw std::invalid_argument("evaluate: point size mismatch");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int k = 0; k < nvars_; ++k)
      for (int i = 0; i < e[k]; ++i) t *= point[k];
    acc += t;
  }
  return acc;
}

std::string Polynomial::to_string(const std::string& var_prefix) const {
  if (terms_.empty()) return "0";
  // Canonical order: total degree, then lexicographic exponents.
  std::vector<std::pair<Exponents, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.first.begin(), a.first.end(), 0);
    int db = std::accumulate(b.first.begin(), b.first.end(), 0);
    if (da != db) return da < db;
    return a.first < b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : sorted) {
    Rational a = c;
    if (first) {
      if (sgn(a) < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    bool has_vars = std::accumulate(e.begin(), e.end(), 0) > 0;
    if (!has_vars) {
      os << a.get_str();
    } else {
      bool coeff_shown = (a != 1);
      if (coeff_shown) os << a.get_str();
      bool first_var = true;
      for (size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (coeff_shown || !first_var) os << "*";
        os << var_prefix << (k + 1);
        if (e[k] > 1) os << "^" << e[k];
        first_var = false;
      }
    }
  }
  return os.str();
}

std::vector<Polynomial::Exponents> monomials_up_to(int nvars, int maxdeg) {
  std::vector<Polynomial::Exponents> out;
  if (maxdeg < 0) return out;
  Polynomial::Exponents cur(nvars, 0);
  // Enumerate lexicographically within each total degree.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == nvars) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur[pos] = e;
      self(self, pos + 1, remaining - e);
    }
    cur[pos] = 0;
  };
  for (int d = 0; d <= maxdeg; ++d) {
    if (nvars == 0) {
      if (d == 0) out.push_back(cur);
      continue;
    }
    rec(rec, 0, d);
  }
  return out;
}

}  // namespace plderham
