#include "plderham/polyform.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "plderham/linalg.hpp"

namespace plderham {

PolyForm::PolyForm(int p, int q) : p_(p), q_(q) {
  if (p < 0 || q < 0) throw std::invalid_argument("PolyForm: negative p or q");
}

PolyForm PolyForm::from_polynomial(int p, const Polynomial& f) {
  if (f.nvars() != p) throw std::invalid_argument("from_polynomial: nvars != p");
  PolyForm w(p, 0);
  w.set_term({}, f);
  return w;
}

PolyForm PolyForm::constant(int p, const Rational& c) {
  return from_polynomial(p, Polynomial::constant(p, c));
}

PolyForm PolyForm::dt(int p, int k) {
  if (k < 0 || k >= p) throw std::out_of_range("dt index");
  PolyForm w(p, 1);
  w.set_term({k}, Polynomial::constant(p, Rational(1)));
  return w;
}

int PolyForm::max_coeff_degree() const {
  int d = -1;
  for (const auto& [idx, f] : terms_) d = std::max(d, f.total_degree());
  return d;
}

Polynomial PolyForm::coefficient(const std::vector<int>& index_set) const {
  auto it = terms_.find(index_set);
  return it == terms_.end() ? Polynomial(p_) : it->second;
}

void PolyForm::set_term(const std::vector<int>& index_set, Polynomial f) {
  if (static_cast<int>(index_set.size()) != q_)
    throw std::invalid_argument("set_term: wrong index set size");
  for (size_t k = 0; k < index_set.size(); ++k) {
    if (index_set[k] < 0 || index_set[k] >= p_)
      throw std::out_of_range("set_term: index out of range");
    if (k > 0 && index_set[k] <= index_set[k - 1])
      throw std::invalid_argument("set_term: indices not strictly increasing");
  }
  if (f.nvars() != p_) throw std::invalid_argument("set_term: nvars mismatch");
  if (f.is_zero())
    terms_.erase(index_set);
  else
    terms_.insert_or_assign(index_set, std::move(f));
}

PolyForm PolyForm::operator+(const PolyForm& o) const {
  if (p_ != o.p_ || q_ != o.q_) throw std::invalid_argument("form shape mismatch");
  PolyForm r = *this;
  for (const auto& [idx, f] : o.terms_) {
    auto it = r.terms_.find(idx);
    if (it == r.terms_.end()) {
      r.terms_.emplace(idx, f);
    } else {
      it->second += f;
      if (it->second.is_zero()) r.terms_.erase(it);
    }
  }
  return r;
}

PolyForm PolyForm::operator-(const PolyForm& o) const { return *this + (-o); }

PolyForm PolyForm::operator-() const { return scaled(Rational(-1)); }

PolyForm PolyForm::scaled(const Rational& c) const {
  PolyForm r(p_, q_);
  if (plderham::is_zero(c)) return r;
  for (const auto& [idx, f] : terms_) r.terms_.emplace(idx, f.scaled(c));
  return r;
}

namespace {

// Merge two strictly increasing index sets; returns the permutation sign of
// the shuffle, or 0 if they intersect.
int merge_index_sets(const std::vector<int>& a, const std::vector<int>& b,
                     std::vector<int>& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  int inversions = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      // b[j] moves past the remaining elements of a.
      inversions += static_cast<int>(a.size() - i);
      out.push_back(b[j++]);
    } else {
      return 0;  // shared index
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

PolyForm PolyForm::wedge(const PolyForm& o) const {
  if (p_ != o.p_) throw std::invalid_argument("wedge: simplex dimension mismatch");
  PolyForm r(p_, q_ + o.q_);
  if (q_ + o.q_ > p_) return r;  // ∇(p,q) = 0 above the top degree
  std::vector<int> merged;
  for (const auto& [ia, fa] : terms_) {
    for (const auto& [ib, fb] : o.terms_) {
      int sign = merge_index_sets(ia, ib, merged);
      if (sign == 0) continue;
      Polynomial prod = fa * fb;
      if (sign < 0) prod = -prod;
      auto it = r.terms_.find(merged);
      if (it == r.terms_.end()) {
        if (!prod.is_zero()) r.terms_.emplace(merged, std::move(prod));
      } else {
        it->second += prod;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

PolyForm PolyForm::d() const {
  PolyForm r(p_, q_ + 1);
  if (q_ + 1 > p_) return r;
  for (const auto& [idx, f] : terms_) {
    for (int k = 0; k < p_; ++k) {
      Polynomial df = f.derivative(k);
      if (df.is_zero()) continue;
      // dt_k ∧ dt_idx with k inserted in sorted position.
      auto pos = std::lower_bound(idx.begin(), idx.end(), k);
      if (pos != idx.end() && *pos == k) continue;
      int before = static_cast<int>(pos - idx.begin());
      if (before % 2 == 1) df = -df;
      std::vector<int> idx2 = idx;
      idx2.insert(idx2.begin() + before, k);
      auto it = r.terms_.find(idx2);
      if (it == r.terms_.end()) {
        r.terms_.emplace(std::move(idx2), std::move(df));
      } else {
        it->second += df;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

PolyForm PolyForm::pullback(const std::vector<Polynomial>& images, int target_p) const {
  if (static_cast<int>(images.size()) != p_)
    throw std::invalid_argument("pullback: image count mismatch");
  for (const auto& img : images)
    if (img.nvars() != target_p)
      throw std::invalid_argument("pullback: image nvars mismatch");

  // d(images[k]) as 1-forms on the target simplex.
  std::vector<PolyForm> dimg;
  dimg.reserve(p_);
  for (int k = 0; k < p_; ++k) {
    PolyForm w(target_p, 1);
    for (int j = 0; j < target_p; ++j) {
      Polynomial der = images[k].derivative(j);
      if (!der.is_zero()) w.set_term({j}, std::move(der));
    }
    dimg.push_back(std::move(w));
  }

  PolyForm r(target_p, q_);
  for (const auto& [idx, f] : terms_) {
    PolyForm term = PolyForm::from_polynomial(target_p, f.substitute(images, target_p));
    for (int k : idx) term = term.wedge(dimg[k]);
    r = r + term;
  }
  return r;
}

PolyForm PolyForm::face(int i) const {
  if (i < 0 || i > p_) throw std::out_of_range("face index");
  if (p_ == 0) throw std::invalid_argument("face of a 0-simplex form");
  int tp = p_ - 1;
  std::vector<Polynomial> images;
  images.reserve(p_);
  if (i == 0) {
    // t1 -> 1 - u1 - ... - u_{p-1}; t_j -> u_{j-1} for j >= 2.
    Polynomial img0 = Polynomial::constant(tp, Rational(1));
    for (int w = 0; w < tp; ++w) img0 -= Polynomial::variable(tp, w);
    images.push_back(std::move(img0));
    for (int v = 1; v < p_; ++v) images.push_back(Polynomial::variable(tp, v - 1));
  } else {
    // t_j -> u_j (j < i), t_i -> 0, t_j -> u_{j-1} (j > i), 1-based.
    for (int v = 0; v < p_; ++v) {
      int j = v + 1;
      if (j < i) images.push_back(Polynomial::variable(tp, v));
      else if (j == i) images.push_back(Polynomial(tp));
      else images.push_back(Polynomial::variable(tp, v - 1));
    }
  }
  return pullback(images, tp);
}

PolyForm PolyForm::degeneracy(int j) const {
  if (j < 0 || j > p_) throw std::out_of_range("degeneracy index");
  int tp = p_ + 1;
  std::vector<Polynomial> images;
  images.reserve(p_);
  for (int v = 0; v < p_; ++v) {
    int m = v + 1;  // 1-based source coordinate
    if (m < j) {
      images.push_back(Polynomial::variable(tp, v));
    } else if (m == j) {
      images.push_back(Polynomial::variable(tp, j - 1) + Polynomial::variable(tp, j));
    } else {
      images.push_back(Polynomial::variable(tp, v + 1));
    }
  }
  return pullback(images, tp);
}

PolyForm PolyForm::total_boundary() const {
  if (p_ == 0) throw std::invalid_argument("total_boundary: p = 0");
  PolyForm r(p_ - 1, q_);
  for (int i = 0; i <= p_; ++i) {
    PolyForm fi = face(i);
    r = (i % 2 == 0) ? r + fi : r - fi;
  }
  return r;
}

Rational PolyForm::integrate() const {
  if (q_ != p_) throw std::invalid_argument("integrate: only top forms (q = p)");
  std::vector<int> top(p_);
  std::iota(top.begin(), top.end(), 0);
  auto it = terms_.find(top);
  if (it == terms_.end()) return Rational(0);
  // ∫_{Δ^p} t^a dt = a1!···ap! / (p + Σa_i)!  (validated against iterated
  // symbolic integration in the test suite).
  Rational acc(0);
  for (const auto& [e, c] : it->second.terms()) {
    Integer num(1);
    int total = 0;
    for (int a : e) {
      num *= factorial(a);
      total += a;
    }
    Rational weight(num, factorial(p_ + total));
    weight.canonicalize();
    acc += c * weight;
  }
  return acc;
}

std::string PolyForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, f] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (idx.empty()) {
      os << f.to_string();
    } else {
      os << "(" << f.to_string() << ")";
      for (int k : idx) os << " dt" << (k + 1);
    }
  }
  return os.str();
}

void check_extension_input(const std::vector<PolyForm>& faces) {
  int p = static_cast<int>(faces.size()) - 1;
  if (p < 1) throw std::invalid_argument("extension input needs p >= 1");
  int q = faces[0].degree();
  for (const auto& w : faces) {
    if (w.simplex_dim() != p - 1 || w.degree() != q)
      throw std::invalid_argument("extension input shape mismatch");
  }
  if (p - 1 == 0) return;  // faces of 0-simplex forms have no faces to compare
  for (int i = 0; i <= p; ++i)
    for (int j = i + 1; j <= p; ++j)
      if (faces[j].face(i) != faces[i].face(j - 1)) throw IncompatibleFaces(i, j);
}

PolyForm extend(const std::vector<PolyForm>& faces) {
  check_extension_input(faces);
  int p = static_cast<int>(faces.size()) - 1;
  int q = faces[0].degree();
  if (q > p) return PolyForm(p, q);

  int input_deg = -1;
  for (const auto& w : faces) input_deg = std::max(input_deg, w.max_coeff_degree());

  // Index sets of size q in {0..p-1}, lexicographic.
  std::vector<std::vector<int>> index_sets;
  {
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
      if (static_cast<int>(cur.size()) == q) {
        index_sets.push_back(cur);
        return;
      }
      for (int k = start; k < p; ++k) {
        cur.push_back(k);
        self(self, k + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }

  for (int D = std::max(0, input_deg) + 1; D <= std::max(0, input_deg) + 33; ++D) {
    // Unknown columns: (monomial, index set), degree-major monomial order.
    auto monos = monomials_up_to(p, D);
    struct Cell {
      Polynomial::Exponents e;
      std::vector<int> idx;
    };
    std::vector<Cell> cells;
    for (const auto& e : monos)
      for (const auto& idx : index_sets) cells.push_back({e, idx});

    // Rows: coefficient of (J, m') in ∂_i(ω) - w_i = 0.
    std::map<std::tuple<int, std::vector<int>, Polynomial::Exponents>, int> row_ids;
    std::vector<std::vector<std::pair<int, Rational>>> row_entries;
    std::vector<Rational> rhs;
    auto row_of = [&](int i, const std::vector<int>& J,
                      const Polynomial::Exponents& e) -> int {
      auto key = std::make_tuple(i, J, e);
      auto it = row_ids.find(key);
      if (it != row_ids.end()) return it->second;
      int id = static_cast<int>(row_entries.size());
      row_ids.emplace(key, id);
      row_entries.emplace_back();
      rhs.emplace_back(0);
      return id;
    };

    for (int col = 0; col < static_cast<int>(cells.size()); ++col) {
      PolyForm basis(p, q);
      basis.set_term(cells[col].idx,
                     Polynomial::monomial(p, cells[col].e, Rational(1)));
      for (int i = 0; i <= p; ++i) {
        PolyForm bf = basis.face(i);
        for (const auto& [J, poly] : bf.terms())
          for (const auto& [e2, c] : poly.terms())
            row_entries[row_of(i, J, e2)].emplace_back(col, c);
      }
    }
    for (int i = 0; i <= p; ++i)
      for (const auto& [J, poly] : faces[i].terms())
        for (const auto& [e2, c] : poly.terms()) rhs[row_of(i, J, e2)] = c;

    SparseMatrix A(static_cast<int>(cells.size()));
    std::vector<Rational> b;
    for (size_t r = 0; r < row_entries.size(); ++r) {
      auto& entries = row_entries[r];
      std::sort(entries.begin(), entries.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      // Combine duplicates (a face substitution can hit the same column twice).
      SparseVec row;
      for (const auto& [c, v] : entries) {
        if (!row.empty() && row.back().first == c)
          row.back().second += v;
        else
          row.emplace_back(c, v);
      }
      std::erase_if(row, [](const auto& cv) { return is_zero(cv.second); });
      A.add_row(std::move(row));
      b.push_back(rhs[r]);
    }

    auto x = solve(A, b);
    if (!x) continue;  // retry with a larger degree bound
    PolyForm result(p, q);
    for (int col = 0; col < static_cast<int>(cells.size()); ++col) {
      if (is_zero((*x)[col])) continue;
      Polynomial mono = Polynomial::monomial(p, cells[col].e, (*x)[col]);
      Polynomial cur = result.coefficient(cells[col].idx);
      cur += mono;
      result.set_term(cells[col].idx, std::move(cur));
    }
    return result;
  }
  throw std::logic_error("extend: no solvable degree bound found");
}

}  // namespace plderham
