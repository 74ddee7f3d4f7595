#include "plderham/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace plderham {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  size_t slash = text.find('/');
  auto check_int = [](const std::string& s) {
    if (s.empty()) throw std::invalid_argument("bad rational literal");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad rational literal");
    for (; i < s.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("bad rational literal: " + s);
  };
  if (slash == std::string::npos) {
    check_int(text);
    return Rational(Integer(text));
  }
  std::string num = text.substr(0, slash), den = text.substr(slash + 1);
  check_int(num);
  check_int(den);
  Integer d(den);
  if (sgn(d) == 0) throw std::invalid_argument("zero denominator: " + text);
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

Integer factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative");
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

SparseVec sparse_axpy(const SparseVec& a, const Rational& c, const SparseVec& b) {
  if (is_zero(c)) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second + c * b[j].second;
      if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec sparse_scale(const SparseVec& a, const Rational& c) {
  if (is_zero(c)) return {};
  SparseVec out = a;
  for (auto& [col, v] : out) v *= c;
  return out;
}

Rational sparse_get(const SparseVec& a, int col) {
  auto it = std::lower_bound(a.begin(), a.end(), col,
                             [](const auto& p, int c) { return p.first < c; });
  if (it != a.end() && it->first == col) return it->second;
  return Rational(0);
}

SparseVec dense_to_sparse(const std::vector<Rational>& v) {
  SparseVec out;
  for (size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) out.emplace_back(static_cast<int>(i), v[i]);
  return out;
}

std::vector<Rational> sparse_to_dense(const SparseVec& v, int ncols) {
  std::vector<Rational> out(ncols, Rational(0));
  for (const auto& [c, val] : v) out[c] = val;
  return out;
}

Rational sparse_dot(const SparseVec& a, const SparseVec& b) {
  Rational acc(0);
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (b[j].first < a[i].first) ++j;
    else acc += a[i++].second * b[j++].second;
  }
  return acc;
}

void SparseMatrix::add_row(SparseVec row) {
  for (const auto& [c, v] : row) {
    if (c < 0 || c >= ncols_) throw std::out_of_range("row entry out of range");
    if (plderham::is_zero(v)) throw std::invalid_argument("explicit zero in sparse row");
  }
  rows_.push_back(std::move(row));
}

std::vector<Rational> SparseMatrix::apply(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != ncols_)
    throw std::invalid_argument("apply: size mismatch");
  std::vector<Rational> y(rows_.size(), Rational(0));
  for (size_t i = 0; i < rows_.size(); ++i) {
    Rational acc(0);
    for (const auto& [c, v] : rows_[i]) acc += v * x[c];
    y[i] = std::move(acc);
  }
  return y;
}

SparseVec SparseMatrix::apply_sparse(const SparseVec& x) const {
  SparseVec y;
  for (size_t i = 0; i < rows_.size(); ++i) {
    Rational acc = sparse_dot(rows_[i], x);
    if (!plderham::is_zero(acc)) y.emplace_back(static_cast<int>(i), std::move(acc));
  }
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(rows());
  std::vector<SparseVec> cols(ncols_);
  for (int i = 0; i < rows(); ++i)
    for (const auto& [c, v] : rows_[i]) cols[c].emplace_back(i, v);
  for (auto& col : cols) t.add_row(std::move(col));
  return t;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
  if (ncols_ != rhs.rows()) throw std::invalid_argument("multiply: shape mismatch");
  SparseMatrix out(rhs.cols());
  for (int i = 0; i < rows(); ++i) {
    SparseVec acc;
    for (const auto& [k, v] : rows_[i]) acc = sparse_axpy(acc, v, rhs.row(k));
    out.rows_.push_back(std::move(acc));
  }
  return out;
}

bool SparseMatrix::is_zero() const {
  for (const auto& r : rows_)
    if (!r.empty()) return false;
  return true;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n);
  for (int i = 0; i < n; ++i) m.add_row({{i, Rational(1)}});
  return m;
}

namespace {

// Gauss-Jordan elimination with leftmost pivot columns. Rows carry an
// optional augmented part (right-hand sides) that receives the same row
// operations but never hosts a pivot.
struct Elimination {
  std::vector<SparseVec> rows;
  std::vector<SparseVec> aug;     // parallel to rows (may be empty)
  std::vector<int> pivot_col;     // per pivot, ascending
  std::vector<int> pivot_row;     // row index that hosts pivot k
  std::vector<bool> is_pivot_row;

  void run(int ncols) {
    is_pivot_row.assign(rows.size(), false);
    // Unpivoted rows have zero entries in every already-processed column,
    // so their leading entry points at the next candidate column. Keep a
    // bucket per column to avoid rescanning.
    std::vector<std::vector<int>> bucket(ncols);
    for (size_t i = 0; i < rows.size(); ++i)
      if (!rows[i].empty()) bucket[rows[i][0].first].push_back(static_cast<int>(i));

    for (int col = 0; col < ncols; ++col) {
      // Candidates: unpivoted rows whose current leading entry is `col`.
      int best = -1;
      size_t best_nnz = 0;
      for (int r : bucket[col]) {
        if (is_pivot_row[r]) continue;
        if (rows[r].empty() || rows[r][0].first != col) continue;  // stale
        if (best < 0 || rows[r].size() < best_nnz) {
          best = r;
          best_nnz = rows[r].size();
        }
      }
      if (best < 0) continue;

      // Normalize the pivot row.
      Rational inv = 1 / rows[best][0].second;
      if (inv != 1) {
        rows[best] = sparse_scale(rows[best], inv);
        if (!aug.empty()) aug[best] = sparse_scale(aug[best], inv);
      }
      is_pivot_row[best] = true;
      pivot_col.push_back(col);
      pivot_row.push_back(best);

      // Eliminate `col` everywhere else.
      for (size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(r) == best) continue;
        Rational v = sparse_get(rows[r], col);
        if (is_zero(v)) continue;
        Rational c = -v;
        rows[r] = sparse_axpy(rows[r], c, rows[best]);
        if (!aug.empty()) aug[r] = sparse_axpy(aug[r], c, aug[best]);
        if (!is_pivot_row[r] && !rows[r].empty())
          bucket[rows[r][0].first].push_back(static_cast<int>(r));
      }
    }
  }
};

}  // namespace

Rref rref(const SparseMatrix& a) {
  Elimination e;
  e.rows.reserve(a.rows());
  for (int i = 0; i < a.rows(); ++i) e.rows.push_back(a.row(i));
  e.run(a.cols());

  Rref out;
  out.mat = SparseMatrix(a.cols());
  out.pivot_cols = e.pivot_col;
  for (size_t k = 0; k < e.pivot_row.size(); ++k)
    out.mat.add_row(e.rows[e.pivot_row[k]]);
  return out;
}

int rank_of(const SparseMatrix& a) { return rref(a).rank(); }

std::vector<SparseVec> kernel_basis(const SparseMatrix& a) {
  return kernel_with_free(a).basis;
}

KernelResult kernel_with_free(const SparseMatrix& a) {
  Rref r = rref(a);
  std::vector<bool> pivot(a.cols(), false);
  std::vector<int> pivot_index(a.cols(), -1);
  for (size_t k = 0; k < r.pivot_cols.size(); ++k) {
    pivot[r.pivot_cols[k]] = true;
    pivot_index[r.pivot_cols[k]] = static_cast<int>(k);
  }
  KernelResult out;
  // One vector per free column f: x_f = 1, x_p = -R[row(p)][f] for pivots p.
  std::map<int, SparseVec> by_free;
  for (int c = 0; c < a.cols(); ++c)
    if (!pivot[c]) by_free[c] = {{c, Rational(1)}};
  for (size_t k = 0; k < r.pivot_cols.size(); ++k) {
    for (const auto& [c, v] : r.mat.row(static_cast<int>(k))) {
      if (pivot[c]) continue;
      by_free[c].emplace_back(r.pivot_cols[k], -v);
    }
  }
  for (auto& [f, vec] : by_free) {
    std::sort(vec.begin(), vec.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    out.free_cols.push_back(f);
    out.basis.push_back(std::move(vec));
  }
  return out;
}

SparseMatrix hconcat(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row mismatch");
  SparseMatrix out(a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    SparseVec row = a.row(i);
    for (const auto& [c, v] : b.row(i)) row.emplace_back(c + a.cols(), v);
    out.add_row(std::move(row));
  }
  return out;
}

std::vector<SparseVec> image_basis(const SparseMatrix& a) {
  Rref r = rref(a.transpose());
  std::vector<SparseVec> out;
  for (int i = 0; i < r.mat.rows(); ++i) out.push_back(r.mat.row(i));
  return out;
}

std::vector<std::optional<std::vector<Rational>>> solve_many(
    const SparseMatrix& a, const std::vector<std::vector<Rational>>& bs) {
  Elimination e;
  e.rows.reserve(a.rows());
  for (int i = 0; i < a.rows(); ++i) e.rows.push_back(a.row(i));
  e.aug.resize(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (size_t k = 0; k < bs.size(); ++k) {
      if (static_cast<int>(bs[k].size()) != a.rows())
        throw std::invalid_argument("solve: rhs size mismatch");
      if (!is_zero(bs[k][i])) e.aug[i].emplace_back(static_cast<int>(k), bs[k][i]);
    }
  }
  e.run(a.cols());

  std::vector<std::optional<std::vector<Rational>>> results;
  for (size_t k = 0; k < bs.size(); ++k) {
    bool ok = true;
    // Inconsistent iff some fully-eliminated row kept a nonzero rhs.
    for (size_t r = 0; r < e.rows.size() && ok; ++r)
      if (!e.is_pivot_row[r] && e.rows[r].empty() &&
          !is_zero(sparse_get(e.aug[r], static_cast<int>(k))))
        ok = false;
    if (!ok) {
      results.emplace_back(std::nullopt);
      continue;
    }
    std::vector<Rational> x(a.cols(), Rational(0));
    for (size_t p = 0; p < e.pivot_col.size(); ++p)
      x[e.pivot_col[p]] = sparse_get(e.aug[e.pivot_row[p]], static_cast<int>(k));
    results.emplace_back(std::move(x));
  }
  return results;
}

std::optional<std::vector<Rational>> solve(const SparseMatrix& a,
                                           const std::vector<Rational>& b) {
  return solve_many(a, {b})[0];
}

SparseVec RowSpan::reduce(SparseVec v) const {
  for (const auto& row : rows_) {
    if (v.empty()) break;
    Rational c = sparse_get(v, row[0].first);
    if (!is_zero(c)) v = sparse_axpy(v, -c, row);
  }
  return v;
}

bool RowSpan::contains(const SparseVec& v) const { return reduce(v).empty(); }

bool RowSpan::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  v = sparse_scale(v, 1 / v[0].second);
  auto pos = std::lower_bound(rows_.begin(), rows_.end(), v[0].first,
                              [](const SparseVec& r, int lead) { return r[0].first < lead; });
  rows_.insert(pos, std::move(v));
  return true;
}

}  // namespace plderham
