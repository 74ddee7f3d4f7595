#include "plderham/cochain.hpp"

#include <algorithm>
#include <stdexcept>

namespace plderham {

std::vector<std::string> ChainComplexQ::check_d2() const {
  std::vector<std::string> issues;
  if (static_cast<int>(d.size()) != top() + 1)
    issues.push_back("differential count mismatch");
  for (int q = 0; q + 1 <= top() && issues.empty(); ++q) {
    if (d[q].cols() != dims[q] || d[q].rows() != dims[q + 1]) {
      issues.push_back("differential shape mismatch at degree " + std::to_string(q));
      continue;
    }
    if (!d[q + 1].multiply(d[q]).is_zero())
      issues.push_back("d∘d != 0 at degree " + std::to_string(q));
  }
  return issues;
}

Cohomology::Cohomology(ChainComplexQ c) : c_(std::move(c)) {
  auto issues = c_.check_d2();
  if (!issues.empty()) throw std::invalid_argument("Cohomology: " + issues.front());
  int t = c_.top();
  reps_.resize(t + 1);
  solver_.resize(t + 1);
  for (int q = 0; q <= t; ++q) {
    std::vector<SparseVec> cocycles = kernel_basis(c_.d[q]);
    std::vector<SparseVec> image;
    if (q > 0) image = image_basis(c_.d[q - 1]);
    RowSpan span(c_.dims[q]);
    for (const auto& b : image) span.insert(b);
    for (auto& z : cocycles)
      if (span.insert(z)) reps_[q].push_back(std::move(z));

    // Class solver: columns are the representatives followed by the image
    // generators d_{q-1}(e_j).
    SparseMatrix repcols(static_cast<int>(reps_[q].size()));
    std::vector<SparseVec> rows(c_.dims[q]);
    for (size_t k = 0; k < reps_[q].size(); ++k)
      for (const auto& [r, v] : reps_[q][k]) rows[r].emplace_back(static_cast<int>(k), v);
    for (auto& row : rows) repcols.add_row(std::move(row));
    solver_[q] = (q > 0) ? hconcat(repcols, c_.d[q - 1]) : repcols;
  }
}

int Cohomology::betti(int q) const {
  if (q < 0 || q > top()) return 0;
  return static_cast<int>(reps_[q].size());
}

std::vector<int> Cohomology::betti_vector() const {
  std::vector<int> out;
  for (int q = 0; q <= top(); ++q) out.push_back(betti(q));
  return out;
}

const std::vector<SparseVec>& Cohomology::reps(int q) const {
  static const std::vector<SparseVec> empty;
  if (q < 0 || q > top()) return empty;
  return reps_[q];
}

std::optional<Cohomology::Reduction> Cohomology::reduce(
    int q, const std::vector<Rational>& z) const {
  if (q < 0 || q > top()) {
    bool zero = true;
    for (const auto& v : z) zero = zero && is_zero(v);
    if (!zero) return std::nullopt;
    return Reduction{{}, {}};
  }
  if (static_cast<int>(z.size()) != c_.dims[q])
    throw std::invalid_argument("reduce: vector size mismatch");
  // Must be a cocycle.
  for (const auto& v : c_.d[q].apply(z))
    if (!is_zero(v)) return std::nullopt;
  auto x = solve(solver_[q], z);
  if (!x) return std::nullopt;
  Reduction red;
  int nreps = static_cast<int>(reps_[q].size());
  red.coords.assign(x->begin(), x->begin() + nreps);
  red.witness.assign(x->begin() + nreps, x->end());
  return red;
}

SparseMatrix induced_on_cohomology(
    const Cohomology& src, const Cohomology& dst, int q,
    const std::function<std::vector<Rational>(const SparseVec&)>& push) {
  int cols = src.betti(q);
  int rows = dst.betti(q);
  std::vector<SparseVec> row_data(rows);
  for (int k = 0; k < cols; ++k) {
    std::vector<Rational> image = push(src.reps(q)[k]);
    auto red = dst.reduce(q, image);
    if (!red)
      throw std::logic_error("induced_on_cohomology: image is not a cocycle");
    for (int r = 0; r < rows; ++r)
      if (!is_zero(red->coords[r])) row_data[r].emplace_back(k, red->coords[r]);
  }
  SparseMatrix out(cols);
  for (auto& row : row_data) out.add_row(std::move(row));
  return out;
}

bool is_iso(const SparseMatrix& m) {
  return m.rows() == m.cols() && rank_of(m) == m.rows();
}

SparseMatrix inverse_of(const SparseMatrix& m) {
  if (!is_iso(m)) throw std::invalid_argument("inverse_of: matrix is singular");
  int n = m.rows();
  std::vector<SparseVec> rows(n);
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> e(n, Rational(0));
    e[j] = 1;
    auto col = solve(m, e);
    for (int i = 0; i < n; ++i)
      if (!is_zero((*col)[i])) rows[i].emplace_back(j, (*col)[i]);
  }
  SparseMatrix out(n);
  for (auto& row : rows) out.add_row(std::move(row));
  return out;
}

ChainComplexQ normalized_cochains(const SimplicialSetPtr& x, const SubSet* rel,
                                  NormalizedBasis* basis_out) {
  NormalizedBasis basis;
  int top = std::max(0, x->max_dim());
  basis.refs.resize(top + 1);
  basis.index_of.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    basis.index_of[n].assign(x->count(n), -1);
    for (int i = 0; i < x->count(n); ++i) {
      if (rel && rel->contains({n, i})) continue;
      basis.index_of[n][i] = static_cast<int>(basis.refs[n].size());
      basis.refs[n].push_back({n, i});
    }
  }

  ChainComplexQ c;
  c.dims.resize(top + 1);
  for (int n = 0; n <= top; ++n) c.dims[n] = static_cast<int>(basis.refs[n].size());
  c.d.resize(top + 1);
  for (int q = 0; q <= top; ++q) {
    SparseMatrix m(c.dims[q]);
    if (q + 1 <= top) {
      for (int r = 0; r < c.dims[q + 1]; ++r) {
        SimplexRef s = basis.refs[q + 1][r];
        std::map<int, Rational> entries;
        for (int i = 0; i <= s.dim; ++i) {
          const SimplexPtr& fe = x->face_entry(s, i);
          if (fe.degenerate()) continue;  // normalized: degenerate faces vanish
          int col = basis.index_of[q][fe.base.index];
          if (col < 0) continue;  // face in A
          entries[col] += (i % 2 == 0) ? Rational(1) : Rational(-1);
        }
        SparseVec row;
        for (const auto& [col, v] : entries)
          if (!is_zero(v)) row.emplace_back(col, v);
        m.add_row(std::move(row));
      }
    }
    c.d[q] = std::move(m);
  }
  if (basis_out) *basis_out = std::move(basis);
  return c;
}

ChainComplexQ full_cochains(const SimplicialSetPtr& x, int top_degree,
                            FullBasis* basis_out) {
  if (top_degree < 0) throw std::invalid_argument("full_cochains: negative truncation");
  FullBasis basis;
  basis.elems.resize(top_degree + 1);
  basis.index_of.resize(top_degree + 1);
  for (int n = 0; n <= top_degree; ++n) {
    // all (base, word) with base.dim + |word| = n
    for (int m = std::min(n, x->max_dim()); m >= 0; --m) {
      int k = n - m;
      for (int i = 0; i < x->count(m); ++i) {
        // enumerate strictly increasing words j_1 < ... < j_k with j_t <= m+t-1
        std::vector<int> word;
        auto rec = [&](auto&& self, int pos, int lo) -> void {
          if (pos == k) {
            basis.index_of[n].emplace(SimplexPtr{{m, i}, word},
                                      static_cast<int>(basis.elems[n].size()));
            basis.elems[n].push_back({{m, i}, word});
            return;
          }
          for (int j = lo; j <= m + pos; ++j) {
            word.push_back(j);
            self(self, pos + 1, j + 1);
            word.pop_back();
          }
        };
        rec(rec, 0, 0);
      }
    }
    std::sort(basis.elems[n].begin(), basis.elems[n].end());
    basis.index_of[n].clear();
    for (size_t i = 0; i < basis.elems[n].size(); ++i)
      basis.index_of[n].emplace(basis.elems[n][i], static_cast<int>(i));
  }

  ChainComplexQ c;
  c.dims.resize(top_degree + 1);
  for (int n = 0; n <= top_degree; ++n)
    c.dims[n] = static_cast<int>(basis.elems[n].size());
  c.d.resize(top_degree + 1);
  for (int q = 0; q <= top_degree; ++q) {
    SparseMatrix m(c.dims[q]);
    if (q + 1 <= top_degree) {
      for (int r = 0; r < c.dims[q + 1]; ++r) {
        const SimplexPtr& s = basis.elems[q + 1][r];
        std::map<int, Rational> entries;
        for (int i = 0; i <= s.dim(); ++i) {
          SimplexPtr f = x->face(s, i);
          entries[basis.index_of[q].at(f)] += (i % 2 == 0) ? Rational(1) : Rational(-1);
        }
        SparseVec row;
        for (const auto& [col, v] : entries)
          if (!is_zero(v)) row.emplace_back(col, v);
        m.add_row(std::move(row));
      }
    }
    c.d[q] = std::move(m);
  }
  if (basis_out) *basis_out = std::move(basis);
  return c;
}

std::vector<Rational> cup(const SimplicialSetPtr& x, const NormalizedBasis& basis,
                          int r, const std::vector<Rational>& alpha, int s,
                          const std::vector<Rational>& beta) {
  if (r < 0 || s < 0) throw std::invalid_argument("cup: negative degrees");
  int n = r + s;
  std::vector<Rational> out;
  if (n > basis.top()) return out;
  auto eval = [&](int deg, const std::vector<Rational>& vec,
                  const SimplexPtr& ptr) -> Rational {
    if (ptr.degenerate()) return Rational(0);
    int col = basis.index_of[deg][ptr.base.index];
    if (col < 0) return Rational(0);
    return vec[col];
  };
  for (SimplexRef sref : basis.refs[n]) {
    SimplexPtr front{{sref.dim, sref.index}, {}};
    for (int dtop = n; dtop > r; --dtop) front = x->face(front, dtop);
    SimplexPtr back{{sref.dim, sref.index}, {}};
    for (int t = 0; t < n - s; ++t) back = x->face(back, 0);
    out.push_back(eval(r, alpha, front) * eval(s, beta, back));
  }
  return out;
}

std::vector<SparseMatrix> pullback_cochain_matrices(const SimplicialMap& f,
                                                    const NormalizedBasis& src_basis,
                                                    const NormalizedBasis& dst_basis) {
  // f: src -> dst induces f^*: NC^*(dst) -> NC^*(src).
  std::vector<SparseMatrix> out;
  for (int q = 0; q <= src_basis.top(); ++q) {
    int cols = q <= dst_basis.top() ? static_cast<int>(dst_basis.refs[q].size()) : 0;
    SparseMatrix m(cols);
    for (SimplexRef s : src_basis.refs[q]) {
      SparseVec row;
      const SimplexPtr& img = f.image({s.dim, s.index});
      if (!img.degenerate() && q <= dst_basis.top()) {
        int col = dst_basis.index_of[q][img.base.index];
        if (col >= 0) row.emplace_back(col, Rational(1));
      }
      m.add_row(std::move(row));
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace plderham
