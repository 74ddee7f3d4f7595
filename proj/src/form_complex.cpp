#include "plderham/form_complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace plderham {

namespace {

std::vector<std::vector<int>> index_sets(int p, int q) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == q) {
      out.push_back(cur);
      return;
    }
    for (int k = start; k < p; ++k) {
      cur.push_back(k);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

FormWindow::FormWindow(SimplicialSetPtr x, SubSet rel, int degree_bound)
    : x_(std::move(x)), rel_(std::move(rel)), bound_(degree_bound) {
  if (!x_) throw std::invalid_argument("FormWindow: null space");
  if (rel_.host() != x_) throw std::invalid_argument("FormWindow: A lives elsewhere");
  if (!rel_.is_face_closed())
    throw std::invalid_argument("FormWindow: A is not face-closed");
  if (bound_ < 0) throw std::invalid_argument("FormWindow: negative degree bound");
  top_ = std::min(bound_, x_->max_dim());
  levels_.resize(std::max(0, top_ + 1));
  for (int q = 0; q <= top_; ++q) build_level(q);
}

FormWindow FormWindow::absolute(SimplicialSetPtr x, int degree_bound) {
  SubSet none(x);
  return FormWindow(std::move(x), std::move(none), degree_bound);
}

void FormWindow::build_level(int q) {
  Level& lvl = levels_[q];
  // Cells in dimension-descending simplex order: the compatibility rows
  // relate a simplex to its faces, so leftmost pivoting stays near-local.
  for (int n = x_->max_dim(); n >= q; --n) {
    auto sets = index_sets(n, q);
    auto monos = monomials_up_to(n, bound_ - q);
    for (int i = 0; i < x_->count(n); ++i) {
      if (rel_.contains({n, i})) continue;
      for (const auto& idx : sets)
        for (const auto& m : monos) {
          lvl.lookup.emplace(std::make_tuple(SimplexRef{n, i}, idx, m),
                             static_cast<int>(lvl.cells.size()));
          lvl.cells.push_back({{n, i}, idx, m});
        }
    }
  }

  // Face-compatibility rows: for each σ ∉ A and face f, the coefficient of
  // every (J, m') in ∂_f(ω|σ) - transport(ω|∂_fσ) must vanish.
  SparseMatrix system(static_cast<int>(lvl.cells.size()));
  std::map<std::pair<std::vector<int>, Polynomial::Exponents>, SparseVec> rows_at;

  std::map<std::tuple<int, int, std::vector<int>, Polynomial::Exponents>, PolyForm>
      face_cache;
  std::map<std::tuple<int, std::vector<int>, std::vector<int>, Polynomial::Exponents>,
           PolyForm>
      transport_cache;

  auto face_of_cell = [&](int n, int f, const std::vector<int>& idx,
                          const Polynomial::Exponents& m) -> const PolyForm& {
    auto key = std::make_tuple(n, f, idx, m);
    auto it = face_cache.find(key);
    if (it != face_cache.end()) return it->second;
    PolyForm w(n, q);
    w.set_term(idx, Polynomial::monomial(n, m, Rational(1)));
    return face_cache.emplace(key, w.face(f)).first->second;
  };
  auto transport_of_cell = [&](int base_dim, const std::vector<int>& word,
                               const std::vector<int>& idx,
                               const Polynomial::Exponents& m) -> const PolyForm& {
    auto key = std::make_tuple(base_dim, word, idx, m);
    auto it = transport_cache.find(key);
    if (it != transport_cache.end()) return it->second;
    PolyForm w(base_dim, q);
    w.set_term(idx, Polynomial::monomial(base_dim, m, Rational(1)));
    for (int j : word) w = w.degeneracy(j);
    return transport_cache.emplace(key, std::move(w)).first->second;
  };

  for (int n = std::max(q + 1, 1); n <= x_->max_dim(); ++n) {
    auto sets = index_sets(n, q);
    auto monos = monomials_up_to(n, bound_ - q);
    for (int i = 0; i < x_->count(n); ++i) {
      if (rel_.contains({n, i})) continue;
      SimplexRef sigma{n, i};
      for (int f = 0; f <= n; ++f) {
        rows_at.clear();
        auto scatter = [&](const PolyForm& w, int col, int sign) {
          for (const auto& [jset, poly] : w.terms())
            for (const auto& [e, c] : poly.terms())
              rows_at[{jset, e}].emplace_back(col, sign > 0 ? c : -c);
        };
        for (const auto& idx : sets)
          for (const auto& m : monos)
            scatter(face_of_cell(n, f, idx, m),
                    lvl.lookup.at(std::make_tuple(sigma, idx, m)), +1);
        const SimplexPtr& fe = x_->face_entry(sigma, f);
        if (!rel_.contains(fe.base) && fe.base.dim >= q) {
          auto tsets = index_sets(fe.base.dim, q);
          auto tmonos = monomials_up_to(fe.base.dim, bound_ - q);
          for (const auto& idx : tsets)
            for (const auto& m : tmonos)
              scatter(transport_of_cell(fe.base.dim, fe.word, idx, m),
                      lvl.lookup.at(std::make_tuple(fe.base, idx, m)), -1);
        }
        for (auto& [key, row] : rows_at) {
          std::sort(row.begin(), row.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
          SparseVec merged;
          for (const auto& [c, v] : row) {
            if (!merged.empty() && merged.back().first == c)
              merged.back().second += v;
            else
              merged.emplace_back(c, v);
          }
          std::erase_if(merged, [](const auto& cv) { return is_zero(cv.second); });
          if (!merged.empty()) system.add_row(std::move(merged));
        }
      }
    }
  }

  KernelResult ker = kernel_with_free(system);
  lvl.basis = std::move(ker.basis);
  lvl.free_cols = std::move(ker.free_cols);
}

const FormWindow::Level& FormWindow::level(int q) const {
  if (q < 0 || q > top_) throw std::out_of_range("FormWindow level");
  return levels_[q];
}

int FormWindow::dim(int q) const {
  if (q < 0 || q > top_) return 0;
  return static_cast<int>(levels_[q].basis.size());
}

const std::vector<FormWindow::Cell>& FormWindow::cells(int q) const {
  return level(q).cells;
}

const std::vector<SparseVec>& FormWindow::basis(int q) const { return level(q).basis; }

GlobalForm FormWindow::from_cells(int q, const std::map<int, Rational>& cellvals) const {
  const Level& lvl = level(q);
  GlobalForm w(x_, q);
  std::map<SimplexRef, PolyForm> acc;
  for (const auto& [col, val] : cellvals) {
    if (is_zero(val)) continue;
    const Cell& cell = lvl.cells[col];
    auto it = acc.find(cell.simplex);
    if (it == acc.end())
      it = acc.emplace(cell.simplex, PolyForm(cell.simplex.dim, q)).first;
    Polynomial f = it->second.coefficient(cell.index_set);
    f += Polynomial::monomial(cell.simplex.dim, cell.mono, val);
    it->second.set_term(cell.index_set, std::move(f));
  }
  for (auto& [s, v] : acc) w.set_value(s, std::move(v));
  return w;
}

const GlobalForm& FormWindow::basis_form(int q, int k) const {
  const Level& lvl = level(q);
  if (!lvl.forms_ready) {
    lvl.forms.clear();
    for (const auto& vec : lvl.basis) {
      std::map<int, Rational> cellvals(vec.begin(), vec.end());
      lvl.forms.push_back(from_cells(q, cellvals));
    }
    lvl.forms_ready = true;
  }
  return lvl.forms.at(k);
}

SparseMatrix FormWindow::d_matrix(int q) const {
  int rows = dim(q + 1);
  SparseMatrix out(dim(q));
  std::vector<SparseVec> row_data(rows);
  for (int k = 0; k < dim(q); ++k) {
    GlobalForm dw = basis_form(q, k).d();
    std::vector<Rational> coords = coordinates(dw);
    for (int r = 0; r < rows; ++r)
      if (!is_zero(coords[r])) row_data[r].emplace_back(k, coords[r]);
  }
  for (auto& row : row_data) out.add_row(std::move(row));
  return out;
}

std::vector<Rational> FormWindow::coordinates(const GlobalForm& w, bool check) const {
  if (w.host() != x_) throw std::invalid_argument("coordinates: host mismatch");
  int q = w.degree();
  if (q > top_) {
    if (!w.is_zero()) throw std::invalid_argument("coordinates: above top degree");
    return {};
  }
  const Level& lvl = level(q);
  std::vector<Rational> coords;
  coords.reserve(lvl.free_cols.size());
  for (int col : lvl.free_cols) {
    const Cell& cell = lvl.cells[col];
    coords.push_back(
        w.value_at(cell.simplex).coefficient(cell.index_set).coefficient(cell.mono));
  }
  if (check) {
    if (!(materialize(q, coords) == w))
      throw std::invalid_argument("coordinates: form is not in the window");
  }
  return coords;
}

GlobalForm FormWindow::materialize(int q, const std::vector<Rational>& coords) const {
  const Level& lvl = level(q);
  if (coords.size() != lvl.basis.size())
    throw std::invalid_argument("materialize: coordinate count mismatch");
  std::map<int, Rational> cellvals;
  for (size_t k = 0; k < coords.size(); ++k) {
    if (is_zero(coords[k])) continue;
    for (const auto& [col, v] : lvl.basis[k]) {
      Rational& slot = cellvals[col];
      slot += coords[k] * v;
    }
  }
  return from_cells(q, cellvals);
}

}  // namespace plderham
