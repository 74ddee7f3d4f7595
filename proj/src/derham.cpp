#include "plderham/derham.hpp"

#include <json.hpp>
#include <sstream>

namespace plderham {

ChainComplexQ window_complex(const FormWindow& w) {
  ChainComplexQ c;
  int top = std::max(0, w.top_degree());
  c.dims.resize(top + 1, 0);
  c.d.resize(top + 1);
  for (int q = 0; q <= top; ++q) {
    c.dims[q] = w.dim(q);
    c.d[q] = w.d_matrix(q);
  }
  return c;
}

SparseMatrix rho_matrix(const FormWindow& w, const NormalizedBasis& nc, int q) {
  int rows = q <= nc.top() ? static_cast<int>(nc.refs[q].size()) : 0;
  std::vector<SparseVec> row_data(rows);
  for (int k = 0; k < w.dim(q); ++k) {
    const GlobalForm& form = w.basis_form(q, k);
    for (int r = 0; r < rows; ++r) {
      Rational val = form.value_at(nc.refs[q][r]).integrate();
      if (!is_zero(val)) row_data[r].emplace_back(k, val);
    }
  }
  SparseMatrix out(w.dim(q));
  for (auto& row : row_data) out.add_row(std::move(row));
  return out;
}

std::vector<Rational> rho_cochain(const GlobalForm& w, const NormalizedBasis& nc) {
  int q = w.degree();
  std::vector<Rational> out;
  if (q > nc.top()) return out;
  for (SimplexRef s : nc.refs[q]) out.push_back(w.value_at(s).integrate());
  return out;
}

bool DerhamReport::passed() const {
  bool ok = rho_chain_map && rho_iso && multiplicative;
  if (compact) ok = ok && colimit_stabilized;
  else ok = ok && window_stable;
  return ok;
}

std::string DerhamReport::to_text() const {
  std::ostringstream os;
  os << "de Rham comparison: " << space << "\n";
  os << "  degree bound D = " << degree_bound;
  if (relative) os << " (relative)";
  if (compact) os << " (compactly supported)";
  os << "\n  A-side Betti:";
  for (int b : a_betti) os << " " << b;
  os << "\n  C-side Betti:";
  for (int b : c_betti) os << " " << b;
  os << "\n  rho chain map: " << (rho_chain_map ? "yes" : "NO");
  os << "\n  rho isomorphism on cohomology: " << (rho_iso ? "yes" : "NO");
  if (compact) {
    os << "\n  colimit stabilized: "
       << (colimit_stabilized ? "yes (n = " + std::to_string(stabilization_level) + ")"
                              : "NO");
  } else {
    os << "\n  window stable D -> D+1: " << (window_stable ? "yes" : "NO");
  }
  os << "\n  multiplicative on " << pairs_checked
     << " sampled pairs: " << (multiplicative ? "yes" : "NO");
  for (const auto& n : notes) os << "\n  note: " << n;
  os << "\n  verdict: " << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string DerhamReport::to_json() const {
  nlohmann::json j;
  j["space"] = space;
  j["degree_bound"] = degree_bound;
  j["relative"] = relative;
  j["compact"] = compact;
  j["a_betti"] = a_betti;
  j["c_betti"] = c_betti;
  j["rho_chain_map"] = rho_chain_map;
  j["rho_iso"] = rho_iso;
  j["window_stable"] = window_stable;
  j["multiplicative"] = multiplicative;
  j["pairs_checked"] = pairs_checked;
  if (compact) {
    j["stabilization_level"] = stabilization_level;
    j["colimit_stabilized"] = colimit_stabilized;
  }
  j["notes"] = notes;
  j["passed"] = passed();
  return j.dump(2);
}

namespace {

// Chain-map check δ∘ρ = ρ∘d and the induced map of ρ on cohomology.
struct RhoPipeline {
  bool chain_map = true;
  bool iso = true;
  std::vector<SparseMatrix> induced;
};

RhoPipeline rho_on_cohomology(const FormWindow& w, const Cohomology& ha,
                              const ChainComplexQ& nc_complex,
                              const Cohomology& hc, const NormalizedBasis& nc) {
  RhoPipeline out;
  int top = std::max(ha.top(), hc.top());
  std::vector<SparseMatrix> rho(top + 2);
  for (int q = 0; q <= top + 1; ++q) {
    if (q <= ha.top())
      rho[q] = rho_matrix(w, nc, q);
  }
  for (int q = 0; q <= ha.top(); ++q) {
    // δ ∘ ρ_q = ρ_{q+1} ∘ d_q exactly
    if (q + 1 <= hc.top() && q <= nc_complex.top()) {
      SparseMatrix lhs = nc_complex.d[q].multiply(rho[q]);
      SparseMatrix rhs = (q + 1 <= ha.top())
                             ? rho[q + 1].multiply(ha.complex().d[q])
                             : SparseMatrix(ha.complex().dims[q]);
      if (q + 1 > ha.top()) {
        for (int r = 0; r < nc_complex.dims[q + 1]; ++r) rhs.add_row({});
      }
      SparseMatrix diff(lhs.cols());
      bool equal = lhs.rows() == rhs.rows();
      for (int r = 0; equal && r < lhs.rows(); ++r) {
        SparseVec d = sparse_axpy(lhs.row(r), Rational(-1), rhs.row(r));
        equal = d.empty();
      }
      if (!equal) out.chain_map = false;
    }
  }
  for (int q = 0; q <= top; ++q) {
    if (q > ha.top() || q > hc.top()) {
      if (ha.betti(q) != hc.betti(q)) out.iso = false;
      out.induced.emplace_back(ha.betti(q));
      continue;
    }
    SparseMatrix m = induced_on_cohomology(
        ha, hc, q, [&](const SparseVec& rep) {
          std::vector<Rational> dense = sparse_to_dense(rep, ha.complex().dims[q]);
          return rho[q].apply(dense);
        });
    if (!is_iso(m)) out.iso = false;
    out.induced.push_back(std::move(m));
  }
  return out;
}

// Multiplicativity of ρ on sampled pairs of cohomology representatives,
// compared up to coboundary in the cochain complex.
std::pair<bool, int> check_multiplicativity(const FormWindow& w, const Cohomology& ha,
                                            const Cohomology& hc,
                                            const NormalizedBasis& nc,
                                            const SimplicialSetPtr& x, int cap = 16) {
  bool ok = true;
  int checked = 0;
  for (int q1 = 0; q1 <= ha.top() && checked < cap; ++q1) {
    for (int q2 = q1; q2 <= ha.top() && checked < cap; ++q2) {
      if (q1 + q2 > std::min(x->max_dim(), hc.top())) continue;
      for (int a = 0; a < ha.betti(q1) && checked < cap; ++a) {
        for (int b = 0; b < ha.betti(q2) && checked < cap; ++b) {
          GlobalForm fa = w.materialize(
              q1, sparse_to_dense(ha.reps(q1)[a], ha.complex().dims[q1]));
          GlobalForm fb = w.materialize(
              q2, sparse_to_dense(ha.reps(q2)[b], ha.complex().dims[q2]));
          GlobalForm prod = fa.wedge(fb);
          std::vector<Rational> u = rho_cochain(prod, nc);
          std::vector<Rational> v =
              cup(x, nc, q1, rho_cochain(fa, nc), q2, rho_cochain(fb, nc));
          std::vector<Rational> diff(u.size());
          for (size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - v[i];
          auto red = hc.reduce(q1 + q2, diff);
          ++checked;
          if (!red) {
            ok = false;
            continue;
          }
          for (const auto& cval : red->coords)
            if (!is_zero(cval)) ok = false;
        }
      }
    }
  }
  return {ok, checked};
}

}  // namespace

DerhamReport derham_check(const SimplicialSetPtr& x, const SubSet* rel, int degree_bound,
                          const std::string& description) {
  DerhamReport rep;
  rep.space = description;
  rep.degree_bound = degree_bound;
  rep.relative = rel != nullptr;

  SubSet a = rel ? *rel : SubSet(x);
  FormWindow wd(x, a, degree_bound);
  FormWindow wd1(x, a, degree_bound + 1);
  Cohomology ha(window_complex(wd));
  Cohomology ha1(window_complex(wd1));

  // Stability D -> D+1 through the inclusion of windows.
  rep.window_stable = true;
  for (int q = 0; q <= std::max(ha.top(), ha1.top()); ++q) {
    if (ha.betti(q) != ha1.betti(q)) {
      rep.window_stable = false;
      break;
    }
    if (q > ha.top()) continue;
    SparseMatrix m = induced_on_cohomology(ha, ha1, q, [&](const SparseVec& repv) {
      GlobalForm form = wd.materialize(q, sparse_to_dense(repv, ha.complex().dims[q]));
      return wd1.coordinates(form);
    });
    if (!is_iso(m)) rep.window_stable = false;
  }

  NormalizedBasis nc;
  ChainComplexQ ncc = normalized_cochains(x, rel, &nc);
  Cohomology hc(std::move(ncc));

  rep.a_betti = ha.betti_vector();
  rep.c_betti = hc.betti_vector();
  int top = std::max(ha.top(), hc.top());
  rep.a_betti.resize(top + 1, 0);
  rep.c_betti.resize(top + 1, 0);

  RhoPipeline pipe = rho_on_cohomology(wd, ha, hc.complex(), hc, nc);
  rep.rho_chain_map = pipe.chain_map;
  rep.rho_iso = pipe.iso;

  auto [mult, checked] = check_multiplicativity(wd, ha, hc, nc, x);
  rep.multiplicative = mult;
  rep.pairs_checked = checked;
  return rep;
}

Exhaustion constant_exhaustion(const SimplicialSetPtr& x) {
  Exhaustion ex;
  ex.name = "constant";
  ex.layered = true;
  ex.level = [x](int) { return x; };
  return ex;
}

namespace {

struct LevelData {
  SimplicialSetPtr ambient;
  std::vector<SubSet> complements;  // per level 1..n_max
};

LevelData level_complements(const Exhaustion& ex, int n_max) {
  LevelData out;
  out.ambient = ex.level(n_max + 2);
  for (int n = 1; n <= n_max; ++n) {
    SubSet k = truncation_subset(ex, n, out.ambient);
    // layered exhaustions keep ε(K_n) inside K_{n+1}; check it
    if (n + 1 <= n_max + 2) {
      SubSet eps = minimal_neighborhood(k);
      SubSet next = truncation_subset(ex, n + 1, out.ambient);
      if (!eps.subset_of(next))
        throw std::invalid_argument("exhaustion is not layered: ε(K_" +
                                    std::to_string(n) + ") escapes level " +
                                    std::to_string(n + 1));
    }
    out.complements.push_back(complement_closure(k));
  }
  return out;
}

void stabilize(ColimitResult& out, int n_max) {
  out.stabilized = false;
  for (int n = 0; n + 1 < static_cast<int>(out.map_iso.size()) && !out.stabilized; ++n) {
    if (out.map_iso[n] && out.map_iso[n + 1]) {
      out.stabilized = true;
      out.level = n + 1;  // 1-based level whose two outgoing maps are isos
      out.betti = out.level_betti[n + 1];
    }
  }
  if (!out.stabilized)
    out.detail = "not stabilized at n_max = " + std::to_string(n_max);
}

}  // namespace

ColimitResult colimit_hc_forms(const Exhaustion& ex, int degree_bound, int n_max) {
  if (n_max < 3) throw std::invalid_argument("colimit needs n_max >= 3");
  ColimitResult out;
  LevelData lv = level_complements(ex, n_max);
  out.ambient = lv.ambient;
  out.complements = lv.complements;
  for (int n = 1; n <= n_max; ++n) {
    out.windows.push_back(
        std::make_shared<FormWindow>(lv.ambient, lv.complements[n - 1], degree_bound));
    out.cohomologies.push_back(
        std::make_shared<Cohomology>(window_complex(*out.windows.back())));
    out.level_betti.push_back(out.cohomologies.back()->betti_vector());
  }
  for (int n = 0; n + 1 < n_max; ++n) {
    const Cohomology& src = *out.cohomologies[n];
    const Cohomology& dst = *out.cohomologies[n + 1];
    bool iso = true;
    for (int q = 0; q <= std::max(src.top(), dst.top()); ++q) {
      if (src.betti(q) != dst.betti(q)) {
        iso = false;
        break;
      }
      if (q > src.top()) continue;
      SparseMatrix m = induced_on_cohomology(src, dst, q, [&](const SparseVec& repv) {
        GlobalForm form = out.windows[n]->materialize(
            q, sparse_to_dense(repv, src.complex().dims[q]));
        return out.windows[n + 1]->coordinates(form);
      });
      if (!is_iso(m)) iso = false;
    }
    out.map_iso.push_back(iso);
  }
  stabilize(out, n_max);
  return out;
}

ColimitResult colimit_hc_cochains(const Exhaustion& ex, int n_max) {
  if (n_max < 3) throw std::invalid_argument("colimit needs n_max >= 3");
  ColimitResult out;
  LevelData lv = level_complements(ex, n_max);
  out.ambient = lv.ambient;
  out.complements = lv.complements;
  std::vector<NormalizedBasis> bases(n_max);
  for (int n = 1; n <= n_max; ++n) {
    ChainComplexQ c =
        normalized_cochains(lv.ambient, &lv.complements[n - 1], &bases[n - 1]);
    out.cohomologies.push_back(std::make_shared<Cohomology>(std::move(c)));
    out.level_betti.push_back(out.cohomologies.back()->betti_vector());
  }
  for (int n = 0; n + 1 < n_max; ++n) {
    const Cohomology& src = *out.cohomologies[n];
    const Cohomology& dst = *out.cohomologies[n + 1];
    bool iso = true;
    for (int q = 0; q <= std::max(src.top(), dst.top()); ++q) {
      if (src.betti(q) != dst.betti(q)) {
        iso = false;
        break;
      }
      if (q > src.top()) continue;
      // the inclusion of relative cochain complexes in basis coordinates
      SparseMatrix m = induced_on_cohomology(src, dst, q, [&](const SparseVec& repv) {
        std::vector<Rational> dense(dst.complex().dims[q], Rational(0));
        for (const auto& [col, v] : repv) {
          SimplexRef s = bases[n].refs[q][col];
          int col2 = bases[n + 1].index_of[q][s.index];
          if (col2 < 0) throw std::logic_error("colimit: basis inclusion failed");
          dense[col2] = v;
        }
        return dense;
      });
      if (!is_iso(m)) iso = false;
    }
    out.map_iso.push_back(iso);
  }
  stabilize(out, n_max);
  return out;
}

DerhamReport derham_check_compact(const Exhaustion& ex, int degree_bound, int n_max,
                                  const std::string& description) {
  DerhamReport rep;
  rep.space = description;
  rep.degree_bound = degree_bound;
  rep.compact = true;

  ColimitResult aside = colimit_hc_forms(ex, degree_bound, n_max);
  ColimitResult cside = colimit_hc_cochains(ex, n_max);
  rep.colimit_stabilized = aside.stabilized && cside.stabilized;
  if (!rep.colimit_stabilized) {
    rep.notes.push_back("A-side: " + (aside.stabilized ? "stabilized" : aside.detail));
    rep.notes.push_back("C-side: " + (cside.stabilized ? "stabilized" : cside.detail));
    return rep;
  }
  int level = std::max(aside.level, cside.level);
  rep.stabilization_level = level;
  rep.a_betti = aside.cohomologies[level - 1]->betti_vector();
  rep.c_betti = cside.cohomologies[level - 1]->betti_vector();
  int top = std::max(rep.a_betti.size(), rep.c_betti.size());
  rep.a_betti.resize(top, 0);
  rep.c_betti.resize(top, 0);

  const FormWindow& w = *aside.windows[level - 1];
  const Cohomology& ha = *aside.cohomologies[level - 1];
  NormalizedBasis nc;
  ChainComplexQ ncc = normalized_cochains(aside.ambient,
                                          &aside.complements[level - 1], &nc);
  Cohomology hc(std::move(ncc));

  RhoPipeline pipe = rho_on_cohomology(w, ha, hc.complex(), hc, nc);
  rep.rho_chain_map = pipe.chain_map;
  rep.rho_iso = pipe.iso;
  rep.multiplicative = true;
  rep.pairs_checked = 0;
  return rep;
}

}  // namespace plderham
