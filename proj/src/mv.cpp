#include "plderham/mv.hpp"

#include <json.hpp>
#include <sstream>

namespace plderham {

bool MvReport::ses_exact() const {
  for (const auto& lvl : ses)
    if (!lvl.ok()) return false;
  return true;
}

bool MvReport::les_exact() const {
  if (les.empty()) return false;
  for (const auto& node : les)
    if (!node.exact) return false;
  return true;
}

bool MvReport::passed() const {
  return ses_exact() && les_exact() && window_stable && g_proper && h_proper;
}

std::string MvReport::to_text() const {
  std::ostringstream os;
  os << "Mayer-Vietoris (version " << version << "): " << description << "\n";
  os << "  degree bound D = " << degree_bound << " (connecting classes at "
     << extended_bound << ")\n";
  auto row = [&](const char* name, const std::vector<int>& b) {
    os << "  Betti " << name << ":";
    for (int v : b) os << " " << v;
    os << "\n";
  };
  row("X", betti_x);
  row("U", betti_u);
  row("V", betti_v);
  row(version == 1 ? "U∩V" : "W", betti_right);
  if (version == 2) {
    os << "  g proper: " << (g_proper ? "yes" : "NO") << ", h proper: "
       << (h_proper ? "yes" : "NO") << "\n";
    if (stabilization_level >= 0)
      os << "  stabilization level n = " << stabilization_level << "\n";
  }
  os << "  short exact sequence:\n";
  for (const auto& s : ses)
    os << "    q=" << s.q << "  theta1 injective: " << (s.theta1_injective ? "yes" : "NO")
       << "  middle exact: " << (s.middle_exact ? "yes" : "NO")
       << "  theta2 surjective: " << (s.theta2_surjective ? "yes" : "NO") << "\n";
  os << "  long exact sequence:\n";
  for (const auto& n : les)
    os << "    q=" << n.q << " at " << n.at << ": rank(in)=" << n.rank_in
       << " ker(out)=" << n.ker_out << " -> " << (n.exact ? "exact" : "NOT EXACT")
       << "\n";
  for (const auto& n : notes) os << "  note: " << n << "\n";
  os << "  verdict: " << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string MvReport::to_json() const {
  nlohmann::json j;
  j["description"] = description;
  j["version"] = version;
  j["degree_bound"] = degree_bound;
  j["extended_bound"] = extended_bound;
  j["betti_x"] = betti_x;
  j["betti_u"] = betti_u;
  j["betti_v"] = betti_v;
  j[version == 1 ? "betti_uv" : "betti_w"] = betti_right;
  auto ses_j = nlohmann::json::array();
  for (const auto& s : ses)
    ses_j.push_back({{"q", s.q},
                     {"theta1_injective", s.theta1_injective},
                     {"middle_exact", s.middle_exact},
                     {"theta2_surjective", s.theta2_surjective}});
  j["ses"] = ses_j;
  auto les_j = nlohmann::json::array();
  for (const auto& n : les)
    les_j.push_back({{"q", n.q},
                     {"at", n.at},
                     {"rank_in", n.rank_in},
                     {"ker_out", n.ker_out},
                     {"exact", n.exact}});
  j["les"] = les_j;
  j["window_stable"] = window_stable;
  if (version == 2) {
    j["g_proper"] = g_proper;
    j["h_proper"] = h_proper;
    j["stabilization_level"] = stabilization_level;
  }
  j["notes"] = notes;
  j["passed"] = passed();
  return j.dump(2);
}

ChainComplexQ block_sum(const ChainComplexQ& a, const ChainComplexQ& b) {
  ChainComplexQ c;
  int top = std::max(a.top(), b.top());
  c.dims.resize(top + 1, 0);
  c.d.resize(top + 1);
  auto dim_of = [](const ChainComplexQ& x, int q) {
    return (q >= 0 && q <= x.top()) ? x.dims[q] : 0;
  };
  for (int q = 0; q <= top; ++q) c.dims[q] = dim_of(a, q) + dim_of(b, q);
  for (int q = 0; q <= top; ++q) {
    SparseMatrix m(c.dims[q]);
    int rows_a = dim_of(a, q + 1), rows_b = dim_of(b, q + 1);
    for (int r = 0; r < rows_a; ++r) m.add_row(a.d[q].row(r));
    for (int r = 0; r < rows_b; ++r) {
      SparseVec row;
      for (const auto& [col, v] : b.d[q].row(r)) row.emplace_back(col + dim_of(a, q), v);
      m.add_row(std::move(row));
    }
    c.d[q] = std::move(m);
  }
  return c;
}

namespace {

GlobalForm from_values(const SimplicialSetPtr& host, int q,
                       const std::function<PolyForm(SimplexRef)>& fn) {
  GlobalForm g(host, q);
  for (SimplexRef s : host->all_simplices()) {
    PolyForm v = fn(s);
    if (!v.is_zero()) g.set_value(s, std::move(v));
  }
  return g;
}

SparseMatrix from_columns(int nrows, const std::vector<std::vector<Rational>>& cols) {
  std::vector<SparseVec> rows(nrows);
  for (size_t k = 0; k < cols.size(); ++k) {
    if (static_cast<int>(cols[k].size()) != nrows)
      throw std::invalid_argument("from_columns: ragged column");
    for (int r = 0; r < nrows; ++r)
      if (!is_zero(cols[k][r])) rows[r].emplace_back(static_cast<int>(k), cols[k][r]);
  }
  SparseMatrix m(static_cast<int>(cols.size()));
  for (auto& row : rows) m.add_row(std::move(row));
  return m;
}

int betti_at(const Cohomology& h, int q) { return h.betti(q); }

// Exactness of ... -> A --in--> B --out--> C -> ... at B.
LesNode check_node(int q, const std::string& at, int dim_b, const SparseMatrix& in,
                   const SparseMatrix& out, bool has_in) {
  LesNode node;
  node.q = q;
  node.at = at;
  int rank_in = has_in ? rank_of(in) : 0;
  int rank_out = rank_of(out);
  node.rank_in = rank_in;
  node.ker_out = dim_b - rank_out;
  node.compose_zero = !has_in || out.multiply(in).is_zero();
  node.exact = node.compose_zero && node.rank_in == node.ker_out;
  return node;
}

struct LesMaps {
  std::vector<SparseMatrix> t1, t2, delta;  // indexed by q, 0..D
  const Cohomology* hx;
  const Cohomology* hsum;
  const Cohomology* hright;
};

std::vector<LesNode> verify_les(const LesMaps& m, int degree_bound,
                                const std::string& right_name) {
  std::vector<LesNode> out;
  for (int q = 0; q <= degree_bound; ++q) {
    out.push_back(check_node(q, "H^q(X)", betti_at(*m.hx, q),
                             q > 0 ? m.delta[q - 1] : SparseMatrix(0), m.t1[q], q > 0));
    out.push_back(
        check_node(q, "H^q(U)+H^q(V)", betti_at(*m.hsum, q), m.t1[q], m.t2[q], true));
    out.push_back(check_node(q, right_name, betti_at(*m.hright, q), m.t2[q],
                             m.delta[q], true));
  }
  return out;
}

std::vector<int> betti_upto(const Cohomology& h, int degree_bound) {
  std::vector<int> out;
  for (int q = 0; q <= degree_bound; ++q) out.push_back(h.betti(q));
  return out;
}

}  // namespace

MvReport mv_v1(const SubSet& u, const SubSet& v, int degree_bound) {
  const SimplicialSetPtr& x = u.host();
  MvReport rep;
  rep.version = 1;
  rep.degree_bound = degree_bound;
  rep.description = "cover of a space with " + std::to_string(x->total_count()) +
                    " simplices";
  if (v.host() != x)
    throw std::invalid_argument("mv_v1: U and V live on different hosts");
  if (degree_bound < x->max_dim())
    throw std::invalid_argument("mv_v1: degree bound must reach dim X");
  if (!(u.set_union(v) == SubSet::full(x)))
    throw std::invalid_argument("mv_v1: hypothesis violated: U and V do not cover X");
  if (!good_intersection(u, v))
    throw std::invalid_argument(
        "mv_v1: hypothesis violated: the cover does not have good intersection");

  auto [phi_u, phi_v] = partition_of_unity(u, v);

  SubComplex cu = sub_complex(u);
  SubComplex cv = sub_complex(v);
  SubComplex cuv = sub_complex(u.set_intersection(v));
  int d0 = degree_bound;
  FormWindow wx = FormWindow::absolute(x, d0);
  FormWindow wu = FormWindow::absolute(cu.space, d0);
  FormWindow wv = FormWindow::absolute(cv.space, d0);
  FormWindow wuv = FormWindow::absolute(cuv.space, d0);
  ChainComplexQ cplx_u = window_complex(wu);
  ChainComplexQ cplx_v = window_complex(wv);
  Cohomology hx(window_complex(wx));
  Cohomology hu(cplx_u);
  Cohomology hv(cplx_v);
  Cohomology huv(window_complex(wuv));
  Cohomology hsum(block_sum(cplx_u, cplx_v));

  auto to_sub = [](const SubComplex& sc, SimplexRef host_ref) {
    return SimplexRef{host_ref.dim, sc.to_sub[host_ref.dim][host_ref.index]};
  };
  auto uv_value = [&](const GlobalForm& w_on_host_space, const SubComplex& via,
                      SimplexRef suv) {
    SimplexRef host_ref = cuv.to_host[suv.dim][suv.index];
    return w_on_host_space.value_at(to_sub(via, host_ref));
  };
  // Extension by zero to U (resp. V) of (bump · ω) for ω on U∩V.
  auto spread = [&](const GlobalForm& omega, const GlobalForm& phi,
                    const SubComplex& target) {
    return from_values(target.space, omega.degree(), [&](SimplexRef s) {
      SimplexRef host_ref = target.to_host[s.dim][s.index];
      auto uv_ref = cuv.sub_ref(host_ref);
      if (!uv_ref) return PolyForm(s.dim, omega.degree());
      return phi.value_at(host_ref).wedge(omega.value_at(*uv_ref));
    });
  };

  // Window-level matrices of θ1 and θ2.
  std::vector<SparseMatrix> t1w(degree_bound + 1), t2w(degree_bound + 1);
  for (int q = 0; q <= degree_bound; ++q) {
    std::vector<std::vector<Rational>> cols1;
    for (int k = 0; k < wx.dim(q); ++k) {
      const GlobalForm& w = wx.basis_form(q, k);
      std::vector<Rational> cu_coords = wu.coordinates(
          from_values(cu.space, q,
                      [&](SimplexRef s) { return w.value_at(cu.to_host[s.dim][s.index]); }),
          true);
      std::vector<Rational> cv_coords = wv.coordinates(
          from_values(cv.space, q,
                      [&](SimplexRef s) { return w.value_at(cv.to_host[s.dim][s.index]); }),
          true);
      std::vector<Rational> col = cu_coords;
      for (const auto& val : cv_coords) col.push_back(-val);
      cols1.push_back(std::move(col));
    }
    t1w[q] = from_columns(wu.dim(q) + wv.dim(q), cols1);

    std::vector<std::vector<Rational>> cols2;
    for (int k = 0; k < wu.dim(q); ++k) {
      const GlobalForm& w = wu.basis_form(q, k);
      cols2.push_back(wuv.coordinates(
          from_values(cuv.space, q, [&](SimplexRef s) { return uv_value(w, cu, s); }),
          true));
    }
    for (int k = 0; k < wv.dim(q); ++k) {
      const GlobalForm& w = wv.basis_form(q, k);
      cols2.push_back(wuv.coordinates(
          from_values(cuv.space, q, [&](SimplexRef s) { return uv_value(w, cv, s); }),
          true));
    }
    t2w[q] = from_columns(wuv.dim(q), cols2);
  }

  // Short exact sequence verdicts.
  for (int q = 0; q <= degree_bound; ++q) {
    SesLevel lvl;
    lvl.q = q;
    lvl.theta1_injective = rank_of(t1w[q]) == wx.dim(q);
    int middle_dim = wu.dim(q) + wv.dim(q);
    bool compose_zero = t2w[q].multiply(t1w[q]).is_zero();
    lvl.middle_exact =
        compose_zero && rank_of(t1w[q]) + rank_of(t2w[q]) == middle_dim;
    lvl.theta2_surjective = true;
    for (int k = 0; k < wuv.dim(q); ++k) {
      const GlobalForm& omega = wuv.basis_form(q, k);
      GlobalForm a_u = spread(omega, phi_v, cu);
      GlobalForm b_v = spread(omega, phi_u, cv);
      if (!a_u.validate().empty() || !b_v.validate().empty()) {
        lvl.theta2_surjective = false;
        rep.notes.push_back("splitting failed compatibility at q=" + std::to_string(q));
        continue;
      }
      for (SimplexRef s : cuv.space->all_simplices()) {
        SimplexRef host_ref = cuv.to_host[s.dim][s.index];
        PolyForm total = a_u.value_at(to_sub(cu, host_ref)) +
                         b_v.value_at(to_sub(cv, host_ref));
        if (!(total == omega.value_at(s))) {
          lvl.theta2_surjective = false;
          rep.notes.push_back("splitting misses a basis form at q=" + std::to_string(q));
          break;
        }
      }
    }
    rep.ses.push_back(lvl);
  }

  // Connecting forms via the zig-zag, glued on X.
  std::vector<std::vector<GlobalForm>> xi(degree_bound + 1);
  for (int q = 0; q <= degree_bound; ++q) {
    for (int k = 0; k < huv.betti(q); ++k) {
      GlobalForm omega = wuv.materialize(
          q, sparse_to_dense(huv.reps(q)[k], huv.complex().dims[q]));
      GlobalForm a_u = spread(omega, phi_v, cu);
      GlobalForm b_v = spread(omega, phi_u, cv);
      GlobalForm da = a_u.d(), db = b_v.d();
      GlobalForm glue = from_values(x, q + 1, [&](SimplexRef s) {
        if (u.contains(s)) return da.value_at(to_sub(cu, s));
        return PolyForm(s.dim, q + 1) - db.value_at(to_sub(cv, s));
      });
      auto issues = glue.validate();
      if (!issues.empty())
        throw std::logic_error("mv_v1: glued connecting form is incompatible: " +
                               issues.front());
      if (!glue.d().is_zero())
        throw std::logic_error("mv_v1: connecting form is not closed");
      xi[q].push_back(std::move(glue));
    }
  }

  int ext = degree_bound + 1;
  for (const auto& level : xi)
    for (const auto& form : level)
      ext = std::max(ext, form.max_coeff_degree() + form.degree());
  rep.extended_bound = ext;
  FormWindow wxe = FormWindow::absolute(x, ext);
  Cohomology hxe(window_complex(wxe));

  std::vector<SparseMatrix> m_ext(x->max_dim() + 1), m_inv(x->max_dim() + 1);
  rep.window_stable = true;
  for (int q = 0; q <= x->max_dim(); ++q) {
    if (hx.betti(q) != hxe.betti(q)) {
      rep.window_stable = false;
      break;
    }
    m_ext[q] = induced_on_cohomology(hx, hxe, q, [&](const SparseVec& repv) {
      GlobalForm form = wx.materialize(q, sparse_to_dense(repv, hx.complex().dims[q]));
      return wxe.coordinates(form);
    });
    if (!is_iso(m_ext[q])) {
      rep.window_stable = false;
      break;
    }
    m_inv[q] = inverse_of(m_ext[q]);
  }
  if (!rep.window_stable) {
    rep.notes.push_back("extended window does not stabilize; LES not evaluated");
    rep.betti_x = betti_upto(hx, degree_bound);
    rep.betti_u = betti_upto(hu, degree_bound);
    rep.betti_v = betti_upto(hv, degree_bound);
    rep.betti_right = betti_upto(huv, degree_bound);
    return rep;
  }

  LesMaps maps;
  maps.hx = &hx;
  maps.hsum = &hsum;
  maps.hright = &huv;
  maps.t1.resize(degree_bound + 1);
  maps.t2.resize(degree_bound + 1);
  maps.delta.resize(degree_bound + 1);
  for (int q = 0; q <= degree_bound; ++q) {
    maps.t1[q] = induced_on_cohomology(hx, hsum, q, [&](const SparseVec& repv) {
      return t1w[q].apply(sparse_to_dense(repv, hx.complex().dims[q]));
    });
    maps.t2[q] = induced_on_cohomology(hsum, huv, q, [&](const SparseVec& repv) {
      return t2w[q].apply(sparse_to_dense(repv, hsum.complex().dims[q]));
    });
    // Connecting map: classes of the glued forms, pulled back from the
    // extended window.
    std::vector<std::vector<Rational>> cols;
    for (const auto& form : xi[q]) {
      auto red = hxe.reduce(q + 1, wxe.coordinates(form, true));
      if (!red) throw std::logic_error("mv_v1: connecting class reduction failed");
      if (q + 1 <= x->max_dim()) {
        cols.push_back(m_inv[q + 1].apply(red->coords));
      } else {
        cols.push_back(std::vector<Rational>{});
      }
    }
    maps.delta[q] = from_columns(hx.betti(q + 1), cols);
  }
  rep.les = verify_les(maps, degree_bound, "H^q(U∩V)");

  rep.betti_x = betti_upto(hx, degree_bound);
  rep.betti_u = betti_upto(hu, degree_bound);
  rep.betti_v = betti_upto(hv, degree_bound);
  rep.betti_right = betti_upto(huv, degree_bound);
  return rep;
}

namespace {

struct LevelCache {
  std::function<PushoutData(int)> at_level;
  std::map<int, PushoutData> data;
  std::map<int, PushoutResult> push;
  const PushoutData& get(int n) {
    auto it = data.find(n);
    if (it == data.end()) it = data.emplace(n, at_level(n)).first;
    return it->second;
  }
  const PushoutResult& pushout_at(int n) {
    auto it = push.find(n);
    if (it == push.end()) {
      const PushoutData& d = get(n);
      it = push.emplace(n, pushout(d.f, d.inc)).first;
    }
    return it->second;
  }
};

}  // namespace

MvReport mv_v2(const PushoutScenario& scenario, int degree_bound, int n_max) {
  MvReport rep;
  rep.version = 2;
  rep.degree_bound = degree_bound;
  rep.description = scenario.name;
  if (n_max < 3) throw std::invalid_argument("mv_v2: n_max must be at least 3");

  auto cache = std::make_shared<LevelCache>();
  cache->at_level = scenario.at_level;

  // Hypotheses, by name.
  if (!scenario.finite && !scenario.ex_v)
    throw std::invalid_argument(
        "mv_v2: hypothesis violated: V is not verified locally finite (no exhaustion)");
  {
    ProperReport f_proper =
        scenario.finite
            ? is_proper(cache->get(1).f)
            : is_proper_truncated(cache->get(1).f, cache->get(2).f, 1);
    if (!f_proper.proper)
      throw std::invalid_argument("mv_v2: hypothesis violated: f is not proper (" +
                                  f_proper.detail + ")");
  }
  // ι must be an inclusion; pushout() throws otherwise. Build all levels.
  for (int n = 1; n <= n_max + 2; ++n) cache->pushout_at(n);

  // Theorem conclusions: g and h are proper.
  {
    // pushout truncations interleave U and V, so level-1 targets need their
    // refs translated into the level-2 pushout
    auto x_corr = [&]() -> std::function<SimplexRef(SimplexRef)> {
      const PushoutResult& p1 = cache->pushout_at(1);
      const PushoutResult& p2 = cache->pushout_at(2);
      const PushoutData& d1 = cache->get(1);
      auto table = std::make_shared<std::vector<std::vector<SimplexRef>>>();
      table->resize(p1.space->max_dim() + 1);
      for (int d = 0; d <= p1.space->max_dim(); ++d)
        (*table)[d].assign(p1.space->count(d), SimplexRef{});
      for (SimplexRef s : d1.u->all_simplices())
        (*table)[s.dim][p1.h.image(s).base.index] = p2.h.image(s).base;
      for (SimplexRef s : d1.v->all_simplices()) {
        const SimplexPtr& img = p1.g.image(s);
        if (img.word.empty())
          (*table)[img.base.dim][img.base.index] = p2.g.image(s).base;
      }
      return [table](SimplexRef s) { return (*table)[s.dim][s.index]; };
    };
    ProperReport gp = scenario.finite
                          ? is_proper(cache->pushout_at(1).g)
                          : is_proper_truncated(cache->pushout_at(1).g,
                                                cache->pushout_at(2).g, 1, x_corr());
    ProperReport hp = scenario.finite
                          ? is_proper(cache->pushout_at(1).h)
                          : is_proper_truncated(cache->pushout_at(1).h,
                                                cache->pushout_at(2).h, 1, x_corr());
    rep.g_proper = gp.proper;
    rep.h_proper = hp.proper;
  }

  // Corner exhaustions over the shared cache, so all pointers agree.
  auto ex_of = [&](char corner) {
    Exhaustion ex;
    ex.name = std::string("mv-v2 corner ") + corner;
    ex.layered = true;
    bool finite = scenario.finite;
    ex.level = [cache, corner, finite](int n) -> SimplicialSetPtr {
      int lvl = finite ? 1 : n;
      switch (corner) {
        case 'w': return cache->get(lvl).w;
        case 'u': return cache->get(lvl).u;
        case 'v': return cache->get(lvl).v;
        default: return cache->pushout_at(lvl).space;
      }
    };
    if (corner == 'x' && !finite) {
      // The glued space interleaves U and V, so its truncations are not a
      // prefix; take the images of the corner truncations instead.
      ex.subset = [cache](int n, const SimplicialSetPtr& ambient) -> SubSet {
        SubSet out(ambient);
        // ambient is the pushout at some level N; find it in the cache.
        int big = -1;
        for (const auto& [lvl, res] : cache->push)
          if (res.space == ambient) big = lvl;
        if (big < 0) throw std::logic_error("mv_v2: ambient pushout not cached");
        const PushoutData& d_amb = cache->get(big);
        const PushoutResult& p_amb = cache->pushout_at(big);
        const PushoutData& d_n = cache->get(n);
        for (int dim = 0; dim <= d_n.u->max_dim(); ++dim)
          for (int i = 0; i < d_n.u->count(dim); ++i)
            out.insert(p_amb.h.image({dim, i}).base);
        for (int dim = 0; dim <= d_n.v->max_dim(); ++dim)
          for (int i = 0; i < d_n.v->count(dim); ++i)
            out.insert(p_amb.g.image({dim, i}).base);
        (void)d_amb;
        return out;
      };
    }
    return ex;
  };

  ColimitResult cw = colimit_hc_forms(ex_of('w'), degree_bound, n_max);
  ColimitResult cu = colimit_hc_forms(ex_of('u'), degree_bound, n_max);
  ColimitResult cv = colimit_hc_forms(ex_of('v'), degree_bound, n_max);
  ColimitResult cx = colimit_hc_forms(ex_of('x'), degree_bound, n_max);
  if (!(cw.stabilized && cu.stabilized && cv.stabilized && cx.stabilized)) {
    rep.notes.push_back("H_c colimits did not stabilize at n_max = " +
                        std::to_string(n_max));
    rep.window_stable = false;
    return rep;
  }
  int level = std::max({cw.level, cu.level, cv.level, cx.level});
  rep.stabilization_level = level;
  if (level + 1 > n_max)
    throw std::logic_error("mv_v2: stabilization level leaves no headroom");

  int amb_level = scenario.finite ? 1 : n_max + 2;
  const PushoutData& amb = cache->get(amb_level);
  const PushoutResult& ambp = cache->pushout_at(amb_level);
  if (amb.u != cu.ambient || amb.v != cv.ambient || amb.w != cw.ambient ||
      ambp.space != cx.ambient)
    throw std::logic_error("mv_v2: ambient spaces diverged");

  const FormWindow& wwB = *cw.windows[level - 1];
  const FormWindow& wuB = *cu.windows[level - 1];
  const FormWindow& wvB = *cv.windows[level - 1];
  const FormWindow& wxB = *cx.windows[level - 1];
  const Cohomology& hw = *cw.cohomologies[level - 1];
  const Cohomology& hu = *cu.cohomologies[level - 1];
  const Cohomology& hv = *cv.cohomologies[level - 1];
  const Cohomology& hx = *cx.cohomologies[level - 1];
  Cohomology hsum(block_sum(hu.complex(), hv.complex()));

  // θ1 = (h^*, g^*), θ2 = ι^*Θ - f^*Φ, at window level.
  std::vector<SparseMatrix> t1w(degree_bound + 1), t2w(degree_bound + 1);
  for (int q = 0; q <= degree_bound; ++q) {
    std::vector<std::vector<Rational>> cols1;
    for (int k = 0; k < wxB.dim(q); ++k) {
      const GlobalForm& w = wxB.basis_form(q, k);
      std::vector<Rational> cu_coords = wuB.coordinates(w.pullback(ambp.h), true);
      std::vector<Rational> cv_coords = wvB.coordinates(w.pullback(ambp.g), true);
      std::vector<Rational> col = cu_coords;
      for (auto& val : cv_coords) col.push_back(val);
      cols1.push_back(std::move(col));
    }
    t1w[q] = from_columns(wuB.dim(q) + wvB.dim(q), cols1);

    std::vector<std::vector<Rational>> cols2;
    for (int k = 0; k < wuB.dim(q); ++k) {
      GlobalForm pulled = wuB.basis_form(q, k).pullback(amb.f);
      std::vector<Rational> col = wwB.coordinates(-pulled, true);
      cols2.push_back(std::move(col));
    }
    for (int k = 0; k < wvB.dim(q); ++k) {
      GlobalForm pulled = wvB.basis_form(q, k).pullback(amb.inc);
      cols2.push_back(wwB.coordinates(pulled, true));
    }
    t2w[q] = from_columns(wwB.dim(q), cols2);
  }

  // ψ·ω₀ surjectivity witness for a compactly supported form on W.
  SubSet w_in_v(amb.v);
  for (SimplexRef s : amb.w->all_simplices()) w_in_v.insert(amb.inc.image(s).base);
  auto surjectivity_witness = [&](const GlobalForm& omega) {
    std::map<SimplexRef, PolyForm> values;
    std::vector<SimplexRef> nonzero;
    for (const auto& [s, val] : omega.values()) {
      SimplexRef img = amb.inc.image(s).base;
      values.emplace(img, val);
      nonzero.push_back(img);
    }
    GlobalForm omega0 =
        extend_from_subset(amb.v, w_in_v, values, omega.degree());
    SubSet support_l = generated_subset(amb.v, nonzero);
    GlobalForm psi = bump_function({support_l, minimal_neighborhood(support_l)});
    return psi.wedge(omega0);
  };
  auto pullback_w = [&](const GlobalForm& on_v) { return on_v.pullback(amb.inc); };

  for (int q = 0; q <= degree_bound; ++q) {
    SesLevel lvl;
    lvl.q = q;
    lvl.theta1_injective = rank_of(t1w[q]) == wxB.dim(q);
    int middle_dim = wuB.dim(q) + wvB.dim(q);
    bool compose_zero = t2w[q].multiply(t1w[q]).is_zero();
    lvl.middle_exact =
        compose_zero && rank_of(t1w[q]) + rank_of(t2w[q]) == middle_dim;
    lvl.theta2_surjective = true;
    for (int k = 0; k < wwB.dim(q); ++k) {
      const GlobalForm& omega = wwB.basis_form(q, k);
      if (omega.is_zero()) continue;
      GlobalForm witness = surjectivity_witness(omega);
      bool hit = pullback_w(witness) == omega;
      bool supported = witness.vanishes_on(cv.complements[level]);  // level B+1
      if (!hit || !supported) {
        lvl.theta2_surjective = false;
        rep.notes.push_back("theta2 witness failed at q=" + std::to_string(q));
        break;
      }
    }
    rep.ses.push_back(lvl);
  }

  // Connecting forms: ξ with h^*ξ = 0 and g^*ξ = d(ψω₀).
  std::vector<std::vector<int>> x_from_v(ambp.space->max_dim() + 1);
  {
    for (int d = 0; d <= ambp.space->max_dim(); ++d)
      x_from_v[d].assign(ambp.space->count(d), -1);
    std::vector<std::vector<char>> from_u(ambp.space->max_dim() + 1);
    for (int d = 0; d <= ambp.space->max_dim(); ++d)
      from_u[d].assign(ambp.space->count(d), 0);
    for (SimplexRef s : amb.u->all_simplices()) {
      SimplexRef img = ambp.h.image(s).base;
      from_u[img.dim][img.index] = 1;
    }
    for (SimplexRef s : amb.v->all_simplices()) {
      const SimplexPtr& img = ambp.g.image(s);
      if (img.word.empty() && !from_u[img.base.dim][img.base.index])
        x_from_v[img.base.dim][img.base.index] = s.index;
    }
  }

  std::vector<std::vector<GlobalForm>> xi(degree_bound + 1);
  for (int q = 0; q <= degree_bound; ++q) {
    for (int k = 0; k < hw.betti(q); ++k) {
      GlobalForm omega =
          wwB.materialize(q, sparse_to_dense(hw.reps(q)[k], hw.complex().dims[q]));
      GlobalForm witness = surjectivity_witness(omega);
      GlobalForm dpsi = witness.d();
      GlobalForm glue = from_values(ambp.space, q + 1, [&](SimplexRef s) {
        int vidx = x_from_v[s.dim][s.index];
        if (vidx < 0) return PolyForm(s.dim, q + 1);
        return dpsi.value_at({s.dim, vidx});
      });
      auto issues = glue.validate();
      if (!issues.empty())
        throw std::logic_error("mv_v2: glued connecting form is incompatible: " +
                               issues.front());
      if (!(glue.pullback(ambp.g) == dpsi) || !glue.pullback(ambp.h).is_zero())
        throw std::logic_error("mv_v2: connecting form does not solve theta1");
      if (!glue.d().is_zero())
        throw std::logic_error("mv_v2: connecting form is not closed");
      xi[q].push_back(std::move(glue));
    }
  }

  int ext = degree_bound + 1;
  for (const auto& lvl : xi)
    for (const auto& form : lvl)
      ext = std::max(ext, form.max_coeff_degree() + form.degree());
  rep.extended_bound = ext;
  FormWindow wxe(ambp.space, cx.complements[level], ext);  // level B+1 complement
  Cohomology hxe(window_complex(wxe));

  int topx = ambp.space->max_dim();
  std::vector<SparseMatrix> m_inv(topx + 1);
  rep.window_stable = true;
  for (int q = 0; q <= topx; ++q) {
    if (hx.betti(q) != hxe.betti(q)) {
      rep.window_stable = false;
      break;
    }
    SparseMatrix m = induced_on_cohomology(hx, hxe, q, [&](const SparseVec& repv) {
      GlobalForm form = wxB.materialize(q, sparse_to_dense(repv, hx.complex().dims[q]));
      return wxe.coordinates(form);
    });
    if (!is_iso(m)) {
      rep.window_stable = false;
      break;
    }
    m_inv[q] = inverse_of(m);
  }
  rep.betti_x = betti_upto(hx, degree_bound);
  rep.betti_u = betti_upto(hu, degree_bound);
  rep.betti_v = betti_upto(hv, degree_bound);
  rep.betti_right = betti_upto(hw, degree_bound);
  if (!rep.window_stable) {
    rep.notes.push_back("extended window does not stabilize; LES not evaluated");
    return rep;
  }

  LesMaps maps;
  maps.hx = &hx;
  maps.hsum = &hsum;
  maps.hright = &hw;
  maps.t1.resize(degree_bound + 1);
  maps.t2.resize(degree_bound + 1);
  maps.delta.resize(degree_bound + 1);
  for (int q = 0; q <= degree_bound; ++q) {
    maps.t1[q] = induced_on_cohomology(hx, hsum, q, [&](const SparseVec& repv) {
      return t1w[q].apply(sparse_to_dense(repv, hx.complex().dims[q]));
    });
    maps.t2[q] = induced_on_cohomology(hsum, hw, q, [&](const SparseVec& repv) {
      return t2w[q].apply(sparse_to_dense(repv, hsum.complex().dims[q]));
    });
    std::vector<std::vector<Rational>> cols;
    for (const auto& form : xi[q]) {
      auto red = hxe.reduce(q + 1, wxe.coordinates(form, true));
      if (!red) throw std::logic_error("mv_v2: connecting class reduction failed");
      if (q + 1 <= topx) {
        cols.push_back(m_inv[q + 1].apply(red->coords));
      } else {
        cols.push_back(std::vector<Rational>{});
      }
    }
    maps.delta[q] = from_columns(hx.betti(q + 1), cols);
  }
  rep.les = verify_les(maps, degree_bound, "H^q(W)");
  return rep;
}

}  // namespace plderham
