#include "plderham/bump.hpp"

#include <sstream>
#include <stdexcept>

namespace plderham {

namespace {

// touches[d][i]: some iterated face of (d,i), including itself, lies in L.
std::vector<std::vector<char>> touch_table(const SimplicialSetPtr& x, const SubSet& l) {
  std::vector<std::vector<char>> touches(x->max_dim() + 1);
  for (int d = 0; d <= x->max_dim(); ++d) {
    touches[d].assign(x->count(d), 0);
    for (int i = 0; i < x->count(d); ++i) {
      bool t = l.contains({d, i});
      for (int f = 0; f <= d && !t && d > 0; ++f) {
        SimplexRef b = x->face_entry({d, i}, f).base;
        t = touches[b.dim][b.index] != 0;
      }
      touches[d][i] = t ? 1 : 0;
    }
  }
  return touches;
}

}  // namespace

GlobalForm bump_function(const BumpSpec& spec) {
  const SimplicialSetPtr& x = spec.l.host();
  if (spec.k.host() != x) throw std::invalid_argument("bump: L and K host mismatch");
  if (!spec.l.is_face_closed() || !spec.k.is_face_closed())
    throw std::invalid_argument("bump: L and K must be subsimplicial sets");
  SubSet eps = minimal_neighborhood(spec.l);
  if (!eps.subset_of(spec.k))
    throw std::invalid_argument("bump: hypothesis violated: ε(L) is not contained in K");

  auto touches = touch_table(x, spec.l);
  GlobalForm phi(x, 0);
  for (SimplexRef s : spec.l.members())
    phi.set_value(s, PolyForm::constant(s.dim, Rational(1)));

  SubSet bridge = generated_subset(x, eps.member_difference(spec.l));
  // members() is dimension-major, so faces are always filled first.
  for (SimplexRef s : bridge.members()) {
    if (spec.l.contains(s)) continue;              // already 1
    if (!touches[s.dim][s.index]) continue;        // stays 0
    std::vector<PolyForm> faces;
    for (int i = 0; i <= s.dim; ++i)
      faces.push_back(phi.value_at_ptr(x->face_entry(s, i)));
    phi.set_value(s, extend(faces));
  }

  auto issues = phi.validate();
  if (!issues.empty()) {
    std::ostringstream os;
    os << "bump: constructed form fails face compatibility:";
    for (const auto& s : issues) os << "\n  " << s;
    throw std::logic_error(os.str());
  }
  for (SimplexRef s : spec.l.members())
    if (!(phi.value_at(s) == PolyForm::constant(s.dim, Rational(1))))
      throw std::logic_error("bump: φ is not exactly 1 on L");
  if (!phi.vanishes_on(complement_closure(spec.k)))
    throw std::logic_error("bump: φ does not vanish on ⟨X∖K⟩");
  return phi;
}

bool good_intersection(const SubSet& u, const SubSet& v) {
  const SimplicialSetPtr& x = u.host();
  if (v.host() != x) throw std::invalid_argument("good_intersection: host mismatch");
  if (!u.is_face_closed() || !v.is_face_closed())
    throw std::invalid_argument("good_intersection: U and V must be subsimplicial sets");
  if (!(u.set_union(v) == SubSet::full(x)))
    throw std::invalid_argument(
        "good_intersection: hypothesis violated: U and V do not cover X");
  bool v_side = minimal_neighborhood(generated_subset(x, v.member_difference(u))).subset_of(v);
  bool u_side = minimal_neighborhood(generated_subset(x, u.member_difference(v))).subset_of(u);
  if (v_side != u_side)
    throw std::logic_error("good_intersection: symmetry lemma violated");
  return v_side;
}

std::pair<GlobalForm, GlobalForm> partition_of_unity(const SubSet& u, const SubSet& v) {
  if (!good_intersection(u, v))
    throw std::invalid_argument(
        "partition_of_unity: hypothesis violated: the cover does not have good "
        "intersection");
  const SimplicialSetPtr& x = u.host();
  SubSet l = generated_subset(x, u.member_difference(v));
  GlobalForm phi_u = bump_function({l, u});
  GlobalForm phi_v = GlobalForm::constant(x, Rational(1)) - phi_u;
  return {std::move(phi_u), std::move(phi_v)};
}

GlobalForm extend_from_subset(const SimplicialSetPtr& host, const SubSet& w,
                              const std::map<SimplexRef, PolyForm>& values, int q) {
  if (w.host() != host) throw std::invalid_argument("extend_from_subset: host mismatch");
  if (!w.is_face_closed())
    throw std::invalid_argument("extend_from_subset: subset is not face-closed");
  GlobalForm out(host, q);
  for (const auto& [s, val] : values) {
    if (!w.contains(s))
      throw std::invalid_argument("extend_from_subset: value outside the subset");
    out.set_value(s, val);
  }
  for (SimplexRef s : host->all_simplices()) {
    if (w.contains(s) || s.dim < q) continue;
    if (s.dim == 0) continue;  // free choice in degree 0: stay zero
    std::vector<PolyForm> faces;
    for (int i = 0; i <= s.dim; ++i)
      faces.push_back(out.value_at_ptr(host->face_entry(s, i)));
    out.set_value(s, extend(faces));
  }
  auto issues = out.validate();
  if (!issues.empty())
    throw std::logic_error("extend_from_subset: fill failed compatibility: " +
                           issues.front());
  return out;
}

}  // namespace plderham
