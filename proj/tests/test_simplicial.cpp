#include <catch2/catch_amalgamated.hpp>

#include "plderham/generators.hpp"
#include "plderham/simplicial.hpp"
#include "support.hpp"

using namespace plderham;

TEST_CASE("degeneracy word normal form") {
  // s0 s0 = s1 s0, i.e. pushing s0 onto [0] gives [0,1]
  REQUIRE(word_push_outer({0}, 0) == std::vector<int>{0, 1});
  REQUIRE(word_push_outer({}, 2) == std::vector<int>{2});
  REQUIRE(word_push_outer({1, 3}, 2) == std::vector<int>{1, 2, 4});
  REQUIRE(word_push_outer({0, 1}, 5) == std::vector<int>{0, 1, 5});
}

TEST_CASE("builder validates the simplicial identities") {
  GeneratedSpace d2 = standard_simplex(2);
  REQUIRE(d2.space->count(0) == 3);
  REQUIRE(d2.space->count(1) == 3);
  REQUIRE(d2.space->count(2) == 1);
  REQUIRE(d2.space->validate().empty());

  // A 2-simplex wired to violate ∂0∂0 = ∂0∂1.
  SimplicialSet::Builder b;
  SimplexRef v0 = b.add_vertex();
  SimplexRef v1 = b.add_vertex();
  SimplexRef v2 = b.add_vertex();
  SimplexRef v3 = b.add_vertex();
  SimplexRef e01 = b.add_simplex(1, {{v1, {}}, {v0, {}}});
  SimplexRef e02 = b.add_simplex(1, {{v2, {}}, {v0, {}}});
  SimplexRef e_bad = b.add_simplex(1, {{v3, {}}, {v1, {}}});
  b.add_simplex(2, {{e_bad, {}}, {e02, {}}, {e01, {}}});
  REQUIRE_THROWS_AS(b.build(), std::invalid_argument);
  auto issues = b.build_unchecked()->validate();
  REQUIRE_FALSE(issues.empty());
  REQUIRE(issues[0].find("pair") != std::string::npos);
}

TEST_CASE("pointer algebra satisfies the simplicial identities") {
  plderham::testing::Rng rng(19);
  for (const char* name : {"delta:3", "torus", "circle:1", "boundary:3"}) {
    SimplicialSetPtr x = make_space(name).space;
    for (SimplexRef s : x->all_simplices()) {
      // decorate with a random degeneracy word
      SimplexPtr ptr{s, {}};
      std::uniform_int_distribution<int> extra(0, 2);
      int letters = extra(rng);
      for (int t = 0; t < letters; ++t) {
        std::uniform_int_distribution<int> j(0, ptr.dim());
        ptr = x->degenerate(ptr, j(rng));
      }
      int n = ptr.dim();
      if (n >= 2) {
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i)
            REQUIRE(x->face(x->face(ptr, j), i) == x->face(x->face(ptr, i), j - 1));
      }
      for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
          REQUIRE(x->degenerate(x->degenerate(ptr, j), i) ==
                  x->degenerate(x->degenerate(ptr, i), j + 1));
      for (int j = 0; j <= n; ++j) {
        SimplexPtr sj = x->degenerate(ptr, j);
        for (int i = 0; i <= n + 1; ++i) {
          SimplexPtr got = x->face(sj, i);
          if (i == j || i == j + 1) {
            REQUIRE(got == ptr);
          } else if (i < j) {
            REQUIRE(got == x->degenerate(x->face(ptr, i), j - 1));
          } else {
            REQUIRE(got == x->degenerate(x->face(ptr, i - 1), j));
          }
        }
      }
    }
  }
}

TEST_CASE("generated subsets") {
  GeneratedSpace d2 = standard_simplex(2);
  const SimplicialSetPtr& x = d2.space;
  // the edge [v0,v1] is the lexicographically first 1-simplex
  SubSet s = generated_subset(x, {{1, 0}});
  REQUIRE(s.size() == 3);
  REQUIRE(s.contains({1, 0}));
  REQUIRE(s.contains({0, 0}));
  REQUIRE(s.contains({0, 1}));
  REQUIRE(s.is_face_closed());

  REQUIRE(generated_subset(x, {}).empty());
  REQUIRE_THROWS_AS(generated_subset(x, {{5, 0}}), std::out_of_range);

  // all three edges of ∂Δ² generate everything
  SimplicialSetPtr bd = simplex_boundary(2).space;
  std::vector<SimplexRef> edges;
  for (int i = 0; i < bd->count(1); ++i) edges.push_back({1, i});
  REQUIRE(generated_subset(bd, edges) == SubSet::full(bd));

  // idempotent and monotone
  SubSet again = generated_subset(x, s.members());
  REQUIRE(again == s);
  SubSet bigger = generated_subset(x, {{1, 0}, {1, 1}});
  REQUIRE(s.subset_of(bigger));
}

TEST_CASE("minimal neighbourhood") {
  GeneratedSpace d2 = standard_simplex(2);
  SubSet l = d2.subsets.at("vertex0");
  SubSet eps = minimal_neighborhood(l);
  REQUIRE(eps == SubSet::full(d2.space));  // every simplex of Δ² touches v0

  SubSet full = SubSet::full(d2.space);
  REQUIRE(minimal_neighborhood(full) == full);

  // hexagon: six triangles around the origin of the tessellation
  GeneratedSpace tess = plane_tessellation(2);
  SubSet hex = minimal_neighborhood(tess.subsets.at("origin"));
  int triangles = 0;
  for (SimplexRef s : hex.members())
    if (s.dim == 2) ++triangles;
  REQUIRE(triangles == 6);
  REQUIRE(hex.is_face_closed());

  // containment and monotonicity on random subsets
  plderham::testing::Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    SimplicialSetPtr x = plderham::testing::rand_complex(rng, 6, 4, 3);
    auto all = x->all_simplices();
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<SimplexRef> gens;
    for (SimplexRef s : all)
      if (coin(rng)) gens.push_back(s);
    SubSet k = generated_subset(x, gens);
    SubSet ek = minimal_neighborhood(k);
    REQUIRE(k.subset_of(ek));
    REQUIRE(ek.subset_of(minimal_neighborhood(ek)));
    SubSet k2 = k.set_union(generated_subset(x, {all.front()}));
    REQUIRE(ek.subset_of(minimal_neighborhood(k2)));
  }
}

TEST_CASE("complement closure") {
  GeneratedSpace d1 = standard_simplex(1);
  const SimplicialSetPtr& x = d1.space;
  REQUIRE(complement_closure(SubSet::full(x)).empty());
  REQUIRE(complement_closure(SubSet(x)) == SubSet::full(x));
  // removing one endpoint still leaves the whole interval in the closure
  SubSet a = generated_subset(x, {{0, 0}});
  REQUIRE(complement_closure(a) == SubSet::full(x));
}

TEST_CASE("generator catalogue") {
  REQUIRE(standard_simplex(2).space->total_count() == 7);
  SimplicialSetPtr b3 = simplex_boundary(3).space;
  REQUIRE(b3->count(0) == 4);
  REQUIRE(b3->count(1) == 6);
  REQUIRE(b3->count(2) == 4);

  SimplicialSetPtr c1 = circle(1).space;
  REQUIRE(c1->count(0) == 1);
  REQUIRE(c1->count(1) == 1);
  REQUIRE(c1->validate().empty());

  SimplicialSetPtr t = torus().space;
  REQUIRE(t->count(0) == 1);
  REQUIRE(t->count(1) == 3);
  REQUIRE(t->count(2) == 2);
  REQUIRE(t->validate().empty());

  GeneratedSpace rl = real_line(3);
  REQUIRE(rl.space->count(0) == 7);
  REQUIRE(rl.space->count(1) == 6);

  GeneratedSpace tess1 = plane_tessellation(1);
  REQUIRE(tess1.space->count(0) == 7);
  REQUIRE(tess1.space->count(1) == 12);
  REQUIRE(tess1.space->count(2) == 6);
  REQUIRE(plane_tessellation(2).space->count(2) == 24);

  REQUIRE(torus_grid(4, 3).space->count(2) == 24);
  REQUIRE(cylinder(4).space->count(2) == 8);
}

TEST_CASE("exhaustions are prefix-compatible and layered") {
  for (const char* name : {"real-line:2", "half-line:2", "tessellation:1"}) {
    GeneratedSpace g = make_space(name);
    REQUIRE(g.exhaustion.has_value());
    const Exhaustion& ex = *g.exhaustion;
    SimplicialSetPtr prev = ex.level(1);
    for (int n = 2; n <= 3; ++n) {
      SimplicialSetPtr cur = ex.level(n);
      for (int d = 0; d <= prev->max_dim(); ++d) {
        REQUIRE(prev->count(d) <= cur->count(d));
        for (int i = 0; i < prev->count(d) && d > 0; ++i)
          for (int k = 0; k <= d; ++k)
            REQUIRE(prev->face_entry({d, i}, k) == cur->face_entry({d, i}, k));
      }
      // layered: ε of the previous level fits inside the current one
      SubSet prev_sub = truncation_subset(ex, n - 1, cur);
      SubSet eps = minimal_neighborhood(prev_sub);
      REQUIRE(eps.subset_of(truncation_subset(ex, n, cur)));
      prev = cur;
    }
  }
}

TEST_CASE("simplicial maps validate and compose") {
  GeneratedSpace rl = real_line(2);
  SimplicialSetPtr pt = standard_simplex(0).space;
  // collapse everything to the point
  std::vector<std::vector<SimplexPtr>> images(2);
  for (int i = 0; i < rl.space->count(0); ++i) images[0].push_back({{0, 0}, {}});
  for (int i = 0; i < rl.space->count(1); ++i) images[1].push_back({{0, 0}, {0}});
  SimplicialMap collapse(rl.space, pt, images);
  REQUIRE(collapse.validate().empty());
  REQUIRE_FALSE(collapse.is_inclusion());

  SimplicialMap id = SimplicialMap::identity(rl.space);
  REQUIRE(id.is_inclusion());
  SimplicialMap composed = collapse.compose(id);
  REQUIRE(composed.image({1, 0}) == collapse.image({1, 0}));

  // sub_complex inclusion validates
  SubSet k = generated_subset(rl.space, {{1, 0}, {1, 1}});
  SubComplex sc = sub_complex(k);
  REQUIRE(sc.space->count(1) == 2);
  REQUIRE(sc.inclusion().is_inclusion());
}

TEST_CASE("pushouts") {
  // wedge of two intervals at an endpoint: 3 vertices, 2 edges
  SimplicialSetPtr pt = standard_simplex(0).space;
  SimplicialSetPtr d1 = standard_simplex(1).space;
  SimplicialMap f(pt, d1, {{{{0, 0}, {}}}});
  SimplicialMap inc(pt, d1, {{{{0, 0}, {}}}});
  PushoutResult wedge = pushout(f, inc);
  REQUIRE(wedge.space->count(0) == 3);
  REQUIRE(wedge.space->count(1) == 2);
  REQUIRE(wedge.space->validate().empty());
  REQUIRE(wedge.h.is_inclusion());

  // circle from the interval: 1 vertex, 1 edge
  PushoutData circle_data = scenario_circle_glue().at_level(0);
  PushoutResult circ = pushout(circle_data.f, circle_data.inc);
  REQUIRE(circ.space->count(0) == 1);
  REQUIRE(circ.space->count(1) == 1);
  REQUIRE(circ.space->validate().empty());

  // empty gluing locus gives the disjoint union
  PushoutData dj = scenario_disjoint_union().at_level(0);
  PushoutResult djr = pushout(dj.f, dj.inc);
  REQUIRE(djr.space->count(0) == dj.u->count(0) + dj.v->count(0));
  REQUIRE(djr.space->count(1) == dj.u->count(1) + dj.v->count(1));

  // ι must be an inclusion
  SimplicialSetPtr two = simplex_boundary(1).space;
  SimplicialMap notinc(two, d1, {{{{0, 0}, {}}, {{0, 0}, {}}}});
  REQUIRE_THROWS_AS(pushout(f, notinc), std::invalid_argument);
}

TEST_CASE("properness") {
  GeneratedSpace d2 = standard_simplex(2);
  SubSet edge = generated_subset(d2.space, {{1, 0}});
  REQUIRE(is_proper(sub_complex(edge).inclusion()).proper);

  // Δ¹ -> Δ⁰ collapse is proper (finite source)
  SimplicialSetPtr pt = standard_simplex(0).space;
  SimplicialSetPtr d1 = standard_simplex(1).space;
  SimplicialMap collapse(d1, pt,
                         {{{{0, 0}, {}}, {{0, 0}, {}}}, {{{0, 0}, {0}}}});
  REQUIRE(is_proper(collapse).proper);

  // real line -> point is not proper: preimage counts grow with truncation
  auto collapse_at = [&](int n) {
    SimplicialSetPtr rl = real_line(n).space;
    std::vector<std::vector<SimplexPtr>> images(2);
    for (int i = 0; i < rl->count(0); ++i) images[0].push_back({{0, 0}, {}});
    for (int i = 0; i < rl->count(1); ++i) images[1].push_back({{0, 0}, {0}});
    return SimplicialMap(rl, pt, images);
  };
  ProperReport rep = is_proper_truncated(collapse_at(2), collapse_at(3), 2);
  REQUIRE_FALSE(rep.proper);
  REQUIRE(rep.truncation == 2);

  // a stable inclusion certifies as proper
  auto include_at = [&](int n) {
    GeneratedSpace rl = real_line(n);
    SubSet k = generated_subset(rl.space, {{0, 0}});
    SubComplex sc = sub_complex(k);
    return sc.inclusion();
  };
  ProperReport inc_rep = is_proper_truncated(include_at(2), include_at(3), 2);
  REQUIRE(inc_rep.proper);
  REQUIRE(inc_rep.certified);
}
