// Acceptance suite: runs every top-level property of the library at its
// stated size, printing one PASS/FAIL line per criterion. Exact rational
// checks throughout; exit status is nonzero when anything fails.

#include <chrono>
#include <cstdio>
#include <random>

#include "plderham/mv.hpp"
#include "../tests/support.hpp"

using namespace plderham;
using plderham::testing::rand_polyform;
using plderham::testing::Rng;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Stokes: ∫dω = ∫∂ω for randomized ω ∈ ∇(p, p-1), coefficient degree <= 4.
void criterion_stokes() {
  Rng rng(1001);
  int checked = 0;
  bool ok = true;
  for (int p = 1; p <= 3; ++p) {
    for (int trial = 0; trial < 70; ++trial) {
      PolyForm w = rand_polyform(rng, p, p - 1, 4, 4);
      ok = ok && w.d().integrate() == w.total_boundary().integrate();
      ++checked;
    }
  }
  report(1, ok && checked >= 200,
         "Stokes on " + std::to_string(checked) + " randomized forms, exact");
}

// 2. Extension operator: face contract and additivity on compatible tuples.
void criterion_extension() {
  Rng rng(1002);
  int checked = 0;
  bool ok = true;
  for (int p = 1; p <= 3; ++p) {
    for (int q = 0; q <= std::min(2, p); ++q) {
      for (int trial = 0; trial < 7; ++trial) {
        PolyForm wa = rand_polyform(rng, p, q, 3, 3);
        PolyForm wb = rand_polyform(rng, p, q, 2, 3);
        std::vector<PolyForm> fa, fb, fab;
        for (int i = 0; i <= p; ++i) {
          fa.push_back(wa.face(i));
          fb.push_back(wb.face(i));
          fab.push_back((wa + wb).face(i));
        }
        PolyForm ea = extend(fa);
        PolyForm eb = extend(fb);
        for (int i = 0; i <= p; ++i) {
          ok = ok && ea.face(i) == fa[i];
          ok = ok && eb.face(i) == fb[i];
        }
        ok = ok && ea + eb == extend(fab);
        checked += 2;
      }
    }
  }
  report(2, ok && checked >= 100,
         "extension contract and additivity on " + std::to_string(checked) +
             " compatible tuples, exact");
}

// 3. Bump theorem on the tessellation and on randomized finite pairs.
void criterion_bump() {
  bool ok = true;
  GeneratedSpace tess = plane_tessellation(2);
  SubSet l = tess.subsets.at("origin");
  SubSet eps = minimal_neighborhood(l);
  int triangles = 0;
  for (SimplexRef s : eps.members())
    if (s.dim == 2) ++triangles;
  ok = ok && triangles == 6;
  GlobalForm phi = bump_function({l, eps});
  ok = ok && phi.validate().empty();
  for (SimplexRef s : l.members())
    ok = ok && phi.value_at(s) == PolyForm::constant(s.dim, rat(1));
  ok = ok && phi.vanishes_on(complement_closure(eps));

  Rng rng(1003);
  int random_checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    SimplicialSetPtr x = plderham::testing::rand_complex(rng, 7, 5, 4);
    auto all = x->all_simplices();
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    SubSet rl = generated_subset(x, {all[pick(rng)]});
    SubSet reps = minimal_neighborhood(rl);
    GlobalForm rphi = bump_function({rl, reps});
    ok = ok && rphi.validate().empty();
    for (SimplexRef s : rl.members())
      ok = ok && rphi.value_at(s) == PolyForm::constant(s.dim, rat(1));
    ok = ok && rphi.vanishes_on(complement_closure(reps));
    ++random_checked;
  }
  report(3, ok && random_checked >= 50,
         "bump functions: hexagon example and " + std::to_string(random_checked) +
             " randomized (X, L) pairs, exact");
}

// 4. Good-intersection symmetry on randomized covers.
void criterion_good_intersection() {
  Rng rng(1004);
  int checked = 0;
  bool ok = true;
  while (checked < 110) {
    SimplicialSetPtr x = plderham::testing::rand_complex(rng, 7, 5, 4);
    auto [u, v] = plderham::testing::rand_cover(rng, x);
    try {
      // throws std::logic_error if the two conditions of the lemma disagree
      (void)good_intersection(u, v);
    } catch (const std::logic_error&) {
      ok = false;
    }
    ++checked;
  }
  report(4, ok, "good-intersection symmetry on " + std::to_string(checked) +
                    " randomized covers");
}

// 5. MV version 1 on the named instances, degrees <= 3.
void criterion_mv_v1() {
  GeneratedSpace c6 = circle(6);
  MvReport circle_rep = mv_v1(c6.subsets.at("U"), c6.subsets.at("V"), 3);
  bool circle_ok = circle_rep.passed() &&
                   circle_rep.betti_x == std::vector<int>{1, 1, 0, 0};
  GeneratedSpace tg = torus_grid(4, 3);
  MvReport torus_rep = mv_v1(tg.subsets.at("U"), tg.subsets.at("V"), 3);
  bool torus_ok = torus_rep.passed() &&
                  torus_rep.betti_x == std::vector<int>{1, 2, 1, 0};
  report(5, circle_ok && torus_ok,
         "MV v1 SES and LES exact for the circle-by-arcs and torus-by-cylinders"
         " covers at D = 3");
}

// 6. MV version 2 on the three pushout instances; non-proper input rejected.
void criterion_mv_v2() {
  bool ok = true;
  for (const char* name : {"disjoint-union", "circle-glue", "line-glue"}) {
    MvReport rep = mv_v2(make_scenario(name), 2, 4);
    ok = ok && rep.passed() && rep.g_proper && rep.h_proper;
  }
  // rejection of a non-proper f, with the hypothesis named
  bool rejected = false;
  PushoutScenario bad;
  bad.name = "improper";
  bad.finite = false;
  bad.ex_v = real_line(1).exhaustion;
  bad.at_level = [](int n) {
    GeneratedSpace w = real_line(n);
    SimplicialSetPtr pt = standard_simplex(0).space;
    std::vector<std::vector<SimplexPtr>> images(2);
    for (int i = 0; i < w.space->count(0); ++i) images[0].push_back({{0, 0}, {}});
    for (int i = 0; i < w.space->count(1); ++i) images[1].push_back({{0, 0}, {0}});
    SimplicialMap f(w.space, pt, images);
    return PushoutData{w.space, pt, w.space, f, SimplicialMap::identity(w.space)};
  };
  try {
    mv_v2(bad, 2, 3);
  } catch (const std::invalid_argument& e) {
    rejected = std::string(e.what()).find("f is not proper") != std::string::npos;
  }
  report(6, ok && rejected,
         "MV v2: three pushout instances exact with g, h proper; non-proper f "
         "rejected by name");
}

// 7. de Rham comparison with D -> D+1 stabilization; torus multiplicativity.
void criterion_derham() {
  bool ok = true;
  for (int n = 0; n <= 3; ++n) {
    DerhamReport rep = derham_check(standard_simplex(n).space, nullptr, n + 1,
                                    "delta:" + std::to_string(n));
    ok = ok && rep.passed();
  }
  DerhamReport bd = derham_check(simplex_boundary(3).space, nullptr, 3, "boundary:3");
  ok = ok && bd.passed() && bd.a_betti == std::vector<int>{1, 0, 1};
  DerhamReport circ = derham_check(circle(6).space, nullptr, 2, "circle:6");
  ok = ok && circ.passed() && circ.a_betti == std::vector<int>{1, 1};
  DerhamReport tor = derham_check(torus().space, nullptr, 3, "torus");
  ok = ok && tor.passed() && tor.a_betti == std::vector<int>{1, 2, 1};
  // multiplicativity on the sampled pairs includes the two degree-1
  // generators; their wedge maps to the cup product up to an explicit
  // coboundary witness found by the class solver
  ok = ok && tor.multiplicative && tor.pairs_checked >= 4;
  report(7, ok,
         "rho induces isomorphisms for delta:0..3, boundary:3, circle, torus "
         "with D->D+1 stability; torus multiplicativity holds");
}

// 8. Compactly supported comparison with stabilization certificates.
void criterion_compact() {
  auto t0 = std::chrono::steady_clock::now();
  GeneratedSpace rl = real_line(2);
  DerhamReport line = derham_check_compact(*rl.exhaustion, 2, 4, "real-line");
  double line_t = seconds_since(t0);
  bool line_ok = line.passed() && line.a_betti == std::vector<int>{0, 1} &&
                 line.stabilization_level >= 1 && line_t < 60.0;

  t0 = std::chrono::steady_clock::now();
  GeneratedSpace tess = plane_tessellation(1);
  DerhamReport plane = derham_check_compact(*tess.exhaustion, 3, 4, "tessellation");
  double plane_t = seconds_since(t0);
  bool plane_ok = plane.passed() && plane.a_betti == std::vector<int>{0, 0, 1} &&
                  plane.stabilization_level >= 1 && plane_t < 60.0;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "H_c(line) = (0,1) at n=%d [%.1fs], H_c(plane) = (0,0,1) at "
                "n=%d [%.1fs], rho_c isomorphisms",
                line.stabilization_level, line_t, plane.stabilization_level, plane_t);
  report(8, line_ok && plane_ok, buf);
}

// 9. Colimit lemma for finite spaces: the constant system gives H back.
void criterion_colimit_finite() {
  bool ok = true;
  for (const char* name : {"delta:2", "boundary:2", "torus", "circle:5"}) {
    SimplicialSetPtr x = make_space(name).space;
    int d = x->max_dim() + 1;
    Cohomology direct(window_complex(FormWindow::absolute(x, d)));
    ColimitResult res = colimit_hc_forms(constant_exhaustion(x), d, 3);
    ok = ok && res.stabilized && res.level == 1 && res.betti == direct.betti_vector();
  }
  report(9, ok, "colimit H_c over constant systems equals ordinary cohomology, exact");
}

// 10. Normalized vs full cochains on randomized finite simplicial sets.
void criterion_normalized_full() {
  Rng rng(1010);
  int checked = 0;
  bool ok = true;
  // a few catalogue spaces with genuinely degenerate entries, then random
  for (const char* name : {"torus", "circle:1", "circle:2"}) {
    SimplicialSetPtr x = make_space(name).space;
    Cohomology hn(normalized_cochains(x, nullptr));
    Cohomology hf(full_cochains(x, x->max_dim() + 2));
    for (int q = 0; q <= x->max_dim(); ++q) ok = ok && hn.betti(q) == hf.betti(q);
    ++checked;
  }
  while (checked < 105) {
    SimplicialSetPtr x = plderham::testing::rand_complex(rng, 6, 4, 4);
    Cohomology hn(normalized_cochains(x, nullptr));
    Cohomology hf(full_cochains(x, x->max_dim() + 2));
    for (int q = 0; q <= x->max_dim(); ++q) ok = ok && hn.betti(q) == hf.betti(q);
    ++checked;
  }
  report(10, ok, "normalized and full cochain Betti numbers agree on " +
                     std::to_string(checked) + " finite simplicial sets");
}

}  // namespace

int main() {
  criterion_stokes();
  criterion_extension();
  criterion_bump();
  criterion_good_intersection();
  criterion_mv_v1();
  criterion_mv_v2();
  criterion_derham();
  criterion_compact();
  criterion_colimit_finite();
  criterion_normalized_full();
  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", failures);
  return 1;
}
