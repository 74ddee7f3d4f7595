#include <catch2/catch_amalgamated.hpp>

#include "plderham/cochain.hpp"
#include "plderham/generators.hpp"
#include "support.hpp"

using namespace plderham;

TEST_CASE("normalized chain ranks") {
  SimplicialSetPtr d2 = standard_simplex(2).space;
  ChainComplexQ c = normalized_cochains(d2, nullptr);
  REQUIRE(c.dims == std::vector<int>{3, 3, 1});
  REQUIRE(c.check_d2().empty());

  SimplicialSetPtr c1 = circle(1).space;
  ChainComplexQ cc = normalized_cochains(c1, nullptr);
  REQUIRE(cc.dims == std::vector<int>{1, 1});

  // relative ranks of (Δ¹, ∂Δ¹)
  GeneratedSpace d1 = standard_simplex(1);
  SubSet bd = d1.subsets.at("boundary");
  ChainComplexQ rel = normalized_cochains(d1.space, &bd);
  REQUIRE(rel.dims == std::vector<int>{0, 1});
}

TEST_CASE("betti numbers of the catalogue") {
  auto betti = [](const SimplicialSetPtr& x, const SubSet* rel = nullptr) {
    return Cohomology(normalized_cochains(x, rel)).betti_vector();
  };
  REQUIRE(betti(standard_simplex(2).space) == std::vector<int>{1, 0, 0});
  REQUIRE(betti(simplex_boundary(3).space) == std::vector<int>{1, 0, 1});
  REQUIRE(betti(torus().space) == std::vector<int>{1, 2, 1});
  REQUIRE(betti(torus_grid(4, 3).space) == std::vector<int>{1, 2, 1});
  REQUIRE(betti(circle(6).space) == std::vector<int>{1, 1});
  REQUIRE(betti(cylinder(4).space) == std::vector<int>{1, 1, 0});
  GeneratedSpace d1 = standard_simplex(1);
  SubSet bd = d1.subsets.at("boundary");
  REQUIRE(betti(d1.space, &bd) == std::vector<int>{0, 1});
}

TEST_CASE("full and normalized complexes agree in cohomology") {
  plderham::testing::Rng rng(71);
  for (const char* name : {"torus", "circle:1", "circle:2", "delta:3"}) {
    SimplicialSetPtr x = make_space(name).space;
    Cohomology hn(normalized_cochains(x, nullptr));
    Cohomology hf(full_cochains(x, x->max_dim() + 2));
    for (int q = 0; q <= x->max_dim(); ++q) REQUIRE(hf.betti(q) == hn.betti(q));
  }
  for (int trial = 0; trial < 12; ++trial) {
    SimplicialSetPtr x = plderham::testing::rand_complex(rng, 6, 4, 4);
    Cohomology hn(normalized_cochains(x, nullptr));
    Cohomology hf(full_cochains(x, x->max_dim() + 2));
    for (int q = 0; q <= x->max_dim(); ++q) REQUIRE(hf.betti(q) == hn.betti(q));
  }
}

TEST_CASE("cup product") {
  SimplicialSetPtr t = torus().space;
  NormalizedBasis basis;
  ChainComplexQ c = normalized_cochains(t, nullptr, &basis);
  Cohomology h(c);
  REQUIRE(h.betti(1) == 2);

  // unit acts as identity
  std::vector<Rational> unit(c.dims[0], Rational(1));  // the constant 0-cochain
  for (int k = 0; k < h.betti(1); ++k) {
    std::vector<Rational> alpha = sparse_to_dense(h.reps(1)[k], c.dims[1]);
    std::vector<Rational> prod = cup(t, basis, 0, unit, 1, alpha);
    REQUIRE(prod == alpha);
  }

  // degree-0 cup degree-0 is the pointwise product
  std::vector<Rational> a(c.dims[0]), b(c.dims[0]);
  plderham::testing::Rng rng(73);
  for (int i = 0; i < c.dims[0]; ++i) {
    a[i] = plderham::testing::rand_rational(rng);
    b[i] = plderham::testing::rand_rational(rng);
  }
  std::vector<Rational> ab = cup(t, basis, 0, a, 0, b);
  for (int i = 0; i < c.dims[0]; ++i) REQUIRE(ab[i] == a[i] * b[i]);

  // the two degree-1 generators multiply to a generator of H²
  std::vector<Rational> g0 = sparse_to_dense(h.reps(1)[0], c.dims[1]);
  std::vector<Rational> g1 = sparse_to_dense(h.reps(1)[1], c.dims[1]);
  auto red = h.reduce(2, cup(t, basis, 1, g0, 1, g1));
  REQUIRE(red);
  bool nonzero = false;
  for (const auto& v : red->coords) nonzero = nonzero || !is_zero(v);
  REQUIRE(nonzero);

  // δ is a derivation for the cup product
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Rational> u(c.dims[0]), w(c.dims[1]);
    for (auto& v : u) v = plderham::testing::rand_rational(rng);
    for (auto& v : w) v = plderham::testing::rand_rational(rng);
    // δ(u ⌣ w) = δu ⌣ w + (-1)^0 u ⌣ δw, with δw = 0-level caveats
    std::vector<Rational> lhs = c.d[1].apply(cup(t, basis, 0, u, 1, w));
    std::vector<Rational> du = c.d[0].apply(u);
    std::vector<Rational> dw = c.d[1].apply(w);
    std::vector<Rational> rhs = cup(t, basis, 1, du, 1, w);
    std::vector<Rational> rhs2 = cup(t, basis, 0, u, 2, dw);
    for (size_t i = 0; i < lhs.size(); ++i) REQUIRE(lhs[i] == rhs[i] + rhs2[i]);
  }

  // associativity at cochain level on a complex with higher simplices
  SimplicialSetPtr d3 = standard_simplex(3).space;
  NormalizedBasis b3;
  ChainComplexQ c3 = normalized_cochains(d3, nullptr, &b3);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Rational> p(c3.dims[1]), q(c3.dims[1]), r(c3.dims[1]);
    for (auto& v : p) v = plderham::testing::rand_rational(rng);
    for (auto& v : q) v = plderham::testing::rand_rational(rng);
    for (auto& v : r) v = plderham::testing::rand_rational(rng);
    auto left = cup(d3, b3, 2, cup(d3, b3, 1, p, 1, q), 1, r);
    auto right = cup(d3, b3, 1, p, 2, cup(d3, b3, 1, q, 1, r));
    REQUIRE(left == right);
  }
}

TEST_CASE("graded commutativity of cup on cohomology") {
  SimplicialSetPtr t = torus().space;
  NormalizedBasis basis;
  ChainComplexQ c = normalized_cochains(t, nullptr, &basis);
  Cohomology h(c);
  std::vector<Rational> g0 = sparse_to_dense(h.reps(1)[0], c.dims[1]);
  std::vector<Rational> g1 = sparse_to_dense(h.reps(1)[1], c.dims[1]);
  std::vector<Rational> ab = cup(t, basis, 1, g0, 1, g1);
  std::vector<Rational> ba = cup(t, basis, 1, g1, 1, g0);
  // odd-degree classes anticommute up to coboundary
  std::vector<Rational> sum(ab.size());
  for (size_t i = 0; i < ab.size(); ++i) sum[i] = ab[i] + ba[i];
  auto red = h.reduce(2, sum);
  REQUIRE(red);
  for (const auto& v : red->coords) REQUIRE(is_zero(v));
}

TEST_CASE("induced maps on cohomology") {
  GeneratedSpace d2 = standard_simplex(2);
  // the inclusion of an edge into the triangle is an iso on H⁰
  SubSet edge = generated_subset(d2.space, {{1, 0}});
  SubComplex sc = sub_complex(edge);
  SimplicialMap inc = sc.inclusion();

  NormalizedBasis src_basis, dst_basis;
  ChainComplexQ src = normalized_cochains(sc.space, nullptr, &src_basis);
  ChainComplexQ dst = normalized_cochains(d2.space, nullptr, &dst_basis);
  Cohomology hsrc(src), hdst(dst);
  auto mats = pullback_cochain_matrices(inc, src_basis, dst_basis);
  SparseMatrix h0 = induced_on_cohomology(hdst, hsrc, 0, [&](const SparseVec& rep) {
    return mats[0].apply(sparse_to_dense(rep, dst.dims[0]));
  });
  REQUIRE(is_iso(h0));

  // identity map induces identity matrices
  SimplicialMap id = SimplicialMap::identity(d2.space);
  auto idmats = pullback_cochain_matrices(id, dst_basis, dst_basis);
  for (int q = 0; q <= 2; ++q) {
    SparseMatrix m = induced_on_cohomology(hdst, hdst, q, [&](const SparseVec& rep) {
      return idmats[q].apply(sparse_to_dense(rep, dst.dims[q]));
    });
    for (int r = 0; r < m.rows(); ++r) {
      REQUIRE(sparse_get(m.row(r), r) == 1);
      REQUIRE(m.row(r).size() == 1);
    }
  }
}

TEST_CASE("compactly supported cochain system is constant on finite hosts") {
  SimplicialSetPtr t = torus().space;
  // with K = X the relative complex is the absolute one
  SubSet empty(t);
  ChainComplexQ abs = normalized_cochains(t, nullptr);
  ChainComplexQ rel = normalized_cochains(t, &empty);
  REQUIRE(abs.dims == rel.dims);
}

TEST_CASE("functoriality of induced maps under composition") {
  // edge ↪ boundary ↪ triangle; (g∘f)^* = f^* ∘ g^* on cohomology
  GeneratedSpace d2 = standard_simplex(2);
  SubSet bd = d2.subsets.at("boundary");
  SubComplex sc_bd = sub_complex(bd);
  SubSet edge_in_bd(sc_bd.space);
  edge_in_bd.insert({1, 0});
  edge_in_bd = generated_subset(sc_bd.space, {{1, 0}});
  SubComplex sc_edge = sub_complex(edge_in_bd);

  SimplicialMap f = sc_edge.inclusion();           // edge -> boundary
  SimplicialMap g = sc_bd.inclusion();             // boundary -> triangle
  SimplicialMap gf = g.compose(f);

  NormalizedBasis b_edge, b_bd, b_tri;
  ChainComplexQ c_edge = normalized_cochains(sc_edge.space, nullptr, &b_edge);
  ChainComplexQ c_bd = normalized_cochains(sc_bd.space, nullptr, &b_bd);
  ChainComplexQ c_tri = normalized_cochains(d2.space, nullptr, &b_tri);
  Cohomology h_edge(c_edge), h_bd(c_bd), h_tri(c_tri);

  auto mf = pullback_cochain_matrices(f, b_edge, b_bd);
  auto mg = pullback_cochain_matrices(g, b_bd, b_tri);
  auto mgf = pullback_cochain_matrices(gf, b_edge, b_tri);

  for (int q = 0; q <= 1; ++q) {
    SparseMatrix lhs = induced_on_cohomology(h_tri, h_edge, q, [&](const SparseVec& r) {
      return mgf[q].apply(sparse_to_dense(r, c_tri.dims[q]));
    });
    SparseMatrix step = induced_on_cohomology(h_tri, h_bd, q, [&](const SparseVec& r) {
      return mg[q].apply(sparse_to_dense(r, c_tri.dims[q]));
    });
    SparseMatrix step2 = induced_on_cohomology(h_bd, h_edge, q, [&](const SparseVec& r) {
      return mf[q].apply(sparse_to_dense(r, c_bd.dims[q]));
    });
    SparseMatrix rhs = step2.multiply(step);
    REQUIRE(lhs.rows() == rhs.rows());
    for (int r = 0; r < lhs.rows(); ++r)
      REQUIRE(sparse_axpy(lhs.row(r), rat(-1), rhs.row(r)).empty());
  }
}
