#include <catch2/catch_amalgamated.hpp>

#include "plderham/linalg.hpp"
#include "support.hpp"

using namespace plderham;

namespace {

SparseMatrix from_dense(const std::vector<std::vector<long>>& rows, int ncols) {
  SparseMatrix m(ncols);
  for (const auto& r : rows) {
    SparseVec v;
    for (int c = 0; c < ncols; ++c)
      if (r[c] != 0) v.emplace_back(c, rat(r[c]));
    m.add_row(std::move(v));
  }
  return m;
}

}  // namespace

TEST_CASE("rref computes rank and pivots") {
  SparseMatrix m = from_dense({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}, 3);
  Rref r = rref(m);
  REQUIRE(r.rank() == 2);
  REQUIRE(r.pivot_cols == std::vector<int>{0, 1});
  // canonical rows: [1 0 1], [0 1 1]
  REQUIRE(sparse_get(r.mat.row(0), 0) == 1);
  REQUIRE(sparse_get(r.mat.row(0), 2) == 1);
  REQUIRE(sparse_get(r.mat.row(1), 2) == 1);
}

TEST_CASE("kernel basis is canonical and annihilated") {
  SparseMatrix m = from_dense({{1, 2, 3}, {0, 1, 1}}, 3);
  auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  for (const auto& v : ker) REQUIRE(m.apply_sparse(v).empty());
  // free column is 2: x = (-1, -1, 1)
  REQUIRE(sparse_get(ker[0], 0) == -1);
  REQUIRE(sparse_get(ker[0], 1) == -1);
  REQUIRE(sparse_get(ker[0], 2) == 1);
}

TEST_CASE("solve returns canonical particular solutions and detects inconsistency") {
  SparseMatrix m = from_dense({{1, 1, 0}, {0, 0, 1}}, 3);
  auto x = solve(m, {rat(3), rat(5)});
  REQUIRE(x.has_value());
  REQUIRE((*x)[0] == 3);
  REQUIRE((*x)[1] == 0);  // free variable pinned to zero
  REQUIRE((*x)[2] == 5);

  SparseMatrix bad = from_dense({{1, 1, 0}, {2, 2, 0}}, 3);
  REQUIRE_FALSE(solve(bad, {rat(1), rat(3)}).has_value());
}

TEST_CASE("solve is linear in the right-hand side") {
  plderham::testing::Rng rng(7);
  std::uniform_int_distribution<long> entry(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<long>> rows(4, std::vector<long>(6, 0));
    for (auto& r : rows)
      for (auto& v : r) v = entry(rng);
    SparseMatrix m = from_dense(rows, 6);
    std::vector<Rational> x1(6), x2(6);
    for (auto& v : x1) v = plderham::testing::rand_rational(rng);
    for (auto& v : x2) v = plderham::testing::rand_rational(rng);
    auto b1 = m.apply(x1), b2 = m.apply(x2);
    std::vector<Rational> b12(4);
    for (int i = 0; i < 4; ++i) b12[i] = b1[i] + b2[i];
    auto s1 = solve(m, b1), s2 = solve(m, b2), s12 = solve(m, b12);
    REQUIRE(s1.has_value());
    REQUIRE(s2.has_value());
    REQUIRE(s12.has_value());
    for (int c = 0; c < 6; ++c) REQUIRE((*s12)[c] == (*s1)[c] + (*s2)[c]);
  }
}

TEST_CASE("image basis spans the column space") {
  SparseMatrix m = from_dense({{1, 0}, {1, 0}, {0, 2}}, 2);
  auto img = image_basis(m);
  REQUIRE(img.size() == 2);
  RowSpan span(3);
  for (const auto& v : img) span.insert(v);
  REQUIRE(span.contains(dense_to_sparse({rat(1), rat(1), rat(0)})));
  REQUIRE(span.contains(dense_to_sparse({rat(0), rat(0), rat(1)})));
  REQUIRE_FALSE(span.contains(dense_to_sparse({rat(1), rat(0), rat(0)})));
}

TEST_CASE("rank respects products") {
  SparseMatrix a = from_dense({{1, 0}, {0, 1}, {1, 1}}, 2);
  SparseMatrix b = from_dense({{1, 2, 0}, {0, 1, 1}}, 3);
  SparseMatrix ab = a.multiply(b);
  REQUIRE(ab.rows() == 3);
  REQUIRE(ab.cols() == 3);
  REQUIRE(rank_of(ab) == 2);
}
