#pragma once

// Shared helpers for the test suites: seeded random generators for
// rationals, polynomials, forms and small simplicial complexes.

#include <random>
#include <set>
#include <vector>

#include "plderham/generators.hpp"
#include "plderham/polyform.hpp"
#include "plderham/simplicial.hpp"

namespace plderham::testing {

using Rng = std::mt19937_64;

inline Rational rand_rational(Rng& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  return rat(num(rng), den(rng));
}

inline Polynomial rand_polynomial(Rng& rng, int nvars, int maxdeg, int nterms) {
  Polynomial p(nvars);
  auto monos = monomials_up_to(nvars, maxdeg);
  std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
  for (int t = 0; t < nterms; ++t)
    p += Polynomial::monomial(nvars, monos[pick(rng)], rand_rational(rng));
  return p;
}

inline PolyForm rand_polyform(Rng& rng, int p, int q, int maxdeg, int nterms = 3) {
  PolyForm w(p, q);
  if (q > p) return w;
  std::vector<std::vector<int>> index_sets;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == q) {
      index_sets.push_back(cur);
      return;
    }
    for (int k = start; k < p; ++k) {
      cur.push_back(k);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::uniform_int_distribution<size_t> pick(0, index_sets.size() - 1);
  for (int t = 0; t < nterms; ++t) {
    const auto& idx = index_sets[pick(rng)];
    Polynomial f = w.coefficient(idx);
    f += rand_polynomial(rng, p, maxdeg, 2);
    w.set_term(idx, std::move(f));
  }
  return w;
}

// Random subcomplex of a simplex on `nverts` vertices: pick random facets.
inline SimplicialSetPtr rand_complex(Rng& rng, int nverts, int nfacets, int max_facet_size) {
  std::vector<std::vector<int>> facets;
  std::uniform_int_distribution<int> size_dist(1, max_facet_size);
  std::uniform_int_distribution<int> vert(0, nverts - 1);
  for (int f = 0; f < nfacets; ++f) {
    std::set<int> fs;
    int target = size_dist(rng);
    while (static_cast<int>(fs.size()) < target) fs.insert(vert(rng));
    facets.emplace_back(fs.begin(), fs.end());
  }
  return complex_from_facets(nverts, facets);
}

// Random cover (U, V) of X: split the simplices and close both halves.
inline std::pair<SubSet, SubSet> rand_cover(Rng& rng, const SimplicialSetPtr& x) {
  std::vector<SimplexRef> left, right;
  std::uniform_int_distribution<int> coin(0, 2);
  for (SimplexRef s : x->all_simplices()) {
    int c = coin(rng);
    if (c == 0) left.push_back(s);
    else if (c == 1) right.push_back(s);
    else {
      left.push_back(s);
      right.push_back(s);
    }
  }
  return {generated_subset(x, left), generated_subset(x, right)};
}

}  // namespace plderham::testing
