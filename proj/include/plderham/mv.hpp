#pragma once

#include "plderham/bump.hpp"
#include "plderham/derham.hpp"
#include "plderham/generators.hpp"

namespace plderham {

struct SesLevel {
  int q = 0;
  bool theta1_injective = false;
  bool middle_exact = false;
  bool theta2_surjective = false;
  bool ok() const { return theta1_injective && middle_exact && theta2_surjective; }
};

struct LesNode {
  int q = 0;
  std::string at;  // which group of the sequence
  int rank_in = 0;
  int ker_out = 0;
  bool compose_zero = false;
  bool exact = false;
};

struct MvReport {
  std::string description;
  int version = 1;
  int degree_bound = 0;
  int extended_bound = 0;  // window used for connecting-map classes
  std::vector<int> betti_x, betti_u, betti_v, betti_right;
  std::vector<SesLevel> ses;
  std::vector<LesNode> les;
  bool window_stable = true;  // H(X) agrees with the extended window
  bool g_proper = true, h_proper = true;  // v2 conclusions
  int stabilization_level = -1;           // v2 over exhaustions
  std::vector<std::string> notes;

  bool ses_exact() const;
  bool les_exact() const;
  bool passed() const;
  std::string to_text() const;
  std::string to_json() const;
};

// Version 1: cover (U, V) of a finite simplicial set with good intersection.
// Builds the compactly supported SES with the partition-of-unity splitting,
// verifies exactness degreewise, then derives and verifies the long exact
// sequence with an explicit connecting map.
MvReport mv_v1(const SubSet& u, const SubSet& v, int degree_bound);

// Version 2: pushout X = U ⊔_W V with ι an inclusion, f proper, V locally
// finite. Finite scenarios run over the constant directed system; exhaustion
// scenarios run the full H_c machinery with stabilization certificates.
MvReport mv_v2(const PushoutScenario& scenario, int degree_bound, int n_max = 4);

ChainComplexQ block_sum(const ChainComplexQ& a, const ChainComplexQ& b);

}  // namespace plderham
