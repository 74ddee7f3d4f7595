#pragma once

#include <memory>

#include "plderham/cochain.hpp"
#include "plderham/form_complex.hpp"

namespace plderham {

// The graded complex of a form window.
ChainComplexQ window_complex(const FormWindow& w);

// Integration matrix of ρ in degree q: rows are the normalized-cochain basis
// simplices, columns the window basis forms; entry = ∫ ω|σ. Vanishing on
// degenerate simplices is structural (the basis has none).
SparseMatrix rho_matrix(const FormWindow& w, const NormalizedBasis& nc, int q);

// ρ applied to an arbitrary global form, as a normalized cochain.
std::vector<Rational> rho_cochain(const GlobalForm& w, const NormalizedBasis& nc);

struct DerhamReport {
  std::string space;
  int degree_bound = 0;
  bool relative = false;
  bool compact = false;
  std::vector<int> a_betti, c_betti;
  bool rho_chain_map = false;
  bool rho_iso = false;
  bool window_stable = false;       // A-side cohomology equal at D and D+1
  bool multiplicative = true;       // on sampled representative pairs
  int pairs_checked = 0;
  int stabilization_level = -1;     // compact variant only
  bool colimit_stabilized = true;   // compact variant only
  std::vector<std::string> notes;

  bool passed() const;
  std::string to_text() const;
  std::string to_json() const;
};

// PL de Rham comparison for a finite space, absolute (rel = nullptr) or
// relative. The A-side window is checked for stability against D+1.
DerhamReport derham_check(const SimplicialSetPtr& x, const SubSet* rel, int degree_bound,
                          const std::string& description);

// One level of the H_c directed system and the stabilized colimit.
struct ColimitResult {
  std::vector<std::vector<int>> level_betti;
  std::vector<bool> map_iso;        // level n -> n+1
  bool stabilized = false;
  int level = -1;                   // certificate: maps n and n+1 are isos
  std::vector<int> betti;           // stable value
  std::string detail;
  // retained machinery at each level (shared for reuse by callers)
  std::vector<std::shared_ptr<FormWindow>> windows;          // A-side only
  std::vector<std::shared_ptr<Cohomology>> cohomologies;
  SimplicialSetPtr ambient;
  std::vector<SubSet> complements;  // ⟨X∖K_n⟩ per level
};

// H_c via colim_K H A^*(X, ⟨X∖K⟩) over the exhaustion's truncations.
ColimitResult colimit_hc_forms(const Exhaustion& ex, int degree_bound, int n_max);
// Same directed system on normalized cochains.
ColimitResult colimit_hc_cochains(const Exhaustion& ex, int n_max);

// An exhaustion constant at a finite space (the constant directed system).
Exhaustion constant_exhaustion(const SimplicialSetPtr& x);

// Compactly supported comparison: ρ_c between the stabilized colimits.
DerhamReport derham_check_compact(const Exhaustion& ex, int degree_bound, int n_max,
                                  const std::string& description);

}  // namespace plderham
