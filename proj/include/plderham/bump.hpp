#pragma once

#include "plderham/global_form.hpp"

namespace plderham {

// Data for a PL bump function: face-closed L ⊆ K with ε(L) ⊆ K.
struct BumpSpec {
  SubSet l;
  SubSet k;
};

// Degree-0 global form φ with φ|_L = 1 and φ|_{⟨X∖K⟩} = 0, built by skeletal
// induction over ⟨ε(L)∖L⟩: 1 on L, 0 on simplices with no iterated face in
// L, a deterministic extension fill otherwise, and 0 outside ε(L). The
// assembled form is re-validated against all face operators before return.
GlobalForm bump_function(const BumpSpec& spec);

// ε(⟨V∖U⟩) ⊆ V, with the symmetric condition cross-checked (the two are
// equivalent; disagreement is a logic error). Throws when U ∪ V ≠ X.
bool good_intersection(const SubSet& u, const SubSet& v);

// (φ_U, φ_V) with φ_U + φ_V = 1, φ_U|_{⟨U∖V⟩} = 1 and φ_U|_{⟨X∖U⟩} = 0.
std::pair<GlobalForm, GlobalForm> partition_of_unity(const SubSet& u, const SubSet& v);

// Extend prescribed values on a face-closed subset to the whole host by
// skeletal extension fills (zero on untouched low skeleta).
GlobalForm extend_from_subset(const SimplicialSetPtr& host, const SubSet& w,
                              const std::map<SimplexRef, PolyForm>& values, int q);

}  // namespace plderham
