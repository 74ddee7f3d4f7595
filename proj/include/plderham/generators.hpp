#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plderham/simplicial.hpp"

namespace plderham {

struct GeneratedSpace {
  SimplicialSetPtr space;
  std::map<std::string, SubSet> subsets;   // named scenario subsets
  std::optional<Exhaustion> exhaustion;    // present for locally finite families
  std::string description;
};

// Simplicial complex from its facets: all nonempty vertex subsets of the
// facets become the non-degenerate simplices, faces drop one vertex.
SimplicialSetPtr complex_from_facets(int nverts, const std::vector<std::vector<int>>& facets,
                                     const std::vector<std::string>& vertex_labels = {});

GeneratedSpace standard_simplex(int n);   // Δⁿ, with "boundary" subset
GeneratedSpace simplex_boundary(int n);   // ∂Δⁿ
GeneratedSpace circle(int n);             // n-gon; n=1,2 use identified models
GeneratedSpace torus();                   // 1 vertex, 3 edges, 2 triangles
GeneratedSpace torus_grid(int rows, int cols);  // rows=4 carries the cylinder cover U,V
GeneratedSpace cylinder(int n);           // triangulated S¹ × I
GeneratedSpace real_line(int n);          // 2n+1 vertices; exhaustion by |i| <= k
GeneratedSpace half_line(int n);          // vertices 0..n; exhaustion
GeneratedSpace plane_tessellation(int radius);  // equilateral lattice patch; "origin"

// Pushout scenario U <-f- W -ι-> V, possibly truncation-parametrized.
struct PushoutData {
  SimplicialSetPtr w, u, v;
  SimplicialMap f;    // W -> U
  SimplicialMap inc;  // W -> V, an inclusion
};

struct PushoutScenario {
  std::string name;
  bool finite = true;
  std::function<PushoutData(int)> at_level;  // level ignored when finite
  // Exhaustions of the corners and the glued space, for H_c pipelines.
  std::optional<Exhaustion> ex_u, ex_v, ex_x;
};

PushoutScenario scenario_disjoint_union();  // W = ∅, U = circle(3), V = Δ¹
PushoutScenario scenario_circle_glue();     // W = ∂Δ¹, U = pt, V = Δ¹
PushoutScenario scenario_line_glue();       // W = pt, U = V = half lines

// Parse "name" or "name:arg" (e.g. "delta:2", "torus-grid:4x3").
GeneratedSpace make_space(const std::string& spec);
PushoutScenario make_scenario(const std::string& name);
std::vector<std::string> generator_names();
std::vector<std::string> scenario_names();

}  // namespace plderham
