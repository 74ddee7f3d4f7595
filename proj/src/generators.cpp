#include "plderham/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace plderham {

SimplicialSetPtr complex_from_facets(int nverts, const std::vector<std::vector<int>>& facets,
                                     const std::vector<std::string>& vertex_labels) {
  // Collect every nonempty subset of every facet, dimension by dimension.
  std::vector<std::set<std::vector<int>>> simplices;  // simplices[d]: sorted vertex tuples
  auto note = [&](const std::vector<int>& verts) {
    int d = static_cast<int>(verts.size()) - 1;
    if (static_cast<int>(simplices.size()) <= d) simplices.resize(d + 1);
    simplices[d].insert(verts);
  };
  for (const auto& facet : facets) {
    std::vector<int> sorted = facet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("complex_from_facets: repeated vertex in facet");
    for (int v : sorted)
      if (v < 0 || v >= nverts) throw std::out_of_range("complex_from_facets: vertex id");
    int m = static_cast<int>(sorted.size());
    for (int mask = 1; mask < (1 << m); ++mask) {
      std::vector<int> sub;
      for (int k = 0; k < m; ++k)
        if (mask & (1 << k)) sub.push_back(sorted[k]);
      note(sub);
    }
  }
  for (int v = 0; v < nverts; ++v) note({v});

  std::map<std::vector<int>, SimplexRef> index;
  SimplicialSet::Builder b;
  for (int d = 0; d < static_cast<int>(simplices.size()); ++d) {
    for (const auto& verts : simplices[d]) {
      if (d == 0) {
        std::string label =
            verts[0] < static_cast<int>(vertex_labels.size()) ? vertex_labels[verts[0]] : "";
        index[verts] = b.add_vertex(std::move(label));
        continue;
      }
      std::vector<SimplexPtr> faces;
      for (int i = 0; i <= d; ++i) {
        std::vector<int> f = verts;
        f.erase(f.begin() + i);
        faces.push_back({index.at(f), {}});
      }
      index[verts] = b.add_simplex(d, std::move(faces));
    }
  }
  return b.build();
}

GeneratedSpace standard_simplex(int n) {
  if (n < 0) throw std::invalid_argument("standard_simplex: n < 0");
  std::vector<int> all(n + 1);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::string> labels;
  for (int v = 0; v <= n; ++v) labels.push_back("v" + std::to_string(v));
  GeneratedSpace g;
  g.space = complex_from_facets(n + 1, {all}, labels);
  g.description = "delta:" + std::to_string(n);
  if (n >= 1) {
    std::vector<SimplexRef> faces;
    for (int i = 0; i < g.space->count(n - 1); ++i) faces.push_back({n - 1, i});
    g.subsets.emplace("boundary", generated_subset(g.space, faces));
  }
  std::optional<SimplexRef> v0 = g.space->find_label("v0");
  g.subsets.emplace("vertex0", generated_subset(g.space, {*v0}));
  return g;
}

GeneratedSpace simplex_boundary(int n) {
  if (n < 1) throw std::invalid_argument("simplex_boundary: n < 1");
  std::vector<std::vector<int>> facets;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<int> f;
    for (int v = 0; v <= n; ++v)
      if (v != skip) f.push_back(v);
    facets.push_back(f);
  }
  std::vector<std::string> labels;
  for (int v = 0; v <= n; ++v) labels.push_back("v" + std::to_string(v));
  GeneratedSpace g;
  g.space = complex_from_facets(n + 1, facets, labels);
  g.description = "boundary:" + std::to_string(n);
  return g;
}

GeneratedSpace circle(int n) {
  if (n < 1) throw std::invalid_argument("circle: n < 1");
  GeneratedSpace g;
  g.description = "circle:" + std::to_string(n);
  if (n == 1) {
    SimplicialSet::Builder b;
    SimplexRef v = b.add_vertex("v0");
    b.add_simplex(1, {{v, {}}, {v, {}}}, "e0");
    g.space = b.build();
    return g;
  }
  if (n == 2) {
    SimplicialSet::Builder b;
    SimplexRef v0 = b.add_vertex("v0");
    SimplexRef v1 = b.add_vertex("v1");
    b.add_simplex(1, {{v1, {}}, {v0, {}}}, "e0");
    b.add_simplex(1, {{v1, {}}, {v0, {}}}, "e1");
    g.space = b.build();
    return g;
  }
  std::vector<std::vector<int>> facets;
  for (int i = 0; i < n; ++i) facets.push_back({i, (i + 1) % n});
  std::vector<std::string> labels;
  for (int v = 0; v < n; ++v) labels.push_back("v" + std::to_string(v));
  g.space = complex_from_facets(n, facets, labels);
  if (n >= 5) {
    // Two arcs with good intersection; the overlap is two disjoint arcs.
    auto edge_between = [&](int a, int b) -> SimplexRef {
      std::vector<int> key{std::min(a, b), std::max(a, b)};
      for (int i = 0; i < g.space->count(1); ++i) {
        std::vector<int> got{g.space->face_entry({1, i}, 1).base.index,
                             g.space->face_entry({1, i}, 0).base.index};
        std::sort(got.begin(), got.end());
        if (got == key) return {1, i};
      }
      throw std::logic_error("circle: edge lookup failed");
    };
    std::vector<SimplexRef> ugens, vgens;
    for (int i = 0; i < 3; ++i) ugens.push_back(edge_between(i, i + 1));
    for (int i = 2; i < n; ++i) vgens.push_back(edge_between(i, (i + 1) % n));
    vgens.push_back(edge_between(0, 1));
    g.subsets.emplace("U", generated_subset(g.space, ugens));
    g.subsets.emplace("V", generated_subset(g.space, vgens));
  }
  return g;
}

GeneratedSpace torus() {
  // One vertex, three edges (x horizontal, y vertical, d diagonal), two
  // triangles from the split square with both edge pairs identified.
  SimplicialSet::Builder b;
  SimplexRef v = b.add_vertex("v");
  SimplexRef x = b.add_simplex(1, {{v, {}}, {v, {}}}, "x");
  SimplexRef y = b.add_simplex(1, {{v, {}}, {v, {}}}, "y");
  SimplexRef dg = b.add_simplex(1, {{v, {}}, {v, {}}}, "d");
  b.add_simplex(2, {{y, {}}, {dg, {}}, {x, {}}}, "upper");
  b.add_simplex(2, {{x, {}}, {dg, {}}, {y, {}}}, "lower");
  GeneratedSpace g;
  g.space = b.build();
  g.description = "torus";
  return g;
}

GeneratedSpace torus_grid(int rows, int cols) {
  if (rows < 3 || cols < 3)
    throw std::invalid_argument("torus_grid: needs rows, cols >= 3");
  auto vid = [&](int r, int c) { return ((r % rows + rows) % rows) * cols + ((c % cols + cols) % cols); };
  std::vector<std::vector<int>> facets;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      facets.push_back({vid(r, c), vid(r, c + 1), vid(r + 1, c + 1)});
      facets.push_back({vid(r, c), vid(r + 1, c), vid(r + 1, c + 1)});
    }
  }
  std::vector<std::string> labels(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) labels[vid(r, c)] = "v" + std::to_string(r) + "_" + std::to_string(c);
  GeneratedSpace g;
  g.space = complex_from_facets(rows * cols, facets, labels);
  g.description = "torus-grid:" + std::to_string(rows) + "x" + std::to_string(cols);

  if (rows == 4) {
    // Cylinder bands of rows {0,1,2} and {2,3,0}; each overlap band is one
    // row wide, which is exactly what good intersection needs.
    auto band = [&](const std::vector<int>& band_rows) {
      std::vector<SimplexRef> gens;
      for (int t = 0; t < g.space->count(2); ++t) {
        std::vector<int> verts;
        SimplexRef tri{2, t};
        // vertices of the triangle via iterated faces
        SimplexRef e01 = g.space->face_entry(tri, 2).base;
        verts.push_back(g.space->face_entry(e01, 1).base.index);
        verts.push_back(g.space->face_entry(e01, 0).base.index);
        verts.push_back(g.space->face_entry(g.space->face_entry(tri, 0).base, 0).base.index);
        // the triangle lies in row r iff its vertices live on circles r, r+1
        int lo = rows;
        for (int v : verts) lo = std::min(lo, v / cols);
        bool wrap = false;
        for (int v : verts)
          if (v / cols == rows - 1) wrap = true;
        bool zero = false;
        for (int v : verts)
          if (v / cols == 0) zero = true;
        int row = (wrap && zero) ? rows - 1 : lo;
        if (std::find(band_rows.begin(), band_rows.end(), row) != band_rows.end())
          gens.push_back(tri);
      }
      return generated_subset(g.space, gens);
    };
    g.subsets.emplace("U", band({0, 1, 2}));
    g.subsets.emplace("V", band({2, 3, 0}));
  }
  return g;
}

GeneratedSpace cylinder(int n) {
  if (n < 3) throw std::invalid_argument("cylinder: n < 3");
  auto vid = [&](int i, int level) { return (i % n + n) % n + level * n; };
  std::vector<std::vector<int>> facets;
  for (int i = 0; i < n; ++i) {
    facets.push_back({vid(i, 0), vid(i + 1, 0), vid(i + 1, 1)});
    facets.push_back({vid(i, 0), vid(i, 1), vid(i + 1, 1)});
  }
  GeneratedSpace g;
  g.space = complex_from_facets(2 * n, facets);
  g.description = "cylinder:" + std::to_string(n);
  return g;
}

namespace {

// Direct layered construction used by the exhaustion-backed generators:
// vertices carry a birth level; simplices are sorted by (birth, key) so each
// level is a prefix of the next.
struct LayeredComplex {
  struct Vertex {
    int birth;
    std::vector<int> key;
    std::string label;
  };
  struct Cell {  // dimension >= 1, given by vertex ids (ascending)
    int birth;
    std::vector<int> verts;
  };
  std::vector<Vertex> vertices;  // sorted by (birth, key)
  std::vector<Cell> cells[3];    // edges, triangles (dims 1, 2)

  SimplicialSetPtr build(int level) const {
    SimplicialSet::Builder b;
    std::map<std::vector<int>, SimplexRef> index;
    for (size_t i = 0; i < vertices.size(); ++i) {
      if (vertices[i].birth > level) break;
      index[{static_cast<int>(i)}] = b.add_vertex(vertices[i].label);
    }
    for (int d = 1; d <= 2; ++d) {
      for (const auto& cell : cells[d]) {
        if (cell.birth > level) break;
        std::vector<SimplexPtr> faces;
        for (int i = 0; i <= d; ++i) {
          std::vector<int> f = cell.verts;
          f.erase(f.begin() + i);
          faces.push_back({index.at(f), {}});
        }
        index[cell.verts] = b.add_simplex(d, std::move(faces));
      }
    }
    return b.build();
  }

  void sort_all() {
    // vertices are expected pre-sorted; cells sorted by (birth, verts)
    for (int d = 1; d <= 2; ++d)
      std::sort(cells[d].begin(), cells[d].end(), [](const Cell& a, const Cell& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.verts < b.verts;
      });
  }
};

LayeredComplex line_data(int n, bool half) {
  LayeredComplex lc;
  std::vector<std::pair<std::vector<int>, int>> order;  // (key=(|i|,i), i)
  int lo = half ? 0 : -n;
  for (int i = lo; i <= n; ++i) order.push_back({{std::abs(i), i}, i});
  std::sort(order.begin(), order.end());
  std::map<int, int> vert_id;
  for (const auto& [key, i] : order) {
    vert_id[i] = static_cast<int>(lc.vertices.size());
    lc.vertices.push_back({std::abs(i), key, "v(" + std::to_string(i) + ")"});
  }
  for (int i = lo; i < n; ++i) {
    std::vector<int> verts{vert_id[i], vert_id[i + 1]};
    std::sort(verts.begin(), verts.end());
    lc.cells[1].push_back({std::max(std::abs(i), std::abs(i + 1)), verts});
  }
  lc.sort_all();
  return lc;
}

GeneratedSpace line_space(int n, bool half) {
  GeneratedSpace g;
  g.space = line_data(n, half).build(n);
  g.description = (half ? "half-line:" : "real-line:") + std::to_string(n);
  Exhaustion ex;
  ex.name = g.description;
  ex.layered = true;
  ex.level = [half](int k) { return line_data(k, half).build(k); };
  g.exhaustion = ex;
  return g;
}

int hexdist(int a, int b) { return (std::abs(a) + std::abs(b) + std::abs(a + b)) / 2; }

}  // namespace

GeneratedSpace real_line(int n) {
  if (n < 1) throw std::invalid_argument("real_line: n < 1");
  return line_space(n, false);
}

GeneratedSpace half_line(int n) {
  if (n < 1) throw std::invalid_argument("half_line: n < 1");
  return line_space(n, true);
}

LayeredComplex tessellation_data(int radius) {
  LayeredComplex lc;
  // Vertices: axial lattice coordinates within the hexagonal patch.
  std::vector<std::pair<std::vector<int>, std::pair<int, int>>> order;
  for (int a = -radius; a <= radius; ++a)
    for (int b = -radius; b <= radius; ++b)
      if (hexdist(a, b) <= radius) order.push_back({{hexdist(a, b), a, b}, {a, b}});
  std::sort(order.begin(), order.end());
  std::map<std::pair<int, int>, int> vert_id;
  for (const auto& [key, ab] : order) {
    vert_id[ab] = static_cast<int>(lc.vertices.size());
    std::string label = (ab.first == 0 && ab.second == 0)
                            ? "origin"
                            : "v(" + std::to_string(ab.first) + "," +
                                  std::to_string(ab.second) + ")";
    lc.vertices.push_back({key[0], key, label});
  }
  auto have = [&](int a, int b) { return vert_id.count({a, b}) > 0; };
  auto add_cell = [&](int dim, std::vector<std::pair<int, int>> pts) {
    int birth = 0;
    std::vector<int> verts;
    for (auto [a, b] : pts) {
      birth = std::max(birth, hexdist(a, b));
      verts.push_back(vert_id.at({a, b}));
    }
    std::sort(verts.begin(), verts.end());
    lc.cells[dim].push_back({birth, verts});
  };
  // Edges along the three lattice directions; triangles up and down. The
  // anchor (a,b) scans one ring beyond the patch: a cell belongs to the
  // patch exactly when all of its own vertices do.
  for (int a = -radius - 1; a <= radius + 1; ++a) {
    for (int b = -radius - 1; b <= radius + 1; ++b) {
      if (have(a, b))
        for (auto [da, db] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, -1}})
          if (have(a + da, b + db)) add_cell(1, {{a, b}, {a + da, b + db}});
      if (have(a, b) && have(a + 1, b) && have(a, b + 1))
        add_cell(2, {{a, b}, {a + 1, b}, {a, b + 1}});
      if (have(a + 1, b) && have(a, b + 1) && have(a + 1, b + 1))
        add_cell(2, {{a + 1, b}, {a, b + 1}, {a + 1, b + 1}});
    }
  }
  lc.sort_all();
  return lc;
}

GeneratedSpace plane_tessellation(int radius) {
  if (radius < 1) throw std::invalid_argument("plane_tessellation: radius < 1");
  GeneratedSpace g;
  g.space = tessellation_data(radius).build(radius);
  g.description = "tessellation:" + std::to_string(radius);
  auto origin = g.space->find_label("origin");
  g.subsets.emplace("origin", generated_subset(g.space, {*origin}));
  Exhaustion ex;
  ex.name = g.description;
  ex.layered = true;
  ex.level = [](int k) { return tessellation_data(k).build(k); };
  g.exhaustion = ex;
  return g;
}

PushoutScenario scenario_disjoint_union() {
  PushoutScenario s;
  s.name = "disjoint-union";
  s.finite = true;
  s.at_level = [](int) {
    SimplicialSet::Builder empty;
    SimplicialSetPtr w = empty.build();
    SimplicialSetPtr u = circle(3).space;
    SimplicialSetPtr v = standard_simplex(1).space;
    SimplicialMap f(w, u, {});
    SimplicialMap inc(w, v, {});
    return PushoutData{w, u, v, f, inc};
  };
  return s;
}

PushoutScenario scenario_circle_glue() {
  PushoutScenario s;
  s.name = "circle-glue";
  s.finite = true;
  s.at_level = [](int) {
    SimplicialSetPtr w = simplex_boundary(1).space;  // two points
    SimplicialSetPtr u = standard_simplex(0).space;  // one point
    SimplicialSetPtr v = standard_simplex(1).space;  // the interval
    // f collapses both endpoints; ι is the boundary inclusion.
    SimplicialMap f(w, u, {{{{0, 0}, {}}, {{0, 0}, {}}}});
    SimplicialMap inc(w, v, {{{{0, 0}, {}}, {{0, 1}, {}}}});
    return PushoutData{w, u, v, f, inc};
  };
  return s;
}

PushoutScenario scenario_line_glue() {
  PushoutScenario s;
  s.name = "line-glue";
  s.finite = false;
  GeneratedSpace u_gen = half_line(1);
  GeneratedSpace v_gen = half_line(1);
  s.ex_u = u_gen.exhaustion;
  s.ex_v = v_gen.exhaustion;
  s.at_level = [ex_u = *u_gen.exhaustion, ex_v = *v_gen.exhaustion](int level) {
    SimplicialSet::Builder wb;
    wb.add_vertex("v(0)");
    SimplicialSetPtr w = wb.build();
    SimplicialSetPtr u = ex_u.level(level);
    SimplicialSetPtr v = ex_v.level(level);
    // vertex 0 is index 0 in both half lines
    SimplicialMap f(w, u, {{{{0, 0}, {}}}});
    SimplicialMap inc(w, v, {{{{0, 0}, {}}}});
    return PushoutData{w, u, v, f, inc};
  };
  Exhaustion ex_x;
  ex_x.name = "line-glue glued space";
  ex_x.layered = true;
  ex_x.level = [at = s.at_level](int k) {
    PushoutData d = at(k);
    return pushout(d.f, d.inc).space;
  };
  s.ex_x = ex_x;
  return s;
}

GeneratedSpace make_space(const std::string& spec) {
  std::string name = spec, arg;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    arg = spec.substr(colon + 1);
  }
  auto int_arg = [&](int fallback) {
    if (arg.empty()) return fallback;
    return std::stoi(arg);
  };
  if (name == "delta") return standard_simplex(int_arg(2));
  if (name == "boundary") return simplex_boundary(int_arg(2));
  if (name == "circle") return circle(int_arg(6));
  if (name == "torus") return torus();
  if (name == "torus-grid") {
    int rows = 4, cols = 3;
    if (!arg.empty()) {
      auto xpos = arg.find('x');
      if (xpos == std::string::npos)
        throw std::invalid_argument("torus-grid wants ROWSxCOLS");
      rows = std::stoi(arg.substr(0, xpos));
      cols = std::stoi(arg.substr(xpos + 1));
    }
    return torus_grid(rows, cols);
  }
  if (name == "cylinder") return cylinder(int_arg(6));
  if (name == "real-line") return real_line(int_arg(4));
  if (name == "half-line") return half_line(int_arg(4));
  if (name == "tessellation") return plane_tessellation(int_arg(2));
  throw std::invalid_argument("unknown generator: " + name);
}

PushoutScenario make_scenario(const std::string& name) {
  if (name == "disjoint-union") return scenario_disjoint_union();
  if (name == "circle-glue") return scenario_circle_glue();
  if (name == "line-glue") return scenario_line_glue();
  throw std::invalid_argument("unknown scenario: " + name);
}

std::vector<std::string> generator_names() {
  return {"delta:N", "boundary:N",  "circle:N",    "torus",      "torus-grid:RxC",
          "cylinder:N", "real-line:N", "half-line:N", "tessellation:R"};
}

std::vector<std::string> scenario_names() {
  return {"disjoint-union", "circle-glue", "line-glue"};
}

}  // namespace plderham
