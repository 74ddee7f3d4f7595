// plderham command line: load or generate simplicial sets, run the
// cohomology / de Rham / Mayer-Vietoris pipelines, emit reports.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "plderham/bump.hpp"
#include "plderham/derham.hpp"
#include "plderham/generators.hpp"
#include "plderham/io.hpp"
#include "plderham/mv.hpp"

using namespace plderham;

namespace {

struct CommonOpts {
  std::string input;        // file path
  std::string space_spec;   // generator spec
  int degree = -1;          // -1: pick max_dim + 1
  int exhaustion = 4;
  bool strict = false;
  std::string format = "text";
  std::string out_path;
};

void emit(const CommonOpts& opts, const std::string& text, const std::string& json) {
  const std::string& payload = opts.format == "structured" ? json : text;
  if (opts.out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(opts.out_path);
    if (!f) throw std::runtime_error("cannot write " + opts.out_path);
    f << payload;
    if (!payload.empty() && payload.back() != '\n') f << "\n";
  }
}

// Resolve the working space: generated or the (single/named) space of a file.
struct Loaded {
  GeneratedSpace gen;
  Document doc;  // empty when generated
  bool from_file = false;
};

Loaded load(const CommonOpts& opts, const std::string& space_name = "") {
  Loaded out;
  if (!opts.space_spec.empty()) {
    out.gen = make_space(opts.space_spec);
    return out;
  }
  if (opts.input.empty())
    throw CLI::ValidationError("provide an input file or --space");
  out.from_file = true;
  out.doc = read_document_file(opts.input);
  std::string name = space_name;
  if (name.empty()) {
    if (out.doc.space_order.size() != 1)
      throw std::runtime_error("file holds several spaces; name one");
    name = out.doc.space_order.front();
  }
  auto it = out.doc.spaces.find(name);
  if (it == out.doc.spaces.end()) throw std::runtime_error("no space named " + name);
  out.gen.space = it->second;
  out.gen.description = name;
  for (const auto& [sname, entry] : out.doc.subsets)
    if (entry.first == name) out.gen.subsets.emplace(sname, entry.second);
  return out;
}

SubSet named_subset(const Loaded& loaded, const std::string& name) {
  auto it = loaded.gen.subsets.find(name);
  if (it != loaded.gen.subsets.end()) return it->second;
  // fall back to a labeled simplex: the subset it generates
  auto ref = loaded.gen.space->find_label(name);
  if (ref) return generated_subset(loaded.gen.space, {*ref});
  throw std::runtime_error("no subset or labeled simplex named " + name);
}

int pick_degree(const CommonOpts& opts, const SimplicialSetPtr& x) {
  if (opts.degree >= 1) return opts.degree;
  return x->max_dim() + 1;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_input = true) {
  if (with_input) {
    cmd->add_option("input", opts.input, "input file in the simplicial text format");
    cmd->add_option("--space", opts.space_spec,
                    "generate a built-in space instead of reading a file");
  }
  cmd->add_option("--degree", opts.degree, "polynomial-degree window bound D");
  cmd->add_option("--exhaustion", opts.exhaustion, "truncation depth for colimits");
  cmd->add_flag("--strict", opts.strict, "nonzero exit on any negative verdict");
  cmd->add_option("--format", opts.format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  cmd->add_option("--out", opts.out_path, "write the report to a file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compactly supported PL de Rham machinery"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool failed_verdict = false;

  // --- generate ---
  std::string gen_spec;
  auto* cmd_generate = app.add_subcommand("generate", "emit a built-in space");
  cmd_generate->add_option("name", gen_spec, "generator, e.g. torus, tessellation:2")
      ->required();
  add_common(cmd_generate, opts, false);
  cmd_generate->callback([&] {
    GeneratedSpace g = make_space(gen_spec);
    std::ostringstream os;
    write_space(os, g.description, *g.space);
    for (const auto& [name, sub] : g.subsets) write_subset(os, g.description, name, sub);
    emit(opts, os.str(), os.str());
  });

  // --- validate ---
  auto* cmd_validate = app.add_subcommand("validate", "check the simplicial identities");
  add_common(cmd_validate, opts);
  cmd_validate->callback([&] {
    if (opts.input.empty()) throw CLI::ValidationError("validate wants a file");
    Document doc = read_document_file(opts.input, /*validate=*/false);
    std::ostringstream os;
    nlohmann::json j;
    bool ok = true;
    for (const auto& name : doc.space_order) {
      auto it = doc.issues.find(name);
      if (it == doc.issues.end()) {
        os << "space " << name << ": ok\n";
        j[name] = nlohmann::json::array();
      } else {
        ok = false;
        os << "space " << name << ": INVALID\n";
        for (const auto& line : it->second) os << "  " << line << "\n";
        j[name] = it->second;
      }
    }
    failed_verdict = !ok;
    emit(opts, os.str(), j.dump(2));
  });

  // --- cohomology ---
  std::string rel_name;
  bool with_full = false;
  auto* cmd_cohomology =
      app.add_subcommand("cohomology", "simplicial cohomology (normalized cochains)");
  add_common(cmd_cohomology, opts);
  cmd_cohomology->add_option("--relative", rel_name, "subset A for H(X, A)");
  cmd_cohomology->add_flag("--full", with_full,
                           "also compute the full (unnormalized) complex");
  std::string dump_path;
  cmd_cohomology->add_option("--dump-matrices", dump_path,
                             "write the differential matrices (exact, row-major)");
  cmd_cohomology->callback([&] {
    Loaded loaded = load(opts);
    const SimplicialSetPtr& x = loaded.gen.space;
    std::optional<SubSet> rel;
    if (!rel_name.empty()) rel = named_subset(loaded, rel_name);
    ChainComplexQ complex_copy = normalized_cochains(x, rel ? &*rel : nullptr);
    if (!dump_path.empty()) {
      std::ofstream mf(dump_path);
      if (!mf) throw std::runtime_error("cannot write " + dump_path);
      for (int q = 0; q < complex_copy.top(); ++q)
        write_matrix(mf, "d" + std::to_string(q), complex_copy.d[q]);
    }
    Cohomology h(std::move(complex_copy));
    std::ostringstream os;
    nlohmann::json j;
    os << "space: " << loaded.gen.description << "\n";
    j["space"] = loaded.gen.description;
    os << "normalized Betti:";
    for (int q = 0; q <= h.top(); ++q) os << " " << h.betti(q);
    os << "\n";
    j["betti"] = h.betti_vector();
    if (with_full) {
      Cohomology hf(full_cochains(x, x->max_dim() + 2));
      os << "full-complex Betti:";
      std::vector<int> fb;
      for (int q = 0; q <= x->max_dim(); ++q) {
        fb.push_back(hf.betti(q));
        os << " " << hf.betti(q);
      }
      os << "\n";
      j["full_betti"] = fb;
      bool agree = true;
      for (int q = 0; q <= x->max_dim(); ++q)
        agree = agree && hf.betti(q) == h.betti(q);
      os << "normalized vs full: " << (agree ? "agree" : "DISAGREE") << "\n";
      j["normalized_vs_full"] = agree;
      failed_verdict = failed_verdict || !agree;
    }
    emit(opts, os.str(), j.dump(2));
  });

  // --- cohomology-compact ---
  auto* cmd_hc = app.add_subcommand(
      "cohomology-compact", "compactly supported cohomology via the colimit");
  add_common(cmd_hc, opts);
  cmd_hc->callback([&] {
    Loaded loaded = load(opts);
    Exhaustion ex = loaded.gen.exhaustion ? *loaded.gen.exhaustion
                                          : constant_exhaustion(loaded.gen.space);
    ColimitResult res = colimit_hc_cochains(ex, opts.exhaustion);
    std::ostringstream os;
    nlohmann::json j;
    os << "space: " << loaded.gen.description << "\n";
    j["space"] = loaded.gen.description;
    for (size_t n = 0; n < res.level_betti.size(); ++n) {
      os << "level " << (n + 1) << " Betti:";
      for (int b : res.level_betti[n]) os << " " << b;
      os << "\n";
    }
    j["level_betti"] = res.level_betti;
    if (res.stabilized) {
      os << "stabilized at n = " << res.level << "; H_c:";
      for (int b : res.betti) os << " " << b;
      os << "\n";
      j["stabilized"] = true;
      j["level"] = res.level;
      j["betti"] = res.betti;
    } else {
      os << res.detail << "\n";
      j["stabilized"] = false;
      j["detail"] = res.detail;
      failed_verdict = true;
    }
    emit(opts, os.str(), j.dump(2));
  });

  // --- derham-check ---
  bool compact = false;
  auto* cmd_derham = app.add_subcommand("derham-check", "PL de Rham comparison");
  add_common(cmd_derham, opts);
  cmd_derham->add_option("--relative", rel_name, "subset A for the relative theorem");
  cmd_derham->add_flag("--compact", compact, "compactly supported comparison");
  cmd_derham->callback([&] {
    Loaded loaded = load(opts);
    const SimplicialSetPtr& x = loaded.gen.space;
    DerhamReport rep;
    if (compact) {
      Exhaustion ex = loaded.gen.exhaustion ? *loaded.gen.exhaustion
                                            : constant_exhaustion(x);
      rep = derham_check_compact(ex, pick_degree(opts, x), opts.exhaustion,
                                 loaded.gen.description);
    } else if (!rel_name.empty()) {
      SubSet rel = named_subset(loaded, rel_name);
      rep = derham_check(x, &rel, pick_degree(opts, x), loaded.gen.description);
    } else {
      rep = derham_check(x, nullptr, pick_degree(opts, x), loaded.gen.description);
    }
    failed_verdict = !rep.passed();
    emit(opts, rep.to_text(), rep.to_json());
  });

  // --- mv-check ---
  bool v1 = false, v2 = false;
  std::string uname = "U", vname = "V", scenario_name;
  auto* cmd_mv = app.add_subcommand("mv-check", "Mayer-Vietoris sequences");
  add_common(cmd_mv, opts);
  cmd_mv->add_flag("--v1", v1, "cover version (needs subsets U and V)");
  cmd_mv->add_flag("--v2", v2, "pushout version (needs a scenario or map file)");
  cmd_mv->add_option("--u", uname, "name of the first cover subset");
  cmd_mv->add_option("--v", vname, "name of the second cover subset");
  cmd_mv->add_option("--scenario", scenario_name,
                     "built-in pushout scenario: disjoint-union, circle-glue, line-glue");
  cmd_mv->callback([&] {
    if (v1 == v2) throw CLI::ValidationError("pick exactly one of --v1/--v2");
    MvReport rep;
    if (v1) {
      Loaded loaded = load(opts);
      SubSet u = named_subset(loaded, uname);
      SubSet v = named_subset(loaded, vname);
      rep = mv_v1(u, v, pick_degree(opts, loaded.gen.space));
      rep.description = loaded.gen.description;
    } else {
      PushoutScenario sc;
      if (!scenario_name.empty()) {
        sc = make_scenario(scenario_name);
      } else {
        if (opts.input.empty())
          throw CLI::ValidationError("mv-check --v2 wants --scenario or a map file");
        // file-driven: spaces W,U,V with maps f: W->U and i: W->V
        Document doc = read_document_file(opts.input);
        auto fit = doc.maps.find("f");
        auto iit = doc.maps.find("i");
        if (fit == doc.maps.end() || iit == doc.maps.end())
          throw std::runtime_error("mv-check --v2 file needs maps named f and i");
        PushoutData data{fit->second.source(), fit->second.target(),
                         iit->second.target(), fit->second, iit->second};
        sc.name = opts.input;
        sc.finite = true;
        sc.at_level = [data](int) { return data; };
      }
      int d = opts.degree >= 1 ? opts.degree : 2;
      rep = mv_v2(sc, d, opts.exhaustion);
    }
    failed_verdict = !rep.passed();
    emit(opts, rep.to_text(), rep.to_json());
  });

  // --- bump ---
  std::string lname = "L", kname;
  auto* cmd_bump = app.add_subcommand("bump", "emit a PL bump function");
  add_common(cmd_bump, opts);
  cmd_bump->add_option("--l", lname, "subset (or labeled simplex) L");
  cmd_bump->add_option("--k", kname, "subset K (default: ε(L))");
  cmd_bump->callback([&] {
    Loaded loaded = load(opts);
    SubSet l = named_subset(loaded, lname);
    SubSet k = kname.empty() ? minimal_neighborhood(l) : named_subset(loaded, kname);
    GlobalForm phi = bump_function({l, k});
    std::ostringstream os;
    write_form(os, "bump", loaded.gen.description, phi);
    emit(opts, os.str(), os.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return (opts.strict && failed_verdict) ? 1 : 0;
}
