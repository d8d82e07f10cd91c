#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "../vendor/CLI11.hpp"

#include "vtg/discretize.hpp"
#include "vtg/families.hpp"
#include "vtg/gh.hpp"
#include "vtg/metric.hpp"
#include "vtg/report.hpp"
#include "vtg/structure.hpp"

namespace {

using namespace vtg;

std::vector<i64> parse_i64_list(const std::string& text) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    out.push_back(std::stoll(cell));
  }
  if (out.empty()) fail_input("empty integer list");
  return out;
}

// Generator overrides arrive as semicolon-separated integer vectors,
// for example "1,0;0,1".
std::vector<Elem> parse_gens(const std::string& text) {
  std::vector<Elem> out;
  std::stringstream ss(text);
  std::string chunk;
  while (std::getline(ss, chunk, ';')) {
    if (chunk.empty()) continue;
    Elem e;
    std::stringstream cs(chunk);
    std::string cell;
    while (std::getline(cs, cell, ',')) e.push_back(std::stoll(cell));
    if (e.empty()) fail_input("empty generator vector in --gens");
    out.push_back(std::move(e));
  }
  if (out.empty()) fail_input("no generators in --gens");
  return out;
}

Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(std::stoll(text));
  return Rat(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

PolyhedralNorm load_norm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_input("cannot open norm file '" + path + "'");
  ordered_json j = ordered_json::parse(in, nullptr, true, true);
  if (!j.contains("vertices")) fail_input("norm file needs a 'vertices' list");
  std::vector<RVec> us;
  for (const auto& row : j["vertices"]) {
    RVec v;
    for (const auto& cell : row) {
      if (cell.is_string()) v.push_back(parse_rat(cell.get<std::string>()));
      else v.push_back(Rat(cell.get<i64>()));
    }
    us.push_back(std::move(v));
  }
  return norm_from_generators(us);
}

std::string digest_of(int argc, char** argv) {
  std::string joined;
  for (int i = 1; i < argc; ++i) {
    joined += argv[i];
    joined += '\n';
  }
  return hex64(fnv1a64(joined));
}

void emit_run_report(const RunReport& rep) {
  std::cout << run_report_json(rep).dump() << "\n";
}

struct CommonOpts {
  unsigned seed = kDefaultSeed;  // default documented in --help
  i64 budget = kDefaultBudget;
  std::string gens;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--seed", c.seed,
                  "random seed (default 2026; fixed seed gives byte-identical reports)");
  cmd->add_option("--budget", c.budget, "element/work budget for group enumeration");
  cmd->add_option("--gens", c.gens,
                  "generator override, semicolon-separated integer vectors (e.g. 1,0;0,1)");
}

FamilyBuild build_from_flags(const std::string& family, i64 n, const CommonOpts& c,
                             std::vector<Elem>& gens_storage) {
  FamilySpec f = FamilySpec::parse(family);
  f.seed = c.seed;
  const std::vector<Elem>* over = nullptr;
  if (!c.gens.empty()) {
    gens_storage = parse_gens(c.gens);
    over = &gens_storage;
  }
  return build_family(f, n, c.budget, over);
}

int cmd_build(const std::string& family, i64 n, std::string out, const CommonOpts& c,
              const std::string& digest) {
  std::vector<Elem> gens_storage;
  FamilyBuild b = build_from_flags(family, n, c, gens_storage);
  if (out.empty()) out = FamilySpec::parse(family).name() + "-" + std::to_string(n) + ".vtg";
  write_vtg(b.graph, out);
  std::cout << "vertices " << b.graph.n << " edges " << b.graph.edges.size() << "\n";
  emit_run_report({"build", digest, {out}, 0});
  return 0;
}

int cmd_analyze(const std::string& graph_path, const std::string& family, i64 n,
                const std::string& out, int doubling_q, i64 doubling_factor,
                const CommonOpts& c, const std::string& digest) {
  LabeledGraph g;
  if (!graph_path.empty()) {
    if (!family.empty()) fail_input("give either a graph file or --family, not both");
    g = read_vtg(graph_path);
  } else if (!family.empty()) {
    std::vector<Elem> gens_storage;
    g = build_from_flags(family, n, c, gens_storage).graph;
  } else {
    fail_input("analyze needs a graph file or --family with --n");
  }
  if (!g.connected()) fail_input("graph is disconnected");

  ordered_json bundle;
  bundle["vertices"] = g.n;
  bundle["edges"] = g.edges.size();
  i64 diam = diameter(g);
  bundle["diameter"] = diam;
  GrowthProfile prof = growth_profile(g, 0);
  bundle["growth"] = growth_json(prof);
  if (prof.r_max() >= 2) bundle["growth_fit"] = growth_exponent_fit(prof);
  bundle["doubling"] = doubling_json(doubling_report(prof, doubling_q, doubling_factor));
  DistanceField f0 = bfs(g, 0);
  bundle["caret"] = caret_json(max_caret_branch(g, 0, int(f0.ecc)));
  bundle["fat_triangle"] =
      triangle_json(find_fat_triangle(g, double(diam) / 8.0, 2000, 500, c.seed));
  bundle["line_defect"] =
      line_defect_json(line_defect(g, 0, std::max(1, f0.ecc / 2)));

  std::string text = bundle.dump(2) + "\n";
  std::vector<std::string> outputs;
  if (!out.empty()) {
    std::ofstream of(out);
    if (!of) fail_input("cannot write '" + out + "'");
    of << text;
    outputs.push_back(out);
  } else {
    std::cout << text;
  }
  emit_run_report({"analyze", digest, outputs, 0});
  return 0;
}

int cmd_certify(const std::string& family, const std::string& model,
                const std::string& n_list, double tol, int samples,
                const std::string& out, const CommonOpts& c, const std::string& digest) {
  FamilySpec f = FamilySpec::parse(family);
  f.seed = c.seed;
  std::vector<i64> sizes = parse_i64_list(n_list);

  ConvergenceOptions opt;
  opt.sample_vertices = samples;
  opt.seed = c.seed;
  opt.budget = c.budget;
  std::vector<Elem> gens_storage;
  if (!c.gens.empty()) {
    gens_storage = parse_gens(c.gens);
    opt.gens_override = &gens_storage;
  }

  // The model name must match the family's limit model: "circle" for
  // one-dimensional families, "l1-torus-k" with the right rank otherwise.
  // A .json path supplies a custom polyhedral norm on the same torus.
  PolyhedralNorm custom_norm;
  ModelKind want = family_model(f.kind);
  int want_dim = f.kind == FamilyKind::heisenberg ? 2 : f.k;
  if (model == "circle") {
    if (want != ModelKind::circle)
      fail_input("family '" + f.name() + "' does not converge to the circle model");
  } else if (model.rfind("l1-torus-", 0) == 0) {
    if (want != ModelKind::l1_torus)
      fail_input("family '" + f.name() + "' has no torus model");
    if (model != "l1-torus-" + std::to_string(want_dim))
      fail_input("torus model rank does not match the family");
  } else if (model.size() > 5 && model.substr(model.size() - 5) == ".json") {
    if (want != ModelKind::l1_torus)
      fail_input("custom norms apply to torus-model families only");
    custom_norm = load_norm_file(model);
    if (custom_norm.m != want_dim) fail_input("norm dimension does not match the family");
    opt.torus_norm = &custom_norm;
  } else {
    fail_input("unknown model '" + model + "'");
  }

  CertifyReport rep = certify_family(f, sizes, tol, opt);
  std::string csv = convergence_csv(rep.table);
  std::vector<std::string> outputs;
  if (!out.empty()) {
    std::ofstream of(out);
    if (!of) fail_input("cannot write '" + out + "'");
    of << csv;
    outputs.push_back(out);
  } else {
    std::cout << csv;
  }
  if (rep.pass) {
    std::cout << "PASS final_upper=" << format_double(rep.final_upper)
              << " tol=" << format_double(tol) << "\n";
    emit_run_report({"certify", digest, outputs, 0});
    return 0;
  }
  std::cout << "FAIL " << rep.fail_stage << "\n";
  emit_run_report({"certify", digest, outputs, 2});
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertex-transitive graph families: build, analyze, certify"};
  app.require_subcommand(1);

  std::string digest = digest_of(argc, argv);

  auto* build = app.add_subcommand("build", "construct a family member and write a vtg file");
  std::string b_family, b_out;
  i64 b_n = 0;
  CommonOpts b_c;
  build->add_option("--family", b_family, "family name")->required();
  build->add_option("--n", b_n, "family parameter")->required();
  build->add_option("--out,-o", b_out, "output vtg path (default <family>-<n>.vtg)");
  add_common(build, b_c);

  auto* analyze = app.add_subcommand("analyze", "metric and structure diagnostics for a graph");
  std::string a_graph, a_family, a_out;
  i64 a_n = 0;
  int a_q = 2;
  i64 a_factor = 2;
  CommonOpts a_c;
  analyze->add_option("graph", a_graph, "vtg graph file");
  analyze->add_option("--family", a_family, "build this family instead of reading a file");
  analyze->add_option("--n", a_n, "family parameter");
  analyze->add_option("--out,-o", a_out, "write the JSON bundle here instead of stdout");
  analyze->add_option("--doubling-q", a_q, "doubling exponent q");
  analyze->add_option("--doubling-factor", a_factor, "doubling scale factor");
  add_common(analyze, a_c);

  auto* certify = app.add_subcommand("certify", "certify convergence to a limit model");
  std::string c_family, c_model, c_nlist, c_out;
  double c_tol = 0.1;
  int c_samples = 120;
  CommonOpts c_c;
  certify->add_option("--family", c_family, "family name")->required();
  certify->add_option("--model", c_model, "circle | l1-torus-k | norm .json file")->required();
  certify->add_option("--n", c_nlist, "comma-separated family parameters")->required();
  certify->add_option("--tol", c_tol, "final bound tolerance (default 0.1)");
  certify->add_option("--samples", c_samples, "vertex sample size for distance pairs");
  certify->add_option("--out,-o", c_out, "write the CSV table here instead of stdout");
  add_common(certify, c_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (build->parsed()) return cmd_build(b_family, b_n, b_out, b_c, digest);
    if (analyze->parsed())
      return cmd_analyze(a_graph, a_family, a_n, a_out, a_q, a_factor, a_c, digest);
    if (certify->parsed())
      return cmd_certify(c_family, c_model, c_nlist, c_tol, c_samples, c_out, c_c, digest);
  } catch (const vtg::VtgError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == vtg::ErrorKind::certification ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
