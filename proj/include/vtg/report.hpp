#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "../../vendor/json.hpp"

#include "vtg/discretize.hpp"
#include "vtg/gh.hpp"
#include "vtg/limit_models.hpp"
#include "vtg/metric.hpp"
#include "vtg/structure.hpp"

namespace vtg {

using ordered_json = nlohmann::ordered_json;

// Fixed-width decimal rendering keeps CSV output byte-identical across runs.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

inline ordered_json covering_json(const CoveringReport& r) {
  return ordered_json{{"eps", r.eps},
                      {"greedy_upper", r.greedy_upper},
                      {"packing_lower", r.packing_lower}};
}

inline ordered_json doubling_json(const DoublingReport& r) {
  ordered_json ratios = ordered_json::array();
  for (const auto& [radius, ratio] : r.ratios)
    ratios.push_back(ordered_json::array({radius, ratio}));
  return ordered_json{{"factor", r.factor},
                      {"q", r.q},
                      {"K", r.K},
                      {"witness_radius", r.witness_radius},
                      {"ratios", ratios}};
}

inline ordered_json growth_json(const GrowthProfile& p) {
  return ordered_json{{"source", p.source},
                      {"counts", p.counts},
                      {"stabilized", p.stabilized}};
}

inline ordered_json caret_json(const CaretSearchResult& r) {
  ordered_json j{{"branch_length", r.branch_length}};
  if (r.caret.has_value()) {
    j["center"] = r.caret->center;
    ordered_json branches = ordered_json::array();
    for (const auto& b : r.caret->branches) branches.push_back(b);
    j["branches"] = branches;
  }
  return j;
}

inline ordered_json triangle_json(const FatTriangleResult& r) {
  ordered_json j{{"found", r.found}, {"evaluated", r.evaluated}};
  if (r.found) {
    j["fatness"] = r.best.fatness;
    j["corners"] = r.best.corners;
    ordered_json sides = ordered_json::array();
    for (const auto& s : r.best.sides) sides.push_back(s);
    j["sides"] = sides;
  }
  return j;
}

inline ordered_json net_json(const NetDecomposition& n) {
  ordered_json h_edges = ordered_json::array();
  for (const auto& [u, v] : n.h.edges)
    h_edges.push_back(ordered_json::array({u, v}));
  return ordered_json{{"c", n.c},
                      {"graph_diameter", n.graph_diameter},
                      {"sep_hops", n.sep_hops},
                      {"ball_hops", n.ball_hops},
                      {"centers", n.centers},
                      {"h_edges", h_edges},
                      {"h_is_cycle", n.h_is_cycle},
                      {"sector_of", n.sector_of},
                      {"sectors_valid", n.sectors_valid}};
}

inline ordered_json cycle_json(const GeodesicCycle& c) {
  return ordered_json{{"vertices", c.vertices},
                      {"length", c.length},
                      {"certified", c.certified}};
}

inline ordered_json line_defect_json(const LineDefectReport& r) {
  return ordered_json{{"defect", r.defect},
                      {"segment", r.segment},
                      {"segments_tried", r.segments_tried}};
}

inline ordered_json map_distortion_json(const MapDistortionReport& r) {
  return ordered_json{{"max_pair_error", r.max_pair_error},
                      {"codensity", r.codensity},
                      {"eps", r.eps},
                      {"gh_upper", r.gh_upper},
                      {"pairs_checked", r.pairs_checked},
                      {"worst_pair", ordered_json::array({r.worst_u, r.worst_v})}};
}

inline ordered_json gh_lower_json(const GhLowerReport& r) {
  return ordered_json{{"value", r.value},
                      {"diam_gap", r.diam_gap},
                      {"best_eps", r.best_eps}};
}

inline ordered_json brute_json(const BruteForceResult& r) {
  return ordered_json{{"value", r.value},
                      {"f", r.f},
                      {"g", r.g},
                      {"nodes", r.nodes}};
}

inline ordered_json certificate_json(const CircleCertificate& c) {
  return ordered_json{{"c", c.c},
                      {"diameter", c.diameter},
                      {"cycle_length", c.cycle_length},
                      {"tube_radius", c.tube_radius},
                      {"bound", c.bound},
                      {"volume_small", c.volume_small},
                      {"volume_threshold", c.volume_threshold},
                      {"cycle", c.loop.vertices},
                      {"net_centers", c.net.centers}};
}

inline ordered_json rvec_json(const RVec& v) {
  ordered_json a = ordered_json::array();
  for (const Rat& r : v) a.push_back(r.str());
  return a;
}

// Vertex and supporting-inequality lists with exact rational entries.
inline ordered_json norm_json(const PolyhedralNorm& n) {
  ordered_json verts = ordered_json::array();
  for (const RVec& v : n.vertices) verts.push_back(rvec_json(v));
  ordered_json facets = ordered_json::array();
  for (const RVec& f : n.facets) facets.push_back(rvec_json(f));
  return ordered_json{{"dim", n.m}, {"vertices", verts}, {"facets", facets}};
}

inline ordered_json qi_json(const QiReport& r) {
  return ordered_json{{"lipschitz_ok", r.lipschitz_ok},
                      {"chain_ok", r.chain_ok},
                      {"multiplicative", r.multiplicative},
                      {"additive", r.additive},
                      {"worst_pair", ordered_json::array({r.worst_u, r.worst_v})}};
}

inline std::string convergence_csv(const ConvergenceReport& rep) {
  std::string out = "n,size,diameter,max_error,gh_upper\n";
  for (const ConvergenceRow& r : rep.rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.size) + "," +
           std::to_string(r.diameter) + "," + format_double(r.max_error) + "," +
           format_double(r.gh_upper) + "\n";
  }
  return out;
}

struct RunReport {
  std::string command;
  std::string inputs_digest;
  std::vector<std::string> outputs;
  int exit_status = 0;
};

inline ordered_json run_report_json(const RunReport& r) {
  return ordered_json{{"command", r.command},
                      {"inputs_digest", r.inputs_digest},
                      {"outputs", r.outputs},
                      {"exit_status", r.exit_status}};
}

}  // namespace vtg
