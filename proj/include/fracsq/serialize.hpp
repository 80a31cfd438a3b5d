#pragma once

#include <json.hpp>

#include "fracsq/classify.hpp"
#include "fracsq/digit_set.hpp"
#include "fracsq/digitop.hpp"
#include "fracsq/grid.hpp"
#include "fracsq/hata.hpp"
#include "fracsq/lines.hpp"
#include "fracsq/periodic.hpp"

// JSON views of the analysis types. Key order is nlohmann's sorted-map
// order, so dumps are byte-deterministic for equal values.

namespace fracsq {

using nlohmann::json;

inline json cell_json(const Cell& c) { return json::array({c.i, c.j}); }

inline json digit_set_json(const DigitSet& d) {
  json digits = json::array();
  for (const Cell& c : d.digits) digits.push_back(cell_json(c));
  return json{{"n", d.n}, {"digits", std::move(digits)}};
}

inline json slope_json(const Slope& sl) { return json::array({sl.r, sl.s}); }

inline json omega_profile_json(const OmegaProfile& p) {
  return json{{"slope", slope_json(p.slope)}, {"m", p.m},       {"q", p.q},
              {"cells", p.cells},             {"isolated", p.isolated},
              {"line_bearing", p.line_bearing}};
}

inline json omega_level_json(const OmegaLevelSet& w) {
  return json{{"slope", slope_json(w.slope)}, {"level", w.level},
              {"window", w.window},           {"cells", w.cells},
              {"points", w.points}};
}

inline json orbit_json(const OrbitClosure& o) {
  json classes = json::array();
  for (const Fraction& w : o.classes) classes.push_back(frac_string(w));
  return json{{"slope", slope_json(o.slope)}, {"classes", std::move(classes)}};
}

inline json beta0_json(const Beta0Result& r) {
  json out{{"sequence", r.sequence}};
  out["n0"] = r.n0 ? json(*r.n0) : json(nullptr);
  out["beta0"] = r.n0 ? json(r.beta0) : json(nullptr);
  return out;
}

inline json hata_json(const HataGraph& g) {
  json vertices = json::array();
  for (const Cell& c : g.vertices) vertices.push_back(cell_json(c));
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back(json::array({a, b}));
  return json{{"n", g.n},
              {"level", g.level},
              {"adjacency_basis", g.adjacency_basis},
              {"vertices", std::move(vertices)},
              {"edges", std::move(edges)},
              {"components", graph_components(g)}};
}

inline json pi1_json(const Pi1Certificate& c) {
  return json{{"trivial_certified", c.trivial_certified},
              {"holes_level3", c.holes_level3}};
}

inline json dichotomy_json(const DichotomyResult& r) {
  json out{{"level", r.level}, {"bound_sq", frac_string(r.bound_sq)}};
  out["outcome"] =
      r.outcome == DichotomyResult::Outcome::case1 ? "case1" : "undetermined";
  switch (r.witness) {
    case DichotomyResult::Witness::holonomy:
      out["witness"] = "holonomy";
      out["holonomy"] = json::array({r.holonomy.first, r.holonomy.second});
      break;
    case DichotomyResult::Witness::diameter:
      out["witness"] = "diameter";
      out["diameter_sq"] = frac_string(r.diameter_sq);
      break;
    case DichotomyResult::Witness::none:
      out["witness"] = "none";
      break;
  }
  return out;
}

inline json verdict_json(const Verdict& v) {
  json out{{"lambda", lambda_label(v.lambda)},
           {"depths", json{{"beta", v.beta_depth}, {"probe", v.probe_depth}}}};
  if (v.dim_lambda1) {
    out["dim_lambda1"] = json{{"m", v.dim_lambda1->m},
                              {"n", v.dim_lambda1->n},
                              {"value", v.dim_lambda1->value}};
  } else {
    out["dim_lambda1"] = nullptr;
  }
  json cert = json::array();
  for (const CertStep& s : v.certificate) {
    json data = json::object();
    for (const auto& [k, val] : s.data) data[k] = val;
    cert.push_back(json{{"rule", s.rule},
                        {"fired", s.fired},
                        {"note", s.note},
                        {"data", std::move(data)}});
  }
  out["certificate"] = std::move(cert);
  return out;
}

}  // namespace fracsq
