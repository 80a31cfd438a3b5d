#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fracsq/budget.hpp"
#include "fracsq/digit_set.hpp"
#include "fracsq/grid.hpp"
#include "fracsq/lines.hpp"
#include "fracsq/periodic.hpp"

namespace fracsq {

enum class LambdaRange { zero, one, zero_one, undetermined };

inline const char* lambda_label(LambdaRange v) {
  switch (v) {
    case LambdaRange::zero:
      return "{0}";
    case LambdaRange::one:
      return "{1}";
    case LambdaRange::zero_one:
      return "{0,1}";
    default:
      return "undetermined";
  }
}

/// One evaluated rule. `fired` marks the step that settled the verdict;
/// earlier steps record why they passed the decision on. Data pairs hold
/// every value needed to re-check the step against the owning module.
struct CertStep {
  std::string rule;
  bool fired = false;
  std::string note;
  std::vector<std::pair<std::string, std::string>> data;
};

struct ClassifyLimits {
  int beta_depth = 0;   // <= 0: largest level within the cell budget, at least 3
  int probe_depth = 0;  // <= 0: largest level within the cell budget
};

inline ClassifyLimits resolve_limits(int n, ClassifyLimits in) {
  int cap = max_level_in_budget(n);
  if (in.beta_depth <= 0) in.beta_depth = std::max(3, cap);
  if (in.probe_depth <= 0) in.probe_depth = std::max(1, cap);
  return in;
}

struct Verdict {
  LambdaRange lambda = LambdaRange::undetermined;
  std::optional<LogRatio> dim_lambda1;
  std::vector<CertStep> certificate;
  int beta_depth = 0;
  int probe_depth = 0;
};

namespace detail {

template <class T>
inline std::string join_list(const std::vector<T>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ',';
    out << xs[i];
  }
  return out.str();
}

inline std::string slope_str(const Slope& sl) {
  return std::to_string(sl.r) + "/" + std::to_string(sl.s);
}

inline std::string double_str(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

inline void profile_data(CertStep& st, const OmegaProfile& prof) {
  st.data.emplace_back("slope", slope_str(prof.slope));
  st.data.emplace_back("m", std::to_string(prof.m));
  st.data.emplace_back("q", std::to_string(prof.q));
  st.data.emplace_back("cells", join_list(prof.cells));
  st.data.emplace_back("isolated", join_list(prof.isolated));
}

inline void probe_data(CertStep& st, const DichotomyResult& probe) {
  bool case1 = probe.outcome == DichotomyResult::Outcome::case1;
  st.data.emplace_back("probe", case1 ? "case1" : "undetermined");
  st.data.emplace_back("probe_level", std::to_string(probe.level));
  if (probe.witness == DichotomyResult::Witness::holonomy) {
    st.data.emplace_back("witness", "holonomy");
    st.data.emplace_back("holonomy", std::to_string(probe.holonomy.first) + "," +
                                         std::to_string(probe.holonomy.second));
  } else if (probe.witness == DichotomyResult::Witness::diameter) {
    st.data.emplace_back("witness", "diameter");
    st.data.emplace_back("diameter_sq", frac_string(probe.diameter_sq));
  }
}

}  // namespace detail

/// Ordered decision chain. Rules run in a fixed order and the first verdict
/// wins; every evaluated rule leaves a certificate step. Depth limits only
/// ever turn a would-be verdict into `undetermined`, never flip one.
inline Verdict classify(const DigitSet& d, ClassifyLimits limits = {}) {
  validate(d);
  ClassifyLimits lim = resolve_limits(d.n, limits);
  Verdict v;
  v.beta_depth = lim.beta_depth;
  v.probe_depth = lim.probe_depth;

  {  // R1: full grid
    CertStep st{"R1", false, "", {}};
    st.data.emplace_back("digits", std::to_string(d.digits.size()));
    if (static_cast<std::int64_t>(d.digits.size()) ==
        static_cast<std::int64_t>(d.n) * d.n) {
      st.fired = true;
      st.note = "every cell present: the attractor is the whole square, one locally connected piece";
      v.certificate.push_back(std::move(st));
      v.lambda = LambdaRange::zero;
      return v;
    }
    st.note = "digit set is proper";
    v.certificate.push_back(std::move(st));
  }

  {  // R2: product form
    CertStep st{"R2", false, "", {}};
    if (auto pf = product_form(d)) {
      st.fired = true;
      st.note =
          "full-line product: the attractor is a Cantor set of parallel unit segments, every "
          "component a segment";
      st.data.emplace_back("axis", pf->axis == ProductForm::Axis::columns ? "columns" : "rows");
      st.data.emplace_back("indices", detail::join_list(pf->indices));
      v.certificate.push_back(std::move(st));
      v.lambda = LambdaRange::one;
      return v;
    }
    st.note = "no full-line product structure";
    v.certificate.push_back(std::move(st));
  }

  {  // R3: component count stabilization
    CertStep st{"R3", false, "", {}};
    try {
      Beta0Result b = beta0_stabilize(d, lim.beta_depth);
      st.data.emplace_back("sequence", detail::join_list(b.sequence));
      if (b.n0) {
        st.fired = true;
        st.note =
            "component count of consecutive approximations repeats, so the attractor has "
            "finitely many components, all locally connected";
        st.data.emplace_back("n0", std::to_string(*b.n0));
        st.data.emplace_back("beta0", std::to_string(b.beta0));
        v.certificate.push_back(std::move(st));
        v.lambda = LambdaRange::zero;
        return v;
      }
      st.note = "component count still growing at the depth limit";
    } catch (const BudgetError&) {
      st.note = "cell budget exhausted before stabilization could be tested";
      st.data.emplace_back("budget_exhausted", "true");
    }
    v.certificate.push_back(std::move(st));
  }

  std::vector<std::pair<Slope, OmegaProfile>> bearing = line_bearing_slopes(d);

  {  // R4: no direction carries a line
    CertStep st{"R4", false, "", {}};
    st.data.emplace_back("line_bearing_count", std::to_string(bearing.size()));
    std::vector<std::string> labels;
    labels.reserve(bearing.size());
    for (const auto& [sl, prof] : bearing) labels.push_back(detail::slope_str(sl));
    st.data.emplace_back("line_bearing_slopes", detail::join_list(labels));
    if (bearing.empty()) {
      st.fired = true;
      st.note = "no direction carries a line inside the periodic extension, so no component is a segment";
      v.certificate.push_back(std::move(st));
      v.lambda = LambdaRange::zero;
      return v;
    }
    st.note = "some direction carries a line";
    v.certificate.push_back(std::move(st));
  }

  if (bearing.size() == 1) {  // R5: single direction, split on (m, q)
    const auto& [sl, prof] = bearing.front();
    if (prof.m <= 1 && prof.m * prof.q == 0) {
      CertStep st{"R5a", true, "", {}};
      detail::profile_data(st, prof);
      st.note =
          "single direction with profile admitting no segment bundle: the one-dimensional "
          "fiber is empty and components degenerate to a null family";
      v.certificate.push_back(std::move(st));
      v.lambda = LambdaRange::zero;
      return v;
    }
    const bool single_cell = prof.m == 1;
    CertStep st{single_cell ? "R5b" : "R5c", false, "", {}};
    detail::profile_data(st, prof);
    LogRatio dim = single_cell ? LogRatio{1, d.n, 1.0} : dim_lambda1(prof.m, d.n);
    st.data.emplace_back("dim_m", std::to_string(dim.m));
    st.data.emplace_back("dim_n", std::to_string(dim.n));
    st.data.emplace_back("dim_value", detail::double_str(dim.value));
    try {
      DichotomyResult probe = dichotomy_probe(d, lim.probe_depth);
      detail::probe_data(st, probe);
      st.fired = true;
      if (probe.outcome == DichotomyResult::Outcome::case1) {
        st.note = single_cell
                      ? "single direction, one surviving cell with isolated intercepts; an "
                        "unbounded complement component confirms the point-and-segment regime; "
                        "the segment fiber has dimension exactly 1"
                      : "single direction with several surviving cells; an unbounded complement "
                        "component confirms the point-and-segment regime; segment fiber "
                        "dimension 1 + log m / log N";
        v.certificate.push_back(std::move(st));
        v.lambda = LambdaRange::zero_one;
        v.dim_lambda1 = dim;
        return v;
      }
      st.note =
          "no unbounded-complement witness within the probe depth; conditionally, a witness "
          "would settle the verdict to {0,1} with the recorded dimension";
      v.certificate.push_back(std::move(st));
      v.lambda = LambdaRange::undetermined;
      return v;
    } catch (const BudgetError&) {
      st.fired = true;
      st.note = "cell budget exhausted during the complement probe; verdict left open";
      st.data.emplace_back("budget_exhausted", "true");
      v.certificate.push_back(std::move(st));
      v.lambda = LambdaRange::undetermined;
      return v;
    }
  }

  if (bearing.size() >= 2) {  // R6: crossing directions (derived rule)
    CertStep st{"R6", true, "", {}};
    std::vector<std::string> labels;
    for (const auto& [sl, prof] : bearing)
      labels.push_back(detail::slope_str(sl) + ":(m=" + std::to_string(prof.m) +
                       ",q=" + std::to_string(prof.q) + ")");
    st.data.emplace_back("line_bearing", detail::join_list(labels));
    st.note =
        "derived rule: lines in two distinct directions cross, so some component is neither a "
        "point nor a segment, which forces the locally connected regime";
    v.certificate.push_back(std::move(st));
    v.lambda = LambdaRange::zero;
    return v;
  }

  CertStep st{"R7", true, "no rule reached a verdict within the depth limits", {}};
  v.certificate.push_back(std::move(st));
  v.lambda = LambdaRange::undetermined;
  return v;
}

namespace detail {

inline const std::string* step_value(const CertStep& st, const std::string& key) {
  for (const auto& [k, val] : st.data)
    if (k == key) return &val;
  return nullptr;
}

inline bool value_is(const CertStep& st, const std::string& key, const std::string& expect) {
  const std::string* got = step_value(st, key);
  return got && *got == expect;
}

}  // namespace detail

/// Re-derives every certificate step from the owning modules and compares.
/// A verdict is trustworthy iff this returns true for its own digit set.
inline bool recheck_certificate(const DigitSet& d, const Verdict& v) {
  using detail::value_is;
  std::size_t fired_count = 0;
  for (const CertStep& st : v.certificate)
    if (st.fired) ++fired_count;
  if (v.certificate.empty() || fired_count != 1 || !v.certificate.back().fired) return false;

  for (const CertStep& st : v.certificate) {
    if (st.rule == "R1") {
      bool full =
          static_cast<std::int64_t>(d.digits.size()) == static_cast<std::int64_t>(d.n) * d.n;
      if (st.fired != full) return false;
      if (!value_is(st, "digits", std::to_string(d.digits.size()))) return false;
      if (st.fired && v.lambda != LambdaRange::zero) return false;
    } else if (st.rule == "R2") {
      auto pf = product_form(d);
      if (st.fired != pf.has_value()) return false;
      if (st.fired) {
        if (!value_is(st, "axis", pf->axis == ProductForm::Axis::columns ? "columns" : "rows"))
          return false;
        if (!value_is(st, "indices", detail::join_list(pf->indices))) return false;
        if (!(reconstruct(*pf, d.n) == d)) return false;
        if (v.lambda != LambdaRange::one) return false;
      }
    } else if (st.rule == "R3") {
      if (detail::step_value(st, "budget_exhausted")) {
        if (st.fired) return false;
        continue;
      }
      Beta0Result b = beta0_stabilize(d, v.beta_depth);
      if (!value_is(st, "sequence", detail::join_list(b.sequence))) return false;
      if (st.fired != b.n0.has_value()) return false;
      if (st.fired) {
        if (!value_is(st, "n0", std::to_string(*b.n0))) return false;
        if (!value_is(st, "beta0", std::to_string(b.beta0))) return false;
        if (v.lambda != LambdaRange::zero) return false;
      }
    } else if (st.rule == "R4") {
      auto bearing = line_bearing_slopes(d);
      if (!value_is(st, "line_bearing_count", std::to_string(bearing.size()))) return false;
      if (st.fired != bearing.empty()) return false;
      if (st.fired && v.lambda != LambdaRange::zero) return false;
    } else if (st.rule == "R5a" || st.rule == "R5b" || st.rule == "R5c") {
      auto bearing = line_bearing_slopes(d);
      if (bearing.size() != 1) return false;
      const OmegaProfile& prof = bearing.front().second;
      if (!value_is(st, "slope", detail::slope_str(prof.slope))) return false;
      if (!value_is(st, "m", std::to_string(prof.m))) return false;
      if (!value_is(st, "q", std::to_string(prof.q))) return false;
      if (st.rule == "R5a") {
        if (!(prof.m <= 1 && prof.m * prof.q == 0)) return false;
        if (!st.fired || v.lambda != LambdaRange::zero) return false;
      } else {
        if (st.rule == "R5b" && !(prof.m == 1 && prof.q >= 1)) return false;
        if (st.rule == "R5c" && !(prof.m >= 2)) return false;
        if (detail::step_value(st, "budget_exhausted")) {
          if (v.lambda != LambdaRange::undetermined) return false;
          continue;
        }
        DichotomyResult probe = dichotomy_probe(d, v.probe_depth);
        bool case1 = probe.outcome == DichotomyResult::Outcome::case1;
        if (!value_is(st, "probe", case1 ? "case1" : "undetermined")) return false;
        if (case1) {
          if (v.lambda != LambdaRange::zero_one || !v.dim_lambda1) return false;
          LogRatio dim = prof.m == 1 ? LogRatio{1, d.n, 1.0} : dim_lambda1(prof.m, d.n);
          if (v.dim_lambda1->m != dim.m || v.dim_lambda1->n != dim.n ||
              v.dim_lambda1->value != dim.value)
            return false;
        } else if (v.lambda != LambdaRange::undetermined) {
          return false;
        }
      }
    } else if (st.rule == "R6") {
      auto bearing = line_bearing_slopes(d);
      if (st.fired != (bearing.size() >= 2)) return false;
      if (st.fired && v.lambda != LambdaRange::zero) return false;
    } else if (st.rule == "R7") {
      if (v.lambda != LambdaRange::undetermined) return false;
    } else {
      return false;
    }
  }
  return true;
}

/// Plain-text rendering of a verdict and its certificate chain.
inline std::string explain(const Verdict& v) {
  std::ostringstream out;
  out << "lambda range: " << lambda_label(v.lambda) << "\n";
  if (v.dim_lambda1)
    out << "segment fiber dimension: 1 + log " << v.dim_lambda1->m << " / log "
        << v.dim_lambda1->n << " = " << detail::double_str(v.dim_lambda1->value) << "\n";
  out << "depths: beta=" << v.beta_depth << " probe=" << v.probe_depth << "\n";
  for (const CertStep& st : v.certificate) {
    out << (st.fired ? "[*] " : "[ ] ") << st.rule << ": " << st.note;
    if (!st.data.empty()) {
      out << " (";
      for (std::size_t i = 0; i < st.data.size(); ++i) {
        if (i) out << ", ";
        out << st.data[i].first << "=" << st.data[i].second;
      }
      out << ")";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fracsq
