#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <string>
#include <vector>

#include "fracsq/classify.hpp"
#include "fracsq/presets.hpp"

using namespace fracsq;

namespace {

const CertStep& fired_step(const Verdict& v) {
  REQUIRE_FALSE(v.certificate.empty());
  REQUIRE(v.certificate.back().fired);
  return v.certificate.back();
}

std::string data_at(const CertStep& st, const std::string& key) {
  for (const auto& [k, val] : st.data)
    if (k == key) return val;
  FAIL("missing certificate key " << key);
  return {};
}

std::vector<std::string> rule_chain(const Verdict& v) {
  std::vector<std::string> rules;
  for (const CertStep& st : v.certificate) rules.push_back(st.rule);
  return rules;
}

}  // namespace

TEST_CASE("depth limits resolve") {
  ClassifyLimits def = resolve_limits(3, {});
  CHECK(def.beta_depth == std::max(3, max_level_in_budget(3)));
  CHECK(def.probe_depth == std::max(1, max_level_in_budget(3)));
  ClassifyLimits kept = resolve_limits(3, {3, 1});
  CHECK(kept.beta_depth == 3);
  CHECK(kept.probe_depth == 1);
  ClassifyLimits mixed = resolve_limits(5, {0, 2});
  CHECK(mixed.beta_depth == std::max(3, max_level_in_budget(5)));
  CHECK(mixed.probe_depth == 2);
}

TEST_CASE("full grid is the square") {
  std::vector<Cell> all;
  for (std::int64_t j = 0; j < 2; ++j)
    for (std::int64_t i = 0; i < 2; ++i) all.push_back({i, j});
  Verdict v = classify(make_digit_set(2, all));
  CHECK(v.lambda == LambdaRange::zero);
  CHECK_FALSE(v.dim_lambda1.has_value());
  const CertStep& st = fired_step(v);
  CHECK(st.rule == "R1");
  CHECK(data_at(st, "digits") == "4");
  CHECK(v.certificate.size() == 1);
}

TEST_CASE("products of full lines") {
  DigitSet cols = preset_digit_set("product32");
  Verdict v = classify(cols);
  CHECK(v.lambda == LambdaRange::one);
  CHECK_FALSE(v.dim_lambda1.has_value());
  const CertStep& st = fired_step(v);
  CHECK(st.rule == "R2");
  CHECK(data_at(st, "axis") == "columns");
  CHECK(data_at(st, "indices") == "0,2");
  CHECK(rule_chain(v) == std::vector<std::string>{"R1", "R2"});

  Verdict vt = classify(transpose(cols));
  CHECK(vt.lambda == LambdaRange::one);
  CHECK(data_at(fired_step(vt), "axis") == "rows");
  CHECK(data_at(fired_step(vt), "indices") == "0,2");
}

TEST_CASE("stabilizing component counts") {
  Verdict carpet = classify(preset_digit_set("carpet3"));
  CHECK(carpet.lambda == LambdaRange::zero);
  const CertStep& st = fired_step(carpet);
  CHECK(st.rule == "R3");
  CHECK(data_at(st, "sequence") == "1,1,1");
  CHECK(data_at(st, "n0") == "2");
  CHECK(data_at(st, "beta0") == "1");
  CHECK(rule_chain(carpet) == std::vector<std::string>{"R1", "R2", "R3"});

  for (const char* name : {"vicsek3", "diag5"}) {
    CAPTURE(name);
    Verdict v = classify(preset_digit_set(name));
    CHECK(v.lambda == LambdaRange::zero);
    CHECK(fired_step(v).rule == "R3");
    CHECK(data_at(fired_step(v), "beta0") == "1");
  }
}

TEST_CASE("dust with no line direction") {
  DigitSet dust = make_digit_set(3, {{0, 0}, {2, 2}});
  Verdict v = classify(dust, {3, 1});
  CHECK(v.lambda == LambdaRange::zero);
  const CertStep& st = fired_step(v);
  CHECK(st.rule == "R4");
  CHECK(data_at(st, "line_bearing_count") == "0");
  CHECK(data_at(st, "line_bearing_slopes").empty());
  CHECK(rule_chain(v) == std::vector<std::string>{"R1", "R2", "R3", "R4"});
}

TEST_CASE("single direction with an empty fiber") {
  Verdict v = classify(preset_digit_set("d0_5"));
  CHECK(v.lambda == LambdaRange::zero);
  CHECK_FALSE(v.dim_lambda1.has_value());
  const CertStep& st = fired_step(v);
  CHECK(st.rule == "R5a");
  CHECK(data_at(st, "slope") == "1/1");
  CHECK(data_at(st, "m") == "0");
  CHECK(data_at(st, "q") == "1");
  CHECK(rule_chain(v) == std::vector<std::string>{"R1", "R2", "R3", "R4", "R5a"});
}

TEST_CASE("single direction with one surviving cell") {
  Verdict v = classify(preset_digit_set("d2_5"));
  CHECK(v.lambda == LambdaRange::zero_one);
  REQUIRE(v.dim_lambda1.has_value());
  CHECK(v.dim_lambda1->m == 1);
  CHECK(v.dim_lambda1->n == 5);
  CHECK(v.dim_lambda1->value == 1.0);
  const CertStep& st = fired_step(v);
  CHECK(st.rule == "R5b");
  CHECK(data_at(st, "slope") == "1/1");
  CHECK(data_at(st, "m") == "1");
  CHECK(data_at(st, "q") == "1");
  CHECK(data_at(st, "cells") == "4");
  CHECK(data_at(st, "probe") == "case1");
  CHECK(data_at(st, "probe_level") == "1");
  CHECK(data_at(st, "witness") == "holonomy");
}

TEST_CASE("single direction with a thick fiber") {
  Verdict v = classify(preset_digit_set("d3_5"));
  CHECK(v.lambda == LambdaRange::zero_one);
  REQUIRE(v.dim_lambda1.has_value());
  CHECK(v.dim_lambda1->m == 2);
  CHECK(v.dim_lambda1->n == 5);
  CHECK(v.dim_lambda1->value == Catch::Approx(1.4306765580733931).epsilon(0).margin(1e-12));
  const CertStep& st = fired_step(v);
  CHECK(st.rule == "R5c");
  CHECK(data_at(st, "m") == "2");
  CHECK(data_at(st, "probe") == "case1");
  CHECK(data_at(st, "witness") == "holonomy");
  double recorded = std::strtod(data_at(st, "dim_value").c_str(), nullptr);
  CHECK(recorded == v.dim_lambda1->value);
}

TEST_CASE("crossing directions") {
  Verdict v = classify(preset_digit_set("ex21"), {3, 1});
  CHECK(v.lambda == LambdaRange::zero);
  CHECK_FALSE(v.dim_lambda1.has_value());
  const CertStep& st = fired_step(v);
  CHECK(st.rule == "R6");
  std::string bearing = data_at(st, "line_bearing");
  CHECK(bearing.find("1/0:(m=0,q=1)") != std::string::npos);
  CHECK(bearing.find("0/1:(m=1,q=0)") != std::string::npos);
  CHECK(rule_chain(v) == std::vector<std::string>{"R1", "R2", "R3", "R4", "R6"});
  const CertStep& beta = v.certificate[2];
  CHECK(beta.rule == "R3");
  CHECK_FALSE(beta.fired);
  CHECK(data_at(beta, "sequence") == "1,1,3");
}

TEST_CASE("certificates recheck against the modules") {
  std::vector<Cell> all;
  for (std::int64_t j = 0; j < 2; ++j)
    for (std::int64_t i = 0; i < 2; ++i) all.push_back({i, j});
  DigitSet square = make_digit_set(2, all);
  CHECK(recheck_certificate(square, classify(square)));

  for (const char* name : {"product32", "carpet3", "vicsek3", "diag5", "d0_5", "d2_5", "d3_5"}) {
    CAPTURE(name);
    DigitSet d = preset_digit_set(name);
    CHECK(recheck_certificate(d, classify(d)));
  }

  DigitSet dust = make_digit_set(3, {{0, 0}, {2, 2}});
  CHECK(recheck_certificate(dust, classify(dust, {3, 1})));

  DigitSet ex21 = preset_digit_set("ex21");
  CHECK(recheck_certificate(ex21, classify(ex21, {3, 1})));
}

TEST_CASE("tampered certificates fail the recheck") {
  DigitSet d = preset_digit_set("d3_5");
  Verdict v = classify(d);
  REQUIRE(recheck_certificate(d, v));

  SECTION("verdict flipped") {
    v.lambda = LambdaRange::zero;
    CHECK_FALSE(recheck_certificate(d, v));
  }
  SECTION("fired flag cleared") {
    v.certificate.back().fired = false;
    CHECK_FALSE(recheck_certificate(d, v));
  }
  SECTION("second fired step appended") {
    v.certificate.push_back(v.certificate.back());
    CHECK_FALSE(recheck_certificate(d, v));
  }
  SECTION("profile data altered") {
    for (auto& [k, val] : v.certificate.back().data)
      if (k == "m") val = "3";
    CHECK_FALSE(recheck_certificate(d, v));
  }
  SECTION("dimension altered") {
    v.dim_lambda1->value += 1e-6;
    CHECK_FALSE(recheck_certificate(d, v));
  }
  SECTION("unknown rule name") {
    v.certificate.back().rule = "R9";
    CHECK_FALSE(recheck_certificate(d, v));
  }
  SECTION("certificate for a different digit set") {
    CHECK_FALSE(recheck_certificate(preset_digit_set("carpet3"), v));
  }
  SECTION("stabilization data altered") {
    DigitSet carpet = preset_digit_set("carpet3");
    Verdict cv = classify(carpet);
    for (auto& [k, val] : cv.certificate.back().data)
      if (k == "n0") val = "3";
    CHECK_FALSE(recheck_certificate(carpet, cv));
  }
}

TEST_CASE("explanations carry the chain") {
  Verdict v = classify(preset_digit_set("d3_5"));
  std::string text = explain(v);
  CHECK(text.find("lambda range: {0,1}") != std::string::npos);
  CHECK(text.find("1 + log 2 / log 5") != std::string::npos);
  CHECK(text.find("[*] R5c") != std::string::npos);
  CHECK(text.find("[ ] R1") != std::string::npos);

  Verdict dust = classify(make_digit_set(3, {{0, 0}, {2, 2}}), {3, 1});
  CHECK(explain(dust).find("lambda range: {0}") != std::string::npos);
}
