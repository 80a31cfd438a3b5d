#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

#include "fracsq/census.hpp"
#include "fracsq/presets.hpp"

using namespace fracsq;

namespace {

const CensusRow& row_for(const CensusResult& r, std::uint32_t mask) {
  for (const CensusRow& row : r.rows)
    if (row.mask == mask) return row;
  FAIL("mask " << mask << " missing from census");
  return r.rows.front();
}

std::uint32_t mask_of(const DigitSet& d) {
  std::uint32_t mask = 0;
  for (const Cell& c : d.digits)
    mask |= 1u << static_cast<std::uint32_t>(c.i + d.n * c.j);
  return mask;
}

}  // namespace

TEST_CASE("masks decode to digit sets") {
  DigitSet d = digit_set_from_mask(3, 0b000000011u);
  CHECK(canonical_text(d) == canonical_text(make_digit_set(3, {{0, 0}, {1, 0}})));
  for (const char* name : {"carpet3", "ex21", "product32"}) {
    DigitSet p = preset_digit_set(name);
    CHECK(canonical_text(digit_set_from_mask(p.n, mask_of(p))) == canonical_text(p));
  }
  CHECK(mask_of(preset_digit_set("carpet3")) == 495u);
  CHECK(mask_of(preset_digit_set("product32")) == 365u);
}

TEST_CASE("order two census is fully known") {
  CensusResult r = run_census(2);
  REQUIRE(r.rows.size() == 11);
  for (const CensusRow& row : r.rows) {
    CAPTURE(row.mask);
    CHECK(row.lambda == LambdaRange::zero);
    CHECK(row.recheck_ok);
    CHECK(row.rule == (row.mask == 15u ? "R1" : "R3"));
    CHECK_FALSE(row.dim.has_value());
  }

  json summary = census_summary_json(r);
  CHECK(summary["rows"] == 11);
  CHECK(summary["counts"]["zero"] == 11);
  CHECK(summary["counts"]["one"] == 0);
  CHECK(summary["counts"]["zero_one"] == 0);
  CHECK(summary["counts"]["undetermined"] == 0);
  CHECK(summary["recheck_failures"] == 0);
  CHECK(summary["product_form_formula"] == 0);
  CHECK(summary["product_cross_check"] == true);
}

TEST_CASE("order three census") {
  CensusResult r = run_census(3, {4, 3}, 2);
  REQUIRE(r.rows.size() == 502);
  CHECK(r.beta_depth == 4);
  CHECK(r.probe_depth == 3);

  std::uint64_t prev = 0;
  bool first = true;
  std::int64_t failures = 0;
  for (const CensusRow& row : r.rows) {
    if (!first) CHECK(row.mask > prev);
    prev = row.mask;
    first = false;
    failures += !row.recheck_ok;
  }
  CHECK(failures == 0);

  CHECK(row_for(r, 495u).lambda == LambdaRange::zero);
  CHECK(row_for(r, 495u).rule == "R3");
  CHECK(row_for(r, 365u).lambda == LambdaRange::one);
  CHECK(row_for(r, 365u).rule == "R2");
  CHECK(row_for(r, 0b111111111u).rule == "R1");
  CHECK(row_for(r, mask_of(preset_digit_set("ex21"))).lambda == LambdaRange::zero);
  CHECK(row_for(r, 257u).rule == "R4");  // two diagonal corners, pure dust

  json summary = census_summary_json(r);
  CHECK(summary["counts"]["one"] == 6);
  CHECK(summary["product_form_scan"] == 6);
  CHECK(summary["product_form_formula"] == 6);
  CHECK(summary["product_cross_check"] == true);
}

TEST_CASE("worker count never changes the bytes") {
  CensusResult lone = run_census(3, {4, 3}, 1);
  CensusResult pool = run_census(3, {4, 3}, 4);
  CHECK(census_csv(lone) == census_csv(pool));
  CHECK(census_summary_json(lone).dump(2) == census_summary_json(pool).dump(2));
}

TEST_CASE("csv shape") {
  CensusResult r = run_census(2);
  std::string csv = census_csv(r);
  CHECK(csv.rfind("mask,digits,lambda,rule,dim,recheck\n", 0) == 0);
  CHECK(csv.find("15,4,zero,R1,,ok\n") != std::string::npos);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == r.rows.size() + 1);
}

TEST_CASE("unsupported orders are rejected") {
  CHECK_THROWS_AS(run_census(1), std::invalid_argument);
  CHECK_THROWS_AS(run_census(5), std::invalid_argument);
}
