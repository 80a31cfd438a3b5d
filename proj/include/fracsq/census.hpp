#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fracsq/classify.hpp"
#include "fracsq/serialize.hpp"

// Exhaustive classification of every digit set for a fixed order. Results
// live in per-task slots indexed by a shared atomic counter, so the output
// is identical for any worker count.

namespace fracsq {

inline const char* lambda_token(LambdaRange v) {
  switch (v) {
    case LambdaRange::zero:
      return "zero";
    case LambdaRange::one:
      return "one";
    case LambdaRange::zero_one:
      return "zero_one";
    default:
      return "undetermined";
  }
}

struct CensusRow {
  std::uint32_t mask = 0;  // bit b set means cell (b % n, b / n) present
  int digit_count = 0;
  LambdaRange lambda = LambdaRange::undetermined;
  std::string rule;  // certificate step that fired
  std::optional<LogRatio> dim;
  bool recheck_ok = false;
};

struct CensusResult {
  int n = 0;
  int beta_depth = 0;
  int probe_depth = 0;
  std::vector<CensusRow> rows;  // mask ascending
};

inline DigitSet digit_set_from_mask(int n, std::uint32_t mask) {
  std::vector<Cell> cells;
  for (int b = 0; b < n * n; ++b)
    if (mask >> b & 1u) cells.push_back({b % n, b / n});
  return make_digit_set(n, cells);
}

namespace detail {

inline CensusRow census_row(int n, std::uint32_t mask, const ClassifyLimits& lim) {
  CensusRow row;
  row.mask = mask;
  DigitSet d = digit_set_from_mask(n, mask);
  row.digit_count = static_cast<int>(d.digits.size());
  Verdict v = classify(d, lim);
  row.lambda = v.lambda;
  row.rule = v.certificate.back().rule;
  row.dim = v.dim_lambda1;
  row.recheck_ok = recheck_certificate(d, v);
  return row;
}

}  // namespace detail

/// Probe depth defaults to a small fixed cap rather than the full budget:
/// one complement probe per digit set must stay desk-scale even at order 4.
inline CensusResult run_census(int n, ClassifyLimits limits = {}, int jobs = 0) {
  if (n < 2 || n > 4) throw std::invalid_argument("census supports orders 2 through 4");
  ClassifyLimits lim = resolve_limits(n, limits);
  if (limits.probe_depth <= 0) lim.probe_depth = std::min(lim.probe_depth, 5);

  std::vector<std::uint32_t> masks;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t m = 0; m < total; ++m)
    if (std::popcount(m) >= 2) masks.push_back(static_cast<std::uint32_t>(m));

  CensusResult out;
  out.n = n;
  out.beta_depth = lim.beta_depth;
  out.probe_depth = lim.probe_depth;
  out.rows.resize(masks.size());

  std::atomic<std::size_t> next{0};
  std::mutex err_mx;
  std::exception_ptr error;
  auto worker = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= masks.size()) return;
      try {
        out.rows[k] = detail::census_row(n, masks[k], lim);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mx);
        if (!error) error = std::current_exception();
        next.store(masks.size());
        return;
      }
    }
  };

  int nj = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  if (nj < 1) nj = 1;
  std::vector<std::thread> pool;
  for (int t = 1; t < nj; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

inline std::string census_csv(const CensusResult& r) {
  std::ostringstream out;
  out << "mask,digits,lambda,rule,dim,recheck\n";
  for (const CensusRow& row : r.rows) {
    out << row.mask << ',' << row.digit_count << ',' << lambda_token(row.lambda) << ','
        << row.rule << ',';
    if (row.dim) out << detail::double_str(row.dim->value);
    out << ',' << (row.recheck_ok ? "ok" : "FAIL") << '\n';
  }
  return out.str();
}

/// Counts per verdict plus the independent cross-check: {1} verdicts must
/// match both a fresh product-form scan and the closed form 2*(2^n - n - 2)
/// (proper column or row products with at least two lines each).
inline json census_summary_json(const CensusResult& r) {
  std::int64_t counts[4] = {0, 0, 0, 0};
  std::int64_t recheck_failures = 0;
  std::int64_t product_scan = 0;
  for (const CensusRow& row : r.rows) {
    counts[static_cast<int>(row.lambda)] += 1;
    if (!row.recheck_ok) recheck_failures += 1;
    if (product_form(digit_set_from_mask(r.n, row.mask))) product_scan += 1;
  }
  const std::int64_t formula = 2 * ((std::int64_t{1} << r.n) - r.n - 2);
  const std::int64_t one_count = counts[static_cast<int>(LambdaRange::one)];
  return json{
      {"n", r.n},
      {"rows", r.rows.size()},
      {"depths", json{{"beta", r.beta_depth}, {"probe", r.probe_depth}}},
      {"counts",
       json{{"zero", counts[static_cast<int>(LambdaRange::zero)]},
            {"one", one_count},
            {"zero_one", counts[static_cast<int>(LambdaRange::zero_one)]},
            {"undetermined", counts[static_cast<int>(LambdaRange::undetermined)]}}},
      {"recheck_failures", recheck_failures},
      {"product_form_scan", product_scan},
      {"product_form_formula", formula},
      {"product_cross_check", one_count == product_scan && product_scan == formula}};
}

}  // namespace fracsq
