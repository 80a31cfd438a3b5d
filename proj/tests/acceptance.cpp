// Acceptance gate: one line per criterion, exit 0 iff every line passes.
// Golden image hashes are FNV-1a 64 over the emitted PNG bytes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracsq/census.hpp"
#include "fracsq/classify.hpp"
#include "fracsq/digitop.hpp"
#include "fracsq/grid.hpp"
#include "fracsq/hata.hpp"
#include "fracsq/lines.hpp"
#include "fracsq/periodic.hpp"
#include "fracsq/presets.hpp"
#include "fracsq/render.hpp"

using namespace fracsq;

namespace {

int failures = 0;

void report(int k, bool ok, const std::string& detail) {
  std::printf("%s criterion-%d: %s\n", ok ? "PASS" : "FAIL", k, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void criterion(int k, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(k, false, std::string("unexpected exception: ") + e.what());
  } catch (...) {
    report(k, false, "unexpected exception of unknown type");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

fracsq::DigitSet random_digit_set(std::mt19937_64& rng, int n) {
  std::vector<Cell> all;
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < n; ++i) all.push_back({i, j});
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<std::size_t> size(2, all.size());
  all.resize(size(rng));
  return make_digit_set(n, all);
}

const std::vector<std::string>& corpus() {
  static const std::vector<std::string> names = preset_names();
  return names;
}

// ---------------------------------------------------------------- criterion 1

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::int64_t> seq = beta0_sequence(preset_digit_set("ex21"), 3);
  double dt = seconds_since(t0);
  bool ok = seq == std::vector<std::int64_t>{1, 1, 3} && dt < 1.0;
  std::ostringstream detail;
  detail << "component counts [";
  for (std::size_t i = 0; i < seq.size(); ++i) detail << (i ? "," : "") << seq[i];
  detail << "] in " << dt << "s";
  report(1, ok, detail.str());
}

// ---------------------------------------------------------------- criterion 2

void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  RationalLine diag{Slope{1, 1}, Fraction(0)};
  RationalLine below{Slope{1, 1}, Fraction(-1, 5)};
  RationalLine above{Slope{1, 1}, Fraction(1, 5)};
  DigitSet one = digit_operator({diag}, 5);
  DigitSet two = digit_operator({diag, below}, 5);
  DigitSet three = digit_operator({diag, below, above}, 5);
  bool sets_ok = one == preset_digit_set("diag5") && two == preset_digit_set("d2_5") &&
                 three == preset_digit_set("d3_5");
  OmegaProfile p1 = omega1(one, Slope{1, 1});
  OmegaProfile p2 = omega1(two, Slope{1, 1});
  OmegaProfile p3 = omega1(three, Slope{1, 1});
  bool profiles_ok = p1.m == 0 && p1.q == 1 && p2.m == 1 && p2.q == 1 && p3.m == 2 && p3.q == 0;
  double dt = seconds_since(t0);
  std::ostringstream detail;
  detail << "line family sets " << (sets_ok ? "match" : "MISMATCH") << ", (m,q) ladder (" << p1.m
         << "," << p1.q << "),(" << p2.m << "," << p2.q << "),(" << p3.m << "," << p3.q << ") in "
         << dt << "s";
  report(2, sets_ok && profiles_ok && dt < 1.0, detail.str());
}

// ---------------------------------------------------------------- criterion 3

void criterion3() {
  DigitSet built = digit_operator({{Slope{1, 2}, Fraction(0)}, {Slope{0, 1}, Fraction(2, 3)}}, 3);
  std::vector<Cell> cells;
  for (std::int64_t j = 0; j < 3; ++j)
    for (std::int64_t i = 0; i < 3; ++i)
      if (!(i == 1 && j == 1)) cells.push_back({i, j});
  DigitSet expected = make_digit_set(3, cells);
  bool ok = built == expected && built == preset_digit_set("carpet3");
  report(3, ok, "half-slope and horizontal lines generate the 8-cell carpet: " + canonical_text(built));
}

// ---------------------------------------------------------------- criterion 4

void criterion4() {
  Verdict v = classify(preset_digit_set("d3_5"));
  bool ok = v.dim_lambda1.has_value() && v.dim_lambda1->m == 2 && v.dim_lambda1->n == 5 &&
            std::fabs(v.dim_lambda1->value - 1.4306765580733931) <= 1e-12;
  std::ostringstream detail;
  detail << "segment fiber dimension ";
  if (v.dim_lambda1)
    detail << "1+log" << v.dim_lambda1->m << "/log" << v.dim_lambda1->n << " = "
           << v.dim_lambda1->value;
  else
    detail << "missing";
  report(4, ok, detail.str());
}

// ---------------------------------------------------------------- criterion 5

void criterion5() {
  std::vector<std::string> bad;
  auto expect = [&](const char* name, LambdaRange want, ClassifyLimits lim = {}) -> Verdict {
    DigitSet d = preset_digit_set(name);
    Verdict v = classify(d, lim);
    if (v.lambda != want) bad.push_back(std::string(name) + " lambda " + lambda_label(v.lambda));
    if (!recheck_certificate(d, v)) bad.push_back(std::string(name) + " recheck failed");
    return v;
  };
  expect("carpet3", LambdaRange::zero);
  expect("product32", LambdaRange::one);
  Verdict d2 = expect("d2_5", LambdaRange::zero_one);
  if (!d2.dim_lambda1 || d2.dim_lambda1->value != 1.0 || d2.dim_lambda1->m != 1)
    bad.push_back("d2_5 dimension not exactly 1");
  Verdict d0 = expect("d0_5", LambdaRange::zero);
  if (d0.certificate.back().rule != "R5a")
    bad.push_back("d0_5 settled by " + d0.certificate.back().rule);
  expect("diag5", LambdaRange::zero);
  std::string detail = "verdicts {0},{1},{0,1} dim 1,{0} via R5a,{0}, certificates recheck";
  if (!bad.empty()) {
    detail = bad.front();
    for (std::size_t i = 1; i < bad.size(); ++i) detail += "; " + bad[i];
  }
  report(5, bad.empty(), detail);
}

// ---------------------------------------------------------------- criterion 6

void criterion6() {
  std::vector<std::string> bad;
  std::vector<std::string> exits;

  // component counts never decrease with the level
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    int n = trial < 100 ? 3 : 4;
    DigitSet d = random_digit_set(rng, n);
    std::vector<std::int64_t> seq = beta0_sequence(d, 4);
    for (std::size_t k = 1; k < seq.size(); ++k)
      if (seq[k] < seq[k - 1]) {
        bad.push_back("beta0 drop on " + canonical_text(d));
        break;
      }
  }

  // tile adjacency is already exact at basis 2
  for (const std::string& name : corpus()) {
    DigitSet d = preset_digit_set(name);
    for (std::size_t x = 0; x < d.digits.size() && bad.empty(); ++x)
      for (std::size_t y = x + 1; y < d.digits.size(); ++y) {
        bool b2 = adjacency_level2(d, d.digits[x], d.digits[y], 2);
        bool b3 = adjacency_level2(d, d.digits[x], d.digits[y], 3);
        bool b4 = adjacency_level2(d, d.digits[x], d.digits[y], 4);
        if (b2 != b3 || b3 != b4) {
          bad.push_back("adjacency basis mismatch on " + name);
          break;
        }
      }
  }

  // window supports nest, and the cell maps land deeper supports inside
  // coarser ones; isolated intercepts persist through level 4
  for (const std::string& name : corpus()) {
    DigitSet d = preset_digit_set(name);
    for (const auto& [sl, prof] : line_bearing_slopes(d)) {
      OmegaLevelSet w1 = omega_level(d, sl, 1);
      OmegaLevelSet w2 = omega_level(d, sl, 2);
      OmegaLevelSet w3 = omega_level(d, sl, 3);
      if (!support_subset(w2, w1) || !support_subset(w3, w2)) {
        bad.push_back("window nesting fails on " + name);
        continue;
      }
      if (prof.m >= 1 && (!support_subset(omega_recursion_step(prof, w2), w1) ||
                          !support_subset(omega_recursion_step(prof, w3), w2))) {
        bad.push_back("cell map containment fails on " + name);
        continue;
      }
      for (int v : prof.isolated) {
        std::int64_t scaled = v;
        int gone_at = 0;
        for (int level = 2; level <= 4; ++level) {
          scaled *= d.n;
          OmegaLevelSet w = omega_level(d, sl, level);
          bool in = std::binary_search(w.points.begin(), w.points.end(), scaled);
          if (gone_at == 0 && !in) gone_at = level;
          if (in != (gone_at == 0)) {
            bad.push_back("isolated intercept flickers on " + name);
            break;
          }
        }
        if (gone_at)
          exits.push_back(name + " " + std::to_string(sl.r) + "/" + std::to_string(sl.s) +
                          " v=" + std::to_string(v) + " @" + std::to_string(gone_at));
      }
    }
  }
  // persistence holds wherever the attractor keeps lines of the direction;
  // the only exits are ex21's spurious verticals, whose line x1 = 2/3 leaves
  // the extension at level 2
  std::sort(exits.begin(), exits.end());
  if (exits != std::vector<std::string>{"ex21 -1/1 v=2 @2", "ex21 1/0 v=2 @2"}) {
    std::string got = "isolated-intercept exits changed:";
    for (const std::string& e : exits) got += " [" + e + "]";
    bad.push_back(got);
  }
  if (line_in_H_check(preset_digit_set("ex21"), {Slope{1, 0}, Fraction(2, 3)}, 4).excluded_at != 2)
    bad.push_back("ex21 vertical line should leave the extension at level 2");

  // steep-direction emptiness holds in the sharp form: with a missing cell,
  // |r| + s > N empties the window outright and |r| + s = N leaves at most
  // one isolated intercept. The non-strict version of the bound is false:
  // the carpet keeps an intercept at slope 2 and genuinely bears that line.
  for (const std::string& name : corpus()) {
    DigitSet d = preset_digit_set(name);
    if (static_cast<std::int64_t>(d.digits.size()) == static_cast<std::int64_t>(d.n) * d.n)
      continue;
    std::vector<Slope> equality, beyond;
    for (std::int64_t a = 1; a <= d.n; ++a) {
      std::int64_t s = d.n - a;
      if (s >= 1 && std::gcd(a, s) == 1) {
        equality.push_back({a, s});
        equality.push_back({-a, s});
      }
      std::int64_t s2 = d.n + 1 - a;
      if (s2 >= 1 && std::gcd(a, s2) == 1) {
        beyond.push_back({a, s2});
        beyond.push_back({-a, s2});
      }
    }
    for (const Slope& sl : equality) {
      OmegaProfile p = omega1(d, sl);
      if (p.m != 0 || p.q > 1) {
        bad.push_back("boundary slope keeps too much on " + name);
        break;
      }
    }
    for (const Slope& sl : beyond) {
      OmegaProfile p = omega1(d, sl);
      if (p.m != 0 || p.q != 0) {
        bad.push_back("steep slope keeps something on " + name);
        break;
      }
    }
  }
  OmegaProfile carpet_edge = omega1(preset_digit_set("carpet3"), Slope{2, 1});
  LineContainment carried =
      line_in_H_check(preset_digit_set("carpet3"), {Slope{2, 1}, Fraction(0)}, 4);
  if (!(carpet_edge.m == 0 && carpet_edge.q == 1 && carried.contained))
    bad.push_back("carpet boundary-slope counterexample did not reproduce");

  std::string detail =
      "monotone counts (200 sets), adjacency bases agree, windows nest with cell-map "
      "containment, isolated intercepts persist except ex21's spurious verticals (exit level 2, "
      "pinned), steepness bound in sharp form (non-strict variant refuted by carpet3 slope 2/1, "
      "line carried to depth 4)";
  if (!bad.empty()) {
    detail = bad.front();
    for (std::size_t i = 1; i < bad.size(); ++i) detail += "; " + bad[i];
  }
  report(6, bad.empty(), detail);
}

// ---------------------------------------------------------------- criterion 7

void criterion7() {
  std::vector<std::string> bad;
  for (const char* name : {"diag5", "d3_5"}) {
    DichotomyResult r = dichotomy_probe(preset_digit_set(name), 2);
    if (r.outcome != DichotomyResult::Outcome::case1 ||
        r.witness != DichotomyResult::Witness::holonomy || r.level > 2)
      bad.push_back(std::string(name) + " holonomy witness missing by level 2");
  }
  DichotomyResult carpet = dichotomy_probe(preset_digit_set("carpet3"), 4);
  if (carpet.outcome != DichotomyResult::Outcome::undetermined || carpet.level != 4)
    bad.push_back("carpet3 not undetermined through depth 4");
  Fraction bound = complement_diameter_bound_sq(3);
  for (int level = 1; level <= 4; ++level) {
    PeriodicComplementReport rep =
        complement_components_periodic(preset_digit_set("carpet3"), level, false);
    for (const PeriodicComponent& comp : rep.components)
      if (!comp.bounded || comp.diameter_sq > bound) {
        bad.push_back("carpet3 complement breaks the diameter bound at level " +
                      std::to_string(level));
        break;
      }
  }
  std::string detail = "holonomy witnesses at level <= 2; carpet3 open through depth 4, every "
                       "complement diameter^2 <= " +
                       frac_string(bound);
  if (!bad.empty()) {
    detail = bad.front();
    for (std::size_t i = 1; i < bad.size(); ++i) detail += "; " + bad[i];
  }
  report(7, bad.empty(), detail);
}

// ---------------------------------------------------------------- criterion 8

void criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  CensusResult first = run_census(3, {}, 4);
  double dt = seconds_since(t0);
  CensusResult again = run_census(3, {}, 4);
  CensusResult narrow = run_census(3, {}, 2);
  std::string csv = census_csv(first);
  bool deterministic = csv == census_csv(again) && csv == census_csv(narrow);
  json summary = census_summary_json(first);
  bool rechecks = summary["recheck_failures"] == 0;
  bool product = summary["product_cross_check"] == true;
  bool ok = dt < 60.0 && deterministic && rechecks && product && first.rows.size() == 502;
  std::ostringstream detail;
  detail << first.rows.size() << " rows in " << dt << "s, "
         << (deterministic ? "byte-identical across runs and worker counts"
                           : "NON-DETERMINISTIC output")
         << ", recheck failures " << summary["recheck_failures"] << ", product cross-check "
         << (product ? "consistent" : "INCONSISTENT");
  report(8, ok, detail.str());
}

// ---------------------------------------------------------------- criterion 9

struct GoldenImage {
  const char* preset;
  int level;
  int px;
  std::uint64_t hash;
};

// Pinned after the first verified run; FNV-1a 64 of the PNG bytes.
constexpr GoldenImage kGolden[] = {
    {"carpet3", 1, 27, 0x71f7a8e632341141ull},
    {"carpet3", 2, 27, 0x082f3200a775316cull},
    {"carpet3", 3, 27, 0xdc8c96b538bcc24aull},
    {"diag5", 1, 125, 0xbc90cdd61426a932ull},
    {"diag5", 2, 125, 0x751152bd2335c1f7ull},
    {"diag5", 3, 125, 0xa6b792ae705a0b55ull},
};

void criterion9() {
  std::vector<std::string> bad;
  std::ostringstream actual;
  for (const GoldenImage& g : kGolden) {
    DigitSet d = preset_digit_set(g.preset);
    RasterSpec spec;
    spec.pixels_per_unit = g.px;
    std::string png = render_approx(d, g.level, spec);
    if (png != render_approx(d, g.level, spec)) {
      bad.push_back(std::string(g.preset) + " level " + std::to_string(g.level) +
                    " differs between runs");
      continue;
    }

    // pixel identity: the image must equal an independently assembled raster
    ExpandedDigits e = expand_digits(d, g.level);
    const std::int64_t block = g.px / e.side;
    const std::int64_t size = g.px + 2 * static_cast<std::int64_t>(spec.margin);
    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(size * size), spec.background);
    for (const Cell& c : e.digits) {
      const std::int64_t x0 = spec.margin + c.i * block;
      const std::int64_t y0 = spec.margin + (e.side - 1 - c.j) * block;
      for (std::int64_t y = y0; y < y0 + block; ++y)
        for (std::int64_t x = x0; x < x0 + block; ++x)
          pixels[static_cast<std::size_t>(y * size + x)] = spec.foreground;
    }
    if (png != detail::png_encode_gray(size, size, pixels)) {
      bad.push_back(std::string(g.preset) + " level " + std::to_string(g.level) +
                    " pixel mismatch");
      continue;
    }

    std::uint64_t h = fnv1a(png);
    actual << " " << g.preset << "/" << g.level << "=" << hex64(h);
    if (h != g.hash)
      bad.push_back(std::string(g.preset) + " level " + std::to_string(g.level) + " hash " +
                    hex64(h) + " != golden " + hex64(g.hash));
  }
  std::string detail = "six golden images stable and pixel-exact";
  if (!bad.empty()) {
    detail = bad.front();
    for (std::size_t i = 1; i < bad.size(); ++i) detail += "; " + bad[i];
    detail += "; actual:" + actual.str();
  }
  report(9, bad.empty(), detail);
}

}  // namespace

int main() {
  criterion(1, criterion1);
  criterion(2, criterion2);
  criterion(3, criterion3);
  criterion(4, criterion4);
  criterion(5, criterion5);
  criterion(6, criterion6);
  criterion(7, criterion7);
  criterion(8, criterion8);
  criterion(9, criterion9);
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
