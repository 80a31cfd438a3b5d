#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "fracsq/digit_set.hpp"
#include "fracsq/fraction.hpp"
#include "fracsq/lines.hpp"

namespace fracsq {

/// x2 = (r/s) x1 + intercept; vertical lines (s = 0) are x1 = intercept.
struct RationalLine {
  Slope slope;
  Fraction intercept;
};

/// Finite set of intercept classes closed under multiplication by N, modulo
/// the translation lattice of the slope (1/s for non-vertical, 1 vertical).
struct OrbitClosure {
  Slope slope;
  std::vector<Fraction> classes;  // sorted, in [0, modulus)
};

inline Fraction intercept_modulus(const Slope& sl) {
  return sl.vertical() ? Fraction(1) : Fraction(1, sl.s);
}

/// Forward orbit of the intercept under w -> N*w mod the lattice, pre-period
/// included. Rational intercepts have finite orbits: denominators never grow.
inline OrbitClosure intercept_orbit(const RationalLine& line, int n) {
  if (n < 2) throw std::invalid_argument("order must be at least 2");
  const Fraction modulus = intercept_modulus(line.slope);
  OrbitClosure out;
  out.slope = line.slope;
  std::set<Fraction> seen;
  Fraction w = mod_frac(line.intercept, modulus);
  while (seen.insert(w).second) w = mod_frac(n * w, modulus);
  out.classes.assign(seen.begin(), seen.end());
  return out;
}

namespace detail {

/// Whether the line x2 = (r/s) x1 + c meets the half-open square
/// [i,i+1)/n x [j,j+1)/n. Non-vertical only; all comparisons exact.
inline bool line_hits_cell(const Slope& sl, const Fraction& c, int n, std::int64_t i,
                           std::int64_t j) {
  const Fraction lo_y(j, n), hi_y(j + 1, n);
  if (sl.r == 0) return lo_y <= c && c < hi_y;
  Fraction tau(sl.r, sl.s);
  Fraction at_left = tau * Fraction(i, n) + c;
  Fraction at_right = tau * Fraction(i + 1, n) + c;
  if (sl.r > 0) return at_left < hi_y && lo_y < at_right;   // image [at_left, at_right)
  return at_right < hi_y && lo_y <= at_left;                // image (at_right, at_left]
}

}  // namespace detail

/// Smallest digit set whose attractor's periodic extension contains every
/// line of the family: cells are kept iff some lattice translate of some
/// orbit-class line passes through the half-open scaled cell.
inline DigitSet digit_operator(const std::vector<RationalLine>& lines, int n) {
  if (lines.empty()) throw std::invalid_argument("digit operator needs at least one line");
  std::set<Cell> cells;
  for (const RationalLine& line : lines) {
    OrbitClosure orbit = intercept_orbit(line, n);
    if (line.slope.vertical()) {
      for (const Fraction& w : orbit.classes) {
        std::int64_t i = static_cast<std::int64_t>(floor_frac(w * n));
        for (std::int64_t j = 0; j < n; ++j) cells.insert({i, j});
      }
      continue;
    }
    const std::int64_t span = std::abs(line.slope.r) + line.slope.s;
    for (const Fraction& w : orbit.classes)
      for (std::int64_t k = -span; k <= span; ++k) {
        Fraction c = w + Fraction(k, line.slope.s);
        for (std::int64_t i = 0; i < n; ++i)
          for (std::int64_t j = 0; j < n; ++j)
            if (detail::line_hits_cell(line.slope, c, n, i, j)) cells.insert({i, j});
      }
  }
  return make_digit_set(n, {cells.begin(), cells.end()});
}

/// Text form "r/s@p/q" (slope at intercept), or "v@p/q" for vertical lines.
/// Integer shorthand works on either side: "2/1@0", "v@1".
inline RationalLine parse_rational_line(const std::string& text) {
  auto at = text.find('@');
  if (at == std::string::npos) throw ParseError("line needs the form r/s@p/q or v@p/q");
  std::string slope_part = text.substr(0, at);
  std::string intercept_part = text.substr(at + 1);
  auto parse_ratio = [](const std::string& part, const char* what) {
    std::size_t pos = 0;
    std::int64_t num = detail::parse_int(part, pos);
    std::int64_t den = 1;
    if (pos < part.size() && part[pos] == '/') {
      ++pos;
      den = detail::parse_int(part, pos);
    }
    if (pos != part.size()) throw ParseError(std::string("trailing characters in ") + what);
    return std::pair<std::int64_t, std::int64_t>{num, den};
  };
  RationalLine line;
  if (slope_part == "v") {
    line.slope = Slope{1, 0};
  } else {
    auto [r, s] = parse_ratio(slope_part, "slope");
    if (s == 0) throw ParseError("vertical slope is written v@p/q");
    line.slope = normalize_slope(r, s);
  }
  auto [p, q] = parse_ratio(intercept_part, "intercept");
  if (q == 0) throw ParseError("intercept denominator must be nonzero");
  line.intercept = Fraction(p, q);
  return line;
}

/// Finite-depth membership of a line in the periodic extension. Exclusion at
/// some level is a proof the line is not contained; survival to `depth` is
/// only depth-limited evidence.
struct LineContainment {
  bool contained = true;
  int excluded_at = 0;  // meaningful when !contained
  int depth = 0;
};

inline LineContainment line_in_H_check(const DigitSet& d, const RationalLine& line, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  if (line.slope.vertical())
    return line_in_H_check(transpose(d), {Slope{0, 1}, line.intercept}, depth);
  LineContainment out;
  out.depth = depth;
  const Fraction w = mod_frac(line.intercept, intercept_modulus(line.slope));
  for (int level = 1; level <= depth; ++level) {
    OmegaLevelSet set = omega_level(d, line.slope, level);
    // intercept in window grid units: w * N^level * s
    Fraction g = w * set.window * line.slope.s;
    bool inside;
    if (is_integer(g)) {
      std::int64_t v = static_cast<std::int64_t>(frac_num(g));
      inside = std::binary_search(set.points.begin(), set.points.end(), v);
    } else {
      std::int64_t c = static_cast<std::int64_t>(floor_frac(g));
      inside = std::binary_search(set.cells.begin(), set.cells.end(), c);
    }
    if (!inside) {
      out.contained = false;
      out.excluded_at = level;
      return out;
    }
  }
  return out;
}

}  // namespace fracsq
