#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fracsq/budget.hpp"
#include "fracsq/digit_set.hpp"
#include "fracsq/fraction.hpp"
#include "fracsq/grid.hpp"

namespace fracsq {

/// Rational direction (r, s): lines x2 = (r/s) x1 + t. Vertical is (1, 0),
/// horizontal (0, 1). Normalized: gcd(|r|, s) = 1, s >= 0, s = 0 => r = 1.
struct Slope {
  std::int64_t r = 0;
  std::int64_t s = 1;

  bool vertical() const { return s == 0; }
  friend bool operator==(const Slope&, const Slope&) = default;
};

inline Slope normalize_slope(std::int64_t r, std::int64_t s) {
  if (r == 0 && s == 0) throw std::invalid_argument("slope needs a nonzero direction");
  if (s == 0) return {1, 0};
  if (s < 0) {
    r = -r;
    s = -s;
  }
  if (r == 0) return {0, 1};
  std::int64_t g = std::gcd(std::abs(r), s);
  return {r / g, s / g};
}

/// Transposing the plane carries lines of direction (s, r) to (r, s).
inline Slope transpose_slope(const Slope& sl) { return normalize_slope(sl.s, sl.r); }

/// Directions that can carry a full line inside the periodic extension:
/// vertical, horizontal, then every normalized (+-r, s) with |r| + s <= N.
/// A steeper direction's single missing cell already shades a whole period.
inline std::vector<Slope> admissible_slopes(int n) {
  if (n < 2) throw std::invalid_argument("order must be at least 2");
  std::vector<Slope> out{{1, 0}, {0, 1}};
  for (int t = 2; t <= n; ++t)
    for (std::int64_t a = 1; a < t; ++a) {
      std::int64_t s = t - a;
      if (std::gcd(a, s) != 1) continue;
      out.push_back({a, s});
      out.push_back({-a, s});
    }
  return out;
}

/// Intercept window of one period for a non-vertical slope at one level.
/// The window [0, 1/s] is split into N^level cells; the set records which
/// closed cells and which grid points survive after removing the shadows of
/// all missing cells of the level. Everything is exact: shadows of missing
/// open cells are open intervals with integer endpoints on this grid, so a
/// cell survives iff no shadow covers it iff no shadow meets its interior.
struct OmegaLevelSet {
  Slope slope;
  int n = 0;
  int level = 1;
  std::int64_t window = 0;            // cell count, N^level
  std::vector<std::int64_t> cells;    // surviving cells, subset of [0, window)
  std::vector<std::int64_t> points;   // surviving grid points, subset of [0, window]
};

/// One-period intercept profile at level 1 with the isolation counts that
/// drive the classification. q identifies the window ends 0 and N when both
/// are isolated: they name the same intercept class mod 1/s.
struct OmegaProfile {
  Slope slope;
  int n = 0;
  std::vector<int> cells;     // subset of {0..N-1}
  std::vector<int> isolated;  // subset of {0..N}
  int m = 0;
  int q = 0;
  bool line_bearing = false;
};

namespace detail {

/// Survival flags per cell class and per point class on the period circle.
struct WindowClasses {
  std::int64_t period = 0;
  std::vector<std::uint8_t> cell_kept;   // size period
  std::vector<std::uint8_t> point_kept;  // size period (class of point index mod period)
};

inline WindowClasses window_classes(const DigitSet& d, const Slope& sl, int level) {
  const std::int64_t r = sl.r, s = sl.s;
  CellGrid g = rasterize(d, level);
  const std::int64_t p = g.side;
  WindowClasses w;
  w.period = p;
  w.cell_kept.assign(static_cast<std::size_t>(p), 1);
  w.point_kept.assign(static_cast<std::size_t>(p), 1);

  if (r == 0) {
    // shadows are the open cells (b, b+1) of rows with a missing cell; the
    // open edge shared by two vertically stacked missing cells shades the
    // grid point between them
    for (std::int64_t b = 0; b < p; ++b)
      for (std::int64_t a = 0; a < p; ++a) {
        if (g.get(a, b)) continue;
        w.cell_kept[static_cast<std::size_t>(b)] = 0;
        std::int64_t up = b + 1 == p ? 0 : b + 1;
        if (!g.get(a, up)) w.point_kept[static_cast<std::size_t>(up)] = 0;
      }
    return w;
  }

  // shadow of missing open cell (a,b): open interval of length s + |r| grid
  // units starting at bs - r(a+1) for r > 0, bs - ra for r < 0; shadows of
  // shared edges and corners lie inside neighboring cell shadows
  const std::int64_t len = s + std::abs(r);
  std::vector<std::uint8_t> lo_present(static_cast<std::size_t>(p), 0);
  bool any_missing = false;
  for (std::int64_t b = 0; b < p; ++b)
    for (std::int64_t a = 0; a < p; ++a) {
      if (g.get(a, b)) continue;
      any_missing = true;
      std::int64_t lo = r > 0 ? b * s - r * (a + 1) : b * s - r * a;
      lo_present[static_cast<std::size_t>(((lo % p) + p) % p)] = 1;
    }
  if (!any_missing) return w;
  if (len > p) {
    w.cell_kept.assign(static_cast<std::size_t>(p), 0);
    w.point_kept.assign(static_cast<std::size_t>(p), 0);
    return w;
  }
  if (len == p) {
    // every shadow covers all cells and all point classes except its start
    w.cell_kept.assign(static_cast<std::size_t>(p), 0);
    std::int64_t classes = 0, only = -1;
    for (std::int64_t x = 0; x < p; ++x)
      if (lo_present[static_cast<std::size_t>(x)]) {
        ++classes;
        only = x;
      }
    w.point_kept.assign(static_cast<std::size_t>(p), 0);
    if (classes == 1) w.point_kept[static_cast<std::size_t>(only)] = 1;
    return w;
  }
  // cell k shaded iff some shadow starts in [k-len+1, k] (mod p); point x
  // shaded iff one starts in [x-len+1, x-1] (mod p)
  std::int64_t in_window = 0;
  for (std::int64_t x = p - (len - 1); x < p; ++x)
    in_window += lo_present[static_cast<std::size_t>(x)];
  for (std::int64_t k = 0; k < p; ++k) {
    in_window += lo_present[static_cast<std::size_t>(k)];
    if (in_window > 0) w.cell_kept[static_cast<std::size_t>(k)] = 0;
    std::int64_t drop = k - len + 1;
    if (in_window - lo_present[static_cast<std::size_t>(k)] > 0)
      w.point_kept[static_cast<std::size_t>(k)] = 0;
    in_window -= lo_present[static_cast<std::size_t>(((drop % p) + p) % p)];
  }
  return w;
}

}  // namespace detail

inline OmegaLevelSet omega_level(const DigitSet& d, const Slope& sl, int level) {
  validate(d);
  if (level < 1) throw std::invalid_argument("level must be at least 1");
  if (sl.vertical()) {
    OmegaLevelSet out = omega_level(transpose(d), Slope{0, 1}, level);
    out.slope = sl;
    return out;
  }
  detail::WindowClasses w = detail::window_classes(d, sl, level);
  OmegaLevelSet out;
  out.slope = sl;
  out.n = d.n;
  out.level = level;
  out.window = w.period;
  for (std::int64_t k = 0; k < w.period; ++k)
    if (w.cell_kept[static_cast<std::size_t>(k)]) out.cells.push_back(k);
  for (std::int64_t v = 0; v <= w.period; ++v)
    if (w.point_kept[static_cast<std::size_t>(v % w.period)]) out.points.push_back(v);
  return out;
}

inline OmegaProfile omega1(const DigitSet& d, const Slope& sl) {
  if (sl.vertical()) {
    OmegaProfile out = omega1(transpose(d), Slope{0, 1});
    out.slope = sl;
    return out;
  }
  detail::WindowClasses w = detail::window_classes(d, sl, 1);
  const auto p = static_cast<int>(w.period);
  OmegaProfile out;
  out.slope = sl;
  out.n = d.n;
  auto cell = [&](int k) { return w.cell_kept[static_cast<std::size_t>(k)] != 0; };
  auto point = [&](int v) { return w.point_kept[static_cast<std::size_t>(v % p)] != 0; };
  for (int k = 0; k < p; ++k)
    if (cell(k)) out.cells.push_back(k);
  for (int v = 0; v <= p; ++v) {
    if (!point(v)) continue;
    bool left_free = v == 0 || !cell(v - 1);
    bool right_free = v == p || !cell(v);
    if (left_free && right_free) out.isolated.push_back(v);
  }
  out.m = static_cast<int>(out.cells.size());
  out.q = static_cast<int>(out.isolated.size());
  if (out.q >= 2 && out.isolated.front() == 0 && out.isolated.back() == p) --out.q;
  out.line_bearing = out.m + out.q >= 1;
  return out;
}

inline std::vector<std::pair<Slope, OmegaProfile>> line_bearing_slopes(const DigitSet& d) {
  std::vector<std::pair<Slope, OmegaProfile>> out;
  for (const Slope& sl : admissible_slopes(d.n)) {
    OmegaProfile prof = omega1(d, sl);
    if (prof.line_bearing) out.emplace_back(sl, prof);
  }
  return out;
}

/// One application of the cell maps h_u(t) = (t + u/s)/N determined by the
/// level-1 surviving cells: grid index x at level k lands on x + u N^k at
/// level k+1, for each surviving cell u.
inline OmegaLevelSet omega_recursion_step(const OmegaProfile& profile, const OmegaLevelSet& x) {
  if (profile.m == 0) throw std::domain_error("no cell maps: level-1 window has no whole cell");
  if (profile.n != x.n || !(profile.slope == x.slope))
    throw std::invalid_argument("profile and level set disagree");
  OmegaLevelSet out;
  out.slope = x.slope;
  out.n = x.n;
  out.level = x.level + 1;
  out.window = x.window * x.n;
  for (int u : profile.cells)
    for (std::int64_t c : x.cells) out.cells.push_back(c + u * x.window);
  for (int u : profile.cells)
    for (std::int64_t v : x.points) out.points.push_back(v + u * x.window);
  std::sort(out.cells.begin(), out.cells.end());
  out.cells.erase(std::unique(out.cells.begin(), out.cells.end()), out.cells.end());
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  return out;
}

/// Whether the closed support of `fine` sits inside that of `coarse`.
/// Requires fine.level >= coarse.level; supports are unions of closed grid
/// cells and grid points, so refinement decides membership exactly.
inline bool support_subset(const OmegaLevelSet& fine, const OmegaLevelSet& coarse) {
  if (fine.level < coarse.level) throw std::invalid_argument("fine level below coarse level");
  std::int64_t f = 1;
  for (int k = coarse.level; k < fine.level; ++k) f *= coarse.n;
  auto coarse_cell = [&](std::int64_t k) {
    return std::binary_search(coarse.cells.begin(), coarse.cells.end(), k);
  };
  auto coarse_point = [&](std::int64_t v) {
    return std::binary_search(coarse.points.begin(), coarse.points.end(), v);
  };
  for (std::int64_t c : fine.cells)
    if (!coarse_cell(c / f)) return false;
  for (std::int64_t v : fine.points) {
    if (v % f == 0) {
      if (!coarse_point(v / f)) return false;
    } else if (!coarse_cell(v / f)) {
      return false;
    }
  }
  return true;
}

/// Exact log ratio log(m)/log(n), optionally shifted by one.
struct LogRatio {
  std::int64_t m = 0;
  int n = 0;
  double value = 0.0;
};

inline LogRatio dim_lambda1(std::int64_t m, int n) {
  if (m < 2) throw std::domain_error("dimension formula needs m >= 2");
  return {m, n, 1.0 + std::log(static_cast<double>(m)) / std::log(static_cast<double>(n))};
}

inline LogRatio dim_omega(std::int64_t m, int n) {
  if (m < 1) throw std::domain_error("dimension formula needs m >= 1");
  return {m, n, std::log(static_cast<double>(m)) / std::log(static_cast<double>(n))};
}

}  // namespace fracsq
