#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fracsq/digit_set.hpp"
#include "fracsq/fraction.hpp"

namespace fracsq {

/// Dense occupancy grid for one refinement level, side = n^level cells per axis.
struct CellGrid {
  int n = 0;
  int level = 0;
  std::int64_t side = 1;
  std::int64_t wpr = 0;  // 64-bit words per row
  std::vector<std::uint64_t> words;

  bool get(std::int64_t i, std::int64_t j) const {
    return (words[j * wpr + (i >> 6)] >> (i & 63)) & 1u;
  }
  void set(std::int64_t i, std::int64_t j) { words[j * wpr + (i >> 6)] |= std::uint64_t{1} << (i & 63); }
};

inline CellGrid make_grid(int n, int level, std::int64_t side) {
  CellGrid g;
  g.n = n;
  g.level = level;
  g.side = side;
  g.wpr = (side + 63) / 64;
  g.words.assign(static_cast<std::size_t>(g.wpr * side), 0);
  return g;
}

inline CellGrid rasterize(const DigitSet& d, int level) {
  validate(d);
  if (level < 1) throw std::invalid_argument("level must be at least 1");
  level_cells(d.n, level);
  std::int64_t side = 1;
  for (int k = 0; k < level; ++k) side *= d.n;
  CellGrid g = make_grid(d.n, level, side);
  // stamps straight into the bitmap; no intermediate cell list
  std::vector<std::int64_t> pw(static_cast<std::size_t>(level), 1);
  for (int k = 1; k < level; ++k) pw[k] = pw[k - 1] * d.n;
  auto stamp = [&](auto&& self, int lvl, std::int64_t ox, std::int64_t oy) -> void {
    if (lvl == 0) {
      g.set(ox, oy);
      return;
    }
    const std::int64_t b = pw[lvl - 1];
    for (const Cell& e : d.digits) self(self, lvl - 1, ox + e.i * b, oy + e.j * b);
  };
  stamp(stamp, level, 0, 0);
  return g;
}

inline std::int64_t popcount(const CellGrid& g) {
  std::int64_t total = 0;
  for (std::uint64_t w : g.words) total += std::popcount(w);
  return total;
}

namespace detail {

inline std::int64_t next_one(const std::uint64_t* row, std::int64_t side, std::int64_t x) {
  while (x < side) {
    std::int64_t w = x >> 6;
    std::uint64_t word = row[w] >> (x & 63);
    if (word) {
      std::int64_t p = x + std::countr_zero(word);
      return p < side ? p : side;
    }
    x = (w + 1) << 6;
  }
  return side;
}

inline std::int64_t next_zero(const std::uint64_t* row, std::int64_t side, std::int64_t x) {
  while (x < side) {
    std::int64_t w = x >> 6;
    std::uint64_t word = (~row[w]) >> (x & 63);
    if (word) {
      std::int64_t p = x + std::countr_zero(word);
      return p < side ? p : side;
    }
    x = (w + 1) << 6;
  }
  return side;
}

struct Run {
  std::int64_t begin = 0;
  std::int64_t end = 0;  // exclusive
  std::int32_t id = 0;
};

/// Maximal runs of set cells in row j, in ascending order.
inline void set_runs(const CellGrid& g, std::int64_t j, std::vector<Run>& out) {
  out.clear();
  const std::uint64_t* row = g.words.data() + j * g.wpr;
  std::int64_t x = next_one(row, g.side, 0);
  while (x < g.side) {
    std::int64_t e = next_zero(row, g.side, x);
    out.push_back({x, e, 0});
    x = next_one(row, g.side, e);
  }
}

struct UnionFind {
  std::vector<std::int32_t> parent;
  std::int64_t components = 0;

  std::int32_t add() {
    auto id = static_cast<std::int32_t>(parent.size());
    parent.push_back(id);
    ++components;
    return id;
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
};

/// True when runs [a,b) and [c,d) on adjacent rows touch under the adjacency.
inline bool runs_touch(const Run& cur, const Run& prev, bool eight) {
  if (eight) return cur.begin <= prev.end && prev.begin <= cur.end;
  return cur.begin < prev.end && prev.begin < cur.end;
}

}  // namespace detail

/// Number of 8-connected components of the set cells.
inline std::int64_t count_components(const CellGrid& g) {
  detail::UnionFind uf;
  std::vector<detail::Run> prev, cur;
  for (std::int64_t j = 0; j < g.side; ++j) {
    detail::set_runs(g, j, cur);
    for (auto& run : cur) run.id = uf.add();
    std::size_t p = 0;
    for (auto& run : cur) {
      while (p < prev.size() && prev[p].end + 1 <= run.begin) ++p;
      for (std::size_t q = p; q < prev.size() && prev[q].begin <= run.end; ++q)
        if (detail::runs_touch(run, prev[q], true)) uf.unite(run.id, prev[q].id);
    }
    std::swap(prev, cur);
  }
  return uf.components;
}

/// Connected components of the set cells with exact squared diameters.
struct ComponentSummary {
  std::int64_t count = 0;
  std::vector<std::int32_t> labels;    // side*side row-major (j*side+i), -1 when empty
  std::vector<Fraction> diameters_sq;  // per component, in units of the unit square
};

namespace detail {

inline __int128 cross(const Cell& o, const Cell& a, const Cell& b) {
  return static_cast<__int128>(a.i - o.i) * (b.j - o.j) -
         static_cast<__int128>(a.j - o.j) * (b.i - o.i);
}

inline std::vector<Cell> convex_hull(std::vector<Cell> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Cell> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline std::int64_t max_dist_sq(const std::vector<Cell>& hull) {
  std::int64_t best = 0;
  for (std::size_t a = 0; a < hull.size(); ++a)
    for (std::size_t b = a + 1; b < hull.size(); ++b) {
      std::int64_t dx = hull[a].i - hull[b].i;
      std::int64_t dy = hull[a].j - hull[b].j;
      best = std::max(best, dx * dx + dy * dy);
    }
  return best;
}

}  // namespace detail

inline ComponentSummary components(const CellGrid& g) {
  detail::UnionFind uf;
  std::vector<detail::Run> prev, cur;
  std::vector<std::vector<detail::Run>> rows(static_cast<std::size_t>(g.side));
  for (std::int64_t j = 0; j < g.side; ++j) {
    detail::set_runs(g, j, cur);
    for (auto& run : cur) run.id = uf.add();
    std::size_t p = 0;
    for (auto& run : cur) {
      while (p < prev.size() && prev[p].end + 1 <= run.begin) ++p;
      for (std::size_t q = p; q < prev.size() && prev[q].begin <= run.end; ++q)
        if (detail::runs_touch(run, prev[q], true)) uf.unite(run.id, prev[q].id);
    }
    rows[static_cast<std::size_t>(j)] = cur;
    std::swap(prev, cur);
  }

  ComponentSummary out;
  out.count = uf.components;
  out.labels.assign(static_cast<std::size_t>(g.side * g.side), -1);
  std::vector<std::int32_t> root_label(uf.parent.size(), -1);
  std::vector<std::vector<Cell>> corners;
  for (std::int64_t j = 0; j < g.side; ++j) {
    for (const auto& run : rows[static_cast<std::size_t>(j)]) {
      std::int32_t root = uf.find(run.id);
      std::int32_t label = root_label[root];
      if (label < 0) {
        label = static_cast<std::int32_t>(corners.size());
        root_label[root] = label;
        corners.emplace_back();
      }
      for (std::int64_t i = run.begin; i < run.end; ++i)
        out.labels[static_cast<std::size_t>(j * g.side + i)] = label;
      corners[label].push_back({run.begin, j});
      corners[label].push_back({run.end, j});
      corners[label].push_back({run.begin, j + 1});
      corners[label].push_back({run.end, j + 1});
    }
  }
  out.diameters_sq.reserve(corners.size());
  const std::int64_t denom = g.side * g.side;
  for (auto& pts : corners) {
    auto hull = detail::convex_hull(std::move(pts));
    out.diameters_sq.emplace_back(detail::max_dist_sq(hull), denom);
  }
  return out;
}

/// Number of bounded 4-connected components of the complement (holes).
inline std::int64_t holes(const CellGrid& g) {
  detail::UnionFind uf;
  std::vector<detail::Run> prev, cur;
  // complement runs of the row extended by one pad cell on each side
  auto complement_runs = [&](std::int64_t j, std::vector<detail::Run>& out) {
    out.clear();
    if (j < 0 || j >= g.side) {
      out.push_back({-1, g.side + 1, 0});
      return;
    }
    const std::uint64_t* row = g.words.data() + j * g.wpr;
    std::int64_t x = -1;
    while (true) {
      std::int64_t e = detail::next_one(row, g.side, x < 0 ? 0 : x);
      if (e >= g.side) {
        out.push_back({x, g.side + 1, 0});
        return;
      }
      out.push_back({x, e, 0});
      x = detail::next_zero(row, g.side, e);
      if (x >= g.side) {
        out.push_back({g.side, g.side + 1, 0});
        return;
      }
    }
  };
  for (std::int64_t j = -1; j <= g.side; ++j) {
    complement_runs(j, cur);
    for (auto& run : cur) run.id = uf.add();
    std::size_t p = 0;
    for (auto& run : cur) {
      while (p < prev.size() && prev[p].end <= run.begin) ++p;
      for (std::size_t q = p; q < prev.size() && prev[q].begin < run.end; ++q)
        if (detail::runs_touch(run, prev[q], false)) uf.unite(run.id, prev[q].id);
    }
    std::swap(prev, cur);
  }
  return uf.components - 1;  // every frame-touching component joins the border ring
}

/// beta_0 of the level-n approximations for n = 1..n_max (non-decreasing in n).
inline std::vector<std::int64_t> beta0_sequence(const DigitSet& d, int n_max) {
  std::vector<std::int64_t> seq;
  seq.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) seq.push_back(count_components(rasterize(d, n)));
  return seq;
}

/// Stabilization of the beta_0 sequence. A match between consecutive levels
/// certifies the value from level 2 on, never from level 1.
struct Beta0Result {
  std::optional<int> n0;             // least n0 >= 2 with beta0(n0+1) == beta0(n0)
  std::int64_t beta0 = 0;            // certified value when n0 is set
  std::vector<std::int64_t> sequence;  // beta0 levels 1..(as far as computed)
};

inline Beta0Result beta0_stabilize(const DigitSet& d, int n_max) {
  if (n_max < 3) throw std::invalid_argument("stabilization needs n_max >= 3");
  Beta0Result out;
  out.sequence.push_back(count_components(rasterize(d, 1)));
  out.sequence.push_back(count_components(rasterize(d, 2)));
  for (int n = 3; n <= n_max; ++n) {
    out.sequence.push_back(count_components(rasterize(d, n)));
    if (out.sequence[out.sequence.size() - 1] == out.sequence[out.sequence.size() - 2]) {
      out.n0 = n - 1;
      out.beta0 = out.sequence.back();
      return out;
    }
  }
  return out;
}

/// Certifies a trivial fundamental group from the level-3 approximation.
struct Pi1Certificate {
  bool trivial_certified = false;
  std::int64_t holes_level3 = 0;
};

inline Pi1Certificate pi1_certificate(const DigitSet& d) {
  std::int64_t h = holes(rasterize(d, 3));
  return {h == 0, h};
}

}  // namespace fracsq
