#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracsq/budget.hpp"
#include "fracsq/digit_set.hpp"

namespace fracsq {

/// Whether two tiles (translates of the basis-level approximation by
/// adjacent integer vectors) intersect, by displacement direction. Every
/// tile is a translate of the same cell pattern, so only the direction
/// matters. Closed cells touch iff Chebyshev distance <= 1, which pins the
/// touching cells to the facing boundary strips.
struct TouchPattern {
  bool horizontal = false;  // displacement (+-1, 0)
  bool vertical = false;    // displacement (0, +-1)
  bool diag_up = false;     // displacement (1, 1) or (-1, -1)
  bool diag_down = false;   // displacement (1, -1) or (-1, 1)

  bool by_delta(std::int64_t di, std::int64_t dj) const {
    if (di != 0 && dj == 0) return horizontal;
    if (di == 0 && dj != 0) return vertical;
    if (di == dj) return diag_up;
    return diag_down;
  }
};

namespace detail {

/// Sorted boundary coordinates at Chebyshev gap <= 1 between two strips.
inline bool strips_meet(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::size_t x = 0, y = 0;
  while (x < a.size() && y < b.size()) {
    std::int64_t delta = a[x] - b[y];
    if (std::abs(delta) <= 1) return true;
    if (delta < 0)
      ++x;
    else
      ++y;
  }
  return false;
}

}  // namespace detail

inline TouchPattern touch_pattern(const DigitSet& d, int basis) {
  ExpandedDigits fine = expand_digits(d, basis);
  const std::int64_t s = fine.side;
  std::vector<std::int64_t> left, right, bottom, top;
  bool c00 = false, css = false, cs0 = false, c0s = false;
  for (const Cell& c : fine.digits) {
    if (c.i == 0) left.push_back(c.j);
    if (c.i == s - 1) right.push_back(c.j);
    if (c.j == 0) bottom.push_back(c.i);
    if (c.j == s - 1) top.push_back(c.i);
    c00 |= c.i == 0 && c.j == 0;
    css |= c.i == s - 1 && c.j == s - 1;
    cs0 |= c.i == s - 1 && c.j == 0;
    c0s |= c.i == 0 && c.j == s - 1;
  }
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  std::sort(bottom.begin(), bottom.end());
  std::sort(top.begin(), top.end());
  TouchPattern p;
  p.horizontal = detail::strips_meet(right, left);
  p.vertical = detail::strips_meet(top, bottom);
  p.diag_up = css && c00;
  p.diag_down = cs0 && c0s;
  return p;
}

/// Exact overlap test for two first-level tiles: whether f_a(K) and f_b(K)
/// intersect. Comparing second approximations decides this exactly; deeper
/// basis levels exist to confirm they agree.
inline bool adjacency_level2(const DigitSet& d, const Cell& a, const Cell& b, int basis = 2) {
  if (a == b) throw std::invalid_argument("adjacency needs distinct digits");
  if (!contains(d, a) || !contains(d, b)) throw std::invalid_argument("digit not in set");
  std::int64_t di = b.i - a.i, dj = b.j - a.j;
  if (std::abs(di) > 1 || std::abs(dj) > 1) return false;
  return touch_pattern(d, basis).by_delta(di, dj);
}

/// Tile intersection graph of the level-n cells: vertices are D_n, an edge
/// joins two cells iff the attractor copies they carry intersect. The level-n
/// graph is the level-1 graph of the system (N^n, D_n), so its overlap test
/// compares approximations at basis 2n.
struct HataGraph {
  int n = 0;
  int level = 1;
  int adjacency_basis = 2;
  std::vector<Cell> vertices;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;  // index pairs, a < b, sorted
};

inline HataGraph hata_graph(const DigitSet& d, int level = 1) {
  validate(d);
  if (level < 1) throw std::invalid_argument("level must be at least 1");
  level_cells(d.n, 2 * level);
  HataGraph g;
  g.n = d.n;
  g.level = level;
  g.adjacency_basis = 2 * level;
  g.vertices = expand_digits(d, level).digits;
  TouchPattern p = touch_pattern(d, 2 * level);
  for (std::size_t x = 0; x < g.vertices.size(); ++x)
    for (std::size_t y = x + 1; y < g.vertices.size(); ++y) {
      const Cell& a = g.vertices[x];
      const Cell& b = g.vertices[y];
      if (std::abs(a.i - b.i) > 1 || std::abs(a.j - b.j) > 1) continue;
      if (p.by_delta(b.i - a.i, b.j - a.j))
        g.edges.emplace_back(static_cast<std::int32_t>(x), static_cast<std::int32_t>(y));
    }
  return g;
}

inline std::int64_t graph_components(const HataGraph& g) {
  std::vector<std::int32_t> parent(g.vertices.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<std::int32_t>(i);
  auto find = [&](std::int32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto count = static_cast<std::int64_t>(g.vertices.size());
  for (auto [a, b] : g.edges) {
    std::int32_t ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --count;
    }
  }
  return count;
}

/// Connectedness of the attractor, decided exactly by the first graph.
struct ConnectivityCertificate {
  bool connected = false;
  std::int64_t components = 0;
  std::vector<std::pair<Cell, Cell>> spanning_forest;  // witness edges
};

inline ConnectivityCertificate connected_certificate(const DigitSet& d) {
  HataGraph g = hata_graph(d, 1);
  std::vector<std::int32_t> parent(g.vertices.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<std::int32_t>(i);
  auto find = [&](std::int32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  ConnectivityCertificate out;
  out.components = static_cast<std::int64_t>(g.vertices.size());
  for (auto [a, b] : g.edges) {
    std::int32_t ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --out.components;
      out.spanning_forest.emplace_back(g.vertices[a], g.vertices[b]);
    }
  }
  out.connected = out.components == 1;
  return out;
}

}  // namespace fracsq
