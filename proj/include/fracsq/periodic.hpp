#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fracsq/budget.hpp"
#include "fracsq/grid.hpp"

namespace fracsq {

/// One 4-connected component of the level-n complement on the torus. The
/// lift of a component to the plane is connected iff its holonomy vanishes;
/// then the one-period footprint lifts injectively and has a finite diameter.
struct PeriodicComponent {
  std::int64_t cell_count = 0;
  Cell representative;  // first cell in row-major scan order
  bool bounded = true;
  std::pair<std::int64_t, std::int64_t> holonomy{0, 0};  // in whole periods
  Fraction diameter_sq;                                  // unit-square units, bounded only
  std::vector<Cell> cells;                               // sorted, optional
};

struct PeriodicComplementReport {
  int n = 0;
  int level = 0;
  std::int64_t side = 1;
  std::vector<PeriodicComponent> components;
};

namespace detail {

/// Union-find whose edges carry plane displacements: off[x] is the lift
/// displacement of x relative to its parent.
struct WeightedUF {
  std::vector<std::int32_t> parent;
  std::vector<std::int32_t> offx, offy;

  explicit WeightedUF(std::size_t size) : parent(size, -1), offx(size, 0), offy(size, 0) {}

  void activate(std::int32_t x) { parent[x] = x; }
  bool active(std::int32_t x) const { return parent[x] >= 0; }

  std::int32_t find(std::int32_t x, std::int64_t& ox, std::int64_t& oy) {
    std::int32_t root = x;
    while (parent[root] != root) root = parent[root];
    std::int64_t ax = 0, ay = 0;
    std::int32_t cur = x;
    while (parent[cur] != cur) {
      ax += offx[cur];
      ay += offy[cur];
      cur = parent[cur];
    }
    // compress: repoint the path at the root with cumulative offsets
    cur = x;
    std::int64_t rx = ax, ry = ay;
    while (parent[cur] != cur) {
      std::int32_t next = parent[cur];
      std::int64_t sx = offx[cur], sy = offy[cur];
      parent[cur] = root;
      offx[cur] = static_cast<std::int32_t>(rx);
      offy[cur] = static_cast<std::int32_t>(ry);
      rx -= sx;
      ry -= sy;
      cur = next;
    }
    ox = ax;
    oy = ay;
    return root;
  }
};

}  // namespace detail

/// Complement components of the level-n approximation viewed on the torus
/// (cells mod side in both axes). Holonomy is detected exactly: an edge that
/// closes a cycle with a nonzero net displacement marks the component
/// unbounded and records the displacement in whole periods.
inline PeriodicComplementReport complement_components_periodic(const DigitSet& d, int level,
                                                               bool collect_cells = true) {
  CellGrid g = rasterize(d, level);
  const std::int64_t side = g.side;
  const auto size = static_cast<std::size_t>(side * side);
  detail::WeightedUF uf(size);
  for (std::int64_t j = 0; j < side; ++j)
    for (std::int64_t i = 0; i < side; ++i)
      if (!g.get(i, j)) uf.activate(static_cast<std::int32_t>(j * side + i));

  // holonomy per root, transferred on merge; nonzero roots are rare
  std::unordered_map<std::int32_t, std::pair<std::int64_t, std::int64_t>> holonomy_at;

  auto link = [&](std::int64_t i, std::int64_t j, std::int64_t di, std::int64_t dj) {
    std::int64_t ni = i + di, nj = j + dj;
    std::int64_t wi = ni == side ? 0 : ni, wj = nj == side ? 0 : nj;
    auto a = static_cast<std::int32_t>(j * side + i);
    auto b = static_cast<std::int32_t>(wj * side + wi);
    if (!uf.active(b)) return;
    std::int64_t ax, ay, bx, by;
    std::int32_t ra = uf.find(a, ax, ay);
    std::int32_t rb = uf.find(b, bx, by);
    if (ra == rb) {
      std::int64_t mx = ax + di - bx;
      std::int64_t my = ay + dj - by;
      if (mx == 0 && my == 0) return;
      if (mx % side != 0 || my % side != 0)
        throw InvariantError("cycle displacement not a whole number of periods");
      holonomy_at.emplace(ra, std::make_pair(mx / side, my / side));
      return;
    }
    // lift(rb) relative to lift(ra), forcing lift(b) = lift(a) + delta
    std::int64_t sx = ax + di - bx;
    std::int64_t sy = ay + dj - by;
    uf.parent[rb] = ra;
    uf.offx[rb] = static_cast<std::int32_t>(sx);
    uf.offy[rb] = static_cast<std::int32_t>(sy);
    auto moved = holonomy_at.find(rb);
    if (moved != holonomy_at.end()) {
      holonomy_at.emplace(ra, moved->second);
      holonomy_at.erase(moved);
    }
  };

  for (std::int64_t j = 0; j < side; ++j)
    for (std::int64_t i = 0; i < side; ++i) {
      if (g.get(i, j)) continue;
      link(i, j, 1, 0);
      link(i, j, 0, 1);
    }

  PeriodicComplementReport out;
  out.n = d.n;
  out.level = level;
  out.side = side;

  // per component: lifted-row -> [min i, max i], enough for an exact hull
  std::unordered_map<std::int32_t, std::int32_t> root_index;
  std::vector<std::unordered_map<std::int64_t, std::pair<std::int64_t, std::int64_t>>> extremes;
  for (std::int64_t j = 0; j < side; ++j)
    for (std::int64_t i = 0; i < side; ++i) {
      auto id = static_cast<std::int32_t>(j * side + i);
      if (!uf.active(id)) continue;
      std::int64_t ox, oy;
      std::int32_t root = uf.find(id, ox, oy);
      auto [it, fresh] = root_index.emplace(root, static_cast<std::int32_t>(out.components.size()));
      if (fresh) {
        PeriodicComponent comp;
        comp.representative = {i, j};
        auto hol = holonomy_at.find(root);
        comp.bounded = hol == holonomy_at.end();
        if (!comp.bounded) comp.holonomy = hol->second;
        out.components.push_back(std::move(comp));
        extremes.emplace_back();
      }
      auto idx = static_cast<std::size_t>(it->second);
      PeriodicComponent& comp = out.components[idx];
      ++comp.cell_count;
      if (collect_cells) comp.cells.push_back({i, j});
      if (comp.bounded) {
        // (ox, oy) is already the cell's lifted position relative to the root
        auto [row, added] = extremes[idx].try_emplace(oy, std::make_pair(ox, ox));
        if (!added) {
          row->second.first = std::min(row->second.first, ox);
          row->second.second = std::max(row->second.second, ox);
        }
      }
    }

  const std::int64_t denom = side * side;
  for (std::size_t k = 0; k < out.components.size(); ++k) {
    PeriodicComponent& comp = out.components[k];
    if (!comp.bounded) continue;
    std::vector<Cell> pts;
    pts.reserve(extremes[k].size() * 4);
    for (const auto& [row, span] : extremes[k]) {
      pts.push_back({span.first, row});
      pts.push_back({span.second + 1, row});
      pts.push_back({span.first, row + 1});
      pts.push_back({span.second + 1, row + 1});
    }
    auto hull = detail::convex_hull(std::move(pts));
    comp.diameter_sq = Fraction(detail::max_dist_sq(hull), denom);
  }
  return out;
}

/// Outcome of searching finite levels for a proof that some complement
/// component of the attractor is unbounded, or that one exceeds the diameter
/// bound sqrt(2) (n^2+1)^2 / n that separates the two global regimes.
struct DichotomyResult {
  enum class Outcome { case1, undetermined };
  enum class Witness { none, holonomy, diameter };

  Outcome outcome = Outcome::undetermined;
  Witness witness = Witness::none;
  int level = 0;  // witness level, or deepest level probed
  std::pair<std::int64_t, std::int64_t> holonomy{0, 0};
  Fraction diameter_sq;  // witness value when witness == diameter
  Fraction bound_sq;
};

inline Fraction complement_diameter_bound_sq(int n) {
  BigInt m = BigInt(n) * n + 1;
  return Fraction(2 * m * m * m * m, BigInt(n) * n);
}

/// A complement component of any finite level contains a complement
/// component of the attractor, so a finite-level witness is conclusive.
/// No finite level can certify the other regime; absence of a witness
/// up to n_max leaves the question open.
inline DichotomyResult dichotomy_probe(const DigitSet& d, int n_max) {
  DichotomyResult out;
  out.bound_sq = complement_diameter_bound_sq(d.n);
  for (int level = 1; level <= n_max; ++level) {
    PeriodicComplementReport report = complement_components_periodic(d, level, false);
    for (const PeriodicComponent& comp : report.components) {
      if (!comp.bounded) {
        out.outcome = DichotomyResult::Outcome::case1;
        out.witness = DichotomyResult::Witness::holonomy;
        out.level = level;
        out.holonomy = comp.holonomy;
        return out;
      }
      if (comp.diameter_sq > out.bound_sq) {
        out.outcome = DichotomyResult::Outcome::case1;
        out.witness = DichotomyResult::Witness::diameter;
        out.level = level;
        out.diameter_sq = comp.diameter_sq;
        return out;
      }
    }
    out.level = level;
  }
  return out;
}

}  // namespace fracsq
