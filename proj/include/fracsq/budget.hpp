#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace fracsq {

/// Thrown when a grid-sized computation would exceed the configured cell budget.
struct BudgetError : std::runtime_error {
  std::uint64_t requested;
  std::uint64_t allowed;
  BudgetError(std::uint64_t req, std::uint64_t cap)
      : std::runtime_error("cell budget exceeded: need " + std::to_string(req) +
                           " cells, budget is " + std::to_string(cap)),
        requested(req),
        allowed(cap) {}
};

/// Thrown when an internal consistency check fails.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Cell capacity for dense grids. Defaults to 2^26, override with FRACSQ_BUDGET_CELLS.
inline std::uint64_t cell_budget() {
  static const std::uint64_t cap = [] {
    if (const char* env = std::getenv("FRACSQ_BUDGET_CELLS")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{1} << 26;
  }();
  return cap;
}

inline void check_budget(std::uint64_t cells) {
  if (cells > cell_budget()) throw BudgetError(cells, cell_budget());
}

/// Cell count of the dense grid at the given level, n_base^(2*level).
/// Throws BudgetError if it does not fit the budget (or overflows).
inline std::uint64_t level_cells(int n_base, int level) {
  std::uint64_t cells = 1;
  const auto base = static_cast<std::uint64_t>(n_base);
  for (int i = 0; i < 2 * level; ++i) {
    if (cells > (std::uint64_t{1} << 62) / base) throw BudgetError(UINT64_MAX, cell_budget());
    cells *= base;
  }
  check_budget(cells);
  return cells;
}

/// Largest level whose dense grid fits the budget. At least 1.
inline int max_level_in_budget(int n_base) {
  int level = 1;
  std::uint64_t cells = static_cast<std::uint64_t>(n_base) * n_base;
  while (true) {
    std::uint64_t next = cells;
    bool overflow = false;
    for (int i = 0; i < 2; ++i) {
      if (next > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(n_base)) {
        overflow = true;
        break;
      }
      next *= static_cast<std::uint64_t>(n_base);
    }
    if (overflow || next > cell_budget()) break;
    cells = next;
    ++level;
  }
  return level;
}

}  // namespace fracsq
