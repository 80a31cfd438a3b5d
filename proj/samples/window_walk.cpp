// Walks the intercept window of the three-line ladder: per-level surviving
// cells and points, then the complement probe that settles its regime.

#include <cstdio>

#include "fracsq/lines.hpp"
#include "fracsq/periodic.hpp"
#include "fracsq/presets.hpp"

int main() {
  using namespace fracsq;
  DigitSet d = preset_digit_set("d3_5");
  Slope sl{1, 1};

  OmegaProfile prof = omega1(d, sl);
  std::printf("slope %lld/%lld: m=%d q=%d cells {", static_cast<long long>(sl.r),
              static_cast<long long>(sl.s), prof.m, prof.q);
  for (std::size_t i = 0; i < prof.cells.size(); ++i)
    std::printf("%s%d", i ? "," : "", prof.cells[i]);
  std::printf("}\n");

  for (int level = 1; level <= 3; ++level) {
    OmegaLevelSet w = omega_level(d, sl, level);
    std::printf("level %d: %zu of %lld cells, %zu points\n", level, w.cells.size(),
                static_cast<long long>(w.window), w.points.size());
  }

  DichotomyResult probe = dichotomy_probe(d, 3);
  if (probe.outcome == DichotomyResult::Outcome::case1)
    std::printf("unbounded complement at level %d, holonomy (%lld,%lld)\n", probe.level,
                static_cast<long long>(probe.holonomy.first),
                static_cast<long long>(probe.holonomy.second));
  else
    std::printf("no unbounded-complement witness through level %d\n", probe.level);
  return 0;
}
