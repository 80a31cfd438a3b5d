#pragma once

#include <string>
#include <vector>

#include "fracsq/digit_set.hpp"
#include "fracsq/digitop.hpp"

// Named digit sets used throughout the tools and tests. The order-5 family
// is generated from its defining lines rather than written out.

namespace fracsq {

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"carpet3", "vicsek3", "ex21",      "diag5",
                                              "d0_5",    "d2_5",    "d3_5",      "product32"};
  return names;
}

inline DigitSet preset_digit_set(const std::string& name) {
  const RationalLine l1{Slope{1, 1}, Fraction(0)};
  const RationalLine l2{Slope{1, 1}, Fraction(-1, 5)};
  const RationalLine l3{Slope{1, 1}, Fraction(1, 5)};
  if (name == "carpet3")
    return parse_digit_set("N=3; D=(0,0),(1,0),(2,0),(0,1),(2,1),(0,2),(1,2),(2,2)");
  if (name == "vicsek3") return parse_digit_set("N=3; D=(1,0),(0,1),(1,1),(2,1),(1,2)");
  if (name == "ex21") return parse_digit_set("N=3; D=(1,0),(0,1),(1,1),(2,1),(2,2)");
  if (name == "product32") return parse_digit_set("N=3; D=(0,0),(0,1),(0,2),(2,0),(2,1),(2,2)");
  if (name == "diag5") return digit_operator({l1}, 5);
  if (name == "d2_5") return digit_operator({l1, l2}, 5);
  if (name == "d3_5") return digit_operator({l1, l2, l3}, 5);
  if (name == "d0_5") {
    DigitSet base = digit_operator({l1, l2}, 5);
    std::vector<Cell> cells;
    for (const Cell& c : base.digits)
      if (!(c.i == 0 && c.j == 4)) cells.push_back(c);
    return make_digit_set(5, cells);
  }
  throw ParseError("unknown preset '" + name + "'");
}

}  // namespace fracsq
