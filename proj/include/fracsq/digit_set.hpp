#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracsq/budget.hpp"

namespace fracsq {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Axis-aligned grid cell. i is the column, j the row; j grows upward.
struct Cell {
  std::int64_t i = 0;
  std::int64_t j = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Digit set of an order-n fractal square. Digits are sorted and unique,
/// each inside [0,n)^2, and there are at least two of them.
struct DigitSet {
  int n = 0;
  std::vector<Cell> digits;

  friend bool operator==(const DigitSet&, const DigitSet&) = default;
};

inline void validate(const DigitSet& d) {
  if (d.n < 2) throw ParseError("order must be at least 2");
  if (d.digits.size() < 2) throw ParseError("a digit set needs at least 2 digits");
  for (const Cell& c : d.digits)
    if (c.i < 0 || c.i >= d.n || c.j < 0 || c.j >= d.n)
      throw ParseError("digit (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                       ") outside [0," + std::to_string(d.n) + ")^2");
  for (std::size_t k = 0; k + 1 < d.digits.size(); ++k) {
    if (d.digits[k] == d.digits[k + 1]) throw ParseError("duplicate digit");
    if (d.digits[k + 1] < d.digits[k]) throw ParseError("digits not sorted");
  }
}

inline DigitSet make_digit_set(int n, std::vector<Cell> digits) {
  std::sort(digits.begin(), digits.end());
  DigitSet d{n, std::move(digits)};
  validate(d);
  return d;
}

inline bool contains(const DigitSet& d, Cell c) {
  return std::binary_search(d.digits.begin(), d.digits.end(), c);
}

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& p) {
  while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
}

inline long long parse_int(const std::string& s, std::size_t& p) {
  skip_ws(s, p);
  std::size_t start = p;
  if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
  while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
  if (p == start) throw ParseError("expected an integer at offset " + std::to_string(start));
  return std::stoll(s.substr(start, p - start));
}

inline void expect(const std::string& s, std::size_t& p, char c) {
  skip_ws(s, p);
  if (p >= s.size() || s[p] != c)
    throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(p));
  ++p;
}

}  // namespace detail

/// Parses the list form  "N=5; D=(0,0),(1,1),(2,2)"  or an N-line grid of
/// '0'/'1' characters where the first line is the top row (j = N-1).
inline DigitSet parse_digit_set(const std::string& text) {
  std::size_t p = 0;
  detail::skip_ws(text, p);
  if (p == text.size()) throw ParseError("empty digit set description");

  if (text[p] == 'N' || text[p] == 'n') {
    ++p;
    detail::expect(text, p, '=');
    long long n = detail::parse_int(text, p);
    if (n < 2 || n > 1 << 14) throw ParseError("order out of range");
    detail::expect(text, p, ';');
    detail::skip_ws(text, p);
    if (p >= text.size() || (text[p] != 'D' && text[p] != 'd')) throw ParseError("expected 'D='");
    ++p;
    detail::expect(text, p, '=');
    std::vector<Cell> cells;
    while (true) {
      detail::expect(text, p, '(');
      long long i = detail::parse_int(text, p);
      detail::expect(text, p, ',');
      long long j = detail::parse_int(text, p);
      detail::expect(text, p, ')');
      cells.push_back({i, j});
      detail::skip_ws(text, p);
      if (p < text.size() && text[p] == ',') {
        ++p;
        continue;
      }
      break;
    }
    detail::skip_ws(text, p);
    if (p != text.size()) throw ParseError("trailing characters after digit list");
    return make_digit_set(static_cast<int>(n), std::move(cells));
  }

  if (text[p] == '0' || text[p] == '1') {
    std::vector<std::string> rows;
    std::size_t q = p;
    while (q < text.size()) {
      std::size_t e = text.find('\n', q);
      if (e == std::string::npos) e = text.size();
      std::string row = text.substr(q, e - q);
      while (!row.empty() && std::isspace(static_cast<unsigned char>(row.back()))) row.pop_back();
      if (!row.empty()) rows.push_back(row);
      q = e + 1;
    }
    const auto n = static_cast<int>(rows.size());
    if (n < 2) throw ParseError("grid needs at least 2 rows");
    std::vector<Cell> cells;
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(rows[r].size()) != n)
        throw ParseError("grid row " + std::to_string(r) + " is not " + std::to_string(n) +
                         " characters wide");
      for (int i = 0; i < n; ++i) {
        char c = rows[r][i];
        if (c == '1')
          cells.push_back({i, n - 1 - r});
        else if (c != '0')
          throw ParseError("grid cells must be '0' or '1'");
      }
    }
    return make_digit_set(n, std::move(cells));
  }

  throw ParseError("unrecognized digit set format");
}

inline std::string canonical_text(const DigitSet& d) {
  std::string s = "N=" + std::to_string(d.n) + "; D=";
  for (std::size_t k = 0; k < d.digits.size(); ++k) {
    if (k) s += ",";
    s += "(" + std::to_string(d.digits[k].i) + "," + std::to_string(d.digits[k].j) + ")";
  }
  return s;
}

/// Digits of the level-n refinement, D_n = D_1 + N*D_{n-1}, at scale n^level.
struct ExpandedDigits {
  int n = 0;
  int level = 0;
  std::int64_t side = 1;
  std::vector<Cell> digits;
};

inline ExpandedDigits expand_digits(const DigitSet& d, int level) {
  validate(d);
  if (level < 1) throw std::invalid_argument("level must be at least 1");
  level_cells(d.n, level);
  std::vector<Cell> cur = d.digits;
  std::int64_t side = d.n;
  for (int k = 2; k <= level; ++k) {
    std::vector<Cell> next;
    next.reserve(cur.size() * d.digits.size());
    for (const Cell& block : cur)
      for (const Cell& e : d.digits)
        next.push_back({e.i + d.n * block.i, e.j + d.n * block.j});
    cur = std::move(next);
    side *= d.n;
  }
  std::sort(cur.begin(), cur.end());
  return {d.n, level, side, std::move(cur)};
}

/// D = {i_1..i_j} x {0..N-1} (columns) or {0..N-1} x {j_1..j_k} (rows),
/// with the selected index count in [2, N-1].
struct ProductForm {
  enum class Axis { columns, rows };
  Axis axis = Axis::columns;
  std::vector<int> indices;

  friend bool operator==(const ProductForm&, const ProductForm&) = default;
};

namespace detail {

inline std::optional<std::vector<int>> full_column_selection(const DigitSet& d) {
  // Digits are sorted by (i, j), so a full column is a run of n consecutive rows.
  std::vector<int> cols;
  std::size_t k = 0;
  while (k < d.digits.size()) {
    std::int64_t i = d.digits[k].i;
    for (int j = 0; j < d.n; ++j, ++k) {
      if (k >= d.digits.size() || d.digits[k].i != i || d.digits[k].j != j) return std::nullopt;
    }
    cols.push_back(static_cast<int>(i));
  }
  return cols;
}

}  // namespace detail

inline DigitSet transpose(const DigitSet& d) {
  std::vector<Cell> cells;
  cells.reserve(d.digits.size());
  for (const Cell& c : d.digits) cells.push_back({c.j, c.i});
  return make_digit_set(d.n, std::move(cells));
}

inline DigitSet reflect_horizontal(const DigitSet& d) {
  std::vector<Cell> cells;
  cells.reserve(d.digits.size());
  for (const Cell& c : d.digits) cells.push_back({d.n - 1 - c.i, c.j});
  return make_digit_set(d.n, std::move(cells));
}

inline std::optional<ProductForm> product_form(const DigitSet& d) {
  if (auto cols = detail::full_column_selection(d)) {
    auto j = cols->size();
    if (j >= 2 && j <= static_cast<std::size_t>(d.n) - 1)
      return ProductForm{ProductForm::Axis::columns, std::move(*cols)};
    return std::nullopt;  // j == N means the full grid, j == 1 a single segment
  }
  if (auto rows = detail::full_column_selection(transpose(d))) {
    auto j = rows->size();
    if (j >= 2 && j <= static_cast<std::size_t>(d.n) - 1)
      return ProductForm{ProductForm::Axis::rows, std::move(*rows)};
  }
  return std::nullopt;
}

inline DigitSet reconstruct(const ProductForm& p, int n) {
  std::vector<Cell> cells;
  for (int i : p.indices)
    for (int j = 0; j < n; ++j)
      cells.push_back(p.axis == ProductForm::Axis::columns ? Cell{i, j} : Cell{j, i});
  return make_digit_set(n, std::move(cells));
}

/// Similarity dimension log(#D)/log(N) of the attractor.
struct AttractorDim {
  std::size_t pieces = 0;
  int base = 0;
  double value = 0;
};

inline AttractorDim hausdorff_dim_attractor(const DigitSet& d) {
  validate(d);
  return {d.digits.size(), d.n,
          std::log(static_cast<double>(d.digits.size())) / std::log(static_cast<double>(d.n))};
}

}  // namespace fracsq
