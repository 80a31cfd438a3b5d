#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "fracsq/digit_set.hpp"
#include "fracsq/grid.hpp"
#include "fracsq/hata.hpp"
#include "fracsq/lines.hpp"

namespace fracsq {

/// Raster geometry. pixels_per_unit must be divisible by N^level so every
/// cell maps to an exact pixel block; margins frame the unit square.
struct RasterSpec {
  int pixels_per_unit = 243;
  int margin = 9;
  std::uint8_t foreground = 0;
  std::uint8_t background = 255;
};

namespace detail {

inline std::uint32_t crc32_step(std::uint32_t crc, std::uint8_t byte) {
  crc ^= byte;
  for (int k = 0; k < 8; ++k) crc = (crc >> 1) ^ (0xedb88320u & (~(crc & 1u) + 1u));
  return crc;
}

inline void put_be32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

inline void put_chunk(std::string& out, const char type[4], const std::string& data) {
  put_be32(out, static_cast<std::uint32_t>(data.size()));
  std::uint32_t crc = 0xffffffffu;
  for (int k = 0; k < 4; ++k) {
    out.push_back(type[k]);
    crc = crc32_step(crc, static_cast<std::uint8_t>(type[k]));
  }
  for (char c : data) {
    out.push_back(c);
    crc = crc32_step(crc, static_cast<std::uint8_t>(c));
  }
  put_be32(out, crc ^ 0xffffffffu);
}

/// 8-bit grayscale PNG with stored (uncompressed) deflate blocks: no library
/// dependency and bit-identical output for identical pixels.
inline std::string png_encode_gray(std::int64_t width, std::int64_t height,
                                   const std::vector<std::uint8_t>& pixels) {
  std::string out("\x89PNG\r\n\x1a\n", 8);
  std::string ihdr;
  put_be32(ihdr, static_cast<std::uint32_t>(width));
  put_be32(ihdr, static_cast<std::uint32_t>(height));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(0);   // grayscale
  ihdr.push_back(0);   // deflate
  ihdr.push_back(0);   // adaptive filtering, all rows filter 0
  ihdr.push_back(0);   // no interlace
  put_chunk(out, "IHDR", ihdr);

  std::string raw;
  raw.reserve(static_cast<std::size_t>((width + 1) * height));
  for (std::int64_t y = 0; y < height; ++y) {
    raw.push_back(0);  // filter: none
    raw.append(reinterpret_cast<const char*>(pixels.data() + y * width),
               static_cast<std::size_t>(width));
  }

  std::string idat;
  idat.push_back(0x78);
  idat.push_back(0x01);
  std::size_t pos = 0;
  while (pos < raw.size() || raw.empty()) {
    std::size_t len = std::min<std::size_t>(raw.size() - pos, 65535);
    bool final = pos + len == raw.size();
    idat.push_back(final ? 1 : 0);
    idat.push_back(static_cast<char>(len & 0xff));
    idat.push_back(static_cast<char>(len >> 8));
    idat.push_back(static_cast<char>(~len & 0xff));
    idat.push_back(static_cast<char>((~len >> 8) & 0xff));
    idat.append(raw, pos, len);
    pos += len;
    if (final) break;
  }
  std::uint32_t a = 1, b = 0;
  for (char c : raw) {
    a = (a + static_cast<std::uint8_t>(c)) % 65521;
    b = (b + a) % 65521;
  }
  put_be32(idat, (b << 16) | a);
  put_chunk(out, "IDAT", idat);
  put_chunk(out, "IEND", "");
  return out;
}

}  // namespace detail

/// Level-n approximation as a PNG. Cells of D_n become exact pixel blocks;
/// the j axis points up, so row 0 of the image is the top of the square.
inline std::string render_approx(const DigitSet& d, int level, const RasterSpec& spec) {
  CellGrid g = rasterize(d, level);
  if (spec.pixels_per_unit <= 0 || spec.margin < 0)
    throw std::invalid_argument("raster spec needs positive size");
  if (spec.pixels_per_unit % g.side != 0)
    throw std::invalid_argument("pixels per unit must be divisible by the cell count per axis");
  const std::int64_t block = spec.pixels_per_unit / g.side;
  const std::int64_t size = spec.pixels_per_unit + 2 * static_cast<std::int64_t>(spec.margin);
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(size * size), spec.background);
  for (std::int64_t j = 0; j < g.side; ++j)
    for (std::int64_t i = 0; i < g.side; ++i) {
      if (!g.get(i, j)) continue;
      const std::int64_t x0 = spec.margin + i * block;
      const std::int64_t y0 = spec.margin + (g.side - 1 - j) * block;
      for (std::int64_t y = y0; y < y0 + block; ++y)
        for (std::int64_t x = x0; x < x0 + block; ++x)
          pixels[static_cast<std::size_t>(y * size + x)] = spec.foreground;
    }
  return detail::png_encode_gray(size, size, pixels);
}

/// Intercept window diagram as SVG: the axis [0, 1/s] with its N cells,
/// surviving cells filled, isolated intercepts marked.
inline std::string render_omega(const OmegaProfile& profile, const RasterSpec& spec) {
  const int n = profile.n;
  const int width = spec.pixels_per_unit + 2 * spec.margin;
  const int height = 2 * spec.margin + 40;
  const int axis_y = spec.margin + 20;
  const double cell_w = static_cast<double>(spec.pixels_per_unit) / n;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\">\n";
  for (int u : profile.cells) {
    svg << "  <rect x=\"" << spec.margin + u * cell_w << "\" y=\"" << axis_y - 10
        << "\" width=\"" << cell_w << "\" height=\"20\" fill=\"#444444\"/>\n";
  }
  svg << "  <line x1=\"" << spec.margin << "\" y1=\"" << axis_y << "\" x2=\""
      << spec.margin + spec.pixels_per_unit << "\" y2=\"" << axis_y
      << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  for (int v = 0; v <= n; ++v) {
    svg << "  <line x1=\"" << spec.margin + v * cell_w << "\" y1=\"" << axis_y - 14 << "\" x2=\""
        << spec.margin + v * cell_w << "\" y2=\"" << axis_y + 14
        << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  }
  for (int v : profile.isolated) {
    svg << "  <circle cx=\"" << spec.margin + v * cell_w << "\" cy=\"" << axis_y
        << "\" r=\"5\" fill=\"#000000\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

/// Graphviz text for a tile intersection graph; vertices named "i,j".
inline std::string render_hata(const HataGraph& g) {
  std::ostringstream dot;
  dot << "graph hata_level" << g.level << " {\n";
  for (const Cell& v : g.vertices) dot << "  \"" << v.i << "," << v.j << "\";\n";
  for (auto [a, b] : g.edges) {
    const Cell& x = g.vertices[static_cast<std::size_t>(a)];
    const Cell& y = g.vertices[static_cast<std::size_t>(b)];
    dot << "  \"" << x.i << "," << x.j << "\" -- \"" << y.i << "," << y.j << "\";\n";
  }
  dot << "}\n";
  return dot.str();
}

}  // namespace fracsq
