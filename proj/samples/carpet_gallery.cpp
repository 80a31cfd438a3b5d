// Writes PNG approximations of a few named digit sets into the working
// directory, one image per level.

#include <cstdio>
#include <fstream>

#include "fracsq/presets.hpp"
#include "fracsq/render.hpp"

int main() {
  using namespace fracsq;
  struct Job {
    const char* preset;
    int px;
  };
  for (const Job& job : {Job{"carpet3", 243}, Job{"vicsek3", 243}, Job{"diag5", 125},
                         Job{"d3_5", 125}, Job{"ex21", 243}}) {
    DigitSet d = preset_digit_set(job.preset);
    for (int level = 1; level <= 3; ++level) {
      RasterSpec spec;
      spec.pixels_per_unit = job.px;
      std::string png = render_approx(d, level, spec);
      std::string path = std::string(job.preset) + "_" + std::to_string(level) + ".png";
      std::ofstream out(path, std::ios::binary);
      out.write(png.data(), static_cast<std::streamsize>(png.size()));
      std::printf("wrote %s (%zu bytes)\n", path.c_str(), png.size());
    }
  }
  return 0;
}
