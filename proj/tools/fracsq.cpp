// Command-line surface over the fracsq headers. Exit codes: 0 ok, 1 internal
// failure, 2 usage, 3 cell budget exhausted (partial JSON on stdout), 4 broken
// invariant.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "fracsq/census.hpp"
#include "fracsq/classify.hpp"
#include "fracsq/digit_set.hpp"
#include "fracsq/digitop.hpp"
#include "fracsq/grid.hpp"
#include "fracsq/hata.hpp"
#include "fracsq/lines.hpp"
#include "fracsq/periodic.hpp"
#include "fracsq/presets.hpp"
#include "fracsq/render.hpp"
#include "fracsq/serialize.hpp"

namespace {

using namespace fracsq;

struct InputOpts {
  std::string preset;
  std::string digits;
  std::string grid;
  int n = 0;
};

void add_input_flags(CLI::App* cmd, InputOpts& in) {
  cmd->add_option("--preset", in.preset, "named digit set (see `presets`)");
  cmd->add_option("--n", in.n, "order N (with --digits)");
  cmd->add_option("--digits", in.digits, "cell list (i,j),(i,j),... (needs --n)");
  cmd->add_option("--grid", in.grid, "0/1 rows top-first, ',' or newline separated");
}

DigitSet resolve_input(const InputOpts& in) {
  int given = (!in.preset.empty() ? 1 : 0) + (!in.digits.empty() ? 1 : 0) +
              (!in.grid.empty() ? 1 : 0);
  if (given != 1) throw ParseError("give exactly one of --preset, --digits, --grid");
  if (!in.preset.empty()) return preset_digit_set(in.preset);
  if (!in.digits.empty()) {
    if (in.n < 2) throw ParseError("--digits needs --n");
    return parse_digit_set("N=" + std::to_string(in.n) + "; D=" + in.digits);
  }
  std::string grid = in.grid;
  for (char& c : grid)
    if (c == ',') c = '\n';
  return parse_digit_set(grid);
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic analyzer for fractal squares K(N, D)"};
  app.require_subcommand(1);

  InputOpts in;
  bool as_json = false;
  int depth = 0;
  int probe_depth = 0;
  int px = 0;
  int jobs = 0;
  std::string out_path;
  std::vector<std::string> line_specs;

  auto* approx = app.add_subcommand("approx", "render the level-n approximation to PNG");
  add_input_flags(approx, in);
  approx->add_option("--depth", depth, "approximation level (default 1)");
  approx->add_option("--px", px, "pixels per unit, must be divisible by N^depth");
  approx->add_option("--out", out_path, "output file (default approx.png)");
  approx->add_flag("--json", as_json, "report file and pixel counts as JSON");

  auto* components = app.add_subcommand("components", "component counts of the approximations");
  add_input_flags(components, in);
  components->add_option("--depth", depth, "deepest level (default: budget limit)");
  components->add_flag("--json", as_json, "JSON output");

  auto* hata = app.add_subcommand("hata", "cell adjacency graph and connectivity");
  add_input_flags(hata, in);
  hata->add_option("--depth", depth, "graph level (default 1)");
  hata->add_flag("--json", as_json, "JSON output instead of DOT");

  auto* pi1 = app.add_subcommand("pi1", "simple-connectedness certificate");
  add_input_flags(pi1, in);
  pi1->add_flag("--json", as_json, "JSON output");

  auto* omega = app.add_subcommand("omega", "per-slope intercept profiles");
  add_input_flags(omega, in);
  omega->add_flag("--json", as_json, "JSON output");

  auto* digitop = app.add_subcommand("digitop", "digit set generated by rational lines");
  digitop->add_option("--n", in.n, "order N")->required();
  digitop->add_option("lines", line_specs, "line specs r/s@p/q or v@p/q")->required();
  digitop->add_flag("--json", as_json, "JSON output");

  auto* classify_cmd = app.add_subcommand("classify", "lambda-range verdict with certificate");
  add_input_flags(classify_cmd, in);
  classify_cmd->add_option("--depth", depth, "component-count depth limit");
  classify_cmd->add_option("--probe-depth", probe_depth, "complement probe depth limit");
  classify_cmd->add_flag("--json", as_json, "JSON output");

  auto* census = app.add_subcommand("census", "classify every digit set of a given order");
  census->add_option("--n", in.n, "order N, 2..4 (default 3)");
  census->add_option("--depth", depth, "component-count depth limit");
  census->add_option("--probe-depth", probe_depth, "complement probe depth limit");
  census->add_option("--jobs", jobs, "worker threads (default: hardware)");
  census->add_option("--out", out_path, "write per-set CSV here");

  auto* presets = app.add_subcommand("presets", "list named digit sets");
  presets->add_flag("--json", as_json, "JSON output");

  approx->callback([&] {
    DigitSet d = resolve_input(in);
    int level = depth > 0 ? depth : 1;
    RasterSpec spec;
    std::int64_t side = 1;
    for (int k = 0; k < level; ++k) side *= d.n;
    spec.pixels_per_unit =
        px > 0 ? px : static_cast<int>(side * std::max<std::int64_t>(1, 243 / side));
    std::string png = render_approx(d, level, spec);
    std::string file = out_path.empty() ? "approx.png" : out_path;
    write_file(file, png);
    std::int64_t block = spec.pixels_per_unit / side;
    std::int64_t fg = 1;
    for (int k = 0; k < level; ++k) fg *= static_cast<std::int64_t>(d.digits.size());
    fg *= block * block;
    if (as_json) {
      emit(json{{"file", file},
                {"level", level},
                {"pixels_per_unit", spec.pixels_per_unit},
                {"image_side", spec.pixels_per_unit + 2 * spec.margin},
                {"foreground_pixels", fg}});
    } else {
      std::cout << "wrote " << file << " (" << spec.pixels_per_unit + 2 * spec.margin
                << " px, level " << level << ")\n";
    }
  });

  components->callback([&] {
    DigitSet d = resolve_input(in);
    int limit = depth > 0 ? depth : resolve_limits(d.n, {}).beta_depth;
    Beta0Result b = beta0_stabilize(d, limit);
    if (as_json) {
      emit(beta0_json(b));
      return;
    }
    std::cout << "component counts by level: [";
    for (std::size_t i = 0; i < b.sequence.size(); ++i)
      std::cout << (i ? "," : "") << b.sequence[i];
    std::cout << "]\n";
    if (b.n0)
      std::cout << "stabilized at level " << *b.n0 << ": " << b.beta0 << " components\n";
    else
      std::cout << "not stabilized within depth " << limit << "\n";
  });

  hata->callback([&] {
    DigitSet d = resolve_input(in);
    HataGraph g = hata_graph(d, depth > 0 ? depth : 1);
    if (as_json)
      emit(hata_json(g));
    else
      std::cout << render_hata(g);
  });

  pi1->callback([&] {
    DigitSet d = resolve_input(in);
    Pi1Certificate c = pi1_certificate(d);
    if (as_json) {
      emit(pi1_json(c));
      return;
    }
    if (c.trivial_certified)
      std::cout << "no holes at level 3: every loop contracts\n";
    else
      std::cout << "level-3 approximation has " << c.holes_level3 << " hole(s)\n";
  });

  omega->callback([&] {
    DigitSet d = resolve_input(in);
    if (as_json) {
      json arr = json::array();
      for (const Slope& sl : admissible_slopes(d.n)) arr.push_back(omega_profile_json(omega1(d, sl)));
      emit(arr);
      return;
    }
    for (const Slope& sl : admissible_slopes(d.n)) {
      OmegaProfile p = omega1(d, sl);
      std::cout << p.slope.r << "/" << p.slope.s << ": (m,q)=(" << p.m << "," << p.q << ")";
      if (p.line_bearing) std::cout << "  line-bearing";
      std::cout << "\n";
    }
  });

  digitop->callback([&] {
    std::vector<RationalLine> lines;
    for (const std::string& spec : line_specs) lines.push_back(parse_rational_line(spec));
    DigitSet d = digit_operator(lines, in.n);
    if (as_json)
      emit(digit_set_json(d));
    else
      std::cout << canonical_text(d) << "\n";
  });

  classify_cmd->callback([&] {
    DigitSet d = resolve_input(in);
    Verdict v = classify(d, ClassifyLimits{depth, probe_depth});
    if (as_json)
      emit(verdict_json(v));
    else
      std::cout << explain(v);
  });

  census->callback([&] {
    int order = in.n > 0 ? in.n : 3;
    CensusResult r = run_census(order, ClassifyLimits{depth, probe_depth}, jobs);
    if (!out_path.empty()) write_file(out_path, census_csv(r));
    emit(census_summary_json(r));
  });

  presets->callback([&] {
    if (as_json) {
      json obj = json::object();
      for (const std::string& name : preset_names()) obj[name] = digit_set_json(preset_digit_set(name));
      emit(obj);
      return;
    }
    for (const std::string& name : preset_names())
      std::cout << name << ": " << canonical_text(preset_digit_set(name)) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const BudgetError& e) {
    emit(json{{"error", "budget"}, {"requested", e.requested}, {"allowed", e.allowed}});
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
