#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "squarepeg/constructions.hpp"
#include "squarepeg/curve.hpp"
#include "squarepeg/io_json.hpp"
#include "squarepeg/solver.hpp"
#include "squarepeg/svg.hpp"
#include "squarepeg/verify.hpp"

namespace {

using namespace squarepeg;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    save_text(out_path, text);
}

std::vector<double> parse_anchor_list(const std::string& csv) {
  std::vector<double> anchors;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad anchor value: " + item);
    anchors.push_back(v);
  }
  return anchors;
}

struct ConstructArgs {
  std::string family;
  int n = 0;
  std::string anchors_csv;
  double c = -1.0;  // negative: use the family default
  double a = 0.02;
  std::string out;
};

int run_construct(const ConstructArgs& args) {
  CurveSpec spec;
  if (args.family == "circle") {
    spec = unit_circle_spec();
  } else if (args.family == "nonsmooth2") {
    spec = build_nonsmooth_two_square();
  } else if (args.family == "smooth2") {
    spec = build_smooth_two_square(args.c >= 0.0 ? args.c : 1.19, args.a);
  } else if (args.family == "n-square") {
    ConstructionParams params;
    if (!args.anchors_csv.empty())
      params.anchors = parse_anchor_list(args.anchors_csv);
    else
      params = default_n_square_params(args.n > 0 ? args.n : 1);
    if (args.c >= 0.0) params.c = args.c;
    params.a = args.a;
    spec = build_n_square(params);
  } else {
    throw std::invalid_argument("unknown family: " + args.family +
                                " (expected circle|nonsmooth2|smooth2|n-square)");
  }
  emit(args.out, spec_to_json(spec).dump(2) + "\n");
  return 0;
}

struct FindArgs {
  std::string curve_path;
  int grid = 0;  // 0: fall back to SQUAREPEG_SEED_GRID, then 24
  double min_side = -1.0;
  double tol = -1.0;
  double dedup = -1.0;
  int threads = 0;
  bool oracle = false;
  std::string out;
  std::string csv;
};

int resolve_grid(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SQUAREPEG_SEED_GRID")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
      throw std::invalid_argument(std::string("bad SQUAREPEG_SEED_GRID: ") + env);
    }
  }
  return 24;
}

int run_find(const FindArgs& args) {
  const Curve curve(load_spec(args.curve_path));
  SolveConfig config;
  config.grid_resolution = resolve_grid(args.grid);
  if (args.min_side > 0.0) config.min_side_length = args.min_side;
  if (args.tol > 0.0) config.newton_tolerance = args.tol;
  if (args.dedup > 0.0) config.dedup_tolerance = args.dedup;
  if (args.threads > 0) config.threads = args.threads;

  const SolveReport report = enumerate_squares(curve, config);
  int rc = 0;
  if (args.oracle) {
    const std::vector<Square> oracle = oracle_enumerate(curve, 512, config);
    double worst = 0.0;
    if (square_sets_match(report.squares, oracle, 1e-6, &worst)) {
      std::cerr << "oracle agreement: " << oracle.size()
                << " squares, worst Hausdorff " << worst << "\n";
    } else {
      std::cerr << "oracle disagreement: enumeration found " << report.squares.size()
                << ", oracle found " << oracle.size() << "\n";
      rc = 3;
    }
  }
  emit(args.out, report_to_json(report).dump(2) + "\n");
  if (!args.csv.empty()) save_text(args.csv, squares_to_csv(report.squares));
  return rc;
}

struct CriticalArgs {
  double low = 1.0;
  double high = 1.4;
  double a = 0.02;
  std::string out;
};

int run_critical(const CriticalArgs& args) {
  const CriticalSearchResult result = critical_c(args.low, args.high, args.a);
  emit(args.out, critical_to_json(result).dump(2) + "\n");
  return 0;
}

struct ConvexityArgs {
  std::string curve_path;
  std::string out;
};

int run_convexity(const ConvexityArgs& args) {
  const Curve curve(load_spec(args.curve_path));
  const Curve::Convexity conv = curve.is_convex();
  nlohmann::json j{{"convex", conv.convex}, {"minCurvature", conv.min_curvature}};
  emit(args.out, j.dump(2) + "\n");
  return 0;
}

struct RenderArgs {
  std::string curve_path;
  std::string squares_path;
  bool locus = false;
  std::string out;
};

int run_render(const RenderArgs& args) {
  const CurveSpec spec = load_spec(args.curve_path);
  const Curve curve(spec);
  std::vector<Square> squares;
  if (!args.squares_path.empty())
    squares = report_from_json(load_json(args.squares_path)).squares;
  RenderOptions options;
  if (args.locus) {
    options.locus_overlay = true;
    if (spec.metadata.contains("c") && spec.metadata["c"].is_number())
      options.locus_c = spec.metadata["c"].get<double>();
    if (spec.metadata.contains("a") && spec.metadata["a"].is_number())
      options.locus_a = spec.metadata["a"].get<double>();
  }
  emit(args.out, render_svg(curve, squares, options));
  return 0;
}

int run_verify(int threads) {
  VerifyOptions options;
  options.threads = threads;
  options.on_result = [](const CriterionResult& r) {
    std::cout << format_result_line(r) << std::endl;
  };
  const std::vector<CriterionResult> results = run_acceptance(options);
  const bool ok = all_passed(results);
  std::cout << (ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << std::endl;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inscribed-square toolkit: curve constructions, enumeration, rendering"};
  app.require_subcommand(1);

  ConstructArgs construct_args;
  CLI::App* construct = app.add_subcommand("construct", "build a curve family to JSON");
  construct->add_option("family", construct_args.family,
                        "circle | nonsmooth2 | smooth2 | n-square")
      ->required();
  construct->add_option("--n", construct_args.n, "target square count (n-square)")
      ->check(CLI::PositiveNumber);
  construct->add_option("--anchors", construct_args.anchors_csv,
                        "comma separated anchor angles in (-pi/4, pi/4)");
  construct->add_option("--c", construct_args.c, "bump amplitude");
  construct->add_option("--a", construct_args.a, "bump sharpness")->capture_default_str();
  construct->add_option("--out", construct_args.out, "output path (default stdout)");

  FindArgs find_args;
  CLI::App* find = app.add_subcommand("find-squares", "enumerate inscribed squares");
  find->add_option("curve", find_args.curve_path, "curve spec JSON")->required();
  find->add_option("--grid", find_args.grid,
                   "seed grid resolution (SQUAREPEG_SEED_GRID, then 24)");
  find->add_option("--min-side", find_args.min_side, "degenerate side cutoff");
  find->add_option("--tol", find_args.tol, "Newton residual tolerance");
  find->add_option("--dedup", find_args.dedup, "dedup tolerance");
  find->add_option("--threads", find_args.threads, "worker threads");
  find->add_flag("--oracle", find_args.oracle,
                 "cross-check against the independent method (exit 3 on mismatch)");
  find->add_option("--out", find_args.out, "report JSON path (default stdout)");
  find->add_option("--csv", find_args.csv, "also write squares as CSV");

  CriticalArgs critical_args;
  CLI::App* critical = app.add_subcommand("critical-c", "bisect the critical amplitude");
  critical->add_option("--low", critical_args.low, "bracket low")->capture_default_str();
  critical->add_option("--high", critical_args.high, "bracket high")->capture_default_str();
  critical->add_option("--a", critical_args.a, "bump sharpness")->capture_default_str();
  critical->add_option("--out", critical_args.out, "output path (default stdout)");

  ConvexityArgs convexity_args;
  CLI::App* convexity = app.add_subcommand("convexity", "sampled convexity check");
  convexity->add_option("curve", convexity_args.curve_path, "curve spec JSON")->required();
  convexity->add_option("--out", convexity_args.out, "output path (default stdout)");

  RenderArgs render_args;
  CLI::App* render = app.add_subcommand("render", "render curve and squares to SVG");
  render->add_option("curve", render_args.curve_path, "curve spec JSON")->required();
  render->add_option("--squares", render_args.squares_path, "solve report JSON");
  render->add_flag("--locus", render_args.locus, "overlay the chord locus");
  render->add_option("--out", render_args.out, "output path (default stdout)");

  int verify_threads = 0;
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--threads", verify_threads, "worker threads (0: auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (construct->parsed()) return run_construct(construct_args);
    if (find->parsed()) return run_find(find_args);
    if (critical->parsed()) return run_critical(critical_args);
    if (convexity->parsed()) return run_convexity(convexity_args);
    if (render->parsed()) return run_render(render_args);
    if (verify->parsed()) return run_verify(verify_threads);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
