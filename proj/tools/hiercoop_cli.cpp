// hiercoop: rate analysis for hierarchical cooperation in dense wireless networks.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O or
// runtime failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hiercoop/app/commands.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Linear value, or dB when suffixed with "dB" (case-insensitive).
double parse_snr(std::string text) {
  bool db = false;
  if (text.size() >= 2) {
    const std::string tail = text.substr(text.size() - 2);
    if ((tail[0] == 'd' || tail[0] == 'D') && (tail[1] == 'b' || tail[1] == 'B')) {
      db = true;
      text.resize(text.size() - 2);
    }
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse SNR value '" + text + "'");
  }
  if (used != text.size() && text.find_first_not_of(' ', used) != std::string::npos)
    throw UsageError("cannot parse SNR value '" + text + "'");
  return db ? hiercoop::db_to_linear(v) : v;
}

std::uint64_t parse_count(double v) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) throw UsageError("n must be a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

void emit(const nlohmann::json& doc, const std::optional<std::string>& out) {
  const std::string text = doc.dump(2) + "\n";
  if (!out) {
    std::cout << text;
    return;
  }
  std::ofstream f(*out, std::ios::binary);
  if (!f || !(f << text)) throw hiercoop::app::IoError("cannot write '" + *out + "'");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hiercoop;

  CLI::App app{"Achievable sum-rates of hierarchical cooperation in dense wireless networks", "hiercoop"};
  app.require_subcommand(1);

  double n = 1e4;
  double alpha = 3.0;
  std::optional<int> q;
  std::uint64_t seed = 42;
  std::string interference = "ring";
  std::string snr_max_text = "90dB";
  std::optional<std::string> out;

  app.add_option("--n", n, "Number of nodes (scientific notation accepted)")->capture_default_str();
  app.add_option("--alpha", alpha, "Path-loss exponent (>= 2)")->capture_default_str();
  app.add_option("--q", q, "Quantization expansion factor Q (>= 1)");
  app.add_option("--seed", seed, "Seed for the oracle random source")->capture_default_str();
  app.add_option("--interference", interference, "Interference model: ring | literal")->capture_default_str();
  app.add_option("--snr-max", snr_max_text, "Maximum per-link SNR, linear or with a dB suffix")
      ->capture_default_str();
  app.add_option("--out", out, "Output file (or directory for figures)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Rate report for one operating point (JSON)");
  analyze->fallthrough();
  std::string scheme_text = "single";
  std::optional<int> stages;
  std::optional<double> area;
  std::optional<double> wavelength;
  analyze->add_option("--scheme", scheme_text, "single | conventional | enhanced")->capture_default_str();
  analyze->add_option("--t", stages, "Number of hierarchical stages (default: optimal)");
  analyze->add_option("--area", area, "Deployment area in m^2, for the DoF annotation");
  analyze->add_option("--wavelength", wavelength, "Carrier wavelength in m, for the DoF annotation");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
  sweep->fallthrough();
  std::string axis_text;
  double from = 0.0;
  double to = 0.0;
  int points = 10;
  std::string scale_text = "linear";
  std::vector<std::string> scheme_list{"conventional", "enhanced"};
  std::vector<std::string> fixed_list;
  std::optional<int> sweep_t;
  std::optional<int> sweep_reuse;
  sweep->add_option("--axis", axis_text, "n | alpha | t | snr (snr in dB)")->required();
  sweep->add_option("--from", from, "Axis start")->required();
  sweep->add_option("--to", to, "Axis end")->required();
  sweep->add_option("--points", points, "Grid points (>= 2)")->capture_default_str();
  sweep->add_option("--scale", scale_text, "linear | log")->capture_default_str();
  sweep->add_option("--schemes", scheme_list, "Schemes to evaluate")->delimiter(',')->capture_default_str();
  sweep->add_option("--t", sweep_t, "Fixed stage count for hierarchical schemes");
  sweep->add_option("--reuse", sweep_reuse, "Fixed reuse factor instead of the TIN rule");
  sweep->add_option("--fixed", fixed_list, "Extra fixed parameters as key=value")->delimiter(',');

  // fixed-point
  auto* fixed_point = app.add_subcommand("fixed-point", "Coding-rate fixed point trace (JSON)");
  fixed_point->fallthrough();
  double fp_tol = kFixedPointTol;
  int fp_max_iter = kFixedPointMaxIter;
  fixed_point->add_option("--tol", fp_tol, "Relative convergence tolerance")->capture_default_str();
  fixed_point->add_option("--max-iter", fp_max_iter, "Iteration cap (>= 2)")->capture_default_str();

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Run oracle checks (JSON); exit 1 on failure");
  validate_cmd->fallthrough();
  std::string suite_text = "all";
  bool timing = false;
  validate_cmd->add_option("--suite", suite_text, "all | qmf | grid | mimo | cluster")->capture_default_str();
  validate_cmd->add_flag("--timing", timing, "Record runtime_ms per check (output no longer reproducible)");

  // figures
  auto* figures = app.add_subcommand("figures", "Write fig1.csv .. fig4.csv");
  figures->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const auto model = parse_interference(interference);
    if (!model) throw UsageError("unknown interference model '" + interference + "'");
    const double snr_max = parse_snr(snr_max_text);

    if (*analyze) {
      const auto scheme = parse_scheme(scheme_text);
      if (!scheme) throw UsageError("unknown scheme '" + scheme_text + "'");
      app::AnalyzeRequest req{NetworkConfig::make(parse_count(n), alpha, snr_max), *scheme, stages, q,
                              *model, area, wavelength};
      emit(app::cmd_analyze(req), out);
      return 0;
    }

    if (*fixed_point) {
      const NetworkConfig cfg = NetworkConfig::make(parse_count(n), alpha, snr_max);
      emit(app::cmd_fixed_point(cfg.alpha, q.value_or(2), cfg.n, *model, fp_tol, fp_max_iter), out);
      return 0;
    }

    if (*validate_cmd) {
      const auto suite = app::parse_suite(suite_text);
      if (!suite) throw UsageError("unknown suite '" + suite_text + "'");
      const app::ValidationOutcome res = app::cmd_validate(*suite, seed, timing);
      emit(res.doc, out);
      return res.all_passed ? 0 : kExitValidation;
    }

    if (*figures) {
      for (const auto& p : app::cmd_figures(out.value_or("figures"))) std::cerr << "wrote " << p.string() << "\n";
      return 0;
    }

    if (*sweep) {
      if (!out) throw UsageError("sweep requires --out <file.csv>");
      SweepSpec spec;
      const auto axis = parse_axis(axis_text);
      if (!axis) throw UsageError("unknown axis '" + axis_text + "'");
      spec.axis = *axis;
      spec.from = from;
      spec.to = to;
      spec.points = points;
      if (scale_text == "log")
        spec.scale = SweepScale::Log;
      else if (scale_text != "linear")
        throw UsageError("unknown scale '" + scale_text + "'");
      for (const auto& s : scheme_list) {
        const auto sc = parse_scheme(s);
        if (!sc) throw UsageError("unknown scheme '" + s + "'");
        spec.schemes.push_back(*sc);
      }
      spec.model = *model;
      // Global flags become fixed parameters unless they name the axis.
      if (spec.axis != SweepAxis::N && app.count("--n")) spec.fixed["n"] = n;
      if (spec.axis != SweepAxis::Alpha && app.count("--alpha")) spec.fixed["alpha"] = alpha;
      if (q) spec.fixed["q"] = *q;
      if (app.count("--snr-max")) spec.fixed["snr_max"] = snr_max;
      if (sweep_t) spec.fixed["t"] = *sweep_t;
      if (sweep_reuse) spec.fixed["reuse"] = *sweep_reuse;
      for (const auto& kv : fixed_list) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--fixed expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        spec.fixed[key] = key == "snr" || key == "snr_max" ? parse_snr(kv.substr(eq + 1)) : std::stod(kv.substr(eq + 1));
      }
      app::cmd_sweep(spec, *out);
      return 0;
    }
  } catch (const app::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
