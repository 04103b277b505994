#pragma once

// Command implementations behind the `hiercoop` executable. Each returns a
// document or writes files; argument parsing and exit codes live in tools/.

#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hiercoop/app/json.hpp"
#include "hiercoop/app/sweep.hpp"
#include "hiercoop/core.hpp"
#include "hiercoop/hierarchy.hpp"
#include "hiercoop/link_budget.hpp"
#include "hiercoop/oracles/rng.hpp"
#include "hiercoop/oracles/validation.hpp"
#include "hiercoop/single_stage.hpp"

namespace hiercoop::app {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalyzeRequest {
  NetworkConfig cfg;
  Scheme scheme = Scheme::SingleStage;
  std::optional<int> t;
  std::optional<int> q;
  InterferenceModel model = InterferenceModel::RingDistance;
  std::optional<double> area;
  std::optional<double> wavelength;
};

inline nlohmann::json cmd_analyze(const AnalyzeRequest& req) {
  nlohmann::json doc{{"schema", kJsonSchemaVersion},
                     {"command", "analyze"},
                     {"config", req.cfg},
                     {"scheme", to_string(req.scheme)},
                     {"interference", to_string(req.model)}};
  const double snr = std::min(optimal_snr(req.cfg.alpha), req.cfg.snr_max);
  const int reuse = reuse_factor(snr, req.cfg.alpha);
  std::optional<StageCount> stages;
  if (req.cfg.n > static_cast<std::uint64_t>(reuse)) {
    stages = optimal_stages(req.cfg.n, reuse);
    doc["stages"] = {{"t_real", stages->t_real}, {"t_int", stages->t_int}};
  }

  if (req.scheme == Scheme::SingleStage) {
    if (req.t && *req.t != 1) throw std::invalid_argument("the single-stage scheme has t = 1");
    SingleStageOptions opt;
    opt.model = req.model;
    opt.q = req.q.value_or(1);
    const SingleStagePlan plan = sum_rate_single(req.cfg, opt);
    doc["report"] = plan.report;
    doc["single_stage"] = {{"m", plan.m},
                           {"m_int", plan.m_int},
                           {"throughput_int", plan.throughput_int},
                           {"degenerate", plan.degenerate},
                           {"mimo_verified", plan.mimo_verified},
                           {"verifying_snr", plan.verifying_snr},
                           {"interference_bound", plan.link.p_i},
                           {"tin_margin", plan.link.tin_margin}};
  } else {
    HierarchyOptions opt;
    opt.model = req.model;
    opt.q = req.q.value_or(2);
    const int t = req.t ? *req.t : (stages ? stages->t_int : 1);
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    const HierarchyResult res = hierarchical_report(req.cfg, t, req.scheme, opt);
    doc["report"] = res.report;
    doc["hierarchy"] = {{"t", t},
                        {"uses_single_stage", res.uses_single_stage},
                        {"degenerate", res.plan.degenerate},
                        {"cluster_sizes", res.plan.cluster_sizes},
                        {"fixed_point", res.trace}};
  }
  if (req.area && req.wavelength) doc["dof_limit"] = dof_limit(*req.area, *req.wavelength);
  return doc;
}

inline nlohmann::json cmd_fixed_point(double alpha, int q, std::uint64_t n, InterferenceModel model,
                                      double tol = kFixedPointTol, int max_iter = kFixedPointMaxIter) {
  const FixedPointTrace trace = coding_rate_fixed_point(alpha, q, n, model, tol, max_iter);
  return nlohmann::json{{"schema", kJsonSchemaVersion},
                        {"command", "fixed-point"},
                        {"n", n},
                        {"interference", to_string(model)},
                        {"first_step_margin", first_step_margin(alpha, q, n, model)},
                        {"trace", trace}};
}

enum class ValidationSuite { All, Qmf, Grid, Mimo, Cluster };

inline std::optional<ValidationSuite> parse_suite(std::string_view s) {
  if (s == "all") return ValidationSuite::All;
  if (s == "qmf") return ValidationSuite::Qmf;
  if (s == "grid") return ValidationSuite::Grid;
  if (s == "mimo") return ValidationSuite::Mimo;
  if (s == "cluster") return ValidationSuite::Cluster;
  return std::nullopt;
}

struct ValidationOutcome {
  nlohmann::json doc;
  bool all_passed = true;
};

inline ValidationOutcome cmd_validate(ValidationSuite suite, std::uint64_t seed, bool timing = false) {
  oracles::SuiteOptions opt{seed, timing};
  std::vector<oracles::ValidationReport> checks;
  const auto add = [&](std::vector<oracles::ValidationReport> v) {
    checks.insert(checks.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  };
  const bool all = suite == ValidationSuite::All;
  if (all || suite == ValidationSuite::Qmf) add(oracles::run_qmf_suite(opt));
  if (all || suite == ValidationSuite::Grid) add(oracles::run_grid_suite(opt));
  if (all || suite == ValidationSuite::Mimo) add(oracles::run_mimo_suite(opt));
  if (all || suite == ValidationSuite::Cluster) add(oracles::run_cluster_suite(opt));

  ValidationOutcome out;
  for (const auto& c : checks) out.all_passed = out.all_passed && c.passed;
  out.doc = nlohmann::json{{"schema", kJsonSchemaVersion},
                           {"command", "validate"},
                           {"seed", seed},
                           {"rng", oracles::kRngAlgorithm},
                           {"all_passed", out.all_passed},
                           {"checks", checks}};
  return out;
}

inline void write_sweep_file(const std::filesystem::path& path, SweepAxis axis,
                             const std::vector<SweepRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(f, axis, rows);
  if (!f.flush()) throw IoError("write to '" + path.string() + "' failed");
}

inline void cmd_sweep(const SweepSpec& spec, const std::filesystem::path& out_path) {
  write_sweep_file(out_path, spec.axis, run_sweep(spec));
}

/// Canonical sweeps behind the four figure files. Specs sharing a file are
/// concatenated under one header.
inline std::vector<std::pair<std::string, std::vector<SweepSpec>>> figure_specs() {
  const auto spec = [](SweepAxis axis, double from, double to, int points, SweepScale scale,
                       std::vector<Scheme> schemes, std::map<std::string, double> fixed) {
    return SweepSpec{axis, from, to, points, scale, std::move(schemes), std::move(fixed),
                     InterferenceModel::RingDistance};
  };
  using enum SweepAxis;
  using S = Scheme;
  return {
      {"fig1.csv",
       {spec(Snr, 10.0, 70.0, 61, SweepScale::Linear, {S::SingleStage}, {{"n", 1e4}, {"alpha", 3.0}}),
        spec(Snr, 10.0, 70.0, 61, SweepScale::Linear, {S::SingleStage},
             {{"n", 1e4}, {"alpha", 3.0}, {"reuse", 3.0}})}},
      {"fig2.csv",
       {spec(Alpha, 2.0, 4.0, 21, SweepScale::Linear, {S::SingleStage}, {{"n", 1e4}}),
        spec(Alpha, 2.0, 4.0, 21, SweepScale::Linear, {S::EnhancedHierarchy},
             {{"n", 1e4}, {"q", 2.0}, {"t", 2.0}})}},
      {"fig3.csv",
       {spec(N, 1e2, 1e9, 36, SweepScale::Log, {S::ConventionalHierarchy, S::EnhancedHierarchy},
             {{"alpha", 3.0}, {"q", 2.0}})}},
      {"fig4.csv",
       {spec(T, 1.0, 8.0, 8, SweepScale::Linear, {S::EnhancedHierarchy}, {{"n", 1e4}, {"alpha", 3.0}, {"q", 1.0}}),
        spec(T, 1.0, 8.0, 8, SweepScale::Linear, {S::EnhancedHierarchy}, {{"n", 1e4}, {"alpha", 3.0}, {"q", 2.0}}),
        spec(T, 1.0, 8.0, 8, SweepScale::Linear, {S::EnhancedHierarchy},
             {{"n", 1e4}, {"alpha", 3.0}, {"q", 3.0}})}},
  };
}

inline std::vector<std::filesystem::path> cmd_figures(const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& [name, specs] : figure_specs()) {
    std::vector<SweepRow> rows;
    for (const auto& s : specs) {
      auto part = run_sweep(s);
      rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    const auto path = out_dir / name;
    write_sweep_file(path, specs.front().axis, rows);
    written.push_back(path);
  }
  return written;
}

}  // namespace hiercoop::app
