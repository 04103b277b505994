#pragma once

// Oracle-versus-closed-form checks. Each check yields a ValidationReport with
// passed <=> |analytic - oracle| <= tolerance * max(1, |analytic|).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hiercoop/core.hpp"
#include "hiercoop/hierarchy.hpp"
#include "hiercoop/link_budget.hpp"
#include "hiercoop/oracles/grid.hpp"
#include "hiercoop/oracles/mimo.hpp"
#include "hiercoop/oracles/rng.hpp"
#include "hiercoop/qmf.hpp"

namespace hiercoop::oracles {

struct ValidationReport {
  std::string check_name;
  double analytic_value = 0.0;
  double oracle_value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::optional<double> runtime_ms;  ///< only filled when timing is requested
};

inline ValidationReport make_validation(std::string name, double analytic, double oracle,
                                        double tolerance) {
  const bool ok = std::abs(analytic - oracle) <= tolerance * std::max(1.0, std::abs(analytic));
  return ValidationReport{std::move(name), analytic, oracle, tolerance, ok, std::nullopt};
}

// ---------------------------------------------------------------------------
// QMF bisection vs exhaustive scan

/// Max over a log-spaced sigma^2 grid on [sigma_min, sigma_max] of the smaller
/// of the two QMF constraints. Never uses the bisection path.
inline double qmf_grid_max(const QmfProblem& p, int grid_points) {
  if (grid_points < 2) throw std::domain_error("qmf_grid_max: need at least 2 points");
  const auto [lo, hi] = sigma_bounds(p);
  const double a = std::log(lo);
  const double b = std::log(hi);
  double best = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double s = std::exp(a + (b - a) * i / (grid_points - 1));
    best = std::max(best, std::min(backhaul_constraint(s, p), mimo_constraint(s, p)));
  }
  return best;
}

inline constexpr double kQmfGridTolerance = 5e-3;

inline ValidationReport verify_qmf_grid(const QmfProblem& p, int grid_points = 10000,
                                        std::string name = "qmf_grid") {
  if (grid_points < 1000) throw std::domain_error("verify_qmf_grid: need >= 1000 grid points");
  const double rate = qmf_rate(p).rate;
  return make_validation(std::move(name), rate, qmf_grid_max(p, grid_points), kQmfGridTolerance);
}

/// Log-uniform random QMF problem: r0 in [0.1, 20], n0 in [1, 1e4], snr in [1, 1e6].
inline QmfProblem random_qmf_problem(CounterRng& rng) {
  const auto log_uniform = [&](double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng.uniform());
  };
  return QmfProblem{log_uniform(0.1, 20.0), log_uniform(1.0, 1e4), log_uniform(1.0, 1e6)};
}

// ---------------------------------------------------------------------------
// Cluster-size optimality by numeric recursion

enum class ThroughputKind {
  LocalStage,    ///< stage-t local communication, TDMA at every level
  Enhanced,      ///< end-to-end enhanced scheme, no TDMA on the top stage
  Conventional,  ///< end-to-end conventional scheme, TDMA at every stage
};

namespace detail {

// Cluster sizes are searched as continuous values down to this floor, the
// same relaxation the closed forms solve. Plans needing sub-node clusters are
// flagged degenerate elsewhere.
inline constexpr double kRelaxedFloor = 1e-6;

// Golden-section maximization of a unimodal f over log(M) in
// [log(kRelaxedFloor), log(upper)].
template <class F>
double golden_max_log(F&& f, double upper) {
  if (upper <= kRelaxedFloor) return f(upper);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(kRelaxedFloor);
  double b = std::log(upper);
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = f(std::exp(x1));
  double f2 = f(std::exp(x2));
  for (int it = 0; it < 200 && b - a > 1e-10; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(std::exp(x1));
    }
  }
  return std::max(f1, f2);
}

// Throughput of the (level-1)-stage building block used as local
// communication inside a cluster of `size` nodes, optimized numerically.
inline double inner_throughput(double size, int level, int reuse, int q, ThroughputKind kind) {
  const double l2 = static_cast<double>(reuse) * reuse;
  if (level == 0) return kind == ThroughputKind::Conventional ? 1.0 : 1.0 / l2;
  const auto obj = [&](double m) {
    const double sub = inner_throughput(m, level - 1, reuse, q, kind);
    if (kind == ThroughputKind::Conventional)
      return size * m / ((1.0 + q) * l2 * m * m / sub + size);
    return size * m / ((1.0 + q) * m * m / sub + l2 * size);
  };
  return golden_max_log(obj, size);
}

}  // namespace detail

/// Top-stage throughput objective at cluster size m, with every lower stage
/// optimized numerically.
inline double throughput_objective(double n, double m, int t, int reuse, int q, ThroughputKind kind) {
  if (t < 1) throw std::domain_error("throughput_objective: t must be >= 1");
  const double l2 = static_cast<double>(reuse) * reuse;
  const double sub = detail::inner_throughput(m, t - 1, reuse, q, kind);
  switch (kind) {
    case ThroughputKind::LocalStage:
      return n * m / ((1.0 + q) * m * m / sub + l2 * n);
    case ThroughputKind::Enhanced:
      return n * m / ((1.0 + q) * m * m / sub + n);
    case ThroughputKind::Conventional:
      return n * m / ((1.0 + q) * l2 * m * m / sub + n);
  }
  return 0.0;
}

struct GridOptimum {
  double m = 0.0;
  double value = 0.0;
};

/// Exhaustive maximization of throughput_objective over a log grid on
/// [kRelaxedFloor, n].
inline GridOptimum grid_maximize_throughput(double n, int t, int reuse, int q, ThroughputKind kind,
                                            int grid_points = 10000) {
  GridOptimum best;
  const double bottom = std::log(detail::kRelaxedFloor);
  const double top = std::log(n);
  for (int i = 0; i < grid_points; ++i) {
    const double m = std::exp(bottom + (top - bottom) * i / (grid_points - 1));
    const double v = throughput_objective(n, m, t, reuse, q, kind);
    if (v > best.value) best = GridOptimum{m, v};
  }
  return best;
}

inline double closed_form_throughput(double n, int t, int reuse, int q, ThroughputKind kind) {
  switch (kind) {
    case ThroughputKind::LocalStage: return local_throughput(n, t, reuse, q);
    case ThroughputKind::Enhanced: return hierarchy_throughput(n, t, reuse, q, Scheme::EnhancedHierarchy);
    case ThroughputKind::Conventional:
      return hierarchy_throughput(n, t, reuse, q, Scheme::ConventionalHierarchy);
  }
  return 0.0;
}

inline constexpr double kClusterTolerance = 0.01;

/// Stage-t local throughput closed form against the numeric recursion.
inline ValidationReport verify_cluster_optimum(std::uint64_t n, int t, int reuse, int q,
                                               ThroughputKind kind = ThroughputKind::LocalStage) {
  const double nn = static_cast<double>(n);
  const GridOptimum opt = grid_maximize_throughput(nn, t, reuse, q, kind);
  const char* tag = kind == ThroughputKind::LocalStage ? "local"
                    : kind == ThroughputKind::Enhanced ? "enhanced"
                                                       : "conventional";
  return make_validation("cluster_optimum/" + std::string(tag) + "/n=" + std::to_string(n) +
                             ",t=" + std::to_string(t) + ",L=" + std::to_string(reuse) +
                             ",q=" + std::to_string(q),
                         closed_form_throughput(nn, t, reuse, q, kind), opt.value, kClusterTolerance);
}

// ---------------------------------------------------------------------------
// Suites

struct SuiteOptions {
  std::uint64_t seed = 42;
  bool timing = false;
};

namespace detail {

inline void timed(std::vector<ValidationReport>& out, bool timing,
                  const std::function<ValidationReport()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  ValidationReport r = fn();
  if (timing)
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  out.push_back(std::move(r));
}

inline std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace detail

inline std::vector<ValidationReport> run_qmf_suite(const SuiteOptions& opt) {
  std::vector<ValidationReport> out;
  const double snr = optimal_snr(3.0);
  const LinkBudget link = make_link_budget(10000, snr, 3.0);
  detail::timed(out, opt.timing, [&] {
    return verify_qmf_grid(QmfProblem{2.0 * link.local_rate, link.p_i + 1.0, snr}, 10000,
                           "qmf_grid/alpha=3,n=10000,q=2");
  });
  detail::timed(out, opt.timing, [&] {
    return verify_qmf_grid(QmfProblem{link.local_rate, 1.0, snr}, 10000, "qmf_grid/single_stage_mimo");
  });
  detail::timed(out, opt.timing, [&] {
    return verify_qmf_grid(QmfProblem{1e-9, 1.0, snr}, 10000, "qmf_grid/degenerate_backhaul");
  });
  CounterRng rng(opt.seed, 0x514d46);
  for (int i = 0; i < 20; ++i) {
    const QmfProblem p = random_qmf_problem(rng);
    detail::timed(out, opt.timing,
                  [&] { return verify_qmf_grid(p, 10000, "qmf_grid/random_" + std::to_string(i)); });
  }
  return out;
}

/// Grid measurement must not exceed the ring-distance bound; reported as the
/// relative excess over the bound, which must be exactly zero.
inline ValidationReport verify_grid_bound(std::uint64_t n, std::uint64_t m, int reuse, double alpha,
                                          std::uint64_t seed) {
  const double snr = optimal_snr(alpha);
  const double bound = interference_bound(n, snr, reuse, alpha, InterferenceModel::RingDistance);
  const double measured = measure_grid_interference(GridScenario{n, m, reuse, alpha, snr, seed});
  return make_validation("grid_interference_excess/n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                             ",L=" + std::to_string(reuse) + ",alpha=" + detail::fmt_num(alpha),
                         0.0, std::max(0.0, measured - bound) / bound, 0.0);
}

inline std::vector<ValidationReport> run_grid_suite(const SuiteOptions& opt) {
  std::vector<ValidationReport> out;
  for (std::uint64_t m : {25ULL, 100ULL})
    for (int reuse : {7, 9})
      for (double alpha : {2.0, 3.0})
        detail::timed(out, opt.timing,
                      [&] { return verify_grid_bound(10000, m, reuse, alpha, opt.seed); });
  return out;
}

inline constexpr double kMcTolerance = 0.02;
inline constexpr double kQuadratureTolerance = 1e-6;

inline std::vector<ValidationReport> run_mimo_suite(const SuiteOptions& opt) {
  std::vector<ValidationReport> out;
  for (double x : {1.0, 10.0, 100.0}) {
    detail::timed(out, opt.timing, [&] {
      return make_validation("capacity_quadrature/x=" + detail::fmt_num(x), capacity_rmt(x),
                             capacity_mp_quadrature(x), kQuadratureTolerance);
    });
  }
  for (auto dist : {EntryDistribution::UnitPhase, EntryDistribution::ComplexGaussian}) {
    const std::string tag = dist == EntryDistribution::UnitPhase ? "unit_phase" : "gaussian";
    for (double x : {1.0, 10.0, 100.0}) {
      detail::timed(out, opt.timing, [&] {
        const McEstimate est = mc_mimo_capacity(256, x, 200, opt.seed, dist);
        return make_validation("capacity_monte_carlo/" + tag + ",m=256,x=" + detail::fmt_num(x),
                               capacity_rmt(x), est.mean, kMcTolerance);
      });
    }
  }
  return out;
}

inline std::vector<ValidationReport> run_cluster_suite(const SuiteOptions& opt) {
  std::vector<ValidationReport> out;
  const int reuse = hierarchy_reuse(3.0);
  for (std::uint64_t n : {10000ULL, 1000000ULL})
    for (int t : {1, 2, 3})
      for (auto kind : {ThroughputKind::LocalStage, ThroughputKind::Enhanced, ThroughputKind::Conventional})
        detail::timed(out, opt.timing, [&] { return verify_cluster_optimum(n, t, reuse, 2, kind); });
  return out;
}

}  // namespace hiercoop::oracles
