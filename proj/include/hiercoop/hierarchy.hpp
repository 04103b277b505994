#pragma once

// Multi-stage hierarchical cooperation: the coding-rate fixed point shared by
// all stages, conventional and enhanced TDMA accounting, and the choice of
// stage count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hiercoop/core.hpp"
#include "hiercoop/link_budget.hpp"
#include "hiercoop/qmf.hpp"
#include "hiercoop/single_stage.hpp"

namespace hiercoop {

/// Iterates R(t+1) = R_QMF(q R(t), P_I + 1, SNR) from R(1) = local rate.
struct FixedPointTrace {
  double alpha = 0.0;
  int q = 0;
  std::vector<double> iterates;
  double r_star = 0.0;
  bool converged = false;
  int iterations_used = 0;
  double sigma_q_sq = 0.0;  ///< quantization level of the last QMF step
};

inline constexpr double kFixedPointTol = 1e-9;
inline constexpr int kFixedPointMaxIter = 100;
inline constexpr int kMaxStages = 8;

namespace detail {
// Tight enough that bisection error cannot masquerade as an increase
// between consecutive iterates.
inline constexpr double kInnerQmfTol = 1e-13;
}  // namespace detail

inline FixedPointTrace coding_rate_fixed_point(const LinkBudget& link, double alpha, int q,
                                               double tol = kFixedPointTol,
                                               int max_iter = kFixedPointMaxIter) {
  if (q < 1) throw std::domain_error("coding_rate_fixed_point: q must be >= 1");
  if (max_iter < 2) throw std::domain_error("coding_rate_fixed_point: max_iter must be >= 2");
  FixedPointTrace trace;
  trace.alpha = alpha;
  trace.q = q;
  trace.iterates.push_back(link.local_rate);
  double prev = link.local_rate;
  while (static_cast<int>(trace.iterates.size()) < max_iter) {
    if (prev <= 0.0) {
      trace.converged = true;
      break;
    }
    const QmfSolution sol =
        qmf_rate(QmfProblem{q * prev, link.p_i + 1.0, link.snr}, detail::kInnerQmfTol);
    const double next = std::max(0.0, sol.rate);
    trace.sigma_q_sq = sol.sigma_q_sq;
    trace.iterates.push_back(next);
    if (std::abs(next - prev) <= tol * prev || next == 0.0) {
      trace.converged = true;
      break;
    }
    prev = next;
  }
  trace.iterations_used = static_cast<int>(trace.iterates.size());
  trace.r_star = trace.iterates.back();
  return trace;
}

/// Fixed point at the optimal per-link SNR for alpha.
inline FixedPointTrace coding_rate_fixed_point(double alpha, int q, std::uint64_t n,
                                               InterferenceModel model = InterferenceModel::RingDistance,
                                               double tol = kFixedPointTol,
                                               int max_iter = kFixedPointMaxIter) {
  if (q < 1) throw std::domain_error("coding_rate_fixed_point: q must be >= 1");
  const LinkBudget link = make_link_budget(n, optimal_snr(alpha), alpha, model);
  return coding_rate_fixed_point(link, alpha, q, tol, max_iter);
}

/// R1 - R_QMF(q R1, 1 + P_I, SNR). Never negative beyond solver tolerance.
inline double first_step_margin(double alpha, int q, std::uint64_t n,
                                InterferenceModel model = InterferenceModel::RingDistance) {
  if (q < 1) throw std::domain_error("first_step_margin: q must be >= 1");
  const LinkBudget link = make_link_budget(n, optimal_snr(alpha), alpha, model);
  const QmfSolution sol =
      qmf_rate(QmfProblem{q * link.local_rate, 1.0 + link.p_i, link.snr}, detail::kInnerQmfTol);
  return link.local_rate - sol.rate;
}

/// Packet throughput of a t-stage protocol with optimal cluster sizes.
///
/// Conventional: n^(t/(t+1)) / ((t+1) (L sqrt(1+q))^t).
/// Enhanced:     n^(t/(t+1)) / ((t+1) L^(2t/(t+1)) sqrt(1+q)^t), TDMA applied
///               once per phase instead of once per stage.
inline double hierarchy_throughput(double n, int t, int reuse, int q, Scheme scheme) {
  if (t < 1) throw std::domain_error("hierarchy_throughput: t must be >= 1");
  const double td = t;
  const double e = td / (td + 1.0);
  const double s = std::sqrt(1.0 + q);
  switch (scheme) {
    case Scheme::EnhancedHierarchy:
      return std::pow(n, e) / ((1.0 + td) * std::pow(reuse, 2.0 * e) * std::pow(s, td));
    case Scheme::ConventionalHierarchy:
      return std::pow(n, e) / ((1.0 + td) * std::pow(reuse * s, td));
    case Scheme::SingleStage:
      break;
  }
  throw std::invalid_argument("hierarchy_throughput: scheme must be hierarchical");
}

/// Optimal cluster sizes M_1 .. M_t (index 0 is the bottom stage).
///
/// The top stage solves the recursion against n; every lower stage i is
/// optimized inside the stage-(i+1) cluster.
inline std::vector<double> hierarchy_cluster_sizes(double n, int t, int reuse, int q, Scheme scheme) {
  if (t < 1) throw std::domain_error("hierarchy_cluster_sizes: t must be >= 1");
  const double s = std::sqrt(1.0 + q);
  const double l = reuse;
  // Per-level divisor base: enhanced pays L^2 once at the top, conventional
  // pays L at every level.
  const double lower = scheme == Scheme::EnhancedHierarchy ? s : l * s;
  const double top_div = scheme == Scheme::EnhancedHierarchy
                             ? l * l * std::pow(s, t + 1.0)
                             : std::pow(l * s, t + 1.0);
  std::vector<double> m(static_cast<std::size_t>(t));
  m[t - 1] = std::pow(n / top_div, t / (t + 1.0));
  for (int i = t - 1; i >= 1; --i) {
    m[i - 1] = std::pow(m[i] / std::pow(lower, i + 1.0), i / (i + 1.0));
  }
  return m;
}

struct HierarchyPlan {
  int t = 0;
  Scheme scheme = Scheme::EnhancedHierarchy;
  std::vector<double> cluster_sizes;
  double coding_rate = 0.0;
  double throughput = 0.0;
  double sum_rate = 0.0;
  bool degenerate = false;  ///< some cluster size below one node
};

inline HierarchyPlan sum_rate_hier(std::uint64_t n, int reuse, int t, Scheme scheme,
                                   double coding_rate, int q) {
  if (scheme == Scheme::SingleStage)
    throw std::invalid_argument("sum_rate_hier: scheme must be hierarchical");
  HierarchyPlan plan;
  plan.t = t;
  plan.scheme = scheme;
  const double nn = static_cast<double>(n);
  plan.cluster_sizes = hierarchy_cluster_sizes(nn, t, reuse, q, scheme);
  plan.degenerate = std::any_of(plan.cluster_sizes.begin(), plan.cluster_sizes.end(),
                                [](double m) { return m < 1.0; });
  plan.coding_rate = coding_rate;
  plan.throughput = hierarchy_throughput(nn, t, reuse, q, scheme);
  plan.sum_rate = coding_rate * plan.throughput;
  return plan;
}

/// Reuse factor follows the operating SNR, min(optimal_snr, snr_max).
inline HierarchyPlan sum_rate_hier(const NetworkConfig& cfg, int t, Scheme scheme,
                                   double coding_rate, int q) {
  const double snr = std::min(optimal_snr(cfg.alpha), cfg.snr_max);
  return sum_rate_hier(cfg.n, reuse_factor(snr, cfg.alpha), t, scheme, coding_rate, q);
}

/// TL(t)(n) = n^(t/(t+1)) / ((t+1) L^2 sqrt(1+q)^t), throughput of stage-t
/// local communication.
inline double local_throughput(double n, int t, int reuse, int q) {
  if (t < 1) throw std::domain_error("local_throughput: t must be >= 1");
  const double td = t;
  return std::pow(n, td / (td + 1.0)) /
         ((td + 1.0) * static_cast<double>(reuse) * reuse * std::pow(std::sqrt(1.0 + q), td));
}

struct StageCount {
  double t_real = 0.0;
  int t_int = 1;
};

/// Stage count: t_real from -1 + (-1 + sqrt(1 + 2 ln(n/L) ln 3)) / ln 3,
/// t_int by exhaustive search over 1..8 of the enhanced Q = 2 sum-rate.
inline StageCount optimal_stages(std::uint64_t n, int reuse) {
  if (reuse < 1 || n <= static_cast<std::uint64_t>(reuse))
    throw std::domain_error("optimal_stages: need n > reuse");
  const double nn = static_cast<double>(n);
  const double ln3 = std::log(3.0);
  StageCount out;
  out.t_real = -1.0 + (-1.0 + std::sqrt(1.0 + 2.0 * std::log(nn / reuse) * ln3)) / ln3;
  double best = -std::numeric_limits<double>::infinity();
  for (int t = 1; t <= kMaxStages; ++t) {
    // The coding rate is common to all t and drops out of the argmax.
    const double v = hierarchy_throughput(nn, t, reuse, 2, Scheme::EnhancedHierarchy);
    if (v > best) {
      best = v;
      out.t_int = t;
    }
  }
  return out;
}

/// Exact stationary point in t of the enhanced sum-rate,
/// (t+1)^2 ln sqrt(1+q) + (t+1) - ln(n/L^2) = 0.
inline double stationary_stages_exact(std::uint64_t n, int reuse, int q = 2) {
  const double a = std::log(std::sqrt(1.0 + q));
  const double b = std::log(static_cast<double>(n) / (static_cast<double>(reuse) * reuse));
  return -1.0 + (-1.0 + std::sqrt(1.0 + 4.0 * a * b)) / (2.0 * a);
}

struct HierarchyResult {
  RateReport report;
  HierarchyPlan plan;
  FixedPointTrace trace;
  bool uses_single_stage = false;  ///< t = 1 reports the single-stage scheme
};

struct HierarchyOptions {
  int q = 2;
  InterferenceModel model = InterferenceModel::RingDistance;
  std::optional<double> snr;  ///< defaults to min(optimal_snr, snr_max)
  std::optional<int> reuse;   ///< defaults to the TIN reuse factor
};

namespace detail {

inline HierarchyResult single_stage_result(const NetworkConfig& cfg, Scheme scheme,
                                           const HierarchyOptions& opt, double snr) {
  SingleStageOptions sopt;
  sopt.model = opt.model;
  sopt.snr = snr;
  sopt.reuse = opt.reuse;
  const SingleStagePlan single = sum_rate_single(cfg, sopt);
  HierarchyResult out;
  out.report = single.report;
  out.plan = HierarchyPlan{1, scheme, {single.m}, single.report.coding_rate,
                           single.throughput, single.report.sum_rate, single.degenerate};
  out.uses_single_stage = true;
  return out;
}

inline HierarchyResult staged_result(const NetworkConfig& cfg, int t, Scheme scheme,
                                     const HierarchyOptions& opt, const LinkBudget& link,
                                     const FixedPointTrace& trace) {
  HierarchyResult out;
  out.trace = trace;
  out.plan = sum_rate_hier(cfg.n, link.reuse, t, scheme, trace.r_star, opt.q);
  ProtocolParams params{link.snr, link.reuse, opt.q, t, out.plan.cluster_sizes, trace.sigma_q_sq};
  out.report = make_report(trace.r_star, out.plan.throughput,
                           {{"local_rate", link.local_rate}, {"qmf_fixed_point", trace.r_star}},
                           std::move(params));
  return out;
}

inline void require_hierarchical(Scheme scheme) {
  if (scheme == Scheme::SingleStage)
    throw std::invalid_argument("hierarchical scheme required");
}

}  // namespace detail

/// Rate report for a hierarchical scheme at t stages, with coding rate R*(alpha, q).
/// At t = 1 the single-stage report is returned: a single layer has no
/// MIMO-phase interference and supports a higher coding rate than the fixed point.
inline HierarchyResult hierarchical_report(const NetworkConfig& cfg, int t, Scheme scheme,
                                           const HierarchyOptions& opt = {}) {
  detail::require_hierarchical(scheme);
  if (t < 1) throw std::domain_error("hierarchical_report: t must be >= 1");
  const double snr = opt.snr ? *opt.snr : std::min(optimal_snr(cfg.alpha), cfg.snr_max);
  const LinkBudget link = make_link_budget(cfg.n, snr, cfg.alpha, opt.model, opt.reuse);
  const FixedPointTrace trace = coding_rate_fixed_point(link, cfg.alpha, opt.q);
  if (t == 1) {
    HierarchyResult out = detail::single_stage_result(cfg, scheme, opt, snr);
    out.trace = trace;
    return out;
  }
  return detail::staged_result(cfg, t, scheme, opt, link, trace);
}

/// Highest realized sum-rate over t in 1..8 (t = 1 being the single-stage
/// report). Plans with sub-node clusters are skipped unless nothing else is
/// feasible; ties go to the smaller t.
inline HierarchyResult best_hierarchical_report(const NetworkConfig& cfg, Scheme scheme,
                                                const HierarchyOptions& opt = {}) {
  detail::require_hierarchical(scheme);
  const double snr = opt.snr ? *opt.snr : std::min(optimal_snr(cfg.alpha), cfg.snr_max);
  const LinkBudget link = make_link_budget(cfg.n, snr, cfg.alpha, opt.model, opt.reuse);
  const FixedPointTrace trace = coding_rate_fixed_point(link, cfg.alpha, opt.q);
  HierarchyResult best = detail::single_stage_result(cfg, scheme, opt, snr);
  best.trace = trace;
  for (int t = 2; t <= kMaxStages; ++t) {
    HierarchyResult cand = detail::staged_result(cfg, t, scheme, opt, link, trace);
    if (cand.plan.degenerate) continue;
    if (best.plan.degenerate || cand.report.sum_rate > best.report.sum_rate) best = std::move(cand);
  }
  return best;
}

}  // namespace hiercoop
