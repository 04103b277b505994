#pragma once

// Single-stage cooperative scheme: local TDMA distribution, one long-range
// distributed-MIMO phase, and QMF-based local sharing stretched over Q slots.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "hiercoop/core.hpp"
#include "hiercoop/link_budget.hpp"
#include "hiercoop/qmf.hpp"

namespace hiercoop {

struct ClusterSize {
  double m = 0.0;
  bool degenerate = false;  ///< m < 1: clusters collapse to single nodes
};

/// Continuous maximizer of the packet throughput: sqrt(n) / (L sqrt(1+q)).
inline ClusterSize optimal_cluster_size(std::uint64_t n, int reuse, int q) {
  if (n < 1 || reuse < 1 || q < 0)
    throw std::domain_error("optimal_cluster_size: need n >= 1, reuse >= 1, q >= 0");
  const double m = std::sqrt(static_cast<double>(n)) / (reuse * std::sqrt(1.0 + q));
  return ClusterSize{m, m < 1.0};
}

/// Links per slot for cluster size m: phases take (Lm)^2, n and q(Lm)^2 slots.
inline double packet_throughput(std::uint64_t n, double m, int reuse, int q) {
  if (!(m >= 1.0)) throw std::domain_error("packet_throughput: m must be >= 1");
  const double nn = static_cast<double>(n);
  const double lm = reuse * m;
  return m * nn / ((q + 1.0) * lm * lm + nn);
}

struct SingleStageOptions {
  InterferenceModel model = InterferenceModel::RingDistance;
  std::optional<double> snr;   ///< defaults to min(optimal_snr, snr_max)
  std::optional<int> reuse;    ///< defaults to the TIN reuse factor
  int q = 1;
  /// Relative shortfall tolerated when checking R1 <= R_QMF(R1, 1, SNR').
  /// The QMF rate only reaches R1 as SNR' grows without bound.
  double mimo_slack = 1e-3;
};

struct SingleStagePlan {
  double m = 0.0;
  double m_int = 0.0;
  double throughput = 0.0;
  double throughput_int = 0.0;
  bool degenerate = false;
  bool mimo_verified = false;
  double verifying_snr = 0.0;  ///< smallest SNR' on the search grid meeting the MIMO constraint
  LinkBudget link;
  RateReport report;
};

namespace detail {

struct MimoCheck {
  bool ok = false;
  double snr_prime = 0.0;
  QmfSolution qmf;
};

// Log grid of 10 points per decade from 1 up to snr_max.
inline MimoCheck search_mimo_snr(double r1, double snr_max, double slack) {
  MimoCheck best;
  const double top = std::log10(snr_max);
  const int steps = static_cast<int>(std::ceil(top * 10.0));
  for (int k = 0; k <= steps; ++k) {
    const double snr_prime = k == steps ? snr_max : std::pow(10.0, k / 10.0);
    const QmfSolution sol = qmf_rate(QmfProblem{r1, 1.0, snr_prime});
    best = MimoCheck{sol.rate >= r1 * (1.0 - slack), snr_prime, sol};
    if (best.ok) break;
  }
  return best;
}

}  // namespace detail

/// Assembles the single-stage operating point and its rate report.
inline SingleStagePlan sum_rate_single(const NetworkConfig& cfg, const SingleStageOptions& opt = {}) {
  const double snr = opt.snr ? *opt.snr : std::min(optimal_snr(cfg.alpha), cfg.snr_max);
  if (!(snr > 0.0) || snr > cfg.snr_max)
    throw std::domain_error("sum_rate_single: snr must lie in (0, snr_max]");
  SingleStagePlan plan;
  plan.link = make_link_budget(cfg.n, snr, cfg.alpha, opt.model, opt.reuse);
  const int reuse = plan.link.reuse;
  const double r1 = plan.link.local_rate;

  const ClusterSize cs = optimal_cluster_size(cfg.n, reuse, opt.q);
  plan.degenerate = cs.degenerate;
  plan.m = std::max(1.0, cs.m);
  plan.m_int = std::max(1.0, std::round(cs.m));
  plan.throughput = packet_throughput(cfg.n, plan.m, reuse, opt.q);
  plan.throughput_int = packet_throughput(cfg.n, plan.m_int, reuse, opt.q);

  const detail::MimoCheck mimo = detail::search_mimo_snr(r1, cfg.snr_max, opt.mimo_slack);
  plan.mimo_verified = mimo.ok;
  plan.verifying_snr = mimo.snr_prime;
  const double coding = mimo.ok ? r1 : mimo.qmf.rate;

  ProtocolParams params{snr, reuse, opt.q, 1, {plan.m}, mimo.qmf.sigma_q_sq};
  plan.report = make_report(coding, plan.throughput,
                            {{"local_rate", r1}, {"mimo_qmf", mimo.qmf.rate}}, std::move(params));
  return plan;
}

inline SingleStagePlan sum_rate_single(const NetworkConfig& cfg, InterferenceModel model) {
  SingleStageOptions opt;
  opt.model = model;
  return sum_rate_single(cfg, opt);
}

}  // namespace hiercoop
