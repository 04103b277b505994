#pragma once

// Local-communication link budget: TIN-feasible spatial reuse, inter-cluster
// interference bound and the resulting local rate R1.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "hiercoop/core.hpp"

namespace hiercoop {

namespace detail {

inline std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : r + 1;
}

inline void require_alpha(double alpha) {
  if (!(alpha >= 2.0)) throw std::domain_error("path-loss exponent alpha must be >= 2");
}

}  // namespace detail

/// Per-link SNR maximizing the approximate single-stage sum-rate:
/// 2^(2(3 + alpha/ln 2)). Callers cap it at snr_max.
inline double optimal_snr(double alpha) {
  detail::require_alpha(alpha);
  return std::exp2(2.0 * (3.0 + alpha / std::numbers::ln2));
}

/// Smallest reuse factor meeting INR <= sqrt(SNR): ceil(snr^(1/(2 alpha)) + 1).
inline int reuse_factor(double snr, double alpha) {
  if (!(snr > 0.0)) throw std::domain_error("reuse_factor: snr must be positive");
  detail::require_alpha(alpha);
  return static_cast<int>(std::ceil(std::pow(snr, 1.0 / (2.0 * alpha)) + 1.0));
}

/// Reuse factor with the optimal SNR substituted analytically,
/// ceil(2^((3 + alpha/ln 2)/alpha) + 1). Equals reuse_factor(optimal_snr(a), a).
inline int hierarchy_reuse(double alpha) {
  detail::require_alpha(alpha);
  return static_cast<int>(
      std::ceil(std::exp2((3.0 + alpha / std::numbers::ln2) / alpha) + 1.0));
}

/// sqrt(snr) - INR with INR = (L-1)^-alpha snr. Non-negative iff TIN is optimal.
inline double tin_margin(double snr, int reuse, double alpha) {
  if (reuse < 2) throw std::domain_error("tin_margin: reuse must be >= 2");
  const double inr = std::pow(static_cast<double>(reuse - 1), -alpha) * snr;
  return std::sqrt(snr) - inr;
}

/// Upper bound on aggregate inter-cluster interference, summed over
/// ceil(sqrt(n)) rings of 8i interfering clusters each.
///
/// RingDistance places ring i at normalized distance i(L-1); Literal
/// keeps every ring at distance L-1, which grows linearly in n.
inline double interference_bound(std::uint64_t n, double snr, int reuse, double alpha,
                                 InterferenceModel model = InterferenceModel::RingDistance) {
  if (n < 4) throw std::domain_error("interference_bound: n must be >= 4");
  if (reuse < 2) throw std::domain_error("interference_bound: reuse must be >= 2");
  const std::uint64_t rings = detail::ceil_sqrt(n);
  const double base = 8.0 * snr * std::pow(static_cast<double>(reuse - 1), -alpha);
  double acc = 0.0;
  if (model == InterferenceModel::Literal) {
    const double r = static_cast<double>(rings);
    acc = r * (r + 1.0) / 2.0;
  } else {
    // Smallest terms first.
    for (std::uint64_t i = rings; i >= 1; --i) {
      const double di = static_cast<double>(i);
      acc += di * std::pow(di, -alpha);
    }
  }
  return base * acc;
}

/// R1 = log2(1 + snr/(1 + p_i)), the TIN rate of a local link.
inline double local_rate(double snr, double p_i) {
  if (!(snr > 0.0) || !(p_i >= 0.0))
    throw std::domain_error("local_rate: need snr > 0 and p_i >= 0");
  return std::log2(1.0 + snr / (1.0 + p_i));
}

struct LinkBudget {
  double snr = 0.0;
  int reuse = 0;
  double p_i = 0.0;
  double local_rate = 0.0;
  double tin_margin = 0.0;
};

/// Link budget at a given SNR. A fixed reuse factor overrides the TIN rule.
inline LinkBudget make_link_budget(std::uint64_t n, double snr, double alpha,
                                   InterferenceModel model = InterferenceModel::RingDistance,
                                   std::optional<int> fixed_reuse = std::nullopt) {
  const int reuse = fixed_reuse ? *fixed_reuse : reuse_factor(snr, alpha);
  const double p_i = interference_bound(n, snr, reuse, alpha, model);
  return LinkBudget{snr, reuse, p_i, local_rate(snr, p_i), tin_margin(snr, reuse, alpha)};
}

/// Approximations used only to derive the SNR optimum in closed form:
/// L ~ snr^(1/(2 alpha)) and R1 ~ log2(sqrt(snr)/8).
namespace approx {

inline double reuse(double snr, double alpha) { return std::pow(snr, 1.0 / (2.0 * alpha)); }

inline double local_rate(double snr) { return std::log2(std::sqrt(snr) / 8.0); }

inline double sum_rate(double n, double snr, double alpha) {
  return std::sqrt(n) * local_rate(snr) / (2.0 * std::numbers::sqrt2 * reuse(snr, alpha));
}

}  // namespace approx

}  // namespace hiercoop
