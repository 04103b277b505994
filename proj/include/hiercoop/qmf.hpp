#pragma once

// Quantize-map-and-forward rate of a distributed MIMO channel with finite
// backhaul. The achievable symmetric rate is
//
//   min{ R0 - log2(1 + N0/s),  C(SNR/(N0 + s)) }
//
// maximized over the quantization level s. The first term increases in s and
// the second decreases, so the optimum is the crossing point, found here by
// bisection on the bracket [N0/(2^R0 - 1), (N0 + SNR)/(2^R0 - 1)].

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hiercoop {

/// Large-system per-antenna capacity of an i.i.d. square MIMO channel at
/// per-antenna SNR x, in bits:
///   2 log2((1 + sqrt(1+4x))/2) - (sqrt(1+4x) - 1)^2 log2(e) / (4x).
/// Continuous at x = 0 with value 0.
inline double capacity_rmt(double x) {
  if (x < 0.0 || std::isnan(x)) throw std::domain_error("capacity_rmt: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (x < 1e-3) {
    // Moment series; the closed form loses digits to cancellation here.
    // Marchenko-Pastur moments are the Catalan numbers 1, 2, 5, 14, 42.
    const double nats = x * (1.0 - x * (1.0 - x * (5.0 / 3.0 - x * (3.5 - x * 8.4))));
    return nats * std::numbers::log2e;
  }
  const double r = std::sqrt(1.0 + 4.0 * x);
  return 2.0 * std::log2((1.0 + r) / 2.0) - (r - 1.0) * (r - 1.0) * std::numbers::log2e / (4.0 * x);
}

struct QmfProblem {
  double r0 = 0.0;   ///< backhaul capacity, bits per symbol
  double n0 = 1.0;   ///< noise plus interference power
  double snr = 0.0;  ///< MIMO transmit SNR
};

struct QmfSolution {
  double rate = 0.0;
  double sigma_q_sq = 0.0;
  double constraint_gap = 0.0;
  int iterations = 0;
};

struct SigmaBounds {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

/// Zero backhaul: the achievable rate is exactly 0 and there is no bracket.
class DegenerateBackhaul : public std::domain_error {
 public:
  DegenerateBackhaul() : std::domain_error("QMF problem has zero backhaul capacity") {}
};

class QmfSolverError : public std::runtime_error {
 public:
  QmfSolverError(const std::string& what, double h_lo, double h_hi)
      : std::runtime_error(what), h_lo_(h_lo), h_hi_(h_hi) {}
  double h_lo() const noexcept { return h_lo_; }
  double h_hi() const noexcept { return h_hi_; }

 private:
  double h_lo_;
  double h_hi_;
};

inline constexpr double kMaxBackhaul = 1000.0;

inline void validate(const QmfProblem& p) {
  if (p.r0 == 0.0) throw DegenerateBackhaul();
  if (!(p.r0 > 0.0) || !(p.r0 <= kMaxBackhaul))
    throw std::domain_error("QMF problem: backhaul r0 must lie in (0, 1000]");
  if (!(p.n0 >= 1.0) || !std::isfinite(p.n0))
    throw std::domain_error("QMF problem: n0 must be >= 1");
  if (!(p.snr > 0.0) || !std::isfinite(p.snr))
    throw std::domain_error("QMF problem: snr must be positive");
}

/// Quantization level making the backhaul constraint zero (lower end) and the
/// quantize-and-forward level (upper end).
inline SigmaBounds sigma_bounds(const QmfProblem& p) {
  validate(p);
  const double denom = std::expm1(p.r0 * std::numbers::ln2);
  return SigmaBounds{p.n0 / denom, (p.n0 + p.snr) / denom};
}

inline double backhaul_constraint(double sigma_sq, const QmfProblem& p) {
  return p.r0 - std::log2(1.0 + p.n0 / sigma_sq);
}

inline double mimo_constraint(double sigma_sq, const QmfProblem& p) {
  return capacity_rmt(p.snr / (p.n0 + sigma_sq));
}

/// Backhaul constraint minus MIMO constraint; strictly increasing in sigma_sq.
inline double h_gap(double sigma_sq, const QmfProblem& p) {
  if (!(sigma_sq > 0.0)) throw std::domain_error("h_gap: sigma_sq must be positive");
  return backhaul_constraint(sigma_sq, p) - mimo_constraint(sigma_sq, p);
}

/// Rate at the constraint-balancing quantization level.
///
/// Stops once the two constraints agree to within tol * rate, or after 200
/// halvings (the bracket is then at machine resolution).
inline QmfSolution qmf_rate(const QmfProblem& p, double tol = 1e-9) {
  if (!(tol > 0.0) || tol > 1e-3) throw std::domain_error("qmf_rate: tol must lie in (0, 1e-3]");
  const auto [sigma_min, sigma_max] = sigma_bounds(p);
  double lo = sigma_min;
  double hi = sigma_max;
  const double h_lo = h_gap(lo, p);
  const double h_hi = h_gap(hi, p);
  const double noise = 1e-12 * std::max(1.0, p.r0);
  if (h_lo > noise || h_hi < -noise) {
    std::ostringstream msg;
    msg << "qmf_rate: bracket does not straddle the root (r0=" << p.r0 << ", n0=" << p.n0
        << ", snr=" << p.snr << ", h(lo)=" << h_lo << ", h(hi)=" << h_hi << ")";
    throw QmfSolverError(msg.str(), h_lo, h_hi);
  }

  QmfSolution out;
  for (int it = 1; it <= 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double c1 = backhaul_constraint(mid, p);
    const double c2 = mimo_constraint(mid, p);
    const double gap = c1 - c2;
    out = QmfSolution{std::max(0.0, std::min(c1, c2)), mid, std::abs(gap), it};
    if (std::abs(gap) <= tol * std::min(c1, c2)) break;
    if (gap > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return out;
}

}  // namespace hiercoop
