#pragma once

// Monte Carlo and quadrature oracles for the large-system MIMO capacity.

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hiercoop/detail/parallel.hpp"
#include "hiercoop/oracles/rng.hpp"

namespace hiercoop::oracles {

enum class EntryDistribution { UnitPhase, ComplexGaussian };

/// Phase-fading channel realization: theta uniform on (0, 2 pi], unit gains.
struct ChannelDraw {
  Eigen::MatrixXd phases;

  Eigen::MatrixXcd matrix() const {
    return phases.unaryExpr([](double th) { return std::polar(1.0, th); });
  }
};

inline ChannelDraw draw_channel(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                                std::uint64_t stream) {
  CounterRng rng(seed, stream);
  ChannelDraw d{Eigen::MatrixXd(rows, cols)};
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) d.phases(i, j) = rng.phase();
  return d;
}

inline Eigen::MatrixXcd draw_entries(Eigen::Index m, EntryDistribution dist, std::uint64_t seed,
                                     std::uint64_t stream) {
  if (dist == EntryDistribution::UnitPhase) return draw_channel(m, m, seed, stream).matrix();
  CounterRng rng(seed, stream);
  Eigen::MatrixXcd h(m, m);
  const double scale = std::numbers::sqrt2 / 2.0;  // unit total variance
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto [re, im] = rng.normal_pair();
      h(i, j) = {scale * re, scale * im};
    }
  return h;
}

/// log2 det(I + scale * H H^H) through a Cholesky factor of the Hermitian
/// positive-definite argument.
inline double log2det_identity_plus(const Eigen::MatrixXcd& h, double scale) {
  const Eigen::Index m = h.rows();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(m, m);
  g.selfadjointView<Eigen::Lower>().rankUpdate(h, scale);
  Eigen::LLT<Eigen::MatrixXcd, Eigen::Lower> llt(g);
  if (llt.info() != Eigen::Success) throw std::runtime_error("log2det: matrix not positive definite");
  const auto& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) acc += std::log(l(i, i).real());
  return 2.0 * acc / std::numbers::ln2;
}

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
};

/// Sample mean of (1/m) log2 det(I + (x/m) H H^H) over i.i.d. m x m channels.
/// Trial i draws from substream i of the seed.
inline McEstimate mc_mimo_capacity(int m, double x, int trials, std::uint64_t seed,
                                   EntryDistribution dist = EntryDistribution::UnitPhase) {
  if (m < 8) throw std::domain_error("mc_mimo_capacity: m must be >= 8");
  if (trials < 50) throw std::domain_error("mc_mimo_capacity: trials must be >= 50");
  if (x < 0.0) throw std::domain_error("mc_mimo_capacity: x must be >= 0");
  if (x == 0.0) return McEstimate{0.0, 0.0, trials};

  std::vector<double> samples(static_cast<std::size_t>(trials));
  hiercoop::detail::parallel_for(samples.size(), [&](std::size_t i) {
    const Eigen::MatrixXcd h = draw_entries(m, dist, seed, i);
    samples[i] = log2det_identity_plus(h, x / m) / m;
  });
  double sum = 0.0;
  for (double v : samples) sum += v;
  const double mean = sum / trials;
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (trials - 1));
  return McEstimate{mean, sd / std::sqrt(static_cast<double>(trials)), trials};
}

/// E log2(1 + x lambda) under the Marchenko-Pastur law of ratio one, by
/// trapezoidal quadrature after lambda = 4 sin^2(phi). The integrand is smooth
/// and pi-periodic, so the rule converges geometrically.
inline double capacity_mp_quadrature(double x, int nodes = 4096) {
  if (x < 0.0) throw std::domain_error("capacity_mp_quadrature: x must be >= 0");
  const double h = std::numbers::pi / nodes;
  double acc = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double phi = j * h;
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    acc += std::log1p(4.0 * x * s * s) * c * c;
  }
  // (4/pi) * (1/2) * integral over a full period, in bits.
  return (2.0 / std::numbers::pi) * acc * h / std::numbers::ln2;
}

}  // namespace hiercoop::oracles
