#pragma once

// Brute-force interference measurement on the regular grid network.
//
// n nodes sit on a sqrt(n) x sqrt(n) lattice in the unit square; clusters are
// sqrt(m) x sqrt(m) node blocks. Under reuse factor L one transmitter per
// cluster is active on an L x L lattice of clusters. Transmit power
// P = snr (m/n)^(alpha/2) makes the received power at one cluster side equal
// to snr, so each interferer at distance d contributes snr (side/d)^alpha.
// Phases are i.i.d. uniform, so the expected aggregate power is the plain sum.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hiercoop::oracles {

struct GridScenario {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  int reuse = 0;
  double alpha = 0.0;
  double snr = 0.0;
  std::uint64_t seed = 0;
};

class GridConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::uint64_t exact_sqrt(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(v))));
  return r * r == v ? r : 0;
}

}  // namespace detail

/// Nearest perfect square to n, for instances whose n is not a square.
inline std::uint64_t nearest_square(std::uint64_t n) {
  const auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r;
}

/// Worst-case expected inter-cluster interference power.
///
/// Maximized over the L x L choices of reuse-lattice offset, over every
/// receiving node of every active cluster, and, per interfering cluster, over
/// its four corners and its center as transmitter position.
inline double measure_grid_interference(const GridScenario& s) {
  const std::uint64_t side = detail::exact_sqrt(s.n);
  const std::uint64_t cs = detail::exact_sqrt(s.m);
  if (side == 0 || cs == 0 || s.m > s.n || side % cs != 0)
    throw GridConfigurationError("grid scenario: n and m must be squares with sqrt(m) dividing sqrt(n)");
  if (s.reuse < 1) throw GridConfigurationError("grid scenario: reuse must be >= 1");
  if (!(s.alpha > 0.0) || !(s.snr > 0.0))
    throw GridConfigurationError("grid scenario: alpha and snr must be positive");

  const auto k = static_cast<long>(side / cs);
  const auto L = static_cast<long>(s.reuse);
  const double c = static_cast<double>(cs);
  const double hi = c - 1.0;
  const std::array<std::pair<double, double>, 5> tx_spots{
      {{0.0, 0.0}, {0.0, hi}, {hi, 0.0}, {hi, hi}, {hi / 2.0, hi / 2.0}}};

  double worst = 0.0;
  const long offsets = std::min(L, k);
  std::vector<std::pair<long, long>> active;
  for (long ox = 0; ox < offsets; ++ox) {
    for (long oy = 0; oy < offsets; ++oy) {
      active.clear();
      for (long cx = ox; cx < k; cx += L)
        for (long cy = oy; cy < k; cy += L) active.emplace_back(cx, cy);
      if (active.size() < 2) continue;

      for (const auto& [rcx, rcy] : active) {
        for (long a = 0; a < static_cast<long>(cs); ++a) {
          for (long b = 0; b < static_cast<long>(cs); ++b) {
            const double rx = static_cast<double>(rcx) * c + a;
            const double ry = static_cast<double>(rcy) * c + b;
            double total = 0.0;
            for (const auto& [icx, icy] : active) {
              if (icx == rcx && icy == rcy) continue;
              double strongest = 0.0;
              for (const auto& [dx, dy] : tx_spots) {
                const double ex = static_cast<double>(icx) * c + dx - rx;
                const double ey = static_cast<double>(icy) * c + dy - ry;
                const double dist = std::hypot(ex, ey);  // node spacings
                strongest = std::max(strongest, s.snr * std::pow(c / dist, s.alpha));
              }
              total += strongest;
            }
            worst = std::max(worst, total);
          }
        }
      }
    }
  }
  return worst;
}

}  // namespace hiercoop::oracles
