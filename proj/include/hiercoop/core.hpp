#pragma once

// Shared domain types for the hierarchical-cooperation rate engine.
//
// All rates are in bits (base-2 logs). SNR values are linear power ratios;
// dB only appears at the command-line boundary.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hiercoop {

enum class Scheme { SingleStage, ConventionalHierarchy, EnhancedHierarchy };

enum class InterferenceModel { RingDistance, Literal };

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::SingleStage: return "single";
    case Scheme::ConventionalHierarchy: return "conventional";
    case Scheme::EnhancedHierarchy: return "enhanced";
  }
  return "unknown";
}

inline std::string_view to_string(InterferenceModel m) {
  switch (m) {
    case InterferenceModel::Literal: return "literal";
    case InterferenceModel::RingDistance: return "ring";
  }
  return "unknown";
}

inline std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "single") return Scheme::SingleStage;
  if (name == "conventional") return Scheme::ConventionalHierarchy;
  if (name == "enhanced") return Scheme::EnhancedHierarchy;
  return std::nullopt;
}

inline std::optional<InterferenceModel> parse_interference(std::string_view name) {
  if (name == "ring") return InterferenceModel::RingDistance;
  if (name == "literal") return InterferenceModel::Literal;
  return std::nullopt;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline constexpr double kDefaultSnrMax = 1e9;  // 90 dB

/// Problem instance: n nodes on a unit-area grid with path-loss exponent alpha.
struct NetworkConfig {
  std::uint64_t n = 0;
  double alpha = 0.0;
  double snr_max = 0.0;

  /// Validating constructor; throws std::invalid_argument on a bad instance.
  static NetworkConfig make(std::uint64_t n, double alpha, double snr_max = kDefaultSnrMax) {
    if (n < 4) throw std::invalid_argument("network size n must be at least 4");
    if (!(alpha >= 2.0) || !std::isfinite(alpha))
      throw std::invalid_argument("path-loss exponent alpha must be >= 2");
    if (!(snr_max > 1.0)) throw std::invalid_argument("snr_max must exceed 1 (linear)");
    return NetworkConfig{n, alpha, snr_max};
  }

  bool operator==(const NetworkConfig&) const = default;
};

struct ProtocolParams {
  double snr = 0.0;
  int reuse = 0;
  int q = 1;
  int t = 1;
  std::vector<double> cluster_sizes;
  double sigma_q_sq = 0.0;

  bool operator==(const ProtocolParams&) const = default;
};

/// Coding rate, packet throughput and their product for one operating point.
/// sum_rate is always the exact product of the two factors.
struct RateReport {
  double coding_rate = 0.0;
  double packet_throughput = 0.0;
  double sum_rate = 0.0;
  std::map<std::string, double> constraint_values;
  ProtocolParams params;

  bool operator==(const RateReport&) const = default;
};

inline RateReport make_report(double coding_rate, double packet_throughput,
                              std::map<std::string, double> constraints,
                              ProtocolParams params) {
  return RateReport{coding_rate, packet_throughput, coding_rate * packet_throughput,
                    std::move(constraints), std::move(params)};
}

/// Spatial degrees-of-freedom ceiling sqrt(area)/wavelength.
inline double dof_limit(double area, double wavelength) {
  if (!(area > 0.0) || !(wavelength > 0.0))
    throw std::domain_error("dof_limit: area and wavelength must be positive");
  return std::sqrt(area) / wavelength;
}

}  // namespace hiercoop
