#pragma once

// Declarative parameter sweeps and their CSV encoding.
//
// CSV contract: header row, then one row per (grid point, scheme) in axis
// order. Fields are separated by ',', rows end in '\n', numbers use '.' as the
// decimal point with no grouping (shortest round-trip form).

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hiercoop/core.hpp"
#include "hiercoop/detail/parallel.hpp"
#include "hiercoop/hierarchy.hpp"
#include "hiercoop/single_stage.hpp"

namespace hiercoop {

enum class SweepAxis { N, Alpha, T, Snr };
enum class SweepScale { Linear, Log };

inline std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::N: return "n";
    case SweepAxis::Alpha: return "alpha";
    case SweepAxis::T: return "t";
    case SweepAxis::Snr: return "snr_db";
  }
  return "unknown";
}

inline std::optional<SweepAxis> parse_axis(std::string_view s) {
  if (s == "n") return SweepAxis::N;
  if (s == "alpha") return SweepAxis::Alpha;
  if (s == "t") return SweepAxis::T;
  if (s == "snr" || s == "snr_db") return SweepAxis::Snr;
  return std::nullopt;
}

/// A sweep over one axis. The snr axis is expressed in dB; every fixed value
/// is linear. Recognized fixed keys: n, alpha, q, t, snr, reuse, snr_max.
struct SweepSpec {
  SweepAxis axis = SweepAxis::N;
  double from = 0.0;
  double to = 0.0;
  int points = 2;
  SweepScale scale = SweepScale::Linear;
  std::vector<Scheme> schemes;
  std::map<std::string, double> fixed;
  InterferenceModel model = InterferenceModel::RingDistance;
};

struct SweepRow {
  double axis_value = 0.0;
  std::string scheme;
  int q = 0;
  double coding_rate = 0.0;
  double throughput = 0.0;
  double sum_rate = 0.0;
  int t = 0;
  int reuse = 0;
  double snr = 0.0;
  double m_t = 0.0;
};

inline void validate(const SweepSpec& spec) {
  static const std::set<std::string, std::less<>> keys{"n", "alpha", "q", "t", "snr", "reuse", "snr_max"};
  if (!(spec.from < spec.to)) throw std::invalid_argument("sweep: need from < to");
  if (spec.points < 2) throw std::invalid_argument("sweep: need at least 2 points");
  if (spec.schemes.empty()) throw std::invalid_argument("sweep: no schemes selected");
  if (spec.scale == SweepScale::Log && !(spec.from > 0.0))
    throw std::invalid_argument("sweep: log scale needs a positive start");
  for (const auto& [k, v] : spec.fixed) {
    if (!keys.contains(k)) throw std::invalid_argument("sweep: unknown fixed parameter '" + k + "'");
    (void)v;
  }
  const std::string axis_key = spec.axis == SweepAxis::Snr ? "snr" : std::string(to_string(spec.axis));
  if (spec.fixed.contains(axis_key))
    throw std::invalid_argument("sweep: axis '" + axis_key + "' also given as fixed");
  if (spec.axis == SweepAxis::T) {
    for (Scheme s : spec.schemes)
      if (s == Scheme::SingleStage)
        throw std::invalid_argument("sweep: the single-stage scheme has no t axis");
  }
}

inline std::vector<double> grid_values(const SweepSpec& spec) {
  std::vector<double> v(static_cast<std::size_t>(spec.points));
  for (int i = 0; i < spec.points; ++i) {
    const double f = static_cast<double>(i) / (spec.points - 1);
    double x = spec.scale == SweepScale::Log
                   ? std::exp(std::log(spec.from) + f * (std::log(spec.to) - std::log(spec.from)))
                   : spec.from + f * (spec.to - spec.from);
    if (i == spec.points - 1) x = spec.to;
    if (spec.axis == SweepAxis::N || spec.axis == SweepAxis::T) x = std::round(x);
    v[static_cast<std::size_t>(i)] = x;
  }
  return v;
}

namespace detail {

inline std::optional<double> lookup(const std::map<std::string, double>& m, const char* key) {
  if (auto it = m.find(key); it != m.end()) return it->second;
  return std::nullopt;
}

inline int as_int(double v, const char* what) {
  if (v != std::round(v)) throw std::invalid_argument(std::string("sweep: ") + what + " must be integral");
  return static_cast<int>(v);
}

inline SweepRow row_from(double axis_value, std::string scheme, const RateReport& r) {
  return SweepRow{axis_value, std::move(scheme), r.params.q, r.coding_rate, r.packet_throughput,
                  r.sum_rate, r.params.t, r.params.reuse, r.params.snr,
                  r.params.cluster_sizes.empty() ? 0.0 : r.params.cluster_sizes.back()};
}

}  // namespace detail

/// Evaluates one grid point for one scheme.
///
/// Hierarchical schemes without a fixed t take the best realized t in 1..8.
/// On the t axis the coding rate is the t-th fixed-point iterate R(t). The
/// single-stage scheme ignores a fixed t.
inline SweepRow evaluate_point(const SweepSpec& spec, double value, Scheme scheme) {
  using detail::lookup;
  double n = lookup(spec.fixed, "n").value_or(1e4);
  double alpha = lookup(spec.fixed, "alpha").value_or(3.0);
  const double snr_max = lookup(spec.fixed, "snr_max").value_or(kDefaultSnrMax);
  std::optional<double> snr = lookup(spec.fixed, "snr");
  std::optional<double> t_fixed = lookup(spec.fixed, "t");
  switch (spec.axis) {
    case SweepAxis::N: n = value; break;
    case SweepAxis::Alpha: alpha = value; break;
    case SweepAxis::Snr: snr = db_to_linear(value); break;
    case SweepAxis::T: t_fixed = value; break;
  }
  if (n < 4 || n != std::round(n)) throw std::invalid_argument("sweep: n must be an integer >= 4");
  const NetworkConfig cfg = NetworkConfig::make(static_cast<std::uint64_t>(n), alpha, snr_max);
  std::optional<int> reuse;
  if (auto r = lookup(spec.fixed, "reuse")) reuse = detail::as_int(*r, "reuse");
  const auto q_fixed = lookup(spec.fixed, "q");

  std::string label(to_string(scheme));
  if (reuse) label += "_L" + std::to_string(*reuse);

  if (scheme == Scheme::SingleStage) {
    SingleStageOptions opt;
    opt.model = spec.model;
    opt.snr = snr;
    opt.reuse = reuse;
    opt.q = q_fixed ? detail::as_int(*q_fixed, "q") : 1;
    return detail::row_from(value, label, sum_rate_single(cfg, opt).report);
  }

  HierarchyOptions opt;
  opt.q = q_fixed ? detail::as_int(*q_fixed, "q") : 2;
  opt.model = spec.model;
  opt.snr = snr;
  opt.reuse = reuse;

  if (spec.axis == SweepAxis::T) {
    const int t = detail::as_int(value, "t");
    if (t < 1) throw std::invalid_argument("sweep: t must be >= 1");
    const double op_snr = snr ? *snr : std::min(optimal_snr(alpha), snr_max);
    const LinkBudget link = make_link_budget(cfg.n, op_snr, alpha, spec.model, reuse);
    const FixedPointTrace trace = coding_rate_fixed_point(link, alpha, opt.q);
    const auto idx = static_cast<std::size_t>(t - 1);
    const double coding = idx < trace.iterates.size() ? trace.iterates[idx] : trace.r_star;
    const HierarchyPlan plan = sum_rate_hier(cfg.n, link.reuse, t, scheme, coding, opt.q);
    return SweepRow{value, label, opt.q, coding, plan.throughput, coding * plan.throughput, t,
                    link.reuse, op_snr, plan.cluster_sizes.back()};
  }

  const HierarchyResult res = t_fixed ? hierarchical_report(cfg, detail::as_int(*t_fixed, "t"), scheme, opt)
                                      : best_hierarchical_report(cfg, scheme, opt);
  return detail::row_from(value, label, res.report);
}

/// Rows in axis order, schemes in the order given, evaluated in parallel.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  const std::vector<double> values = grid_values(spec);
  const std::size_t ns = spec.schemes.size();
  std::vector<SweepRow> rows(values.size() * ns);
  detail::parallel_for(rows.size(), [&](std::size_t i) {
    rows[i] = evaluate_point(spec, values[i / ns], spec.schemes[i % ns]);
  });
  return rows;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, res.ptr);
}

inline std::string format_number(long long v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline void write_csv_header(std::ostream& out, SweepAxis axis) {
  out << to_string(axis) << ",scheme,q,coding_rate,throughput,sum_rate,t,L,snr,m_t\n";
}

inline void write_csv_row(std::ostream& out, SweepAxis axis, const SweepRow& r) {
  const bool integral_axis = axis == SweepAxis::N || axis == SweepAxis::T;
  out << (integral_axis ? format_number(static_cast<long long>(r.axis_value)) : format_number(r.axis_value))
      << ',' << r.scheme << ',' << format_number(static_cast<long long>(r.q)) << ','
      << format_number(r.coding_rate) << ',' << format_number(r.throughput) << ','
      << format_number(r.sum_rate) << ',' << format_number(static_cast<long long>(r.t)) << ','
      << format_number(static_cast<long long>(r.reuse)) << ',' << format_number(r.snr) << ','
      << format_number(r.m_t) << '\n';
}

inline void write_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepRow>& rows) {
  write_csv_header(out, axis);
  for (const auto& r : rows) write_csv_row(out, axis, r);
}

}  // namespace hiercoop
