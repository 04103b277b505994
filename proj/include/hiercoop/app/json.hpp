#pragma once

#include <json.hpp>

#include "hiercoop/core.hpp"
#include "hiercoop/hierarchy.hpp"
#include "hiercoop/oracles/validation.hpp"

namespace hiercoop {

inline constexpr int kJsonSchemaVersion = 1;

inline void to_json(nlohmann::json& j, const ProtocolParams& p) {
  j = nlohmann::json{{"snr", p.snr},
                     {"snr_db", linear_to_db(p.snr)},
                     {"reuse", p.reuse},
                     {"q", p.q},
                     {"t", p.t},
                     {"cluster_sizes", p.cluster_sizes},
                     {"sigma_q_sq", p.sigma_q_sq}};
}

inline void to_json(nlohmann::json& j, const RateReport& r) {
  j = nlohmann::json{{"coding_rate", r.coding_rate},
                     {"packet_throughput", r.packet_throughput},
                     {"sum_rate", r.sum_rate},
                     {"constraint_values", r.constraint_values},
                     {"params", r.params}};
}

inline void to_json(nlohmann::json& j, const NetworkConfig& c) {
  j = nlohmann::json{{"n", c.n}, {"alpha", c.alpha}, {"snr_max", c.snr_max}};
}

inline void to_json(nlohmann::json& j, const FixedPointTrace& t) {
  j = nlohmann::json{{"alpha", t.alpha},
                     {"q", t.q},
                     {"iterates", t.iterates},
                     {"r_star", t.r_star},
                     {"converged", t.converged},
                     {"iterations_used", t.iterations_used}};
}

namespace oracles {

// Exactly the report fields; runtime_ms is null unless timing was requested.
inline void to_json(nlohmann::json& j, const ValidationReport& r) {
  j = nlohmann::json{{"check_name", r.check_name},
                     {"analytic_value", r.analytic_value},
                     {"oracle_value", r.oracle_value},
                     {"tolerance", r.tolerance},
                     {"passed", r.passed},
                     {"runtime_ms", r.runtime_ms ? nlohmann::json(*r.runtime_ms) : nlohmann::json()}};
}

}  // namespace oracles

}  // namespace hiercoop
