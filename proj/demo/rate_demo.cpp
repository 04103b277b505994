// Prints single-stage and optimized hierarchical sum-rates at alpha = 3 for a
// few network sizes.

#include <cstdio>

#include "hiercoop/hierarchy.hpp"
#include "hiercoop/single_stage.hpp"

int main() {
  using namespace hiercoop;
  std::printf("%12s %12s %6s %14s %14s\n", "n", "single", "t", "conventional", "enhanced");
  for (std::uint64_t n : {100ULL, 10000ULL, 1000000ULL, 100000000ULL}) {
    const NetworkConfig cfg = NetworkConfig::make(n, 3.0, kDefaultSnrMax);
    const double single = sum_rate_single(cfg).report.sum_rate;
    const HierarchyResult conv = best_hierarchical_report(cfg, Scheme::ConventionalHierarchy);
    const HierarchyResult enh = best_hierarchical_report(cfg, Scheme::EnhancedHierarchy);
    std::printf("%12llu %12.4g %6d %14.4g %14.4g\n", static_cast<unsigned long long>(n), single,
                enh.plan.t, conv.report.sum_rate, enh.report.sum_rate);
  }
}
