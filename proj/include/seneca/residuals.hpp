#pragma once

// Residuals of three ways of approximating the expected missing mass
// sum_u p_u (1 - p_u)^n from a single sample:
//   oracle           mu(M(X), |U|, X) with the realized missing mass and the
//                    true number of unobserved labels
//   known_support    self-consistent fixed point with the true support size
//   estimated_support  self-consistent fixed point with an estimated support

#include <string>
#include <vector>

#include "seneca/distributions.hpp"

namespace seneca {

struct ResidualConfig {
    std::vector<FamilySpec> families;
    std::vector<std::size_t> support_sizes;
    Count n = 10;
    int trials = 1000;
    std::uint64_t master_seed = 0;
    std::string support_estimator = "chao1-bc";
    unsigned threads = 1;
};

struct ResidualRecord {
    FamilySpec family;
    std::size_t support_size = 0;
    int trial = 0;
    double expected = 0.0;  // expected missing mass
    double oracle = 0.0;    // residuals: mode value - expected
    double known_support = 0.0;
    double estimated_support = 0.0;
    bool known_fallback = false;
    bool estimated_fallback = false;
};

/// Settings that fail to construct (e.g. odd step support) are skipped.
std::vector<ResidualRecord> oracle_residual_scenario(const ResidualConfig& config);

/// Residuals for one fixed distribution. `stream_label` keys the random
/// streams in place of the family label.
std::vector<ResidualRecord> residuals_for_distribution(const TrueDistribution& dist, Count n,
                                                       int trials, std::uint64_t master_seed,
                                                       const std::string& support_estimator,
                                                       const std::string& stream_label,
                                                       unsigned threads = 1);

}  // namespace seneca
