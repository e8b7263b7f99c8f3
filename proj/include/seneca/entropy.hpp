#pragma once

// Entropy estimators. All map SampleCounts to an entropy in nats.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "seneca/missing_mass.hpp"
#include "seneca/sample.hpp"
#include "seneca/support.hpp"

namespace seneca {

enum class EstimatorKind {
    plugin,
    grassberger,
    james_stein,
    bonachela,
    chao_shen,
    chao_wang_jost,
    seneca,
};

std::string_view to_string(EstimatorKind kind);
std::optional<EstimatorKind> parse_estimator(std::string_view tag);
std::span<const EstimatorKind> all_estimators();

struct EntropyEstimate {
    double value = 0.0;
    EstimatorKind method = EstimatorKind::plugin;
    std::optional<double> coverage;           // chao-shen, seneca
    std::optional<SelfConsistentSolve> solve; // seneca
    std::optional<SupportEstimate> support;   // seneca, after clipping
    bool degenerate_coverage = false;         // seneca coverage < 1e-12; value forced to 0
};

/// Coverage-adjusted Horvitz-Thompson entropy:
///   -sum_u q_u ln q_u / (1 - (1 - q_u)^n),  q_u = coverage * N_u / n.
/// Summands with q_u = 1 contribute 0.
double horvitz_thompson_entropy(const SampleCounts& counts, double coverage);

EntropyEstimate entropy_plugin(const SampleCounts& counts);

/// Horvitz-Thompson entropy with adjusted Good-Turing coverage.
EntropyEstimate entropy_chao_shen(const SampleCounts& counts);

/// Self-consistent missing mass, then Horvitz-Thompson entropy with coverage
/// 1 - m*. The support estimate is clipped to at least observed + 1.
EntropyEstimate entropy_seneca(const SampleCounts& counts,
                               const SupportEstimator& support = default_support_estimator());

/// Evaluates the SENECA entropy for an already solved missing mass.
EntropyEstimate entropy_seneca_from_solve(const SampleCounts& counts,
                                          const SelfConsistentSolve& solve);

/// ln n - (1/n) sum_u N_u G(N_u),
/// G(k) = psi(k) + (-1)^k / 2 * (psi((k + 1) / 2) - psi(k / 2)).
EntropyEstimate entropy_grassberger(const SampleCounts& counts);

/// Plugin entropy of frequencies shrunk toward the uniform distribution over
/// the observed labels. Throws std::invalid_argument when n < 2.
EntropyEstimate entropy_james_stein(const SampleCounts& counts);

/// (1 / (n + 2)) sum_u (N_u + 1) sum_{j = N_u + 2}^{n + 2} 1 / j.
EntropyEstimate entropy_bonachela(const SampleCounts& counts);

/// Two-fingerprint estimator built on phi1 and phi2.
/// Throws std::invalid_argument when n < 2.
EntropyEstimate entropy_chao_wang_jost(const SampleCounts& counts);

struct EstimatorOptions {
    SupportEstimator support = default_support_estimator();
};

EntropyEstimate estimate_entropy(EstimatorKind kind, const SampleCounts& counts,
                                 const EstimatorOptions& opts = {});

}  // namespace seneca
