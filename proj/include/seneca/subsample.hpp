#pragma once

// Benchmarking against finite populations: the population's empirical
// prevalences are the truth, and samples are drawn from it with replacement.

#include <string>
#include <vector>

#include "seneca/borda.hpp"
#include "seneca/entropy.hpp"
#include "seneca/sample.hpp"

namespace seneca {

struct SubsampleConfig {
    std::vector<Count> sample_sizes;
    int trials = 1000;
    std::vector<EstimatorKind> estimators;
    std::uint64_t master_seed = 0;
    std::string support_estimator = "chao1-bc";
    unsigned threads = 1;
};

struct SubsampleSummary {
    std::string population;
    Count population_size = 0;
    std::size_t population_support = 0;
    double true_entropy = 0.0;
    Count n = 0;
    EstimatorKind estimator = EstimatorKind::plugin;
    int trials = 0;
    double rmse = 0.0;
    double bias = 0.0;
    double variance = 0.0;
};

struct SubsampleResult {
    std::vector<SubsampleSummary> summaries;  // sample sizes, then estimators, in config order
    std::vector<Ballot> ballots;              // one per sample size
};

/// Random streams are keyed on the population's counts (not its name), so
/// identical populations produce identical rows.
SubsampleResult subsample_bench(const SampleCounts& population, const std::string& population_id,
                                const SubsampleConfig& config);

}  // namespace seneca
