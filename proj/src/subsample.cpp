#include "seneca/subsample.hpp"

#include <cstdio>
#include <stdexcept>

#include "seneca/distributions.hpp"
#include "seneca/parallel.hpp"
#include "seneca/stats.hpp"

namespace seneca {

namespace {

std::string population_key(const SampleCounts& population) {
    std::string bytes;
    for (auto c : population.counts()) {
        bytes += std::to_string(c);
        bytes += ',';
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return std::string("population:") + hex;
}

}  // namespace

SubsampleResult subsample_bench(const SampleCounts& population, const std::string& population_id,
                                const SubsampleConfig& cfg) {
    if (cfg.sample_sizes.empty()) throw std::invalid_argument("no sample sizes");
    if (cfg.estimators.empty()) throw std::invalid_argument("no estimators");
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    const auto support = support_estimator_by_name(cfg.support_estimator);
    if (!support) throw std::invalid_argument("unknown support estimator '" + cfg.support_estimator + "'");

    const auto total = static_cast<double>(population.n());
    std::vector<double> probs;
    for (auto c : population.counts()) probs.push_back(static_cast<double>(c) / total);
    const TrueDistribution dist{std::move(probs), FamilySpec{Family::empirical}};
    const double truth = entropy_plugin(population).value;
    const std::string key = population_key(population);
    const EstimatorOptions opts{support};
    const auto trials = static_cast<std::size_t>(cfg.trials);
    const auto kinds = cfg.estimators.size();

    SubsampleResult result;
    for (auto n : cfg.sample_sizes) {
        if (n < 1) throw std::invalid_argument("sample sizes must be >= 1");
        std::vector<std::vector<double>> estimates(kinds, std::vector<double>(trials));
        parallel_for(trials, cfg.threads, [&](std::size_t t) {
            auto rng = make_stream({cfg.master_seed, key, static_cast<std::uint64_t>(n), t, "subsample"});
            const auto counts = sample(dist, n, rng);
            for (std::size_t e = 0; e < kinds; ++e) {
                estimates[e][t] = estimate_entropy(cfg.estimators[e], counts, opts).value;
            }
        });

        const std::vector<double> truths(trials, truth);
        std::vector<std::pair<std::string, double>> scores;
        for (std::size_t e = 0; e < kinds; ++e) {
            const auto stats = error_stats(estimates[e], truths);
            result.summaries.push_back({population_id, population.n(), population.observed_support(),
                                        truth, n, cfg.estimators[e], cfg.trials, stats.rmse,
                                        stats.bias, stats.variance});
            scores.emplace_back(std::string(to_string(cfg.estimators[e])), stats.rmse);
        }
        result.ballots.push_back(make_ballot(population_id, n, std::move(scores)));
    }
    return result;
}

}  // namespace seneca
