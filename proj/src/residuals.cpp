#include "seneca/residuals.hpp"

#include <optional>
#include <stdexcept>

#include "seneca/missing_mass.hpp"
#include "seneca/parallel.hpp"
#include "seneca/support.hpp"

namespace seneca {

namespace {

ResidualRecord residual_trial(const TrueDistribution& dist, Count n, Rng& rng,
                              const SupportEstimator& support) {
    const auto s = sample_labeled(dist, n, rng);
    const auto observed = static_cast<Count>(s.counts.observed_support());
    const auto k = static_cast<Count>(dist.support_size());

    ResidualRecord rec;
    rec.family = dist.spec;
    rec.support_size = dist.support_size();
    rec.expected = expected_missing_mass(dist, n);

    const double realized = realized_missing_mass(dist, s);
    rec.oracle = mu(realized, k - observed, s.counts) - rec.expected;

    const auto known = solve_self_consistent(
        s.counts, SupportEstimate{static_cast<double>(k), SupportMethod::fixed});
    rec.known_support = known.m_star - rec.expected;
    rec.known_fallback = known.fallback;

    const auto s_hat = clip_support(support(Fingerprint(s.counts), observed), observed);
    const auto estimated = solve_self_consistent(s.counts, s_hat);
    rec.estimated_support = estimated.m_star - rec.expected;
    rec.estimated_fallback = estimated.fallback;
    return rec;
}

}  // namespace

std::vector<ResidualRecord> residuals_for_distribution(const TrueDistribution& dist, Count n,
                                                       int trials, std::uint64_t master_seed,
                                                       const std::string& support_estimator,
                                                       const std::string& stream_label,
                                                       unsigned threads) {
    const auto support = support_estimator_by_name(support_estimator);
    if (!support) throw std::invalid_argument("unknown support estimator '" + support_estimator + "'");
    std::vector<ResidualRecord> out(static_cast<std::size_t>(trials));
    parallel_for(out.size(), threads, [&](std::size_t t) {
        auto rng = make_stream({master_seed, stream_label, dist.support_size(), t, "sample"});
        out[t] = residual_trial(dist, n, rng, support);
        out[t].trial = static_cast<int>(t);
    });
    return out;
}

std::vector<ResidualRecord> oracle_residual_scenario(const ResidualConfig& cfg) {
    const auto support = support_estimator_by_name(cfg.support_estimator);
    if (!support) throw std::invalid_argument("unknown support estimator '" + cfg.support_estimator + "'");
    std::vector<ResidualRecord> out;
    for (const auto& family : cfg.families) {
        const std::string label = family.label();
        for (auto k : cfg.support_sizes) {
            std::optional<TrueDistribution> fixed;
            try {
                if (family.family != Family::dirichlet) fixed = make_distribution(family, k);
            } catch (const std::invalid_argument&) {
                continue;
            }
            std::vector<ResidualRecord> block(static_cast<std::size_t>(cfg.trials));
            parallel_for(block.size(), cfg.threads, [&](std::size_t t) {
                std::optional<TrueDistribution> drawn;
                if (!fixed) {
                    auto dir_rng = make_stream({cfg.master_seed, label, k, t, "dirichlet"});
                    drawn = make_distribution(family, k, &dir_rng);
                }
                auto rng = make_stream({cfg.master_seed, label, k, t, "sample"});
                block[t] = residual_trial(fixed ? *fixed : *drawn, cfg.n, rng, support);
                block[t].trial = static_cast<int>(t);
            });
            out.insert(out.end(), block.begin(), block.end());
        }
    }
    return out;
}

}  // namespace seneca
