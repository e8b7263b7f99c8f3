#pragma once

// Ground-truth label-prevalence distributions for simulation, with exact
// entropy and missing-mass oracles and the i.i.d. multinomial sampler.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seneca/rng.hpp"
#include "seneca/sample.hpp"

namespace seneca {

enum class Family {
    uniform,
    step,
    zipf,
    dirichlet,
    beta_binomial,
    empirical,  // prevalences taken from an observed population
};

/// Family tag plus shape parameters. `alpha` is used by zipf, dirichlet and
/// beta-binomial; `beta` only by beta-binomial.
struct FamilySpec {
    Family family = Family::uniform;
    double alpha = 0.0;
    double beta = 0.0;

    /// Stable display label, e.g. "zipf-0.5", "beta-binomial-2-2".
    std::string label() const;
    /// Parameter column, e.g. "alpha=0.5" or "" for parameter-free families.
    std::string params() const;

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view tag);

struct TrueDistribution {
    std::vector<double> probs;
    FamilySpec spec;

    std::size_t support_size() const noexcept { return probs.size(); }
};

/// Validates positivity and normalization (|sum - 1| <= 1e-12) and wraps.
TrueDistribution distribution_from_probs(std::vector<double> probs,
                                         FamilySpec spec = {Family::empirical});

/// Builds a benchmark distribution over `support_size` labels.
///
/// Dirichlet families need `rng` and draw a fresh vector on every call.
/// Throws std::invalid_argument for an odd step support, a missing rng, a
/// non-positive shape parameter, or support_size < 2.
TrueDistribution make_distribution(const FamilySpec& spec, std::size_t support_size,
                                   Rng* rng = nullptr);

/// Shannon entropy in nats.
double true_entropy(const TrueDistribution& dist);

/// A sample together with the distribution index of each counted label,
/// aligned with counts.counts().
struct LabeledSample {
    SampleCounts counts;
    std::vector<std::size_t> labels;
};

/// n i.i.d. draws with replacement (inverse-CDF on uniform01).
LabeledSample sample_labeled(const TrueDistribution& dist, Count n, Rng& rng);

inline SampleCounts sample(const TrueDistribution& dist, Count n, Rng& rng) {
    return sample_labeled(dist, n, rng).counts;
}

/// sum_u p_u (1 - p_u)^n.
double expected_missing_mass(const TrueDistribution& dist, Count n);

/// Probability mass of the labels absent from `observed`. Throws on duplicate
/// or out-of-range indices, or if the index list does not match `counts`.
double realized_missing_mass(const TrueDistribution& dist, const SampleCounts& counts,
                             std::span<const std::size_t> observed);

inline double realized_missing_mass(const TrueDistribution& dist, const LabeledSample& s) {
    return realized_missing_mass(dist, s.counts, s.labels);
}

}  // namespace seneca
