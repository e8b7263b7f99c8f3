#include "seneca/distributions.hpp"

#include <algorithm>
#include <boost/random/gamma_distribution.hpp>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace seneca {

namespace {

std::string format_param(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::vector<double> normalized(std::vector<double> w) {
    // long double accumulation keeps the normalization error inside 1e-12.
    long double total = 0.0L;
    for (double x : w) total += x;
    for (double& x : w) x = static_cast<double>(x / total);
    return w;
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be positive");
    }
}

}  // namespace

std::string_view to_string(Family family) {
    switch (family) {
        case Family::uniform: return "uniform";
        case Family::step: return "step";
        case Family::zipf: return "zipf";
        case Family::dirichlet: return "dirichlet";
        case Family::beta_binomial: return "beta-binomial";
        case Family::empirical: return "empirical";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view tag) {
    for (auto f : {Family::uniform, Family::step, Family::zipf, Family::dirichlet,
                   Family::beta_binomial, Family::empirical}) {
        if (tag == to_string(f)) return f;
    }
    return std::nullopt;
}

std::string FamilySpec::label() const {
    std::string name(to_string(family));
    switch (family) {
        case Family::zipf:
        case Family::dirichlet: return name + "-" + format_param(alpha);
        case Family::beta_binomial:
            return name + "-" + format_param(alpha) + "-" + format_param(beta);
        default: return name;
    }
}

std::string FamilySpec::params() const {
    switch (family) {
        case Family::zipf:
        case Family::dirichlet: return "alpha=" + format_param(alpha);
        case Family::beta_binomial:
            return "alpha=" + format_param(alpha) + ";beta=" + format_param(beta);
        default: return "";
    }
}

TrueDistribution distribution_from_probs(std::vector<double> probs, FamilySpec spec) {
    if (probs.empty()) throw std::invalid_argument("distribution has no labels");
    long double total = 0.0L;
    for (double p : probs) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument("probabilities must be positive and finite");
        }
        total += p;
    }
    if (std::fabs(static_cast<double>(total - 1.0L)) > 1e-12) {
        throw std::invalid_argument("probabilities must sum to 1");
    }
    return {std::move(probs), spec};
}

TrueDistribution make_distribution(const FamilySpec& spec, std::size_t support_size, Rng* rng) {
    if (support_size < 2) throw std::invalid_argument("support size must be at least 2");
    const auto k = support_size;
    std::vector<double> w(k);

    switch (spec.family) {
        case Family::uniform:
            std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(k));
            return {std::move(w), spec};

        case Family::step: {
            if (k % 2 != 0) throw std::invalid_argument("step family needs an even support size");
            const double low = 1.0 / (2.0 * static_cast<double>(k));
            for (std::size_t u = 0; u < k; ++u) w[u] = u < k / 2 ? low : 3.0 * low;
            return {std::move(w), spec};
        }

        case Family::zipf:
            require_positive(spec.alpha, "zipf alpha");
            for (std::size_t u = 0; u < k; ++u) {
                w[u] = std::pow(static_cast<double>(u + 1), -spec.alpha);
            }
            return {normalized(std::move(w)), spec};

        case Family::dirichlet: {
            require_positive(spec.alpha, "dirichlet alpha");
            if (rng == nullptr) throw std::invalid_argument("dirichlet family needs a random stream");
            boost::random::gamma_distribution<double> gamma(spec.alpha, 1.0);
            // A zero gamma variate (underflow) would violate p_u > 0; redraw.
            do {
                for (auto& x : w) x = gamma(*rng);
            } while (std::any_of(w.begin(), w.end(), [](double x) { return !(x > 0.0); }));
            return {normalized(std::move(w)), spec};
        }

        case Family::beta_binomial: {
            require_positive(spec.alpha, "beta-binomial alpha");
            require_positive(spec.beta, "beta-binomial beta");
            // t = k - 1 trials so the outcome set {0..t} has exactly k labels.
            const double t = static_cast<double>(k - 1);
            const double log_norm = std::lgamma(spec.alpha) + std::lgamma(spec.beta) -
                                    std::lgamma(spec.alpha + spec.beta);
            for (std::size_t u = 0; u < k; ++u) {
                const double x = static_cast<double>(u);
                const double log_choose =
                    std::lgamma(t + 1.0) - std::lgamma(x + 1.0) - std::lgamma(t - x + 1.0);
                const double log_beta = std::lgamma(x + spec.alpha) +
                                        std::lgamma(t - x + spec.beta) -
                                        std::lgamma(t + spec.alpha + spec.beta);
                w[u] = std::exp(log_choose + log_beta - log_norm);
            }
            return {normalized(std::move(w)), spec};
        }

        case Family::empirical:
            throw std::invalid_argument("empirical distributions come from a population");
    }
    throw std::invalid_argument("unknown family");
}

double true_entropy(const TrueDistribution& dist) {
    double h = 0.0;
    for (double p : dist.probs) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

LabeledSample sample_labeled(const TrueDistribution& dist, Count n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample size must be positive");
    std::vector<double> cdf(dist.probs.size());
    std::partial_sum(dist.probs.begin(), dist.probs.end(), cdf.begin());

    std::vector<std::size_t> draws(static_cast<std::size_t>(n));
    const auto last = cdf.size() - 1;
    for (auto& d : draws) {
        // Scale by the realized total so rounding in the cumulative sum can
        // never push a draw past the last label.
        const double x = uniform01(rng) * cdf.back();
        d = std::min<std::size_t>(
            static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), x) - cdf.begin()),
            last);
    }
    auto tallied = tally_labels(std::span<const std::size_t>(draws));
    return {std::move(tallied.counts), std::move(tallied.labels)};
}

double expected_missing_mass(const TrueDistribution& dist, Count n) {
    if (n < 0) throw std::invalid_argument("sample size must be non-negative");
    double total = 0.0;
    for (double p : dist.probs) {
        total += p * std::pow(1.0 - p, static_cast<double>(n));
    }
    return std::clamp(total, 0.0, 1.0);
}

double realized_missing_mass(const TrueDistribution& dist, const SampleCounts& counts,
                             std::span<const std::size_t> observed) {
    if (observed.size() != counts.observed_support()) {
        throw std::invalid_argument("label map does not match the sample's observed support");
    }
    std::vector<bool> seen(dist.probs.size(), false);
    for (auto idx : observed) {
        if (idx >= dist.probs.size()) throw std::invalid_argument("label index out of range");
        if (seen[idx]) throw std::invalid_argument("duplicate label index");
        seen[idx] = true;
    }
    double missing = 0.0;
    for (std::size_t u = 0; u < seen.size(); ++u) {
        if (!seen[u]) missing += dist.probs[u];
    }
    return std::clamp(missing, 0.0, 1.0);
}

}  // namespace seneca
