#include "seneca/support.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seneca {

std::string_view to_string(SupportMethod method) {
    switch (method) {
        case SupportMethod::chao1: return "chao1";
        case SupportMethod::chao1_bias_corrected: return "chao1-bc";
        case SupportMethod::chao1_rerouted: return "chao1(rerouted:chao1-bc)";
        case SupportMethod::from_missing_mass: return "from-missing-mass";
        case SupportMethod::fixed: return "fixed";
    }
    return "unknown";
}

namespace {

double bias_corrected_term(double f1, double f2) {
    return f1 * (f1 - 1.0) / (2.0 * (f2 + 1.0));
}

}  // namespace

SupportEstimate support_chao1(const Fingerprint& fp, Count observed) {
    const auto f1 = static_cast<double>(fp.singletons());
    const auto f2 = static_cast<double>(fp.doubletons());
    const auto s_obs = static_cast<double>(observed);
    if (f1 == 0.0) return {s_obs, SupportMethod::chao1};
    if (f2 == 0.0) return {s_obs + bias_corrected_term(f1, f2), SupportMethod::chao1_rerouted};
    return {s_obs + f1 * f1 / (2.0 * f2), SupportMethod::chao1};
}

SupportEstimate support_chao1_bc(const Fingerprint& fp, Count observed) {
    const auto f1 = static_cast<double>(fp.singletons());
    const auto f2 = static_cast<double>(fp.doubletons());
    return {static_cast<double>(observed) + bias_corrected_term(f1, f2),
            SupportMethod::chao1_bias_corrected};
}

SupportEstimate support_from_missing_mass(Count observed, double m) {
    if (!(m < 1.0)) throw std::domain_error("total missing mass");
    if (m < 0.0) throw std::domain_error("negative missing mass");
    return {static_cast<double>(observed) / (1.0 - m), SupportMethod::from_missing_mass};
}

std::optional<Count> support_risky_threshold(Count n) {
    if (n < 1) throw std::invalid_argument("sample size must be positive");
    // gamma / ln(gamma) is increasing for gamma >= 3, so beyond this bound no
    // larger gamma can satisfy the condition.
    const auto log_factor = static_cast<Count>(std::ceil(std::log(std::max<double>(n, 3))));
    const Count upper = std::max<Count>(n * log_factor * 4, 3);
    std::optional<Count> best;
    const auto nd = static_cast<double>(n);
    for (Count g = 2; g <= upper; ++g) {
        const auto gd = static_cast<double>(g);
        if (nd > gd / std::log(gd)) best = g;
    }
    return best;
}

SupportEstimate clip_support(SupportEstimate estimate, Count observed) {
    estimate.value = std::max(estimate.value, static_cast<double>(observed) + 1.0);
    return estimate;
}

SupportEstimator support_estimator_by_name(std::string_view tag) {
    if (tag == "chao1") return support_chao1;
    if (tag == "chao1-bc") return support_chao1_bc;
    return {};
}

}  // namespace seneca
