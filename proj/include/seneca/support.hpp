#pragma once

// Support-size estimation: Chao1 variants, conversion from a missing-mass
// estimate, and the support-risky threshold.

#include <functional>
#include <optional>
#include <string_view>

#include "seneca/sample.hpp"

namespace seneca {

enum class SupportMethod {
    chao1,
    chao1_bias_corrected,
    chao1_rerouted,  // chao1 with phi2 = 0 and phi1 > 0, evaluated as chao1_bias_corrected
    from_missing_mass,
    fixed,           // caller-supplied value (e.g. the true support in simulations)
};

std::string_view to_string(SupportMethod method);

struct SupportEstimate {
    double value = 0.0;
    SupportMethod method = SupportMethod::fixed;
};

/// Pluggable support estimator: fingerprint and observed support -> estimate.
using SupportEstimator = std::function<SupportEstimate(const Fingerprint&, Count observed)>;

/// observed + phi1^2 / (2 phi2). Reroutes to the bias-corrected form when
/// phi2 = 0 and phi1 > 0 (method tag chao1_rerouted).
SupportEstimate support_chao1(const Fingerprint& fp, Count observed);

/// observed + phi1 (phi1 - 1) / (2 (phi2 + 1)). Always finite.
SupportEstimate support_chao1_bc(const Fingerprint& fp, Count observed);

/// observed / (1 - m). Throws std::domain_error("total missing mass") if m >= 1.
SupportEstimate support_from_missing_mass(Count observed, double m);

/// Largest integer gamma >= 2 with n > gamma / ln(gamma), or nullopt when no
/// gamma qualifies (n <= e).
std::optional<Count> support_risky_threshold(Count n);

/// Raises the estimate to at least observed + 1 so that at least one label is
/// presumed unobserved.
SupportEstimate clip_support(SupportEstimate estimate, Count observed);

/// Registry lookup by CLI tag ("chao1", "chao1-bc"). Returns an empty
/// function for unknown tags.
SupportEstimator support_estimator_by_name(std::string_view tag);

inline SupportEstimator default_support_estimator() { return support_chao1_bc; }

}  // namespace seneca
