#pragma once

// Missing-mass estimators: Good-Turing, the self-consistency map mu and its
// fixed point, and conversion from a support-size estimate.

#include "seneca/fixed_point.hpp"
#include "seneca/sample.hpp"
#include "seneca/support.hpp"

namespace seneca {

/// phi1 / n. With `adjusted`, (phi1 - 1) / n when every label is a singleton.
double missing_mass_good_turing(const SampleCounts& counts, bool adjusted = false);

/// Self-consistency map for a candidate missing mass m with `upsilon`
/// presumed-unobserved labels:
///
///   (1 - m) sum_u p_u (1 - (1 - m) p_u)^n  +  m (1 - m / max(upsilon, 1))^n
///
/// where p_u = N_u / n over observed labels. The first term is the expected
/// missing mass contributed by observed labels after isotropic shrinkage by
/// (1 - m); the second spreads m evenly over the unobserved labels.
double mu(double m, Count upsilon, const SampleCounts& counts);

/// Starting point of the fixed-point search: (5n - 3) / (8 (n + 1)).
double initial_guess(Count n);

struct SelfConsistentSolve {
    double m_star = 0.0;
    Count upsilon_used = 1;
    double m0 = 0.0;
    double coverage = 1.0;  // 1 - m_star
    int iterations = 0;     // Steffensen steps summed over all attempts
    bool fallback = false;  // every upsilon failed; m_star is adjusted Good-Turing
};

/// Finds m* = mu(m*, upsilon, counts).
///
/// upsilon starts at max(round(support) - observed, 1) and is decremented
/// (floor 1) after each failed attempt; each attempt restarts from
/// initial_guess(n). An attempt succeeds when Steffensen converges inside
/// [0, 1]. If upsilon = 1 also fails, the adjusted Good-Turing estimate
/// clamped to [0, 1 - 1e-9] is returned with fallback = true.
///
/// Single-label samples return m* = 0 directly (mu(0) = 0 there).
SelfConsistentSolve solve_self_consistent(const SampleCounts& counts,
                                          const SupportEstimate& support,
                                          const FixedPointOptions& opts = {});

/// clamp(1 - observed / support, 0, 1).
double missing_mass_from_support(Count observed, const SupportEstimate& support);

}  // namespace seneca
