#pragma once

// Simulation grid: per (family, support size) settings, each evaluated over
// many seeded trials, summarized by RMSE / bias / variance with bootstrap
// intervals, then averaged within sampling regimes.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seneca/distributions.hpp"
#include "seneca/entropy.hpp"
#include "seneca/stats.hpp"

namespace seneca {

struct GridConfig {
    std::vector<FamilySpec> families;
    std::vector<std::size_t> support_sizes;
    Count n = 10;
    int trials = 1000;
    std::vector<EstimatorKind> estimators;
    std::uint64_t master_seed = 0;
    int bootstrap_reps = 1000;
    double confidence = 0.95;
    std::string support_estimator = "chao1-bc";
    unsigned threads = 1;
    bool keep_trials = false;

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;
};

enum class Regime { well, under };
std::string_view to_string(Regime regime);

/// well when support <= n, under otherwise.
Regime regime_of(std::size_t support_size, Count n);
/// support > gamma(n); every support is risky when no gamma exists for n.
bool is_support_risky(std::size_t support_size, Count n);

struct SettingSummary {
    FamilySpec family;
    std::size_t support_size = 0;
    Count n = 0;
    EstimatorKind estimator = EstimatorKind::plugin;
    Regime regime = Regime::well;
    bool support_risky = false;
    int trials = 0;
    double rmse = 0.0;
    double bias = 0.0;
    double variance = 0.0;
    double ci_low = 0.0;   // BCa interval for the RMSE
    double ci_high = 0.0;
};

/// A setting that could not run (e.g. odd support for the step family).
struct SettingError {
    FamilySpec family;
    std::size_t support_size = 0;
    std::string message;
};

struct TrialRecord {
    FamilySpec family;
    std::size_t support_size = 0;
    int trial = 0;
    double truth = 0.0;
    std::vector<double> estimates;  // aligned with GridConfig::estimators
};

struct RegimeSummary {
    FamilySpec family;
    Count n = 0;
    EstimatorKind estimator = EstimatorKind::plugin;
    Regime regime = Regime::well;
    int settings = 0;
    int risky_settings = 0;
    double mean_rmse = 0.0;
    PivotInterval ci;
};

struct GridResult {
    std::vector<SettingSummary> summaries;
    std::vector<RegimeSummary> regimes;
    std::vector<SettingError> errors;
    std::vector<TrialRecord> trials;  // filled when keep_trials
};

/// Runs every (family, support size) setting. Results depend only on the
/// config (never on thread count or scheduling); output order is families,
/// then support sizes, then estimators, as listed in the config.
GridResult run_grid(const GridConfig& config);

/// Unweighted mean RMSE within each regime for summaries sharing n and
/// estimator. Regimes without settings are omitted.
struct RegimeAverage {
    Regime regime = Regime::well;
    int settings = 0;
    int risky_settings = 0;
    double mean_rmse = 0.0;
};
std::vector<RegimeAverage> regime_average(std::span<const SettingSummary> summaries, Count n);

}  // namespace seneca
