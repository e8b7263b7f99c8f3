#include "seneca/grid.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "seneca/parallel.hpp"
#include "seneca/support.hpp"

namespace seneca {

namespace {

bool needs_two_draws(EstimatorKind k) {
    return k == EstimatorKind::james_stein || k == EstimatorKind::chao_wang_jost;
}

// Trial-level errors for one setting, one row per estimator.
struct SettingRun {
    FamilySpec family;
    std::size_t support_size = 0;
    std::vector<std::vector<double>> errors;
    std::vector<double> truths;
    std::vector<std::vector<double>> estimates;
};

SettingRun run_setting(const GridConfig& cfg, const FamilySpec& family, std::size_t k,
                       const EstimatorOptions& opts) {
    const std::string label = family.label();
    const auto trials = static_cast<std::size_t>(cfg.trials);
    const auto kinds = cfg.estimators.size();

    std::optional<TrueDistribution> fixed;
    if (family.family != Family::dirichlet) fixed = make_distribution(family, k);

    SettingRun run{family, k, std::vector<std::vector<double>>(kinds, std::vector<double>(trials)),
                   std::vector<double>(trials),
                   std::vector<std::vector<double>>(kinds, std::vector<double>(trials))};

    parallel_for(trials, cfg.threads, [&](std::size_t t) {
        const StreamKey key{cfg.master_seed, label, k, t, "sample"};
        std::optional<TrueDistribution> drawn;
        if (!fixed) {
            auto dir_rng = make_stream({cfg.master_seed, label, k, t, "dirichlet"});
            drawn = make_distribution(family, k, &dir_rng);
        }
        const TrueDistribution& dist = fixed ? *fixed : *drawn;
        auto rng = make_stream(key);
        const auto counts = sample(dist, cfg.n, rng);
        const double truth = true_entropy(dist);
        run.truths[t] = truth;
        for (std::size_t e = 0; e < kinds; ++e) {
            const double v = estimate_entropy(cfg.estimators[e], counts, opts).value;
            run.estimates[e][t] = v;
            run.errors[e][t] = v - truth;
        }
    });
    return run;
}

const Statistic& rms_statistic() {
    static const Statistic stat = [](std::span<const double> e) { return root_mean_square(e); };
    return stat;
}

}  // namespace

std::string_view to_string(Regime regime) {
    return regime == Regime::well ? "well" : "under";
}

Regime regime_of(std::size_t support_size, Count n) {
    return static_cast<Count>(support_size) <= n ? Regime::well : Regime::under;
}

bool is_support_risky(std::size_t support_size, Count n) {
    const auto gamma = support_risky_threshold(n);
    return !gamma || static_cast<Count>(support_size) > *gamma;
}

void GridConfig::validate() const {
    if (families.empty()) throw std::invalid_argument("config: no families");
    if (support_sizes.empty()) throw std::invalid_argument("config: no support sizes");
    if (estimators.empty()) throw std::invalid_argument("config: no estimators");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (n < 2 && std::any_of(estimators.begin(), estimators.end(), needs_two_draws)) {
        throw std::invalid_argument("config: james-stein and chao-wang-jost need n >= 2");
    }
    if (bootstrap_reps < 1) throw std::invalid_argument("config: bootstrap_reps must be >= 1");
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument("config: confidence must be in (0, 1)");
    }
    if (!support_estimator_by_name(support_estimator)) {
        throw std::invalid_argument("config: unknown support estimator '" + support_estimator + "'");
    }
    for (auto k : support_sizes) {
        if (k < 2) throw std::invalid_argument("config: support sizes must be >= 2");
    }
}

GridResult run_grid(const GridConfig& cfg) {
    cfg.validate();
    const EstimatorOptions opts{support_estimator_by_name(cfg.support_estimator)};
    const auto kinds = cfg.estimators.size();
    const std::size_t trials = static_cast<std::size_t>(cfg.trials);

    GridResult result;
    std::vector<SettingRun> runs;
    for (const auto& family : cfg.families) {
        for (auto k : cfg.support_sizes) {
            try {
                runs.push_back(run_setting(cfg, family, k, opts));
            } catch (const std::invalid_argument& e) {
                result.errors.push_back({family, k, e.what()});
            }
        }
    }

    // Per-setting statistics and BCa intervals, one work item per
    // (setting, estimator) pair.
    result.summaries.resize(runs.size() * kinds);
    parallel_for(result.summaries.size(), cfg.threads, [&](std::size_t item) {
        const auto& run = runs[item / kinds];
        const auto e = item % kinds;
        const auto& errs = run.errors[e];
        const auto stats = error_stats(run.estimates[e], run.truths);

        SettingSummary s;
        s.family = run.family;
        s.support_size = run.support_size;
        s.n = cfg.n;
        s.estimator = cfg.estimators[e];
        s.regime = regime_of(run.support_size, cfg.n);
        s.support_risky = is_support_risky(run.support_size, cfg.n);
        s.trials = cfg.trials;
        s.rmse = stats.rmse;
        s.bias = stats.bias;
        s.variance = stats.variance;
        s.ci_low = s.ci_high = stats.rmse;
        if (trials >= 2) {
            const std::string purpose = "bca:" + std::string(to_string(s.estimator));
            auto rng = make_stream({cfg.master_seed, run.family.label(), run.support_size, 0, purpose});
            const auto ci = bootstrap_bca(errs, rms_statistic(), cfg.bootstrap_reps,
                                          cfg.confidence, rng);
            s.ci_low = ci.low;
            s.ci_high = ci.high;
        }
        result.summaries[item] = s;
    });

    // Regime means with pivot intervals: resample trial errors within each
    // setting, recompute the regime mean per replicate.
    struct RegimeGroup {
        FamilySpec family;
        Regime regime;
        std::size_t estimator;
        std::vector<std::size_t> runs;
    };
    std::vector<RegimeGroup> groups;
    for (const auto& family : cfg.families) {
        for (auto regime : {Regime::well, Regime::under}) {
            std::vector<std::size_t> members;
            for (std::size_t r = 0; r < runs.size(); ++r) {
                if (runs[r].family == family && regime_of(runs[r].support_size, cfg.n) == regime) {
                    members.push_back(r);
                }
            }
            if (members.empty()) continue;
            for (std::size_t e = 0; e < kinds; ++e) groups.push_back({family, regime, e, members});
        }
    }
    result.regimes.resize(groups.size());
    parallel_for(groups.size(), cfg.threads, [&](std::size_t g) {
        const auto& group = groups[g];
        RegimeSummary out;
        out.family = group.family;
        out.n = cfg.n;
        out.estimator = cfg.estimators[group.estimator];
        out.regime = group.regime;
        out.settings = static_cast<int>(group.runs.size());
        double total = 0.0;
        for (auto r : group.runs) {
            total += root_mean_square(runs[r].errors[group.estimator]);
            out.risky_settings += is_support_risky(runs[r].support_size, cfg.n) ? 1 : 0;
        }
        out.mean_rmse = total / static_cast<double>(group.runs.size());

        const std::string purpose = "pivot:" + std::string(to_string(out.estimator)) + ":" +
                                    std::string(to_string(group.regime));
        auto rng = make_stream({cfg.master_seed, group.family.label(), 0, 0, purpose});
        std::vector<double> replicates(static_cast<std::size_t>(cfg.bootstrap_reps));
        std::vector<double> resample(trials);
        for (auto& rep : replicates) {
            double sum = 0.0;
            for (auto r : group.runs) {
                const auto& errs = runs[r].errors[group.estimator];
                for (auto& x : resample) x = errs[uniform_index(rng, trials)];
                sum += root_mean_square(resample);
            }
            rep = sum / static_cast<double>(group.runs.size());
        }
        out.ci = pivot_interval(out.mean_rmse, std::move(replicates), cfg.confidence);
        result.regimes[g] = out;
    });

    if (cfg.keep_trials) {
        for (const auto& run : runs) {
            for (std::size_t t = 0; t < trials; ++t) {
                TrialRecord rec{run.family, run.support_size, static_cast<int>(t), run.truths[t], {}};
                rec.estimates.reserve(kinds);
                for (std::size_t e = 0; e < kinds; ++e) rec.estimates.push_back(run.estimates[e][t]);
                result.trials.push_back(std::move(rec));
            }
        }
    }
    return result;
}

std::vector<RegimeAverage> regime_average(std::span<const SettingSummary> summaries, Count n) {
    std::vector<RegimeAverage> out;
    for (auto regime : {Regime::well, Regime::under}) {
        RegimeAverage avg{regime};
        double total = 0.0;
        for (const auto& s : summaries) {
            if (s.n != n) throw std::invalid_argument("regime_average: summaries differ in n");
            if (s.estimator != summaries.front().estimator) {
                throw std::invalid_argument("regime_average: summaries differ in estimator");
            }
            if (regime_of(s.support_size, n) != regime) continue;
            ++avg.settings;
            avg.risky_settings += is_support_risky(s.support_size, n) ? 1 : 0;
            total += s.rmse;
        }
        if (avg.settings == 0) continue;
        avg.mean_rmse = total / avg.settings;
        out.push_back(avg);
    }
    return out;
}

}  // namespace seneca
