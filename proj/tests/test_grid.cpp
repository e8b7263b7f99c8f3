#include <gtest/gtest.h>

#include <cmath>

#include "seneca/grid.hpp"

using namespace seneca;

namespace {

GridConfig small_config() {
    GridConfig c;
    c.families = {{Family::uniform}, {Family::zipf, 1.0}, {Family::dirichlet, 0.5}};
    c.support_sizes = {4, 20};
    c.n = 10;
    c.trials = 40;
    c.estimators.assign(all_estimators().begin(), all_estimators().end());
    c.master_seed = 11;
    c.bootstrap_reps = 50;
    c.keep_trials = true;
    return c;
}

bool same(const SettingSummary& a, const SettingSummary& b) {
    return a.family == b.family && a.support_size == b.support_size && a.estimator == b.estimator &&
           a.rmse == b.rmse && a.bias == b.bias && a.variance == b.variance && a.ci_low == b.ci_low &&
           a.ci_high == b.ci_high;
}

}  // namespace

TEST(Grid, SingleTrialRmseIsAbsoluteError) {
    GridConfig c;
    c.families = {{Family::uniform}};
    c.support_sizes = {2};
    c.trials = 1;
    c.estimators = {EstimatorKind::plugin};
    c.master_seed = 5;
    c.bootstrap_reps = 10;
    c.keep_trials = true;
    const auto r = run_grid(c);
    ASSERT_EQ(r.summaries.size(), 1u);
    ASSERT_EQ(r.trials.size(), 1u);
    EXPECT_DOUBLE_EQ(r.summaries[0].rmse, std::abs(r.trials[0].estimates[0] - std::log(2.0)));
    EXPECT_DOUBLE_EQ(r.trials[0].truth, std::log(2.0));
}

TEST(Grid, ThreadCountDoesNotChangeResults) {
    auto c = small_config();
    c.threads = 1;
    const auto a = run_grid(c);
    c.threads = 8;
    const auto b = run_grid(c);
    ASSERT_EQ(a.summaries.size(), b.summaries.size());
    for (std::size_t i = 0; i < a.summaries.size(); ++i) EXPECT_TRUE(same(a.summaries[i], b.summaries[i]));
    ASSERT_EQ(a.regimes.size(), b.regimes.size());
    for (std::size_t i = 0; i < a.regimes.size(); ++i) {
        EXPECT_EQ(a.regimes[i].ci.low, b.regimes[i].ci.low);
        EXPECT_EQ(a.regimes[i].ci.high, b.regimes[i].ci.high);
    }
}

TEST(Grid, CanonicalOrderAndInvariants) {
    const auto c = small_config();
    const auto r = run_grid(c);
    ASSERT_EQ(r.summaries.size(), 3u * 2u * 7u);
    EXPECT_EQ(r.summaries[0].family, c.families[0]);
    EXPECT_EQ(r.summaries[0].support_size, 4u);
    EXPECT_EQ(r.summaries[7].support_size, 20u);
    for (const auto& s : r.summaries) {
        EXPECT_LE(std::abs(s.rmse * s.rmse - (s.bias * s.bias + s.variance)), 1e-9 * std::max(1.0, s.rmse * s.rmse));
        EXPECT_LE(s.ci_low, s.ci_high);
        EXPECT_EQ(s.trials, c.trials);
        EXPECT_EQ(s.regime, s.support_size <= 10 ? Regime::well : Regime::under);
    }
}

TEST(Grid, DirichletTruthVariesPerTrial) {
    const auto r = run_grid(small_config());
    double first = -1.0;
    bool varied = false;
    for (const auto& t : r.trials) {
        if (t.family.family != Family::dirichlet || t.support_size != 20) continue;
        if (first < 0) first = t.truth;
        else if (t.truth != first) varied = true;
    }
    EXPECT_TRUE(varied);
}

TEST(Grid, OddStepSupportBecomesSettingError) {
    GridConfig c;
    c.families = {{Family::step}};
    c.support_sizes = {3, 4};
    c.trials = 5;
    c.estimators = {EstimatorKind::plugin};
    c.bootstrap_reps = 10;
    const auto r = run_grid(c);
    ASSERT_EQ(r.errors.size(), 1u);
    EXPECT_EQ(r.errors[0].support_size, 3u);
    ASSERT_EQ(r.summaries.size(), 1u);
    EXPECT_EQ(r.summaries[0].support_size, 4u);
}

TEST(Grid, ConfigValidation) {
    GridConfig c = small_config();
    c.trials = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config();
    c.support_sizes.clear();
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config();
    c.estimators.clear();
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config();
    c.support_estimator = "rwc";
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Regimes, ClassificationAndRisk) {
    EXPECT_EQ(regime_of(10, 10), Regime::well);
    EXPECT_EQ(regime_of(11, 10), Regime::under);
    EXPECT_TRUE(is_support_risky(50, 10));
    EXPECT_FALSE(is_support_risky(35, 10));
    EXPECT_TRUE(is_support_risky(2, 2));
    for (Count n = 3; n <= 60; ++n) {
        for (std::size_t k = 2; k <= 300; ++k) {
            if (is_support_risky(k, n)) EXPECT_EQ(regime_of(k, n), Regime::under);
        }
    }
}

TEST(Regimes, AverageSplitsWellAndUnder) {
    std::vector<SettingSummary> s;
    const std::vector<std::size_t> ks{2, 4, 6, 8, 10, 20, 30, 40, 50};
    for (std::size_t i = 0; i < ks.size(); ++i) {
        SettingSummary x;
        x.support_size = ks[i];
        x.n = 10;
        x.rmse = static_cast<double>(i);
        s.push_back(x);
    }
    const auto avg = regime_average(s, 10);
    ASSERT_EQ(avg.size(), 2u);
    EXPECT_EQ(avg[0].regime, Regime::well);
    EXPECT_EQ(avg[0].settings, 5);
    EXPECT_DOUBLE_EQ(avg[0].mean_rmse, 2.0);
    EXPECT_EQ(avg[1].regime, Regime::under);
    EXPECT_EQ(avg[1].settings, 4);
    EXPECT_EQ(avg[1].risky_settings, 2);  // 40 and 50 exceed gamma(10) = 35
    EXPECT_DOUBLE_EQ(avg[1].mean_rmse, 6.5);

    const auto single = regime_average(std::span(s).subspan(8, 1), 10);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].regime, Regime::under);
    EXPECT_EQ(single[0].risky_settings, 1);

    const auto well_only = regime_average(std::span(s).first(5), 10);
    ASSERT_EQ(well_only.size(), 1u);
    EXPECT_EQ(well_only[0].regime, Regime::well);
}
