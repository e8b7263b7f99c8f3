#include <gtest/gtest.h>

#include <cmath>

#include "seneca/subsample.hpp"

using namespace seneca;

namespace {

SubsampleConfig config(std::vector<Count> sizes, int trials) {
    SubsampleConfig c;
    c.sample_sizes = std::move(sizes);
    c.trials = trials;
    c.estimators.assign(all_estimators().begin(), all_estimators().end());
    c.master_seed = 3;
    return c;
}

double rmse_of(const SubsampleResult& r, EstimatorKind k, Count n) {
    for (const auto& s : r.summaries) {
        if (s.estimator == k && s.n == n) return s.rmse;
    }
    return NAN;
}

}  // namespace

TEST(Subsample, SingleSpeciesPopulation) {
    const auto r = subsample_bench(SampleCounts({40}), "mono", config({10}, 50));
    EXPECT_EQ(rmse_of(r, EstimatorKind::plugin, 10), 0.0);
    EXPECT_EQ(rmse_of(r, EstimatorKind::chao_shen, 10), 0.0);
    EXPECT_EQ(rmse_of(r, EstimatorKind::seneca, 10), 0.0);
    EXPECT_GT(rmse_of(r, EstimatorKind::bonachela, 10), 0.0);
    ASSERT_EQ(r.ballots.size(), 1u);
    const auto& top = r.ballots[0].ranking[0];
    for (auto tag : {"plugin", "chao-shen", "seneca"}) {
        EXPECT_NE(std::find(top.begin(), top.end(), tag), top.end()) << tag;
    }
    EXPECT_EQ(std::find(top.begin(), top.end(), "bonachela"), top.end());
}

TEST(Subsample, TwoEvenSpecies) {
    const auto r = subsample_bench(SampleCounts({500, 500}), "even", config({50}, 1000));
    EXPECT_LT(rmse_of(r, EstimatorKind::plugin, 50), 0.1);
    EXPECT_NEAR(r.summaries[0].true_entropy, std::log(2.0), 1e-15);
}

TEST(Subsample, OneBallotPerSampleSize) {
    const auto r = subsample_bench(SampleCounts({5, 3, 2, 1, 1}), "p", config({10, 20, 30}, 20));
    EXPECT_EQ(r.ballots.size(), 3u);
    EXPECT_EQ(r.summaries.size(), 3u * 7u);
}

TEST(Subsample, IdenticalPopulationsGiveIdenticalRows) {
    const SampleCounts pop({9, 4, 4, 2, 1, 1, 1});
    const auto a = subsample_bench(pop, "a", config({10}, 100));
    const auto b = subsample_bench(pop, "b", config({10}, 100));
    for (std::size_t i = 0; i < a.summaries.size(); ++i) {
        EXPECT_EQ(a.summaries[i].rmse, b.summaries[i].rmse);
        EXPECT_EQ(a.summaries[i].bias, b.summaries[i].bias);
    }
}

TEST(Subsample, RejectsBadConfig) {
    EXPECT_THROW(subsample_bench(SampleCounts({3}), "p", config({}, 10)), std::invalid_argument);
    EXPECT_THROW(subsample_bench(SampleCounts({3}), "p", config({0}, 10)), std::invalid_argument);
    EXPECT_THROW(subsample_bench(SampleCounts({3}), "p", config({5}, 0)), std::invalid_argument);
}
