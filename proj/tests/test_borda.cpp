#include <gtest/gtest.h>

#include <random>

#include "seneca/borda.hpp"

using namespace seneca;

namespace {

Ballot ranked(std::vector<std::vector<std::string>> groups, std::string pop = "p", Count n = 10) {
    return Ballot{std::move(pop), n, std::move(groups)};
}

}  // namespace

TEST(Borda, IdenticalBallots) {
    const std::vector<Ballot> b{ranked({{"A"}, {"B"}, {"C"}}), ranked({{"A"}, {"B"}, {"C"}})};
    const auto s = borda(b);
    EXPECT_EQ(s.at("A"), 4.0);
    EXPECT_EQ(s.at("B"), 2.0);
    EXPECT_EQ(s.at("C"), 0.0);
}

TEST(Borda, TiesSharePoints) {
    const std::vector<Ballot> b{ranked({{"A", "B"}, {"C"}})};
    const auto s = borda(b);
    EXPECT_EQ(s.at("A"), 1.5);
    EXPECT_EQ(s.at("B"), 1.5);
    EXPECT_EQ(s.at("C"), 0.0);
}

TEST(Borda, EmptyBallotListGivesZeros) {
    const std::vector<std::string> names{"A", "B"};
    const auto s = borda({}, names);
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s.at("A"), 0.0);
    EXPECT_EQ(s.at("B"), 0.0);
}

TEST(Borda, RejectsInconsistentSets) {
    const std::vector<Ballot> b{ranked({{"A"}, {"B"}}), ranked({{"A"}, {"C"}})};
    EXPECT_THROW(borda(b), std::invalid_argument);
    const std::vector<Ballot> dup{ranked({{"A"}, {"A"}})};
    EXPECT_THROW(borda(dup), std::invalid_argument);
}

TEST(Borda, PointsConservedPerBallot) {
    std::mt19937_64 gen(3);
    const std::vector<std::string> names{"a", "b", "c", "d", "e", "f", "g"};
    for (int t = 0; t < 300; ++t) {
        std::vector<std::pair<std::string, double>> scores;
        for (const auto& n : names) scores.emplace_back(n, static_cast<double>(gen() % 4));
        const std::vector<Ballot> b{make_ballot("p", 10, scores)};
        double total = 0.0;
        for (const auto& [_, pts] : borda(b)) total += pts;
        EXPECT_DOUBLE_EQ(total, 21.0);
    }
}

TEST(MakeBallot, OrdersByAscendingScoreWithTieGroups) {
    const auto b = make_ballot("p", 20, {{"x", 0.5}, {"y", 0.2}, {"z", 0.5}});
    ASSERT_EQ(b.ranking.size(), 2u);
    EXPECT_EQ(b.ranking[0], (std::vector<std::string>{"y"}));
    EXPECT_EQ(b.ranking[1], (std::vector<std::string>{"x", "z"}));
    EXPECT_EQ(b.sample_size, 20);
}

TEST(BordaBootstrap, IntervalsContainPointForUnanimousBallots) {
    std::vector<Ballot> b;
    for (int p = 0; p < 5; ++p) b.push_back(ranked({{"A"}, {"B"}}, "pop" + std::to_string(p)));
    Rng rng(1);
    const auto ci = borda_bootstrap(b, 200, 0.95, rng);
    EXPECT_DOUBLE_EQ(ci.at("A").point, 5.0);
    EXPECT_DOUBLE_EQ(ci.at("A").low, 5.0);
    EXPECT_DOUBLE_EQ(ci.at("A").high, 5.0);
    EXPECT_DOUBLE_EQ(ci.at("B").radius(), 0.0);
}
