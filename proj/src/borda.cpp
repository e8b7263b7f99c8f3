#include "seneca/borda.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace seneca {

Ballot make_ballot(std::string population, Count sample_size,
                   std::vector<std::pair<std::string, double>> scores) {
    std::stable_sort(scores.begin(), scores.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    Ballot ballot{std::move(population), sample_size, {}};
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (i == 0 || scores[i].second != scores[i - 1].second) ballot.ranking.emplace_back();
        ballot.ranking.back().push_back(std::move(scores[i].first));
    }
    return ballot;
}

namespace {

std::set<std::string> candidate_set(const Ballot& ballot) {
    std::set<std::string> names;
    for (const auto& group : ballot.ranking) {
        for (const auto& name : group) {
            if (!names.insert(name).second) {
                throw std::invalid_argument("ballot lists '" + name + "' more than once");
            }
        }
    }
    return names;
}

}  // namespace

std::map<std::string, double> borda(std::span<const Ballot> ballots,
                                    std::span<const std::string> candidates) {
    std::map<std::string, double> points;
    for (const auto& c : candidates) points[c] = 0.0;
    if (ballots.empty()) return points;

    const auto reference = candidate_set(ballots.front());
    for (const auto& name : reference) points.try_emplace(name, 0.0);

    for (const auto& ballot : ballots) {
        if (candidate_set(ballot) != reference) {
            throw std::invalid_argument("ballots rank different candidate sets");
        }
        const auto total = static_cast<double>(reference.size());
        double ranked_above = 0.0;
        for (const auto& group : ballot.ranking) {
            const auto size = static_cast<double>(group.size());
            const double below = total - ranked_above - size;
            for (const auto& name : group) points[name] += below + 0.5 * (size - 1.0);
            ranked_above += size;
        }
    }
    return points;
}

std::map<std::string, PivotInterval> borda_bootstrap(std::span<const Ballot> ballots, int reps,
                                                     double level, Rng& rng) {
    std::vector<std::string> populations;
    for (const auto& b : ballots) {
        if (std::find(populations.begin(), populations.end(), b.population) == populations.end()) {
            populations.push_back(b.population);
        }
    }
    const auto point = borda(ballots);
    std::map<std::string, std::vector<double>> replicates;
    for (const auto& [name, _] : point) replicates[name].reserve(static_cast<std::size_t>(reps));

    std::vector<Ballot> drawn;
    for (int r = 0; r < reps; ++r) {
        drawn.clear();
        for (std::size_t i = 0; i < populations.size(); ++i) {
            const auto& pick = populations[uniform_index(rng, populations.size())];
            for (const auto& b : ballots) {
                if (b.population == pick) drawn.push_back(b);
            }
        }
        const auto totals = borda(drawn);
        for (const auto& [name, _] : point) replicates[name].push_back(totals.at(name));
    }

    std::map<std::string, PivotInterval> out;
    for (const auto& [name, value] : point) {
        out[name] = pivot_interval(value, std::move(replicates[name]), level);
    }
    return out;
}

}  // namespace seneca
