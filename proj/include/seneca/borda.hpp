#pragma once

// Borda-count aggregation of per-context estimator rankings.

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seneca/rng.hpp"
#include "seneca/sample.hpp"
#include "seneca/stats.hpp"

namespace seneca {

/// One ranking of candidates, best first. Each inner vector is a tie group.
struct Ballot {
    std::string population;
    Count sample_size = 0;
    std::vector<std::vector<std::string>> ranking;
};

/// Ranks candidates by ascending score; exactly equal scores share a group.
Ballot make_ballot(std::string population, Count sample_size,
                   std::vector<std::pair<std::string, double>> scores);

/// Points per candidate: in each ballot a candidate earns the number of
/// candidates it strictly outranks plus half the number it ties with.
/// `candidates` seeds zero entries (useful for an empty ballot list). Throws
/// std::invalid_argument if ballots rank different candidate sets or a
/// candidate appears twice.
std::map<std::string, double> borda(std::span<const Ballot> ballots,
                                    std::span<const std::string> candidates = {});

/// Pivot intervals for Borda totals, resampling populations with replacement
/// (all ballots of a drawn population enter together).
std::map<std::string, PivotInterval> borda_bootstrap(std::span<const Ballot> ballots, int reps,
                                                     double level, Rng& rng);

}  // namespace seneca
