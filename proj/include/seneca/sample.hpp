#pragma once

// Observed samples: label counts and their fingerprint (frequency of
// frequencies). Every estimator in the library consumes these two types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace seneca {

using Count = std::int64_t;

/// Multiset of per-label occurrence counts for a sample of size n.
///
/// Counts are stored in canonical order (descending count, ties keep their
/// input order), so two samples with the same multiset of counts compare
/// equal and serialize identically. Label identities are not retained.
class SampleCounts {
public:
    /// Throws std::invalid_argument if `counts` is empty or holds a value < 1.
    explicit SampleCounts(std::vector<Count> counts);

    std::span<const Count> counts() const noexcept { return counts_; }
    Count n() const noexcept { return n_; }
    std::size_t observed_support() const noexcept { return counts_.size(); }

    friend bool operator==(const SampleCounts&, const SampleCounts&) = default;

private:
    std::vector<Count> counts_;
    Count n_ = 0;
};

/// Frequency of frequencies: phi(i) = number of labels seen exactly i times.
class Fingerprint {
public:
    Fingerprint() = default;
    explicit Fingerprint(const SampleCounts& counts);

    Count phi(Count i) const noexcept;
    Count singletons() const noexcept { return phi(1); }
    Count doubletons() const noexcept { return phi(2); }

    /// Occupied entries only; every stored value is >= 1.
    const std::map<Count, Count>& entries() const noexcept { return phi_; }

    /// Sum of i * phi(i), i.e. the sample size.
    Count sample_size() const noexcept;
    /// Sum of phi(i), i.e. the observed support.
    Count distinct() const noexcept;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

private:
    std::map<Count, Count> phi_;
};

inline Fingerprint fingerprint(const SampleCounts& counts) { return Fingerprint(counts); }

inline std::size_t observed_support(const SampleCounts& counts) noexcept {
    return counts.observed_support();
}

/// Counts plus the identity of each counted label, aligned with counts().
template <class Label>
struct TalliedLabels {
    SampleCounts counts;
    std::vector<Label> labels;
};

/// Tallies a label sequence. Distinct labels are ordered by descending count,
/// then by first appearance. Throws std::invalid_argument("empty sample").
template <class Label>
TalliedLabels<Label> tally_labels(std::span<const Label> sequence) {
    if (sequence.empty()) {
        throw std::invalid_argument("empty sample");
    }
    std::unordered_map<Label, std::size_t> slot;
    std::vector<Label> order;
    std::vector<Count> tally;
    for (const auto& label : sequence) {
        auto [it, inserted] = slot.try_emplace(label, order.size());
        if (inserted) {
            order.push_back(label);
            tally.push_back(0);
        }
        ++tally[it->second];
    }
    std::vector<std::size_t> perm(order.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return tally[a] > tally[b]; });

    std::vector<Count> counts;
    std::vector<Label> labels;
    counts.reserve(perm.size());
    labels.reserve(perm.size());
    for (auto i : perm) {
        counts.push_back(tally[i]);
        labels.push_back(order[i]);
    }
    return {SampleCounts(std::move(counts)), std::move(labels)};
}

template <class Label>
SampleCounts counts_from_labels(std::span<const Label> sequence) {
    return tally_labels(sequence).counts;
}

template <class Label>
SampleCounts counts_from_labels(const std::vector<Label>& sequence) {
    return counts_from_labels(std::span<const Label>(sequence));
}

}  // namespace seneca
