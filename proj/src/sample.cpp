#include "seneca/sample.hpp"

#include <numeric>

namespace seneca {

SampleCounts::SampleCounts(std::vector<Count> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) {
        throw std::invalid_argument("empty sample");
    }
    for (auto c : counts_) {
        if (c < 1) {
            throw std::invalid_argument("sample counts must be positive");
        }
    }
    std::stable_sort(counts_.begin(), counts_.end(), std::greater<>{});
    n_ = std::accumulate(counts_.begin(), counts_.end(), Count{0});
}

Fingerprint::Fingerprint(const SampleCounts& counts) {
    for (auto c : counts.counts()) {
        ++phi_[c];
    }
}

Count Fingerprint::phi(Count i) const noexcept {
    auto it = phi_.find(i);
    return it == phi_.end() ? 0 : it->second;
}

Count Fingerprint::sample_size() const noexcept {
    Count total = 0;
    for (auto [i, k] : phi_) total += i * k;
    return total;
}

Count Fingerprint::distinct() const noexcept {
    Count total = 0;
    for (auto [i, k] : phi_) total += k;
    return total;
}

}  // namespace seneca
