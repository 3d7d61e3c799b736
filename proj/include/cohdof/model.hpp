#pragma once

#include "cohdof/errors.hpp"
#include "cohdof/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace cohdof {

using Count = std::int64_t;

/// DoF tuple, one coordinate per receiver (BC) or transmitter (MAC).
using DofPoint = std::vector<Rational>;

/// Effective spatial dimension of a non-coherent link: min{M, N, floor(T/2)}.
/// Zero only for T = 1, which callers treat as an unserveable entity.
inline Count nstar(Count tx_antennas, Count rx_antennas, Count coherence) {
    return std::min({tx_antennas, rx_antennas, coherence / 2});
}

struct Receiver {
    Count antennas = 1;   // N_k
    Count coherence = 1;  // T_k in slots
    Count offset = 0;     // transition offset in slots, 0 <= offset < T_k
};

/// Broadcast channel: one M-antenna transmitter, K receivers.
struct BcConfig {
    Count tx_antennas = 1;
    std::vector<Receiver> receivers;

    std::size_t size() const { return receivers.size(); }

    void validate() const {
        if (tx_antennas < 1) throw InvalidConfig("transmit antenna count must be >= 1");
        if (receivers.empty()) throw InvalidConfig("broadcast config needs at least one receiver");
        for (std::size_t k = 0; k < receivers.size(); ++k) {
            const auto& r = receivers[k];
            if (r.antennas < 1 || r.coherence < 1)
                throw InvalidConfig("receiver " + std::to_string(k + 1) + ": counts must be >= 1");
            if (r.offset < 0 || r.offset >= r.coherence)
                throw InvalidConfig("receiver " + std::to_string(k + 1) + ": offset must lie in [0, T)");
        }
    }

    Count nstar_of(std::size_t k) const {
        return nstar(tx_antennas, receivers[k].antennas, receivers[k].coherence);
    }

    /// Receiver indices sorted ascending by coherence time, ties by index.
    std::vector<std::size_t> coherence_order() const {
        std::vector<std::size_t> idx(receivers.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return receivers[a].coherence < receivers[b].coherence;
        });
        return idx;
    }

    /// Aligned (all offsets zero) with integer ratios along the sorted order.
    bool nested() const {
        for (const auto& r : receivers)
            if (r.offset != 0) return false;
        auto order = coherence_order();
        for (std::size_t i = 1; i < order.size(); ++i)
            if (receivers[order[i]].coherence % receivers[order[i - 1]].coherence != 0) return false;
        return true;
    }

    bool identical_coherence() const {
        return std::all_of(receivers.begin(), receivers.end(),
                           [&](const Receiver& r) { return r.coherence == receivers.front().coherence; });
    }
};

struct Transmitter {
    Count antennas = 1;   // M_k
    Count coherence = 1;  // T_k
};

/// Multiple access channel: K transmitters, one N-antenna receiver.
struct MacConfig {
    Count rx_antennas = 1;
    std::vector<Transmitter> transmitters;

    std::size_t size() const { return transmitters.size(); }

    void validate() const {
        if (rx_antennas < 1) throw InvalidConfig("receive antenna count must be >= 1");
        if (transmitters.empty()) throw InvalidConfig("MAC config needs at least one transmitter");
        for (std::size_t k = 0; k < transmitters.size(); ++k)
            if (transmitters[k].antennas < 1 || transmitters[k].coherence < 1)
                throw InvalidConfig("transmitter " + std::to_string(k + 1) + ": counts must be >= 1");
    }

    /// Validity predicate for the MAC constructions: every T_k >= 2N.
    bool coherence_long_enough() const {
        return std::all_of(transmitters.begin(), transmitters.end(),
                           [&](const Transmitter& t) { return t.coherence >= 2 * rx_antennas; });
    }

    void require_long_coherence() const {
        for (std::size_t k = 0; k < transmitters.size(); ++k)
            if (transmitters[k].coherence < 2 * rx_antennas)
                throw PreconditionViolation("transmitter " + std::to_string(k + 1) + ": T = " +
                                            std::to_string(transmitters[k].coherence) + " < 2N = " +
                                            std::to_string(2 * rx_antennas));
    }

    std::vector<std::size_t> coherence_order() const {
        std::vector<std::size_t> idx(transmitters.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return transmitters[a].coherence < transmitters[b].coherence;
        });
        return idx;
    }

    bool nested() const {
        auto order = coherence_order();
        for (std::size_t i = 1; i < order.size(); ++i)
            if (transmitters[order[i]].coherence % transmitters[order[i - 1]].coherence != 0) return false;
        return true;
    }

    bool identical_coherence() const {
        return std::all_of(transmitters.begin(), transmitters.end(), [&](const Transmitter& t) {
            return t.coherence == transmitters.front().coherence;
        });
    }
};

/// Duplicate-free list of entity indices (0-based) into a config.
class OrderedSubset {
public:
    OrderedSubset() = default;
    OrderedSubset(std::vector<std::size_t> indices) : indices_(std::move(indices)) {  // NOLINT
        auto sorted = indices_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidConfig("ordered subset contains duplicate indices");
    }
    OrderedSubset(std::initializer_list<std::size_t> il) : OrderedSubset(std::vector<std::size_t>(il)) {}

    const std::vector<std::size_t>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    std::size_t operator[](std::size_t i) const { return indices_[i]; }
    auto begin() const { return indices_.begin(); }
    auto end() const { return indices_.end(); }
    bool contains(std::size_t e) const {
        return std::find(indices_.begin(), indices_.end(), e) != indices_.end();
    }

    void check_against(std::size_t entity_count) const {
        for (auto i : indices_)
            if (i >= entity_count)
                throw InvalidConfig("subset index " + std::to_string(i + 1) + " out of range");
    }

    friend bool operator==(const OrderedSubset&, const OrderedSubset&) = default;

private:
    std::vector<std::size_t> indices_;
};

/// Sorts subset members ascending by the given coherence times, ties by index.
template <class CoherenceOf>
std::vector<std::size_t> sort_by_coherence(const OrderedSubset& sub, CoherenceOf&& coherence_of) {
    std::vector<std::size_t> out(sub.begin(), sub.end());
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
        auto ta = coherence_of(a), tb = coherence_of(b);
        return ta != tb ? ta < tb : a < b;
    });
    return out;
}

/// Greedy antenna budget: M'_j = min{M_j, [N - sum of earlier M']^+} in priority order.
/// Result is aligned with `priority` (entry i belongs to transmitter priority[i]).
inline std::vector<Count> mprime_allocation(const OrderedSubset& priority, const MacConfig& cfg) {
    priority.check_against(cfg.size());
    std::vector<Count> out;
    out.reserve(priority.size());
    Count used = 0;
    for (auto j : priority) {
        Count remaining = std::max<Count>(cfg.rx_antennas - used, 0);
        Count m = std::min(cfg.transmitters[j].antennas, remaining);
        out.push_back(m);
        used += m;
    }
    return out;
}

/// All 2^K subsets of [0, K) as ascending index lists, empty set first.
inline std::vector<std::vector<std::size_t>> all_subsets(std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::uint64_t{1} << i)) s.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

inline DofPoint zero_point(std::size_t k) { return DofPoint(k, Rational(0)); }

inline std::string to_string(const DofPoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += p[i].str();
    }
    return s + ")";
}

inline Count lcm_of(Count a, Count b) { return std::lcm(a, b); }

}  // namespace cohdof
