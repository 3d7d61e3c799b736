#pragma once

#include "cohdof/geometry.hpp"
#include "cohdof/model.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace cohdof {

namespace detail {

inline Count mac_budget(const MacConfig& cfg, const std::vector<std::size_t>& members) {
    Count total = 0;
    for (auto j : members) total += cfg.transmitters[j].antennas;
    return std::min(cfg.rx_antennas, total);
}

inline void require_nested_members(const MacConfig& cfg, const std::vector<std::size_t>& sorted) {
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (cfg.transmitters[sorted[i]].coherence % cfg.transmitters[sorted[i - 1]].coherence != 0)
            throw PreconditionViolation("member coherence times must be integer multiples of each other");
}

inline RegionH mac_outer_impl(const MacConfig& cfg, std::optional<Count> common_t) {
    const std::size_t k = cfg.size();
    RegionH r{k, {}};
    for (const auto& s : all_subsets(k)) {
        if (s.empty()) continue;
        Count tmax = 0;
        for (auto j : s) tmax = std::max(tmax, cfg.transmitters[j].coherence);
        if (common_t) tmax = *common_t;
        const Count c = mac_budget(cfg, s);
        Halfspace h{std::vector<Rational>(k, Rational(0)), Rational(c) * (Rational(1) - Rational(c, tmax))};
        for (auto j : s) h.coeffs[j] = Rational(1);
        r.halfspaces.push_back(std::move(h));
    }
    return r;
}

}  // namespace detail

/// Pilot-then-zero-forcing tuple at a common coherence time T.
inline DofPoint mac_identical_tuple(const OrderedSubset& priority, const MacConfig& cfg, Count t) {
    cfg.validate();
    priority.check_against(cfg.size());
    for (std::size_t k = 0; k < cfg.size(); ++k)
        if (cfg.transmitters[k].coherence != t)
            throw PreconditionViolation("transmitter " + std::to_string(k + 1) + " does not have coherence time " +
                                        std::to_string(t));
    cfg.require_long_coherence();
    const auto mp = mprime_allocation(priority, cfg);
    Count used = 0;
    for (auto m : mp) used += m;
    DofPoint d = zero_point(cfg.size());
    const Rational factor = Rational(1) - Rational(used, t);
    for (std::size_t i = 0; i < priority.size(); ++i) d[priority[i]] = Rational(mp[i]) * factor;
    return d;
}

/// Cooperative (single virtual transmitter) outer bound at a common T.
inline RegionH mac_identical_outer(const MacConfig& cfg, Count t) {
    cfg.validate();
    return detail::mac_outer_impl(cfg, t);
}

/// Nested heterogeneous tuple. Antenna budget M' follows the priority order;
/// pilot accounting follows ascending coherence order (ties by index).
inline DofPoint mac_hetero_tuple(const OrderedSubset& priority, const MacConfig& cfg) {
    cfg.validate();
    priority.check_against(cfg.size());
    const auto sorted = sort_by_coherence(priority, [&](std::size_t j) { return cfg.transmitters[j].coherence; });
    detail::require_nested_members(cfg, sorted);
    for (auto j : sorted)
        if (cfg.transmitters[j].coherence < 2 * cfg.rx_antennas)
            throw PreconditionViolation("transmitter " + std::to_string(j + 1) + ": T < 2N");
    DofPoint d = zero_point(cfg.size());
    if (sorted.empty()) return d;

    const auto mp = mprime_allocation(priority, cfg);
    std::vector<Count> mprime(cfg.size(), 0);
    for (std::size_t i = 0; i < priority.size(); ++i) mprime[priority[i]] = mp[i];

    const Count t1 = cfg.transmitters[sorted.front()].coherence;
    Rational factor;
    Count cost = 0;
    for (std::size_t m = 0; m < sorted.size(); ++m) {
        cost += mprime[sorted[m]];
        Rational gap = Rational(1, cfg.transmitters[sorted[m]].coherence);
        if (m + 1 < sorted.size()) gap -= Rational(1, cfg.transmitters[sorted[m + 1]].coherence);
        factor += Rational(t1 - cost) * gap;
    }
    for (auto j : sorted) d[j] = Rational(mprime[j]) * factor;
    return d;
}

/// Enhanced cooperative outer bound with per-subset longest coherence time.
inline RegionH mac_hetero_outer(const MacConfig& cfg) {
    cfg.validate();
    if (!cfg.nested()) throw PreconditionViolation("coherence times must be integer multiples of each other");
    return detail::mac_outer_impl(cfg, std::nullopt);
}

/// All ordered subsets (member set times priority permutation), as index lists.
inline std::vector<std::vector<std::size_t>> ordered_subsets(std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    for (auto s : all_subsets(k)) {
        if (s.empty()) continue;
        do out.push_back(s);
        while (std::next_permutation(s.begin(), s.end()));
    }
    return out;
}

inline std::vector<DofPoint> mac_candidate_tuples(const MacConfig& cfg) {
    cfg.validate();
    cfg.require_long_coherence();
    const bool same = cfg.identical_coherence();
    if (!same && !cfg.nested())
        throw PreconditionViolation("coherence times must be identical or integer multiples of each other");
    std::vector<DofPoint> pts;
    for (const auto& s : ordered_subsets(cfg.size())) {
        OrderedSubset pr(s);
        pts.push_back(same ? mac_identical_tuple(pr, cfg, cfg.transmitters.front().coherence)
                           : mac_hetero_tuple(pr, cfg));
    }
    return pts;
}

inline RegionV achievable_region_mac(const MacConfig& cfg) {
    return make_region_v(cfg.size(), mac_candidate_tuples(cfg));
}

/// Outer bound matching achievable_region_mac's path.
inline RegionH outer_region_mac(const MacConfig& cfg) {
    cfg.validate();
    if (cfg.identical_coherence()) return mac_identical_outer(cfg, cfg.transmitters.front().coherence);
    return mac_hetero_outer(cfg);
}

}  // namespace cohdof
