#pragma once

#include "cohdof/geometry.hpp"
#include "cohdof/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cohdof {

namespace detail {

inline Rational inv(Count t) { return Rational(1, t); }

inline void require_same_coherence(const BcConfig& cfg, Count t) {
    for (std::size_t k = 0; k < cfg.size(); ++k)
        if (cfg.receivers[k].coherence != t)
            throw PreconditionViolation("receiver " + std::to_string(k + 1) + " does not have coherence time " +
                                        std::to_string(t));
}

inline void require_nested(const BcConfig& cfg) {
    if (!cfg.nested())
        throw PreconditionViolation("coherence times must be aligned integer multiples of each other");
}

inline std::vector<std::size_t> bc_members(const OrderedSubset& sub, const BcConfig& cfg) {
    sub.check_against(cfg.size());
    return sort_by_coherence(sub, [&](std::size_t j) { return cfg.receivers[j].coherence; });
}

/// Shared body of the short-pilot tuple: valid for any positive integer T's.
inline DofPoint short_pilot_tuple(const std::vector<std::size_t>& js, const BcConfig& cfg) {
    DofPoint d = zero_point(cfg.size());
    if (js.empty()) return d;
    const std::size_t f = js.front();
    const Count nf = cfg.nstar_of(f);
    const Count tf = cfg.receivers[f].coherence;
    d[f] = Rational(nf) * (Rational(1) - Rational(nf, tf));
    for (std::size_t m = 1; m < js.size(); ++m) {
        const auto j = js[m];
        const Count tprev = cfg.receivers[js[m - 1]].coherence;
        d[j] = Rational(nf * std::min(cfg.receivers[j].antennas, nf)) *
               (inv(tprev) - inv(cfg.receivers[j].coherence));
    }
    return d;
}

}  // namespace detail

/// TDMA region without CSIR, all receivers at coherence time T.
/// Receivers with N* = 0 (T = 1) are capped at zero and left out of the face.
inline RegionH identical_region_noncoherent(const BcConfig& cfg, Count t) {
    cfg.validate();
    detail::require_same_coherence(cfg, t);
    const std::size_t k = cfg.size();
    RegionH r{k, {}};
    Halfspace face{std::vector<Rational>(k, Rational(0)), Rational(1)};
    for (std::size_t i = 0; i < k; ++i) {
        const Count n = nstar(cfg.tx_antennas, cfg.receivers[i].antennas, t);
        Halfspace cap{std::vector<Rational>(k, Rational(0)), Rational(0)};
        cap.coeffs[i] = Rational(1);
        if (n > 0) {
            Rational single = Rational(n) * (Rational(1) - Rational(n, t));
            face.coeffs[i] = Rational(1) / single;
            cap.rhs = single;
        }
        r.halfspaces.push_back(std::move(cap));
    }
    r.halfspaces.push_back(std::move(face));
    return r;
}

/// TDMA region with perfect CSIR.
inline RegionH identical_region_coherent(const BcConfig& cfg) {
    cfg.validate();
    detail::require_same_coherence(cfg, cfg.receivers.front().coherence);
    const std::size_t k = cfg.size();
    RegionH r{k, {}};
    Halfspace face{std::vector<Rational>(k, Rational(0)), Rational(1)};
    for (std::size_t i = 0; i < k; ++i) {
        const Count w = std::min(cfg.tx_antennas, cfg.receivers[i].antennas);
        Halfspace cap{std::vector<Rational>(k, Rational(0)), Rational(w)};
        cap.coeffs[i] = Rational(1);
        face.coeffs[i] = Rational(1, w);
        r.halfspaces.push_back(std::move(cap));
    }
    r.halfspaces.push_back(std::move(face));
    return r;
}

/// Extended-pilot tuple: the fastest member pays a pilot of width
/// min{M, N_max, T_min} at every transition of the next member.
inline DofPoint d1_tuple(const OrderedSubset& sub, const BcConfig& cfg) {
    cfg.validate();
    detail::require_nested(cfg);
    const auto js = detail::bc_members(sub, cfg);
    DofPoint d = zero_point(cfg.size());
    if (js.empty()) return d;
    const std::size_t f = js.front();
    const Count nf = cfg.nstar_of(f);
    const Count tf = cfg.receivers[f].coherence;
    Count nmax = 0;
    for (auto j : js) nmax = std::max(nmax, cfg.receivers[j].antennas);
    const Count width = std::min({cfg.tx_antennas, nmax, tf});
    Rational penalty;  // 1/T_next := 0 for a singleton
    if (js.size() > 1) penalty = Rational(width - nf, cfg.receivers[js[1]].coherence);
    d[f] = Rational(nf) * (Rational(1) - Rational(nf, tf) - penalty);
    for (std::size_t m = 1; m < js.size(); ++m) {
        const auto j = js[m];
        const Count dims = std::min({cfg.tx_antennas, cfg.receivers[j].antennas, tf});
        d[j] = Rational(nf * dims) *
               (detail::inv(cfg.receivers[js[m - 1]].coherence) - detail::inv(cfg.receivers[j].coherence));
    }
    return d;
}

/// Short-pilot tuple: riders get min{N_j, N*_min} dimensions on each reused pilot.
inline DofPoint d2_tuple(const OrderedSubset& sub, const BcConfig& cfg) {
    cfg.validate();
    detail::require_nested(cfg);
    return detail::short_pilot_tuple(detail::bc_members(sub, cfg), cfg);
}

/// Same formula as d2_tuple, without the nesting requirement.
inline DofPoint arbitrary_tuple(const OrderedSubset& sub, const BcConfig& cfg) {
    cfg.validate();
    return detail::short_pilot_tuple(detail::bc_members(sub, cfg), cfg);
}

/// Every D1 and D2 tuple over all subsets (empty set included), unfiltered.
inline std::vector<DofPoint> bc_candidate_tuples(const BcConfig& cfg) {
    cfg.validate();
    detail::require_nested(cfg);
    std::vector<DofPoint> pts;
    for (const auto& s : all_subsets(cfg.size())) {
        OrderedSubset sub(s);
        pts.push_back(d1_tuple(sub, cfg));
        pts.push_back(d2_tuple(sub, cfg));
    }
    return pts;
}

inline RegionV achievable_region_bc(const BcConfig& cfg) {
    return make_region_v(cfg.size(), bc_candidate_tuples(cfg));
}

/// Enhanced-channel outer bound: one face per nonempty subset, normalized to rhs 1.
inline RegionH outer_region_bc(const BcConfig& cfg) {
    cfg.validate();
    detail::require_nested(cfg);
    const std::size_t k = cfg.size();
    RegionH r{k, {}};
    for (std::size_t i = 0; i < k; ++i)
        if (cfg.nstar_of(i) == 0) {
            Halfspace cap{std::vector<Rational>(k, Rational(0)), Rational(0)};
            cap.coeffs[i] = Rational(1);
            r.halfspaces.push_back(std::move(cap));
        }
    for (const auto& s : all_subsets(k)) {
        if (s.empty()) continue;
        Count tmax = 0;
        for (auto j : s) tmax = std::max(tmax, cfg.receivers[j].coherence);
        Halfspace h{std::vector<Rational>(k, Rational(0)), Rational(1)};
        bool any = false;
        for (auto j : s) {
            const Count n = cfg.nstar_of(j);
            if (n == 0) continue;
            h.coeffs[j] = Rational(1) / (Rational(n) * (Rational(1) - Rational(n, tmax)));
            any = true;
        }
        if (any) r.halfspaces.push_back(std::move(h));
    }
    return r;
}

struct StaggeredPairs {
    DofPoint bia_ps;   // blind alignment combined with product superposition
    DofPoint ps_only;  // product superposition alone
};

/// Two single-antenna receivers, two transmit antennas, receiver 2 offset by T1/2.
inline StaggeredPairs staggered_pairs(Count t1, Count t2) {
    if (t1 < 4 || t1 % 2 != 0) throw PreconditionViolation("staggered scheme needs an even T1 >= 4");
    if (t2 % t1 != 0 || t2 / t1 < 2) throw PreconditionViolation("staggered scheme needs T2/T1 an integer >= 2");
    StaggeredPairs p;
    p.bia_ps = {Rational(1) - Rational(1, t1) - Rational(1, t2) - Rational(t1, 2 * t2),
                Rational(t1, t2) + Rational(1, t1) - Rational(2, t2)};
    p.ps_only = {Rational(1) - Rational(1, t1), Rational(1, t1) - Rational(1, t2)};
    return p;
}

enum class OptimalityCase { FewerTx, EqualRx, OneShortCoherence, IdenticalT, None };

inline const char* to_string(OptimalityCase c) {
    switch (c) {
        case OptimalityCase::FewerTx: return "FewerTx";
        case OptimalityCase::EqualRx: return "EqualRx";
        case OptimalityCase::OneShortCoherence: return "OneShortCoherence";
        case OptimalityCase::IdenticalT: return "IdenticalT";
        case OptimalityCase::None: return "None";
    }
    return "None";
}

/// First matching case where inner and outer bounds are known to meet.
/// OneShortCoherence is asymptotic, so it is only reported when a ratio
/// threshold is supplied.
inline OptimalityCase optimality_case(const BcConfig& cfg, std::optional<Count> short_ratio = std::nullopt) {
    cfg.validate();
    if (!cfg.nested()) return OptimalityCase::None;
    for (const auto& r : cfg.receivers)
        if (r.coherence < 2 * std::max(cfg.tx_antennas, r.antennas)) return OptimalityCase::None;

    Count nmin = cfg.receivers.front().antennas;
    bool equal_rx = true;
    for (const auto& r : cfg.receivers) {
        nmin = std::min(nmin, r.antennas);
        equal_rx = equal_rx && r.antennas == cfg.receivers.front().antennas;
    }
    if (cfg.tx_antennas <= nmin) return OptimalityCase::FewerTx;
    if (equal_rx) return OptimalityCase::EqualRx;
    if (short_ratio && cfg.size() >= 2) {
        auto order = cfg.coherence_order();
        const Count t1 = cfg.receivers[order[0]].coherence;
        bool all_long = true;
        for (std::size_t i = 1; i < order.size(); ++i)
            all_long = all_long && cfg.receivers[order[i]].coherence >= *short_ratio * t1;
        if (all_long) return OptimalityCase::OneShortCoherence;
    }
    if (cfg.identical_coherence()) return OptimalityCase::IdenticalT;
    return OptimalityCase::None;
}

/// L-infinity slack used for the asymptotic case: N* of the fastest receiver
/// over the second-shortest coherence time.
inline Rational one_short_slack(const BcConfig& cfg) {
    auto order = cfg.coherence_order();
    if (order.size() < 2) return Rational(0);
    return Rational(cfg.nstar_of(order[0]), cfg.receivers[order[1]].coherence);
}

}  // namespace cohdof
