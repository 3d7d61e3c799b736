#pragma once

// Slot-level oracle. Each construction is materialized as an explicit list of
// segments over a finite horizon; symbol tallies divided by the horizon must
// reproduce the closed-form tuples exactly. Schedules are periodic: the horizon
// is a common multiple of every coherence time, so coherence blocks that run
// past the end wrap around to the start.

#include "cohdof/bc_regions.hpp"
#include "cohdof/mac_regions.hpp"
#include "cohdof/model.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cohdof {

enum class SegmentKind { Pilot, Data, PsData, BiaData };

inline const char* to_string(SegmentKind k) {
    switch (k) {
        case SegmentKind::Pilot: return "pilot";
        case SegmentKind::Data: return "data";
        case SegmentKind::PsData: return "psdata";
        case SegmentKind::BiaData: return "bia";
    }
    return "?";
}

/// Symbols booked for one entity inside a segment, decoded over `dims` spatial dimensions.
struct Credit {
    std::size_t entity = 0;
    Count dims = 0;
    Count symbols = 0;
    friend bool operator==(const Credit&, const Credit&) = default;
};

/// Pilot and PsData segments carry training: `serves` lists who estimates from it
/// and `antennas` is the number of trained dimensions. A PsData segment is a pilot
/// whose modulation carries exactly one rider (credited, never in `serves`).
struct Segment {
    Count start = 0;
    Count length = 0;
    SegmentKind kind = SegmentKind::Data;
    Count antennas = 0;
    std::vector<std::size_t> serves;
    std::vector<Credit> credits;
    friend bool operator==(const Segment&, const Segment&) = default;
};

struct Schedule {
    Count horizon = 0;
    std::vector<Segment> segments;
    std::vector<Count> coherence;  // per entity
    std::vector<Count> offset;     // per entity
    std::vector<Count> dims_cap;   // per entity: most dimensions it can ever decode
    Count max_pilot_antennas = 0;

    std::size_t entities() const { return coherence.size(); }
};

struct DofCount {
    Count horizon = 0;
    std::vector<Count> tally;

    DofPoint normalized() const {
        DofPoint p;
        for (auto t : tally) p.push_back(Rational(t, horizon));
        return p;
    }
};

enum class BcVariant { D1, D2 };

inline constexpr Count kMaxHorizon = 10'000'000;

namespace detail {

inline Count mod(Count a, Count m) {
    Count r = a % m;
    return r < 0 ? r + m : r;
}

/// Block index of the segment for an entity, or nullopt if it straddles a transition.
inline std::optional<Count> block_of(const Segment& s, Count t, Count o, Count horizon) {
    const Count first = mod(s.start - o, horizon);
    const Count pos = first % t;
    if (pos + s.length > t) return std::nullopt;
    return first / t;
}

inline DofCount tally(const Schedule& s) {
    DofCount c{s.horizon, std::vector<Count>(s.entities(), 0)};
    for (const auto& seg : s.segments)
        for (const auto& cr : seg.credits) c.tally[cr.entity] += cr.symbols;
    return c;
}

inline void push(Schedule& s, Segment seg) {
    if (seg.length > 0) s.segments.push_back(std::move(seg));
}

inline bool is_training(SegmentKind k) { return k == SegmentKind::Pilot || k == SegmentKind::PsData; }

}  // namespace detail

/// Checks tiling, pilot-reuse exclusivity and per-block estimability.
/// Throws OracleMismatch on malformed layouts, EstimabilityViolation otherwise.
inline void check_schedule(const Schedule& s) {
    const Count h = s.horizon;
    if (h <= 0) throw OracleMismatch("schedule horizon must be positive");
    Count cursor = 0;
    for (const auto& seg : s.segments) {
        if (seg.start != cursor || seg.length <= 0)
            throw OracleMismatch("segments do not tile the horizon at slot " + std::to_string(cursor));
        cursor += seg.length;
        if (detail::is_training(seg.kind) && seg.antennas > s.max_pilot_antennas)
            throw OracleMismatch("pilot at slot " + std::to_string(seg.start) + " trains too many antennas");
        if (seg.kind == SegmentKind::PsData) {
            if (seg.credits.size() != 1)
                throw OracleMismatch("reused pilot at slot " + std::to_string(seg.start) + " must carry one rider");
            const auto rider = seg.credits.front().entity;
            if (std::find(seg.serves.begin(), seg.serves.end(), rider) != seg.serves.end())
                throw OracleMismatch("rider cannot train on its own carrier");
        }
        for (const auto& cr : seg.credits) {
            if (cr.entity >= s.entities()) throw OracleMismatch("credit for unknown entity");
            if (cr.dims > s.dims_cap[cr.entity])
                throw EstimabilityViolation("entity " + std::to_string(cr.entity + 1) + " decodes " +
                                            std::to_string(cr.dims) + " dimensions, more than it has");
        }
    }
    if (cursor != h) throw OracleMismatch("segments do not cover the horizon");

    for (std::size_t e = 0; e < s.entities(); ++e) {
        const Count t = s.coherence[e], o = s.offset[e];
        if (h % t != 0) throw OracleMismatch("horizon is not a multiple of a coherence time");
        std::vector<Count> trained(static_cast<std::size_t>(h / t), 0), need(trained.size(), 0);
        for (const auto& seg : s.segments) {
            auto blk = detail::block_of(seg, t, o, h);
            if (detail::is_training(seg.kind) &&
                std::find(seg.serves.begin(), seg.serves.end(), e) != seg.serves.end() && blk)
                trained[static_cast<std::size_t>(*blk)] += seg.antennas;
            for (const auto& cr : seg.credits) {
                if (cr.entity != e || cr.symbols == 0) continue;
                if (!blk)
                    throw EstimabilityViolation("segment at slot " + std::to_string(seg.start) +
                                                " straddles a transition of entity " + std::to_string(e + 1));
                auto& n = need[static_cast<std::size_t>(*blk)];
                n = std::max(n, cr.dims);
            }
        }
        for (std::size_t b = 0; b < need.size(); ++b)
            if (need[b] > trained[b])
                throw EstimabilityViolation("entity " + std::to_string(e + 1) + " block " + std::to_string(b) +
                                            ": decodes " + std::to_string(need[b]) + " dimensions with " +
                                            std::to_string(trained[b]) + " trained");
    }
}

/// Nested broadcast construction over horizon T_max of the members.
inline std::pair<Schedule, DofCount> schedule_bc(const OrderedSubset& sub, const BcConfig& cfg, BcVariant variant) {
    cfg.validate();
    detail::require_nested(cfg);
    const auto js = detail::bc_members(sub, cfg);
    if (js.empty()) throw InvalidConfig("schedule needs at least one member");

    Schedule s;
    for (const auto& r : cfg.receivers) {
        s.coherence.push_back(r.coherence);
        s.offset.push_back(0);
        s.dims_cap.push_back(std::min(cfg.tx_antennas, r.antennas));
    }
    s.max_pilot_antennas = cfg.tx_antennas;
    const auto T = [&](std::size_t j) { return cfg.receivers[j].coherence; };
    s.horizon = T(js.back());
    for (std::size_t e = 0; e < cfg.size(); ++e)
        if (s.horizon % s.coherence[e] != 0) s.coherence[e] = s.horizon;  // non-member, never credited

    const std::size_t f = js.front();
    const Count nf = cfg.nstar_of(f), tf = T(f);
    Count nmax = 0;
    for (auto j : js) nmax = std::max(nmax, cfg.receivers[j].antennas);
    const Count wide = std::min({cfg.tx_antennas, nmax, tf});

    for (Count t = 0; t < s.horizon; t += tf) {
        std::size_t m = 1;  // members j_1..j_m start a block at t
        while (m < js.size() && t % T(js[m]) == 0) ++m;
        const bool extended = variant == BcVariant::D1 && js.size() > 1 && t % T(js[1]) == 0;
        const Count plen = extended ? wide : nf;

        Segment pilot{t, plen, SegmentKind::Pilot, plen, {}, {}};
        pilot.serves.assign(js.begin(), js.begin() + static_cast<std::ptrdiff_t>(m));
        if (m < js.size()) {
            const auto rider = js[m];
            const Count dims = variant == BcVariant::D1
                                   ? std::min({cfg.tx_antennas, cfg.receivers[rider].antennas, tf})
                                   : std::min(cfg.receivers[rider].antennas, nf);
            pilot.kind = SegmentKind::PsData;
            pilot.credits.push_back({rider, dims, nf * dims});
        }
        detail::push(s, std::move(pilot));
        const Count dlen = tf - plen;
        detail::push(s, Segment{t + plen, dlen, SegmentKind::Data, 0, {f}, {{f, nf, nf * dlen}}});
    }
    check_schedule(s);
    auto c = detail::tally(s);
    return {std::move(s), std::move(c)};
}

namespace detail {

/// Horizon-limited lcm of the members' coherence times.
inline Count member_lcm(const std::vector<Count>& ts) {
    Count h = 1;
    for (auto t : ts) {
        h = std::lcm(h, t);
        if (h > kMaxHorizon)
            throw PreconditionViolation("lcm horizon exceeds " + std::to_string(kMaxHorizon) +
                                        " slots; use the closed form instead");
    }
    return h;
}

/// Pilot start inside [bs, bs + tf) that avoids every member transition; falls back to bs.
inline Count place_pilot(Count bs, Count tf, Count len, Count h, const std::vector<Count>& ts,
                         const std::vector<Count>& os) {
    for (Count p = bs; p + len <= bs + tf; ++p) {
        bool ok = true;
        for (Count x = p + 1; x < p + len && ok; ++x)
            if (mod(x, h) == 0) ok = false;  // horizon wrap
        for (std::size_t i = 0; i < ts.size() && ok; ++i)
            for (Count x = p + 1; x < p + len && ok; ++x)
                if (mod(x - os[i], h) % ts[i] == 0) ok = false;
        if (ok) return p;
    }
    return bs;
}

/// Kuhn-style augmenting path for the rider assignment fallback.
inline bool augment(std::size_t u, const std::vector<std::vector<std::size_t>>& adj, std::vector<long>& owner,
                    std::vector<char>& seen) {
    for (auto p : adj[u]) {
        if (seen[p]) continue;
        seen[p] = 1;
        if (owner[p] < 0 || augment(static_cast<std::size_t>(owner[p]), adj, owner, seen)) {
            owner[p] = static_cast<long>(u);
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Product superposition for arbitrary integer coherence times and offsets,
/// over the lcm horizon.
inline std::pair<Schedule, DofCount> schedule_bc_general(const OrderedSubset& sub, const BcConfig& cfg) {
    cfg.validate();
    const auto js = detail::bc_members(sub, cfg);
    if (js.empty()) throw InvalidConfig("schedule needs at least one member");

    Schedule s;
    for (const auto& r : cfg.receivers) {
        s.coherence.push_back(r.coherence);
        s.offset.push_back(r.offset);
        s.dims_cap.push_back(std::min(cfg.tx_antennas, r.antennas));
    }
    s.max_pilot_antennas = cfg.tx_antennas;
    std::vector<Count> ts, os;
    for (auto j : js) {
        ts.push_back(cfg.receivers[j].coherence);
        os.push_back(cfg.receivers[j].offset);
    }
    const Count h = detail::member_lcm(ts);
    s.horizon = h;
    // Non-members still need a horizon they divide for the block check.
    for (std::size_t e = 0; e < cfg.size(); ++e)
        if (h % s.coherence[e] != 0) {
            s.coherence[e] = h;
            s.offset[e] = 0;
        }

    const std::size_t f = js.front();
    const Count nf = cfg.nstar_of(f), tf = ts.front(), of = os.front();

    // One pilot per block of the fastest member, in block order starting at its offset.
    struct PilotSlot {
        Count start;
        std::vector<std::size_t> serves;
        std::optional<std::size_t> rider;
    };
    std::vector<PilotSlot> pilots;
    for (Count b = 0; b < h / tf; ++b) {
        const Count bs = of + b * tf;
        pilots.push_back({detail::place_pilot(bs, tf, nf, h, ts, os), {f}, std::nullopt});
    }
    auto pilot_seg = [&](const PilotSlot& p) { return Segment{detail::mod(p.start, h), nf, SegmentKind::Pilot, nf, {}, {}}; };

    // Pilots fully inside block b of member i, in order of position within the block.
    auto pilots_in_blocks = [&](std::size_t i) {
        std::vector<std::vector<std::size_t>> per(static_cast<std::size_t>(h / ts[i]));
        std::vector<std::pair<Count, std::size_t>> keyed;
        for (std::size_t p = 0; p < pilots.size(); ++p) {
            if (nf == 0) break;
            auto blk = detail::block_of(pilot_seg(pilots[p]), ts[i], os[i], h);
            if (!blk) continue;
            keyed.push_back({detail::mod(pilots[p].start - os[i], h), p});
        }
        std::sort(keyed.begin(), keyed.end());
        for (auto [pos, p] : keyed) per[static_cast<std::size_t>(pos / ts[i])].push_back(p);
        return per;
    };

    std::vector<Count> target(js.size(), 0);
    std::vector<std::vector<std::size_t>> eligible(js.size());
    for (std::size_t i = 1; i < js.size(); ++i) {
        target[i] = h / ts[i - 1] - h / ts[i];
        if (target[i] <= 0 || nf == 0) {
            target[i] = std::max<Count>(target[i], 0);
            continue;
        }
        for (const auto& blk : pilots_in_blocks(i)) {
            if (blk.empty()) continue;
            pilots[blk.front()].serves.push_back(js[i]);
            for (std::size_t q = 1; q < blk.size(); ++q) eligible[i].push_back(blk[q]);
        }
    }

    // Greedy, fastest member first; fall back to bipartite matching if short.
    bool greedy_ok = true;
    for (std::size_t i = 1; i < js.size() && greedy_ok; ++i) {
        Count got = 0;
        for (auto p : eligible[i]) {
            if (got == target[i]) break;
            if (pilots[p].rider) continue;
            pilots[p].rider = i;
            ++got;
        }
        greedy_ok = got == target[i];
    }
    if (!greedy_ok) {
        for (auto& p : pilots) p.rider.reset();
        std::vector<std::vector<std::size_t>> adj;
        std::vector<std::size_t> unit_member;
        for (std::size_t i = 1; i < js.size(); ++i)
            for (Count c = 0; c < target[i]; ++c) {
                adj.push_back(eligible[i]);
                unit_member.push_back(i);
            }
        std::vector<long> owner(pilots.size(), -1);
        for (std::size_t u = 0; u < adj.size(); ++u) {
            std::vector<char> seen(pilots.size(), 0);
            detail::augment(u, adj, owner, seen);
        }
        for (std::size_t p = 0; p < pilots.size(); ++p)
            if (owner[p] >= 0) pilots[p].rider = unit_member[static_cast<std::size_t>(owner[p])];
    }

    // Lay out the horizon: pilots where placed, the fastest member's data elsewhere.
    std::vector<std::pair<Count, std::size_t>> order;
    for (std::size_t p = 0; p < pilots.size(); ++p) order.push_back({detail::mod(pilots[p].start, h), p});
    std::sort(order.begin(), order.end());
    std::vector<Segment> segs;
    auto data = [&](Count a, Count b) {
        // Split fastest-member data at its own transitions (and at the horizon wrap).
        while (a < b) {
            Count next_boundary = a + (tf - detail::mod(a - of, h) % tf);
            Count e = std::min(b, next_boundary);
            segs.push_back(Segment{a, e - a, SegmentKind::Data, 0, {f}, {{f, nf, nf * (e - a)}}});
            a = e;
        }
    };
    Count cursor = 0;
    for (auto [pos, p] : order) {
        if (nf == 0) break;
        data(cursor, pos);
        Segment seg = pilot_seg(pilots[p]);
        seg.serves = pilots[p].serves;
        std::sort(seg.serves.begin(), seg.serves.end());
        if (pilots[p].rider) {
            const auto j = js[*pilots[p].rider];
            const Count dims = std::min(cfg.receivers[j].antennas, nf);
            seg.kind = SegmentKind::PsData;
            seg.credits.push_back({j, dims, nf * dims});
        }
        if (pos + nf > h) throw OracleMismatch("no pilot position inside a block avoids the horizon wrap");
        segs.push_back(std::move(seg));
        cursor = pos + nf;
    }
    data(cursor, h);
    s.segments = std::move(segs);
    check_schedule(s);
    auto c = detail::tally(s);
    return {std::move(s), std::move(c)};
}

/// Two transmit antennas, two single-antenna receivers, receiver 2 offset by T1/2.
/// With ps_only the blind alignment stage is skipped and plain product
/// superposition over the staggered blocks is used instead.
inline std::pair<Schedule, DofCount> schedule_staggered(Count t1, Count t2, bool ps_only = false) {
    staggered_pairs(t1, t2);  // precondition checks
    if (ps_only) {
        BcConfig cfg{2, {{1, t1, 0}, {1, t2, t1 / 2}}};
        return schedule_bc_general(OrderedSubset{0, 1}, cfg);
    }
    Schedule s;
    s.horizon = t2;
    s.coherence = {t1, t2};
    s.offset = {0, t1 / 2};
    s.dims_cap = {2, 2};  // alignment decodes a 1x2 channel in two states
    s.max_pilot_antennas = 2;
    const Count half = (t1 - 2) / 2;
    const std::vector<std::size_t> both{0, 1};
    auto bia = [&](Count start, Count len, Count credit) {
        Segment seg{start, len, SegmentKind::BiaData, 0, both, {}};
        // Alignment blocks decode two interference-free dimensions per receiver.
        seg.credits = {{0, 2, credit}, {1, 2, credit}};
        detail::push(s, std::move(seg));
    };
    // First receiver-1 interval: two mid-interval pilots trained by both receivers.
    bia(0, half, half);
    detail::push(s, Segment{half, 1, SegmentKind::Pilot, 1, both, {}});
    detail::push(s, Segment{half + 1, 1, SegmentKind::Pilot, 1, both, {}});
    bia(half + 2, half, half);
    // Second interval: closing alignment slots, then a reused pilot and receiver-1 data.
    bia(t1, half, 0);
    detail::push(s, Segment{t1 + half, 2, SegmentKind::PsData, 2, {0}, {{1, 1, 2}}});
    detail::push(s, Segment{t1 + half + 2, half, SegmentKind::Data, 0, {0}, {{0, 1, half}}});
    for (Count t = 2 * t1; t < t2; t += t1) {
        detail::push(s, Segment{t, 1, SegmentKind::PsData, 1, {0}, {{1, 1, 1}}});
        detail::push(s, Segment{t + 1, t1 - 1, SegmentKind::Data, 0, {0}, {{0, 1, t1 - 1}}});
    }
    check_schedule(s);
    auto c = detail::tally(s);
    return {std::move(s), std::move(c)};
}

/// Pilot-per-transition multiple access construction over T_max of the members.
inline std::pair<Schedule, DofCount> schedule_mac(const OrderedSubset& priority, const MacConfig& cfg) {
    cfg.validate();
    priority.check_against(cfg.size());
    if (priority.empty()) throw InvalidConfig("schedule needs at least one member");
    const auto is = sort_by_coherence(priority, [&](std::size_t j) { return cfg.transmitters[j].coherence; });
    detail::require_nested_members(cfg, is);
    for (auto j : is)
        if (cfg.transmitters[j].coherence < 2 * cfg.rx_antennas)
            throw PreconditionViolation("transmitter " + std::to_string(j + 1) + ": T < 2N");

    const auto mp = mprime_allocation(priority, cfg);
    std::vector<Count> mprime(cfg.size(), 0);
    for (std::size_t i = 0; i < priority.size(); ++i) mprime[priority[i]] = mp[i];

    Schedule s;
    for (std::size_t k = 0; k < cfg.size(); ++k) {
        s.coherence.push_back(cfg.transmitters[k].coherence);
        s.offset.push_back(0);
        s.dims_cap.push_back(mprime[k]);
    }
    Count total = 0;
    for (auto m : mp) total += m;
    s.max_pilot_antennas = total;
    const auto T = [&](std::size_t j) { return cfg.transmitters[j].coherence; };
    s.horizon = T(is.back());
    const Count t1 = T(is.front());
    for (std::size_t k = 0; k < cfg.size(); ++k)
        if (s.horizon % s.coherence[k] != 0) s.coherence[k] = s.horizon;  // non-member, never credited

    for (Count t = 0; t < s.horizon; t += t1) {
        std::size_t m = 1;
        while (m < is.size() && t % T(is[m]) == 0) ++m;
        Count cost = 0;
        for (std::size_t n = 0; n < m; ++n) cost += mprime[is[n]];
        if (cost >= t1)
            throw PreconditionViolation("pilot cost " + std::to_string(cost) + " leaves no data slots in an interval of " +
                                        std::to_string(t1));
        Count cursor = t;
        for (std::size_t n = 0; n < m; ++n) {
            const auto j = is[n];
            detail::push(s, Segment{cursor, mprime[j], SegmentKind::Pilot, mprime[j], {j}, {}});
            cursor += mprime[j];
        }
        Segment data{cursor, t1 - cost, SegmentKind::Data, 0, {}, {}};
        for (auto j : is)
            if (mprime[j] > 0) {
                data.serves.push_back(j);
                data.credits.push_back({j, mprime[j], mprime[j] * (t1 - cost)});
            }
        detail::push(s, std::move(data));
    }
    check_schedule(s);
    auto c = detail::tally(s);
    return {std::move(s), std::move(c)};
}

/// One CSV line per segment: start,length,kind,entity,dims (entities 1-based,
/// joined with '+'). Training rows list the trained entities and antenna count.
inline std::string dump_csv(const Schedule& s) {
    std::ostringstream os;
    os << "start,length,kind,entity,dims\n";
    auto join = [](const auto& xs, auto proj) {
        std::string out;
        for (const auto& x : xs) {
            if (!out.empty()) out += '+';
            out += std::to_string(proj(x));
        }
        return out;
    };
    for (const auto& seg : s.segments) {
        os << seg.start << ',' << seg.length << ',' << to_string(seg.kind) << ',';
        if (seg.kind == SegmentKind::Pilot) {
            os << join(seg.serves, [](std::size_t e) { return e + 1; }) << ',' << seg.antennas;
        } else {
            os << join(seg.credits, [](const Credit& c) { return c.entity + 1; }) << ','
               << join(seg.credits, [](const Credit& c) { return c.dims; });
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace cohdof
