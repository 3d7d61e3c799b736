#pragma once

// Oracle-versus-closed-form verification, per config and over the built-in grid.

#include "cohdof/bc_regions.hpp"
#include "cohdof/mac_regions.hpp"
#include "cohdof/scheduler.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace cohdof {

struct VerifyReport {
    std::size_t checks = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }

    void record(bool pass, const std::string& what) {
        ++checks;
        if (!pass) failures.push_back(what);
    }
    void merge(const VerifyReport& o) {
        checks += o.checks;
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    }
    std::string text() const {
        std::ostringstream os;
        for (const auto& f : failures) os << "FAIL " << f << '\n';
        os << (ok() ? "PASS" : "FAIL") << ' ' << checks - failures.size() << '/' << checks << " checks\n";
        return os.str();
    }
};

namespace detail {

inline std::string subset_label(const std::vector<std::size_t>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
    return out + "}";
}

inline std::string describe(const BcConfig& c) {
    std::string s = "bc M=" + std::to_string(c.tx_antennas) + " N=(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c.receivers[i].antennas);
    s += ") T=(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c.receivers[i].coherence);
    s += ")";
    bool off = false;
    for (const auto& r : c.receivers) off = off || r.offset != 0;
    if (off) {
        s += " offset=(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c.receivers[i].offset);
        s += ")";
    }
    return s;
}

inline std::string describe(const MacConfig& c) {
    std::string s = "mac N=" + std::to_string(c.rx_antennas) + " M=(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c.transmitters[i].antennas);
    s += ") T=(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c.transmitters[i].coherence);
    return s + ")";
}

/// Runs one oracle comparison, turning construction errors into failures.
inline void compare(VerifyReport& rep, const std::string& what, const std::function<DofPoint()>& oracle,
                    const DofPoint& expected) {
    try {
        auto got = oracle();
        rep.record(got == expected, what + ": oracle " + to_string(got) + " vs closed form " + to_string(expected));
    } catch (const Error& e) {
        rep.record(false, what + ": " + e.what());
    }
}

}  // namespace detail

/// Every nonempty subset: D1/D2 schedules when nested, the general schedule whenever
/// the lcm horizon is small enough.
inline VerifyReport verify_bc(const BcConfig& cfg, bool include_general = true) {
    cfg.validate();
    VerifyReport rep;
    const auto name = detail::describe(cfg);
    for (const auto& s : all_subsets(cfg.size())) {
        if (s.empty()) continue;
        OrderedSubset sub(s);
        const auto label = name + " J=" + detail::subset_label(s);
        if (cfg.nested()) {
            detail::compare(rep, label + " D1", [&] { return schedule_bc(sub, cfg, BcVariant::D1).second.normalized(); },
                            d1_tuple(sub, cfg));
            detail::compare(rep, label + " D2", [&] { return schedule_bc(sub, cfg, BcVariant::D2).second.normalized(); },
                            d2_tuple(sub, cfg));
        }
        if (include_general)
            detail::compare(rep, label + " general",
                            [&] { return schedule_bc_general(sub, cfg).second.normalized(); }, arbitrary_tuple(sub, cfg));
    }
    return rep;
}

/// Every ordered subset through the MAC schedule.
inline VerifyReport verify_mac(const MacConfig& cfg) {
    cfg.validate();
    cfg.require_long_coherence();
    VerifyReport rep;
    const auto name = detail::describe(cfg);
    const bool same = cfg.identical_coherence();
    for (const auto& s : ordered_subsets(cfg.size())) {
        OrderedSubset pr(s);
        const auto label = name + " priority=" + detail::subset_label(s);
        const auto expected = mac_hetero_tuple(pr, cfg);
        detail::compare(rep, label, [&] { return schedule_mac(pr, cfg).second.normalized(); }, expected);
        if (same)
            rep.record(expected == mac_identical_tuple(pr, cfg, cfg.transmitters.front().coherence),
                       label + ": heterogeneous formula does not reduce to the identical-T formula");
    }
    return rep;
}

inline const std::vector<Count>& grid_coherence_times() {
    static const std::vector<Count> ts{2, 4, 6, 8, 12, 24, 48};
    return ts;
}

/// Ascending chains of length k from the grid set where each ratio is an integer.
inline std::vector<std::vector<Count>> coherence_chains(std::size_t k) {
    std::vector<std::vector<Count>> out;
    std::function<void(std::vector<Count>&)> rec = [&](std::vector<Count>& cur) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (auto t : grid_coherence_times()) {
            if (!cur.empty() && (t < cur.back() || t % cur.back() != 0)) continue;
            cur.push_back(t);
            rec(cur);
            cur.pop_back();
        }
    };
    std::vector<Count> cur;
    rec(cur);
    return out;
}

/// Nested BC grid: M, N_k in 1..4, chains of k coherence times, T_j >= 2 max{M, N_j}.
inline std::vector<BcConfig> bc_grid(std::size_t k) {
    std::vector<BcConfig> out;
    for (const auto& chain : coherence_chains(k))
        for (Count m = 1; m <= 4; ++m) {
            std::vector<Count> n(k, 1);
            for (;;) {
                BcConfig c{m, {}};
                bool ok = true;
                for (std::size_t i = 0; i < k; ++i) {
                    c.receivers.push_back({n[i], chain[i], 0});
                    ok = ok && chain[i] >= 2 * std::max(m, n[i]);
                }
                if (ok) out.push_back(c);
                std::size_t pos = 0;
                while (pos < k && n[pos] == 4) n[pos++] = 1;
                if (pos == k) break;
                ++n[pos];
            }
        }
    return out;
}

/// Two-transmitter MAC grid: M_k in 1..4, N in 2..4, nested T's (either order) with T >= 2N.
inline std::vector<MacConfig> mac_grid() {
    std::vector<MacConfig> out;
    const auto& ts = grid_coherence_times();
    for (Count n = 2; n <= 4; ++n)
        for (Count m1 = 1; m1 <= 4; ++m1)
            for (Count m2 = 1; m2 <= 4; ++m2)
                for (auto t1 : ts)
                    for (auto t2 : ts) {
                        if (t1 < 2 * n || t2 < 2 * n) continue;
                        if (std::max(t1, t2) % std::min(t1, t2) != 0) continue;
                        out.push_back(MacConfig{n, {{m1, t1}, {m2, t2}}});
                    }
    return out;
}

/// The full built-in grid: nested BC (K = 2, 3) through D1/D2 and MAC (K = 2).
inline VerifyReport verify_grid() {
    VerifyReport rep;
    for (std::size_t k : {2u, 3u})
        for (const auto& c : bc_grid(k)) rep.merge(verify_bc(c, false));
    for (const auto& c : mac_grid()) rep.merge(verify_mac(c));
    return rep;
}

}  // namespace cohdof
