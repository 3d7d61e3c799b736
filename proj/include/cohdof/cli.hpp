#pragma once

// Command driver behind the coherence_dof executable. Kept in the library so
// tests can call run() directly.

#include "cohdof/bc_regions.hpp"
#include "cohdof/config_io.hpp"
#include "cohdof/geometry.hpp"
#include "cohdof/linksim.hpp"
#include "cohdof/mac_regions.hpp"
#include "cohdof/svg.hpp"
#include "cohdof/verify.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace cohdof {

enum ExitCode { kOk = 0, kInvalidConfig = 1, kPrecondition = 2, kOracleMismatch = 3 };

struct RunOptions {
    std::string command;  // region-bc | region-mac | verify | simulate | plot
    std::string input;
    std::string out = ".";
    bool svg = true;
    bool grid = false;
    std::optional<std::uint64_t> seed{};
};

inline constexpr std::size_t kMaxBcEntities = 6;
inline constexpr std::size_t kMaxMacEntities = 5;

namespace cli_detail {

namespace fs = std::filesystem;

inline void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InvalidConfig("cannot write '" + p.string() + "'");
    f << text;
}

inline std::string points_csv(std::size_t k, const std::vector<std::pair<std::string, std::vector<DofPoint>>>& rows) {
    std::string s = "region";
    for (std::size_t i = 1; i <= k; ++i) s += ",d" + std::to_string(i);
    s += '\n';
    for (const auto& [name, pts] : rows)
        for (const auto& p : pts) {
            s += name;
            for (const auto& c : p) s += "," + c.str();
            s += '\n';
        }
    return s;
}

inline std::string halfspaces_csv(std::size_t k, const std::string& name, const RegionH& h) {
    std::string s = "region";
    for (std::size_t i = 1; i <= k; ++i) s += ",c" + std::to_string(i);
    s += ",rhs\n";
    for (const auto& hs : h.halfspaces) {
        s += name;
        for (const auto& c : hs.coeffs) s += "," + c.str();
        s += "," + hs.rhs.str() + '\n';
    }
    return s;
}

inline std::string region_svg(const RegionV& v, const std::optional<RegionH>& h, const std::string& title) {
    std::vector<svg::Polygon> polys{svg::to_polygon(svg::closure_corners(v), "achievable", "#1f77b4")};
    if (h) polys.push_back(svg::to_polygon(vertices(*h), "outer", "#d62728"));
    return svg::region_plot(polys, title);
}

struct Regions {
    RegionV achievable;
    std::optional<RegionH> outer;
    std::string label;
    std::vector<std::string> notes;
};

inline Regions bc_regions_of(const BcConfig& c) {
    if (c.size() > kMaxBcEntities) throw InvalidConfig("at most 6 receivers are supported");
    Regions r;
    r.label = detail::describe(c);
    if (c.nested()) {
        r.achievable = achievable_region_bc(c);
        r.outer = outer_region_bc(c);
        r.notes.push_back(std::string("optimality case: ") + to_string(optimality_case(c, 64)));
    } else {
        // Unaligned or non-integer ratios: short-pilot tuples still apply, no outer bound.
        std::vector<DofPoint> pts;
        for (const auto& s : all_subsets(c.size())) pts.push_back(arbitrary_tuple(OrderedSubset(s), c));
        r.achievable = make_region_v(c.size(), pts);
        r.notes.push_back("outer bound needs aligned integer-multiple coherence times; achievable region only");
    }
    return r;
}

inline Regions mac_regions_of(const MacConfig& c) {
    if (c.size() > kMaxMacEntities) throw InvalidConfig("at most 5 transmitters are supported");
    c.require_long_coherence();
    Regions r;
    r.label = detail::describe(c);
    r.achievable = achievable_region_mac(c);
    r.outer = outer_region_mac(c);
    return r;
}

inline int write_regions(const Regions& r, const RunOptions& opts, std::ostream& log) {
    const fs::path out(opts.out);
    fs::create_directories(out);
    const std::size_t k = r.achievable.dim;
    std::vector<std::pair<std::string, std::vector<DofPoint>>> rows;
    std::vector<DofPoint> ach{zero_point(k)};
    ach.insert(ach.end(), r.achievable.generators.begin(), r.achievable.generators.end());
    rows.push_back({"achievable", ach});
    std::ostringstream summary;
    summary << r.label << '\n';
    for (const auto& n : r.notes) summary << n << '\n';
    summary << "achievable generators: " << r.achievable.generators.size() << '\n';
    summary << "achievable max sum: " << max_sum(r.achievable).str() << '\n';
    if (r.outer) {
        summary << "outer faces: " << r.outer->halfspaces.size() << '\n';
        summary << "outer max sum: " << max_sum(*r.outer).str() << '\n';
        if (k <= 4) {
            rows.push_back({"outer", vertices(*r.outer)});
            summary << "inner within outer: " << (hull_subset_of(r.achievable, *r.outer) ? "yes" : "no") << '\n';
            summary << (region_equal(r.achievable, *r.outer) ? "regions coincide"
                                                             : "gap between achievable and outer regions")
                    << '\n';
        } else {
            summary << "vertex enumeration skipped above dimension 4\n";
        }
        write_file(out / "halfspaces.csv", halfspaces_csv(k, "outer", *r.outer));
    } else {
        write_file(out / "halfspaces.csv", halfspaces_csv(k, "outer", RegionH{k, {}}));
    }
    write_file(out / "vertices.csv", points_csv(k, rows));
    write_file(out / "summary.txt", summary.str());
    if (opts.svg && k == 2) write_file(out / "region.svg", region_svg(r.achievable, r.outer, r.label));
    log << summary.str();
    return kOk;
}

inline int do_region(const RunOptions& opts, bool bc, std::ostream& log) {
    auto doc = load_config(opts.input);
    if (doc.is_bc() != bc) throw InvalidConfig(std::string("config type must be '") + (bc ? "bc" : "mac") + "'");
    return write_regions(bc ? bc_regions_of(doc.bc()) : mac_regions_of(doc.mac()), opts, log);
}

inline int do_verify(const RunOptions& opts, std::ostream& log) {
    VerifyReport rep;
    if (opts.grid) {
        rep = verify_grid();
    } else {
        auto doc = load_config(opts.input);
        if (doc.is_bc()) {
            if (doc.bc().size() > kMaxBcEntities) throw InvalidConfig("at most 6 receivers are supported");
            rep = verify_bc(doc.bc());
        } else {
            if (doc.mac().size() > kMaxMacEntities) throw InvalidConfig("at most 5 transmitters are supported");
            rep = verify_mac(doc.mac());
        }
    }
    const fs::path out(opts.out);
    fs::create_directories(out);
    write_file(out / "verify.txt", rep.text());
    log << rep.text();
    return rep.ok() ? kOk : kOracleMismatch;
}

inline std::vector<RatePoint> run_sim(const ConfigDoc& doc, const RunOptions& opts, SimConfig& sc) {
    if (!doc.sim) throw InvalidConfig("config has no 'sim' block");
    sc = doc.sim->sim;
    if (opts.seed) sc.seed = *opts.seed;
    return simulate(sim_target(doc), sc);
}

inline int do_simulate(const RunOptions& opts, std::ostream& log) {
    auto doc = load_config(opts.input);
    SimConfig sc;
    auto pts = run_sim(doc, opts, sc);
    const fs::path out(opts.out);
    fs::create_directories(out);
    const auto csv = rates_csv(pts, sc.scheme, sc.trials, sc.seed);
    write_file(out / "rates.csv", csv);
    log << csv;
    if (pts.size() >= 2)
        for (std::size_t e = 0; e < pts.front().rate.size(); ++e)
            log << "slope entity " << e + 1 << ": " << estimate_slope(pts, e) << '\n';
    return kOk;
}

inline int do_plot(const RunOptions& opts, std::ostream& log) {
    auto doc = load_config(opts.input);
    const fs::path out(opts.out);
    fs::create_directories(out);
    bool wrote = false;
    const std::size_t k = doc.is_bc() ? doc.bc().size() : doc.mac().size();
    if (k == 2) {
        auto r = doc.is_bc() ? bc_regions_of(doc.bc()) : mac_regions_of(doc.mac());
        write_file(out / "region.svg", region_svg(r.achievable, r.outer, r.label));
        log << "wrote region.svg\n";
        wrote = true;
    }
    if (doc.sim) {
        SimConfig sc;
        auto pts = run_sim(doc, opts, sc);
        write_file(out / "rates.svg", svg::rate_plot(pts, to_string(sc.scheme)));
        log << "wrote rates.svg\n";
        wrote = true;
    }
    if (!wrote) throw InvalidConfig("nothing to plot: need two entities or a 'sim' block");
    return kOk;
}

}  // namespace cli_detail

/// Runs one command; returns the process exit status.
inline int run(const RunOptions& opts, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
    try {
        if (opts.command != "verify" || !opts.grid)
            if (opts.input.empty()) throw InvalidConfig("--input is required for '" + opts.command + "'");
        if (opts.command == "region-bc") return cli_detail::do_region(opts, true, log);
        if (opts.command == "region-mac") return cli_detail::do_region(opts, false, log);
        if (opts.command == "verify") return cli_detail::do_verify(opts, log);
        if (opts.command == "simulate") return cli_detail::do_simulate(opts, log);
        if (opts.command == "plot") return cli_detail::do_plot(opts, log);
        throw InvalidConfig("unknown command '" + opts.command + "'");
    } catch (const PreconditionViolation& e) {
        err << "precondition violated: " << e.what() << '\n';
        return kPrecondition;
    } catch (const OracleMismatch& e) {
        err << "oracle mismatch: " << e.what() << '\n';
        return kOracleMismatch;
    } catch (const EstimabilityViolation& e) {
        err << "oracle mismatch: " << e.what() << '\n';
        return kOracleMismatch;
    } catch (const std::exception& e) {
        err << "invalid config: " << e.what() << '\n';
        return kInvalidConfig;
    }
}

}  // namespace cohdof
