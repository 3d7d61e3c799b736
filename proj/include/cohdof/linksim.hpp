#pragma once

// Monte-Carlo link simulator: Rayleigh block fading, LMMSE pilot estimates and
// the estimated-channel (worst-case Gaussian noise) rate bound.
//
// Reproducibility: trial t draws from its own mt19937_64 seeded with
// splitmix64(seed ^ splitmix64(t)). All SNR points reuse the same draws
// (common random numbers), and means are reduced in trial order, so results
// do not depend on the worker count.

#include "cohdof/errors.hpp"
#include "cohdof/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace cohdof {

enum class SimScheme { P2P, BcPsD1, BcPsD2, MacPilot };

inline const char* to_string(SimScheme s) {
    switch (s) {
        case SimScheme::P2P: return "p2p";
        case SimScheme::BcPsD1: return "bc-ps-d1";
        case SimScheme::BcPsD2: return "bc-ps-d2";
        case SimScheme::MacPilot: return "mac-pilot";
    }
    return "?";
}

struct SimConfig {
    std::vector<double> snr_db;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    SimScheme scheme = SimScheme::P2P;

    void validate() const {
        if (snr_db.empty()) throw InvalidConfig("simulation needs at least one SNR point");
        for (std::size_t i = 1; i < snr_db.size(); ++i)
            if (!(snr_db[i] > snr_db[i - 1])) throw InvalidConfig("SNR points must be strictly increasing");
        if (trials < 1) throw InvalidConfig("trials must be >= 1");
    }
};

/// Per-entity mean rate (bits per slot) and its standard error at one SNR.
struct RatePoint {
    double snr_db = 0;
    std::vector<double> rate;
    std::vector<double> stderr_;
};

namespace sim {

using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// CN(0,1) source built from paired uniforms (Box-Muller), independent of the
/// standard library's distribution implementations.
class Gaussian {
public:
    explicit Gaussian(std::uint64_t seed) : eng_(seed) {}

    cd next() {
        const double u1 = 1.0 - unit();  // (0, 1]
        const double u2 = unit();
        const double r = std::sqrt(-std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    Mat matrix(Eigen::Index rows, Eigen::Index cols) {
        Mat m(rows, cols);
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = next();
        return m;
    }

private:
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    std::mt19937_64 eng_;
};

inline Gaussian trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return Gaussian(splitmix64(seed ^ splitmix64(trial)));
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double mmse_error_variance(double rho) { return 1.0 / (1.0 + rho); }

/// LMMSE estimate from one pilot slot per column at power rho, unit-variance prior.
inline Mat estimate(const Mat& h, const Mat& noise, double rho) {
    const double s = std::sqrt(rho);
    return (s / (1.0 + rho)) * (s * h + noise);
}

/// log2 det(I + snr_per_stream / (1 + rho s2) Hhat Hhat^H).
inline double log2det_rate(const Mat& hhat, double snr_per_stream, double interference) {
    const Eigen::Index n = hhat.rows();
    Mat a = Mat::Identity(n, n) + (snr_per_stream / (1.0 + interference)) * hhat * hhat.adjoint();
    Eigen::LLT<Mat> llt(a);
    double acc = 0;
    for (Eigen::Index i = 0; i < n; ++i) acc += std::log2(std::real(llt.matrixL()(i, i)));
    return 2.0 * acc;
}

inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("COHERENCE_DOF_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

/// Runs fn(trial, out) for every trial, where out has `width` doubles, and
/// returns the per-trial rows in trial order.
template <class Fn>
std::vector<std::vector<double>> run_trials(std::uint64_t trials, std::size_t width, Fn&& fn) {
    std::vector<std::vector<double>> rows(trials, std::vector<double>(width, 0.0));
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), trials));
    if (workers <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t) fn(t, rows[t]);
        return rows;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::uint64_t t = w; t < trials; t += workers) fn(t, rows[t]);
        });
    for (auto& th : pool) th.join();
    return rows;
}

/// Rows hold [snr][entity] flattened; reduces them into RatePoints.
inline std::vector<RatePoint> reduce(const std::vector<std::vector<double>>& rows, const std::vector<double>& snr_db,
                                     std::size_t entities) {
    std::vector<RatePoint> out;
    const double n = static_cast<double>(rows.size());
    for (std::size_t s = 0; s < snr_db.size(); ++s) {
        RatePoint p;
        p.snr_db = snr_db[s];
        for (std::size_t e = 0; e < entities; ++e) {
            const std::size_t col = s * entities + e;
            double sum = 0;
            for (const auto& r : rows) sum += r[col];
            const double mean = sum / n;
            double ss = 0;
            for (const auto& r : rows) ss += (r[col] - mean) * (r[col] - mean);
            const double se = rows.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
            p.rate.push_back(mean);
            p.stderr_.push_back(se);
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace sim

/// Training then data over one coherence block: N* pilot slots, T - N* data slots.
inline std::vector<RatePoint> simulate_p2p(Count m, Count n, Count t, const SimConfig& cfg) {
    cfg.validate();
    if (m < 1 || n < 1) throw InvalidConfig("antenna counts must be >= 1");
    if (t < 2) throw PreconditionViolation("point-to-point simulation needs T >= 2");
    const Count ns = nstar(m, n, t);
    const double frac = 1.0 - static_cast<double>(ns) / static_cast<double>(t);
    auto rows = sim::run_trials(cfg.trials, cfg.snr_db.size(), [&](std::uint64_t trial, std::vector<double>& out) {
        auto g = sim::trial_rng(cfg.seed, trial);
        const sim::Mat h = g.matrix(n, ns);  // only N* transmit antennas are used
        const sim::Mat w = g.matrix(n, ns);
        for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
            const double rho = sim::db_to_linear(cfg.snr_db[s]);
            const sim::Mat hh = sim::estimate(h, w, rho);
            out[s] = frac * sim::log2det_rate(hh, rho / static_cast<double>(ns), rho * sim::mmse_error_variance(rho));
        }
    });
    return sim::reduce(rows, cfg.snr_db, 1);
}

/// Two-receiver product superposition over one slow-receiver block.
/// Receiver 1 (shorter T) trains on the rider-modulated pilot and decodes its
/// data coherently; receiver 2 keeps its first-interval estimate and decodes
/// the rider layer.
inline std::vector<RatePoint> simulate_bc_ps(const BcConfig& bc, bool d1, const SimConfig& cfg) {
    cfg.validate();
    bc.validate();
    if (bc.size() != 2) throw InvalidConfig("product superposition simulation needs exactly two receivers");
    if (!bc.nested()) throw PreconditionViolation("coherence times must be aligned integer multiples");
    const auto order = bc.coherence_order();
    const std::size_t fast = order[0], slow = order[1];
    const Count t1 = bc.receivers[fast].coherence, t2 = bc.receivers[slow].coherence;
    if (t2 / t1 < 2) throw PreconditionViolation("product superposition needs T2/T1 >= 2");
    const Count n1 = bc.nstar_of(fast);
    if (n1 < 1) throw PreconditionViolation("fast receiver has no usable dimension");
    const Count nr1 = bc.receivers[fast].antennas, nr2 = bc.receivers[slow].antennas;
    const Count wide = std::min({bc.tx_antennas, std::max(nr1, nr2), t1});
    const Count p0 = d1 ? wide : n1;  // first-interval pilot width
    const Count dims = d1 ? std::min({bc.tx_antennas, nr2, t1}) : std::min(nr2, n1);
    const Count a = std::max(n1, dims);  // antennas carrying the rider layer
    const Count intervals = t2 / t1;

    auto rows = sim::run_trials(cfg.trials, cfg.snr_db.size() * 2, [&](std::uint64_t trial, std::vector<double>& out) {
        auto g = sim::trial_rng(cfg.seed, trial);
        const sim::Mat h2 = g.matrix(nr2, p0);
        const sim::Mat w2 = g.matrix(nr2, p0);
        const sim::Mat h1 = g.matrix(nr1, p0);
        const sim::Mat w1 = g.matrix(nr1, p0);
        std::vector<sim::Mat> g1, gw;  // per rider interval: equivalent channel, pilot noise
        for (Count k = 1; k < intervals; ++k) {
            const sim::Mat hk = g.matrix(nr1, a);
            const sim::Mat v = g.matrix(a, n1);
            g1.push_back(hk * v / std::sqrt(static_cast<double>(a)));
            gw.push_back(g.matrix(nr1, n1));
        }
        for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
            const double rho = sim::db_to_linear(cfg.snr_db[s]);
            const double interf = rho * sim::mmse_error_variance(rho);
            const double per = rho / static_cast<double>(n1);
            const sim::Mat h1hat = sim::estimate(h1, w1, rho).leftCols(n1);
            double r1 = static_cast<double>(t1 - p0) * sim::log2det_rate(h1hat, per, interf);
            for (std::size_t k = 0; k < g1.size(); ++k) {
                const sim::Mat ghat = sim::estimate(g1[k], gw[k], rho);
                r1 += static_cast<double>(t1 - n1) * sim::log2det_rate(ghat, per, interf);
            }
            const sim::Mat h2hat = sim::estimate(h2, w2, rho).leftCols(dims);
            const double r2 = static_cast<double>((intervals - 1) * n1) *
                              sim::log2det_rate(h2hat, rho / static_cast<double>(a), interf);
            out[2 * s + fast] = r1 / static_cast<double>(t2);
            out[2 * s + slow] = r2 / static_cast<double>(t2);
        }
    });
    return sim::reduce(rows, cfg.snr_db, 2);
}

/// Per-antenna pilots from the active transmitters, then zero-forcing.
inline std::vector<RatePoint> simulate_mac_pilot(const MacConfig& mac, const OrderedSubset& priority,
                                                 const SimConfig& cfg) {
    cfg.validate();
    mac.validate();
    if (mac.size() > 2) throw InvalidConfig("MAC simulation supports at most two transmitters");
    if (!mac.identical_coherence()) throw PreconditionViolation("MAC simulation needs identical coherence times");
    mac.require_long_coherence();
    priority.check_against(mac.size());
    const Count t = mac.transmitters.front().coherence;
    const auto mp = mprime_allocation(priority, mac);
    std::vector<Count> mprime(mac.size(), 0);
    for (std::size_t i = 0; i < priority.size(); ++i) mprime[priority[i]] = mp[i];
    Count total = 0, active = 0;
    for (auto x : mprime) {
        total += x;
        active += x > 0 ? 1 : 0;
    }
    const Count n = mac.rx_antennas;
    const double frac = 1.0 - static_cast<double>(total) / static_cast<double>(t);
    const std::size_t k = mac.size();

    auto rows = sim::run_trials(cfg.trials, cfg.snr_db.size() * k, [&](std::uint64_t trial, std::vector<double>& out) {
        auto g = sim::trial_rng(cfg.seed, trial);
        sim::Mat h(n, total);
        Eigen::Index col = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (mprime[j] == 0) continue;
            h.middleCols(col, mprime[j]) = g.matrix(n, mprime[j]);
            col += mprime[j];
        }
        const sim::Mat w = g.matrix(n, total);
        for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
            const double rho = sim::db_to_linear(cfg.snr_db[s]);
            if (total == 0) continue;
            const sim::Mat hh = sim::estimate(h, w, rho);
            const sim::Mat gram_inv = (hh.adjoint() * hh).inverse();
            const double noise = 1.0 + rho * static_cast<double>(active) * sim::mmse_error_variance(rho);
            Eigen::Index c = 0;
            for (std::size_t j = 0; j < k; ++j) {
                double r = 0;
                for (Count q = 0; q < mprime[j]; ++q, ++c) {
                    const double sinr = (rho / static_cast<double>(mprime[j])) / (noise * std::real(gram_inv(c, c)));
                    r += std::log2(1.0 + sinr);
                }
                out[s * k + j] = frac * r;
            }
        }
    });
    return sim::reduce(rows, cfg.snr_db, k);
}

/// Dispatches on cfg.scheme. BC schemes read the first two receivers; MAC uses `priority`.
struct SimTarget {
    Count m = 1, n = 1, t = 2;  // P2P link
    BcConfig bc;
    MacConfig mac;
    OrderedSubset priority;
};

inline std::vector<RatePoint> simulate(const SimTarget& target, const SimConfig& cfg) {
    switch (cfg.scheme) {
        case SimScheme::P2P: return simulate_p2p(target.m, target.n, target.t, cfg);
        case SimScheme::BcPsD1: return simulate_bc_ps(target.bc, true, cfg);
        case SimScheme::BcPsD2: return simulate_bc_ps(target.bc, false, cfg);
        case SimScheme::MacPilot: return simulate_mac_pilot(target.mac, target.priority, cfg);
    }
    throw InvalidConfig("unknown scheme");
}

/// DoF slope from the two largest SNR points.
inline double estimate_slope(const std::vector<RatePoint>& pts, std::size_t entity) {
    if (pts.size() < 2) throw InvalidConfig("slope needs at least two SNR points");
    const auto& a = pts[pts.size() - 2];
    const auto& b = pts.back();
    const double dl = (b.snr_db - a.snr_db) / 10.0 * std::log2(10.0);
    return (b.rate[entity] - a.rate[entity]) / dl;
}

/// Empirical per-entry squared error of the pilot estimate, with standard error.
inline std::pair<double, double> empirical_error_variance(double snr_db, std::uint64_t trials, std::uint64_t seed) {
    SimConfig c{{snr_db}, trials, seed, SimScheme::P2P};
    c.validate();
    auto rows = sim::run_trials(trials, 1, [&](std::uint64_t trial, std::vector<double>& out) {
        auto g = sim::trial_rng(seed, trial);
        const sim::Mat h = g.matrix(1, 1), w = g.matrix(1, 1);
        out[0] = std::norm(h(0, 0) - sim::estimate(h, w, sim::db_to_linear(snr_db))(0, 0));
    });
    auto red = sim::reduce(rows, {snr_db}, 1);
    return {red[0].rate[0], red[0].stderr_[0]};
}

inline std::string rates_csv(const std::vector<RatePoint>& pts, SimScheme scheme, std::uint64_t trials,
                             std::uint64_t seed, bool header = true) {
    std::ostringstream os;
    if (header) os << "scheme,entity,snr_db,rate_bps,stderr,trials,seed\n";
    os << std::setprecision(10);
    for (const auto& p : pts)
        for (std::size_t e = 0; e < p.rate.size(); ++e)
            os << to_string(scheme) << ',' << e + 1 << ',' << p.snr_db << ',' << p.rate[e] << ',' << p.stderr_[e]
               << ',' << trials << ',' << seed << '\n';
    return os.str();
}

}  // namespace cohdof
