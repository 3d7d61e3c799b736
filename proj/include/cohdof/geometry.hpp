#pragma once

#include "cohdof/errors.hpp"
#include "cohdof/lp.hpp"
#include "cohdof/model.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace cohdof {

/// sum_i coeffs_i d_i <= rhs
struct Halfspace {
    std::vector<Rational> coeffs;
    Rational rhs;

    Rational eval(const DofPoint& p) const {
        Rational s;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (!coeffs[i].is_zero()) s += coeffs[i] * p[i];
        return s;
    }
    bool satisfied_by(const DofPoint& p) const { return eval(p) <= rhs; }

    friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// Polytope {d >= 0} intersected with the halfspaces.
struct RegionH {
    std::size_t dim = 0;
    std::vector<Halfspace> halfspaces;
};

/// Orthant-clipped downward closure of conv(generators).
struct RegionV {
    std::size_t dim = 0;
    std::vector<DofPoint> generators;
};

namespace detail {

inline void require_dim(const DofPoint& p, std::size_t dim) {
    if (p.size() != dim)
        throw DimensionMismatch("point has dimension " + std::to_string(p.size()) + ", expected " +
                                std::to_string(dim));
}

inline bool leq(const DofPoint& a, const DofPoint& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] < a[i]) return false;
    return true;
}

inline bool is_origin(const DofPoint& p) {
    return std::all_of(p.begin(), p.end(), [](const Rational& r) { return r.is_zero(); });
}

/// a is obtained from b by zeroing some coordinates.
inline bool is_zeroing_of(const DofPoint& a, const DofPoint& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && a[i] != b[i]) return false;
    return true;
}

inline std::vector<DofPoint> dedupe_sorted(std::vector<DofPoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// True iff p is a convex combination of the columns `pts`.
inline bool in_convex_hull(const std::vector<DofPoint>& pts, const DofPoint& p) {
    if (pts.empty()) return false;
    const std::size_t k = p.size();
    lp::Matrix a(k + 1, lp::Row(pts.size()));
    std::vector<Rational> b(k + 1);
    for (std::size_t j = 0; j < pts.size(); ++j) {
        for (std::size_t i = 0; i < k; ++i) a[i][j] = pts[j][i];
        a[k][j] = Rational(1);
    }
    for (std::size_t i = 0; i < k; ++i) b[i] = p[i];
    b[k] = Rational(1);
    return lp::feasible(a, b);
}

}  // namespace detail

/// Non-origin input points that are vertices of the downward-closed hull.
/// Output is deduplicated and sorted lexicographically.
inline std::vector<DofPoint> extreme_points(const std::vector<DofPoint>& pts) {
    if (pts.empty()) return {};
    const std::size_t k = pts.front().size();
    for (const auto& p : pts) detail::require_dim(p, k);
    for (const auto& p : pts)
        for (const auto& c : p)
            if (c.sign() < 0) throw InvalidConfig("DoF points must be nonnegative");

    auto uniq = detail::dedupe_sorted(pts);
    std::erase_if(uniq, detail::is_origin);

    // Cheap filter: p <= g without being a zeroing of g means some coordinate sits
    // strictly inside (0, g_i), so p is a midpoint inside the box [0, g].
    std::vector<DofPoint> cand;
    for (const auto& p : uniq) {
        bool inside = false;
        for (const auto& g : uniq)
            if (g != p && detail::leq(p, g) && !detail::is_zeroing_of(p, g)) {
                inside = true;
                break;
            }
        if (!inside) cand.push_back(p);
    }

    // The closure equals conv of every coordinate zeroing of the candidates.
    std::set<DofPoint> zset;
    for (const auto& p : cand)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            DofPoint z = p;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::uint64_t{1} << i)) z[i] = Rational(0);
            zset.insert(std::move(z));
        }
    std::vector<DofPoint> zs(zset.begin(), zset.end());
    // Zeroings strictly inside another zeroing's box never matter.
    std::vector<DofPoint> z;
    for (const auto& a : zs) {
        bool inside = false;
        for (const auto& b : zs)
            if (a != b && detail::leq(a, b) && !detail::is_zeroing_of(a, b)) {
                inside = true;
                break;
            }
        if (!inside) z.push_back(a);
    }

    std::vector<DofPoint> out;
    for (const auto& p : cand) {
        std::vector<DofPoint> others;
        others.reserve(z.size());
        for (const auto& q : z)
            if (q != p) others.push_back(q);
        if (!detail::in_convex_hull(others, p)) out.push_back(p);
    }
    return out;
}

inline RegionV make_region_v(std::size_t dim, const std::vector<DofPoint>& pts) {
    for (const auto& p : pts) detail::require_dim(p, dim);
    return RegionV{dim, extreme_points(pts)};
}

inline bool contains(const RegionH& region, const DofPoint& p) {
    detail::require_dim(p, region.dim);
    for (const auto& c : p)
        if (c.sign() < 0) return false;
    return std::all_of(region.halfspaces.begin(), region.halfspaces.end(),
                       [&](const Halfspace& h) { return h.satisfied_by(p); });
}

/// Membership in the downward-closed hull: exists lambda in the simplex with
/// sum lambda_g g >= q (and q >= 0).
inline bool contains(const RegionV& region, const DofPoint& q) {
    detail::require_dim(q, region.dim);
    for (const auto& c : q)
        if (c.sign() < 0) return false;
    if (detail::is_origin(q)) return true;
    const auto& g = region.generators;
    if (g.empty()) return false;
    const std::size_t k = region.dim, n = g.size();
    lp::Matrix a(k + 1, lp::Row(n + k, Rational(0)));
    std::vector<Rational> b(k + 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i) a[i][j] = g[j][i];
        a[k][j] = Rational(1);
    }
    for (std::size_t i = 0; i < k; ++i) {
        a[i][n + i] = Rational(-1);
        b[i] = q[i];
    }
    b[k] = Rational(1);
    return lp::feasible(a, b);
}

inline void require_bounded(const RegionH& region) {
    for (std::size_t i = 0; i < region.dim; ++i) {
        bool capped = std::any_of(region.halfspaces.begin(), region.halfspaces.end(), [&](const Halfspace& h) {
            return h.coeffs[i].sign() > 0;
        });
        if (!capped) throw UnboundedRegion("coordinate " + std::to_string(i + 1) + " is not bounded");
    }
}

/// All extreme points of the H-polytope, sorted. Enumerates bases of the
/// constraint system (halfspaces plus nonnegativity); dim must be <= 4.
inline std::vector<DofPoint> vertices(const RegionH& region) {
    const std::size_t k = region.dim;
    if (k == 0) return {};
    if (k > 4) throw DimensionMismatch("vertex enumeration supports dimension <= 4");
    require_bounded(region);
    for (const auto& h : region.halfspaces)
        if (h.coeffs.size() != k) throw DimensionMismatch("halfspace dimension mismatch");

    // Constraint rows: halfspaces first, then -d_i <= 0.
    std::vector<Halfspace> rows = region.halfspaces;
    for (std::size_t i = 0; i < k; ++i) {
        Halfspace nn{std::vector<Rational>(k, Rational(0)), Rational(0)};
        nn.coeffs[i] = Rational(-1);
        rows.push_back(std::move(nn));
    }
    std::set<DofPoint> found;
    std::vector<std::size_t> pick(k);
    // Iterate k-combinations of rows.
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    const std::size_t r = rows.size();
    if (r < k) return {};
    for (;;) {
        lp::Matrix m(k);
        std::vector<Rational> rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
            m[i] = rows[pick[i]].coeffs;
            rhs[i] = rows[pick[i]].rhs;
        }
        if (auto x = lp::solve_square(m, rhs); x && contains(region, *x)) found.insert(*x);
        std::size_t pos = k;
        while (pos > 0 && pick[pos - 1] == r - k + pos - 1) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t i = pos; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
    return {found.begin(), found.end()};
}

inline bool hull_subset_of(const RegionV& v, const RegionH& h) {
    if (v.dim != h.dim) throw DimensionMismatch("region dimensions differ");
    return std::all_of(v.generators.begin(), v.generators.end(), [&](const DofPoint& g) { return contains(h, g); });
}

inline bool region_equal(const RegionV& v, const RegionH& h) {
    if (!hull_subset_of(v, h)) return false;
    auto verts = vertices(h);
    return std::all_of(verts.begin(), verts.end(), [&](const DofPoint& p) { return contains(v, p); });
}

inline Rational point_sum(const DofPoint& p) {
    Rational s;
    for (const auto& c : p) s += c;
    return s;
}

inline Rational max_sum(const RegionV& v) {
    Rational best;
    for (const auto& g : v.generators) best = max(best, point_sum(g));
    return best;
}

/// Exact LP over the H-form, so it also works above dimension 4.
inline Rational max_sum(const RegionH& h) {
    require_bounded(h);
    const std::size_t k = h.dim, m = h.halfspaces.size();
    lp::Matrix a(m, lp::Row(k + m, Rational(0)));
    std::vector<Rational> b(m), c(k + m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = h.halfspaces[i].coeffs[j];
        a[i][k + i] = Rational(1);
        b[i] = h.halfspaces[i].rhs;
    }
    for (std::size_t j = 0; j < k; ++j) c[j] = Rational(1);
    auto res = lp::solve(a, b, c);
    if (res.status != lp::Status::Optimal) throw UnboundedRegion("sum is unbounded");
    return res.value;
}

/// Every vertex of h lies within L-infinity distance delta of the closure of v.
/// Because v is downward closed, that is membership of (p - delta)^+.
inline bool within_linf(const RegionV& v, const RegionH& h, const Rational& delta) {
    for (const auto& p : vertices(h)) {
        DofPoint q = p;
        for (auto& c : q) c = max(c - delta, Rational(0));
        if (!contains(v, q)) return false;
    }
    return true;
}

}  // namespace cohdof
