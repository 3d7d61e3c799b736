#include "cohdof/geometry.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace cohdof;

namespace {

using P = DofPoint;

RegionH fig2_outer() {
    return RegionH{2, {{{1, 0}, frac(1, 2)}, {{1, 1}, frac(3, 4)}}};
}

std::set<P> as_set(const std::vector<P>& v) { return {v.begin(), v.end()}; }

// 2-D reference: clip the square [0, big]^2 by each halfplane (Sutherland-Hodgman)
// and return the distinct corners.
std::set<P> clip_reference(const RegionH& h, const Rational& big) {
    std::vector<P> poly{{0, 0}, {big, 0}, {big, big}, {0, big}};
    for (const auto& hs : h.halfspaces) {
        std::vector<P> next;
        auto f = [&](const P& p) { return hs.rhs - hs.eval(p); };  // >= 0 inside
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const P& a = poly[i];
            const P& b = poly[(i + 1) % poly.size()];
            Rational fa = f(a), fb = f(b);
            if (fa.sign() >= 0) next.push_back(a);
            if ((fa.sign() > 0 && fb.sign() < 0) || (fa.sign() < 0 && fb.sign() > 0)) {
                Rational t = fa / (fa - fb);
                next.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
            }
        }
        poly = next;
    }
    // Drop corners that sit in the middle of an edge.
    std::set<P> uniq(poly.begin(), poly.end());
    std::vector<P> ring;
    for (const auto& p : poly)
        if (ring.empty() || ring.back() != p) ring.push_back(p);
    while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
    std::set<P> out;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const P& a = ring[(i + ring.size() - 1) % ring.size()];
        const P& b = ring[i];
        const P& c = ring[(i + 1) % ring.size()];
        Rational cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        if (!cross.is_zero() || ring.size() <= 2) out.insert(b);
    }
    return out;
}

// 2-D reference for the downward-closed hull: staircase upper hull by monotone chain.
std::vector<P> closure_hull_reference(std::vector<P> pts) {
    std::vector<P> all{{0, 0}};
    for (const auto& p : pts) {
        all.push_back(p);
        all.push_back({p[0], 0});
        all.push_back({0, p[1]});
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    auto cross = [](const P& o, const P& a, const P& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<P> lower, upper;
    for (const auto& p : all) {
        while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), p).sign() <= 0) lower.pop_back();
        lower.push_back(p);
    }
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
        while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), *it).sign() <= 0) upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return lower;
}

Rational rnd(std::mt19937& g, int lo, int hi, int den) {
    return Rational(std::uniform_int_distribution<int>(lo, hi)(g), den);
}

}  // namespace

TEST(Geometry, ExtremePointsExamples) {
    EXPECT_EQ(extreme_points({{0, 0}, {frac(1, 2), 0}, {frac(1, 4), 0}}), (std::vector<P>{{frac(1, 2), 0}}));
    EXPECT_EQ(as_set(extreme_points({{frac(1, 2), 0}, {0, frac(3, 4)}, {frac(1, 2), frac(1, 4)}})),
              (std::set<P>{{frac(1, 2), 0}, {0, frac(3, 4)}, {frac(1, 2), frac(1, 4)}}));
    EXPECT_EQ(as_set(extreme_points({{1, 0}, {0, 1}, {frac(1, 2), frac(1, 2)}})), (std::set<P>{{1, 0}, {0, 1}}));
    EXPECT_THROW(extreme_points({{1, 0}, {1}}), DimensionMismatch);
}

TEST(Geometry, ExtremePointsMatchReferenceHull2D) {
    std::mt19937 g(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<P> pts;
        int n = std::uniform_int_distribution<int>(1, 7)(g);
        for (int i = 0; i < n; ++i) pts.push_back({rnd(g, 0, 12, 4), rnd(g, 0, 12, 4)});
        auto ref = closure_hull_reference(pts);
        std::set<P> ref_in_input;
        for (const auto& p : pts)
            if (std::find(ref.begin(), ref.end(), p) != ref.end() && !(p[0].is_zero() && p[1].is_zero()))
                ref_in_input.insert(p);
        EXPECT_EQ(as_set(extreme_points(pts)), ref_in_input) << "trial " << trial;
    }
}

TEST(Geometry, ExtremePointsIdempotent) {
    std::mt19937 g(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<P> pts;
        for (int i = 0; i < 8; ++i) pts.push_back({rnd(g, 0, 6, 3), rnd(g, 0, 6, 3), rnd(g, 0, 6, 3)});
        auto once = extreme_points(pts);
        EXPECT_EQ(extreme_points(once), once);
    }
}

TEST(Geometry, ContainsH) {
    auto h = fig2_outer();
    EXPECT_TRUE(contains(h, {frac(1, 2), frac(1, 4)}));
    EXPECT_FALSE(contains(h, {frac(1, 2), frac(1, 4) + frac(1, 1000)}));
    EXPECT_TRUE(contains(h, {0, 0}));
    EXPECT_FALSE(contains(h, {frac(-1, 10), 0}));
    EXPECT_THROW(contains(h, {0}), DimensionMismatch);
}

TEST(Geometry, ContainsVMatchesReference2D) {
    std::mt19937 g(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<P> pts;
        for (int i = 0; i < 5; ++i) pts.push_back({rnd(g, 1, 8, 2), rnd(g, 1, 8, 2)});  // full-dimensional
        RegionV v = make_region_v(2, pts);
        auto hull = closure_hull_reference(pts);  // counter-clockwise
        for (int q = 0; q < 20; ++q) {
            P p{rnd(g, 0, 10, 2), rnd(g, 0, 10, 2)};
            bool inside = true;
            for (std::size_t i = 0; i < hull.size(); ++i) {
                const P& a = hull[i];
                const P& b = hull[(i + 1) % hull.size()];
                Rational cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
                if (cr.sign() < 0) inside = false;
            }
            EXPECT_EQ(contains(v, p), inside) << "trial " << trial << " point " << to_string(p);
        }
    }
}

TEST(Geometry, VerticesExamples) {
    EXPECT_EQ(as_set(vertices(fig2_outer())), (std::set<P>{{0, 0}, {frac(1, 2), 0}, {0, frac(3, 4)}, {frac(1, 2), frac(1, 4)}}));
    EXPECT_EQ(vertices(RegionH{1, {{{1}, 1}}}), (std::vector<P>{{0}, {1}}));
    RegionH mac{2, {{{1, 0}, frac(21, 10)}, {{0, 1}, frac(16, 10)}, {{1, 1}, frac(24, 10)}}};
    EXPECT_EQ(as_set(vertices(mac)),
              (std::set<P>{{0, 0}, {frac(21, 10), 0}, {0, frac(16, 10)}, {frac(21, 10), frac(3, 10)}, {frac(8, 10), frac(16, 10)}}));
    EXPECT_THROW(vertices(RegionH{2, {{{1, 0}, 1}}}), UnboundedRegion);
    EXPECT_THROW(vertices(RegionH{5, {{{1, 1, 1, 1, 1}, 1}}}), DimensionMismatch);
}

TEST(Geometry, VerticesMatchClippingReference2D) {
    std::mt19937 g(5);
    for (int trial = 0; trial < 200; ++trial) {
        RegionH h{2, {}};
        int m = std::uniform_int_distribution<int>(1, 5)(g);
        for (int i = 0; i < m; ++i) h.halfspaces.push_back({{rnd(g, 0, 4, 1), rnd(g, 0, 4, 1)}, rnd(g, 1, 12, 2)});
        h.halfspaces.push_back({{1, 1}, Rational(20)});  // keeps every draw bounded
        EXPECT_EQ(as_set(vertices(h)), clip_reference(h, Rational(100))) << "trial " << trial;
    }
}

TEST(Geometry, HullSubsetAndRegionEqual) {
    auto h = fig2_outer();
    RegionV fig2{2, {{frac(1, 2), 0}, {0, frac(3, 4)}, {frac(1, 2), frac(1, 4)}}};
    EXPECT_TRUE(hull_subset_of(RegionV{2, {{frac(1, 4), frac(1, 4)}}}, h));
    EXPECT_TRUE(hull_subset_of(fig2, h));
    EXPECT_FALSE(hull_subset_of(RegionV{2, {{frac(1, 2), frac(1, 2)}}}, h));
    EXPECT_TRUE(region_equal(fig2, h));
    EXPECT_FALSE(region_equal(RegionV{2, {{frac(1, 2), 0}, {0, frac(3, 4)}}}, h));
    // identical-T TDMA region against itself
    RegionH tdma{2, {{{2, 2}, 1}}};
    EXPECT_TRUE(region_equal(make_region_v(2, vertices(tdma)), tdma));
}

TEST(Geometry, VerticesRoundTrip) {
    std::mt19937 g(17);
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t dim = 2 + static_cast<std::size_t>(trial % 2);
        RegionH h{dim, {}};
        int m = std::uniform_int_distribution<int>(1, 5)(g);
        for (int i = 0; i < m; ++i) {
            Halfspace hs{{}, rnd(g, 1, 10, 2)};
            for (std::size_t d = 0; d < dim; ++d) hs.coeffs.push_back(rnd(g, 0, 3, 1));
            h.halfspaces.push_back(hs);
        }
        h.halfspaces.push_back({std::vector<Rational>(dim, Rational(1)), Rational(8)});
        RegionV v = make_region_v(dim, vertices(h));
        EXPECT_TRUE(region_equal(v, h)) << "trial " << trial;
        EXPECT_EQ(max_sum(v), max_sum(h));
    }
}

TEST(Geometry, MaxSum) {
    RegionV mac{2, {{frac(21, 10), 0}, {0, frac(16, 10)}, {frac(18, 10), frac(6, 10)}, {frac(12, 10), frac(12, 10)}}};
    EXPECT_EQ(max_sum(mac), frac(24, 10));
    EXPECT_EQ(max_sum(fig2_outer()), frac(3, 4));
    EXPECT_EQ(max_sum(RegionV{2, {{0, 0}}}), Rational(0));
    EXPECT_THROW(max_sum(RegionH{2, {{{0, 1}, 1}}}), UnboundedRegion);
}

TEST(Geometry, WithinLinf) {
    RegionV v{2, {{1, 0}, {0, 1}}};
    RegionH square{2, {{{1, 0}, 1}, {{0, 1}, 1}}};
    EXPECT_FALSE(within_linf(v, square, frac(1, 4)));
    EXPECT_TRUE(within_linf(v, square, frac(1, 2)));
}
