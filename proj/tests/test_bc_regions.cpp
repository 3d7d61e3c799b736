#include "cohdof/bc_regions.hpp"
#include "cohdof/verify.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace cohdof;

namespace {

using P = DofPoint;

const BcConfig kFig2{1, {{1, 2, 0}, {1, 4, 0}}};
const BcConfig kTwoRx{2, {{1, 4, 0}, {3, 24, 0}}};
const BcConfig kThreeRx{4, {{1, 6, 0}, {2, 18, 0}, {3, 54, 0}}};

std::set<P> as_set(const std::vector<P>& v) { return {v.begin(), v.end()}; }

// Faces of outer_region_bc keyed by member set, each stored as the per-member
// single-receiver values N*(1 - N*/T_max) that the coefficients invert.
Rational face_value(const RegionH& h, std::size_t face, std::size_t j) {
    return Rational(1) / h.halfspaces[face].coeffs[j];
}

std::vector<BcConfig> sampled_grid(std::size_t k, std::size_t count, unsigned seed) {
    auto all = bc_grid(k);
    std::mt19937 g(seed);
    std::shuffle(all.begin(), all.end(), g);
    all.resize(std::min(count, all.size()));
    return all;
}

}  // namespace

TEST(BcRegions, IdenticalNoncoherentExamples) {
    auto r = identical_region_noncoherent(BcConfig{1, {{1, 2, 0}, {1, 2, 0}}}, 2);
    EXPECT_EQ(r.halfspaces.back().coeffs, (std::vector<Rational>{2, 2}));
    // nstar caps at M = 1: each coefficient is 1 / (1 * 3/4)
    r = identical_region_noncoherent(BcConfig{1, {{2, 4, 0}, {3, 4, 0}}}, 4);
    EXPECT_EQ(r.halfspaces.back().coeffs, (std::vector<Rational>{frac(4, 3), frac(4, 3)}));
    r = identical_region_noncoherent(BcConfig{2, {{2, 8, 0}}}, 8);
    EXPECT_EQ(max_sum(r), frac(3, 2));
    EXPECT_THROW(identical_region_noncoherent(kFig2, 2), PreconditionViolation);
}

TEST(BcRegions, IdenticalNoncoherentFastFadingReceiverGetsZero) {
    auto r = identical_region_noncoherent(BcConfig{2, {{1, 1, 0}, {2, 1, 0}}}, 1);
    EXPECT_EQ(max_sum(r), Rational(0));
}

TEST(BcRegions, IdenticalNoncoherentMatchesOuterAtEqualT) {
    BcConfig c{3, {{2, 8, 0}, {3, 8, 0}}};
    auto tdma = identical_region_noncoherent(c, 8);
    EXPECT_EQ(as_set(vertices(tdma)), as_set(vertices(outer_region_bc(c))));
}

TEST(BcRegions, IdenticalCoherentExamples) {
    EXPECT_EQ(identical_region_coherent(BcConfig{2, {{1, 5, 0}, {3, 5, 0}}}).halfspaces.back().coeffs,
              (std::vector<Rational>{1, frac(1, 2)}));
    EXPECT_EQ(identical_region_coherent(BcConfig{1, {{4, 5, 0}, {4, 5, 0}}}).halfspaces.back().coeffs,
              (std::vector<Rational>{1, 1}));
    EXPECT_EQ(identical_region_coherent(BcConfig{3, {{3, 5, 0}, {3, 5, 0}}}).halfspaces.back().coeffs,
              (std::vector<Rational>{frac(1, 3), frac(1, 3)}));
}

TEST(BcRegions, D1Examples) {
    EXPECT_EQ(d1_tuple({0, 1}, kTwoRx), (P{frac(17, 24), frac(10, 24)}));
    EXPECT_EQ(d1_tuple({0, 1}, kFig2), (P{frac(1, 2), frac(1, 4)}));
    EXPECT_EQ(d1_tuple({0}, BcConfig{2, {{1, 4, 0}}}), (P{frac(3, 4)}));
    EXPECT_EQ(d1_tuple({1, 0}, kTwoRx), d1_tuple({0, 1}, kTwoRx));  // members are sorted internally
    EXPECT_THROW(d1_tuple({0, 1}, BcConfig{1, {{1, 4, 0}, {1, 6, 0}}}), PreconditionViolation);
}

TEST(BcRegions, D2Examples) {
    EXPECT_EQ(d2_tuple({0, 1}, kTwoRx), (P{frac(18, 24), frac(5, 24)}));
    EXPECT_EQ(d2_tuple({0, 1, 2}, kThreeRx), (P{frac(5, 6), frac(2, 18), frac(2, 54)}));
    for (std::size_t k = 0; k < 3; ++k) {
        auto d = d2_tuple({k}, kThreeRx);
        const Count n = kThreeRx.nstar_of(k), t = kThreeRx.receivers[k].coherence;
        EXPECT_EQ(d[k], Rational(n) * (Rational(1) - Rational(n, t)));
    }
}

TEST(BcRegions, ThreeReceiverPrintedLists) {
    // Printed D1 and D2 tuple lists for N=(1,2,3), M=4, T=(6,18,54).
    EXPECT_EQ(d1_tuple({0, 1}, kThreeRx), (P{frac(14, 18), frac(4, 18), 0}));
    EXPECT_EQ(d1_tuple({0, 2}, kThreeRx), (P{frac(43, 54), 0, frac(24, 54)}));
    EXPECT_EQ(d1_tuple({1, 2}, kThreeRx), (P{0, frac(94, 54), frac(12, 54)}));
    EXPECT_EQ(d1_tuple({0, 1, 2}, kThreeRx), (P{frac(13, 18), frac(4, 18), frac(6, 54)}));
    EXPECT_EQ(d2_tuple({0, 1}, kThreeRx), (P{frac(5, 6), frac(2, 18), 0}));
    EXPECT_EQ(d2_tuple({0, 2}, kThreeRx), (P{frac(5, 6), 0, frac(8, 54)}));
    EXPECT_EQ(d2_tuple({1, 2}, kThreeRx), (P{0, frac(32, 18), frac(8, 54)}));
}

TEST(BcRegions, AchievableGenerators) {
    EXPECT_EQ(as_set(achievable_region_bc(kFig2).generators),
              (std::set<P>{{frac(1, 2), 0}, {0, frac(3, 4)}, {frac(1, 2), frac(1, 4)}}));
    auto g = as_set(achievable_region_bc(kTwoRx).generators);
    EXPECT_TRUE(g.count({frac(17, 24), frac(10, 24)}));
    EXPECT_TRUE(g.count({frac(18, 24), frac(5, 24)}));
    EXPECT_EQ(achievable_region_bc(BcConfig{2, {{2, 8, 0}}}).generators, (std::vector<P>{{frac(3, 2)}}));
}

TEST(BcRegions, OuterExamples) {
    auto h = outer_region_bc(kTwoRx);
    ASSERT_EQ(h.halfspaces.size(), 3u);
    EXPECT_EQ(face_value(h, 0, 0), frac(18, 24));  // {1}
    EXPECT_EQ(face_value(h, 1, 1), frac(44, 24));  // {2}
    EXPECT_EQ(face_value(h, 2, 0), frac(23, 24));  // {1,2}
    EXPECT_EQ(face_value(h, 2, 1), frac(44, 24));
    EXPECT_EQ(as_set(vertices(outer_region_bc(kFig2))),
              (std::set<P>{{0, 0}, {frac(1, 2), 0}, {0, frac(3, 4)}, {frac(1, 2), frac(1, 4)}}));
}

TEST(BcRegions, ArbitraryTupleExamples) {
    BcConfig c{1, {{1, 4, 0}, {1, 6, 0}}};
    EXPECT_EQ(arbitrary_tuple({0, 1}, c), (P{frac(3, 4), frac(1, 12)}));
    // Equal N below min{M, floor(T1/2)}: (N(1-N/T1), N^2(1/T1-1/T2), N^2(1/T2-1/T3))
    BcConfig three{3, {{2, 5, 0}, {2, 7, 0}, {2, 11, 0}}};
    EXPECT_EQ(arbitrary_tuple({0, 1, 2}, three),
              (P{Rational(2) * (Rational(1) - frac(2, 5)), Rational(4) * (frac(1, 5) - frac(1, 7)),
                 Rational(4) * (frac(1, 7) - frac(1, 11))}));
    BcConfig same{2, {{1, 6, 0}, {1, 6, 0}}};
    EXPECT_EQ(arbitrary_tuple({0, 1}, same), (P{frac(5, 6), 0}));
}

TEST(BcRegions, StaggeredPairs) {
    EXPECT_EQ(staggered_pairs(6, 12).bia_ps, (P{frac(1, 2), frac(1, 2)}));
    EXPECT_EQ(staggered_pairs(6, 18).bia_ps, (P{frac(11, 18), frac(7, 18)}));
    EXPECT_EQ(staggered_pairs(4, 8).ps_only, (P{frac(3, 4), frac(1, 8)}));
    EXPECT_THROW(staggered_pairs(5, 10), PreconditionViolation);
    EXPECT_THROW(staggered_pairs(6, 9), PreconditionViolation);
    EXPECT_THROW(staggered_pairs(6, 6), PreconditionViolation);
}

TEST(BcRegions, OptimalityCaseExamples) {
    EXPECT_EQ(optimality_case(BcConfig{1, {{2, 4, 0}, {3, 8, 0}}}), OptimalityCase::FewerTx);
    EXPECT_EQ(optimality_case(BcConfig{3, {{2, 8, 0}, {2, 16, 0}}}), OptimalityCase::EqualRx);
    EXPECT_EQ(optimality_case(kTwoRx), OptimalityCase::None);
    EXPECT_EQ(optimality_case(BcConfig{2, {{1, 4, 0}, {3, 8, 0}}}, 64), OptimalityCase::None);
    EXPECT_EQ(optimality_case(BcConfig{2, {{1, 4, 0}, {3, 256, 0}}}, 64), OptimalityCase::OneShortCoherence);
    EXPECT_EQ(optimality_case(BcConfig{3, {{1, 6, 0}, {2, 6, 0}}}), OptimalityCase::IdenticalT);
    EXPECT_EQ(optimality_case(BcConfig{2, {{1, 2, 0}, {2, 4, 0}}}), OptimalityCase::None);  // T < 2M
}

TEST(BcRegions, InnerWithinOuterOnGrid) {
    for (std::size_t k : {2u, 3u})
        for (const auto& c : sampled_grid(k, 40, 100 + static_cast<unsigned>(k)))
            EXPECT_TRUE(hull_subset_of(achievable_region_bc(c), outer_region_bc(c))) << detail::describe(c);
}

TEST(BcRegions, TightnessForKnownCases) {
    std::size_t checked = 0;
    for (std::size_t k : {2u, 3u})
        for (const auto& c : sampled_grid(k, 300, 7)) {
            auto kind = optimality_case(c);
            if (kind == OptimalityCase::None) continue;
            ++checked;
            EXPECT_TRUE(region_equal(achievable_region_bc(c), outer_region_bc(c)))
                << detail::describe(c) << " " << to_string(kind);
        }
    EXPECT_GT(checked, 20u);
}

TEST(BcRegions, TelescopingForFewerTx) {
    for (std::size_t k : {2u, 3u})
        for (const auto& c : bc_grid(k)) {
            if (optimality_case(c) != OptimalityCase::FewerTx) continue;
            for (const auto& s : all_subsets(k)) {
                if (s.empty()) continue;
                Count tmax = 0;
                for (auto j : s) tmax = std::max(tmax, c.receivers[j].coherence);
                const Rational m(c.tx_antennas);
                EXPECT_EQ(point_sum(d2_tuple(OrderedSubset(s), c)), m * (Rational(1) - m / Rational(tmax)));
            }
        }
}

TEST(BcRegions, NstarSpellingEquivalence) {
    for (std::size_t k : {2u, 3u})
        for (const auto& c : bc_grid(k)) {
            const auto order = c.coherence_order();
            const Count nmin = c.nstar_of(order[0]);
            for (std::size_t j = 0; j < k; ++j)
                EXPECT_EQ(std::min(c.receivers[j].antennas, nmin), std::min(c.nstar_of(j), nmin));
        }
}

TEST(BcRegions, OuterMonotoneInCoherence) {
    std::mt19937 g(21);
    const auto chains = coherence_chains(2);
    for (int trial = 0; trial < 30; ++trial) {
        const auto& a = chains[g() % chains.size()];
        const auto& b = chains[g() % chains.size()];
        if (!(b[0] >= a[0] && b[1] >= a[1])) continue;
        Count m = 1 + static_cast<Count>(g() % 2), n1 = 1 + static_cast<Count>(g() % 2), n2 = 1 + static_cast<Count>(g() % 3);
        BcConfig lo{m, {{n1, a[0], 0}, {n2, a[1], 0}}}, hi{m, {{n1, b[0], 0}, {n2, b[1], 0}}};
        auto big = outer_region_bc(hi);
        for (const auto& v : vertices(outer_region_bc(lo))) EXPECT_TRUE(contains(big, v));
    }
}

TEST(BcRegions, HullGrowsWithLargestCoherence) {
    for (Count t2 : {4, 8, 16}) {
        BcConfig lo{2, {{1, 4, 0}, {2, t2, 0}}}, hi{2, {{1, 4, 0}, {2, 2 * t2, 0}}};
        auto grown = achievable_region_bc(hi);
        for (const auto& gpt : achievable_region_bc(lo).generators) EXPECT_TRUE(contains(grown, gpt));
    }
}
