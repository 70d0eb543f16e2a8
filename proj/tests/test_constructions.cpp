#include "support/fixtures.hpp"

#include <chroma/constructions.hpp>

#include <gtest/gtest.h>

using namespace chroma;
using namespace fixtures;

namespace {

std::vector<BinaryString> strings_of(std::uint32_t mask)
{
    std::vector<BinaryString> out;
    for (auto p : oracle::members_of(mask))
        out.push_back(p);
    return out;
}

// Four symbols at arities 3 and 4, two elsewhere.
DiagramSet wide_tree(std::size_t depth) { return full_tree(Language({2, 2, 4, 4, 2, 2}), depth); }

}

TEST(Constructions, BinaryStrings)
{
    EXPECT_EQ(binary_string(5, 4), "0101");
    EXPECT_EQ(binary_string(0, 3), "000");
    EXPECT_EQ(delta(0b0101, 0b0110, 4), 2u);
    EXPECT_EQ(delta(0b0000, 0b1000, 4), 0u);
    EXPECT_EQ(delta(0b1110, 0b1111, 4), 3u);
    EXPECT_THROW(delta(3, 3, 4), PreconditionError);

    std::vector<BinaryString> X{0b000, 0b001, 0b011};
    EXPECT_EQ(delta_sequence(X, 3), (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(s_pattern(X, 3), (std::vector<std::uint8_t>{1}));
    std::vector<BinaryString> Y{0b000, 0b100, 0b101, 0b111};
    EXPECT_EQ(delta_sequence(Y, 3), (std::vector<std::size_t>{0, 2, 1}));
    EXPECT_EQ(to_string(s_pattern(Y, 3)), "01");
    std::vector<BinaryString> unsorted{2, 1};
    EXPECT_THROW(delta_sequence(unsorted, 3), PreconditionError);
}

TEST(Constructions, DeltaOfSortedStringsNeverRepeatsAdjacently)
{
    // Adjacent deltas of a sorted tuple always differ, so sign patterns are total.
    for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
        if (std::popcount(mask) < 3)
            continue;
        auto d = delta_sequence(strings_of(mask), 4);
        for (std::size_t i = 0; i + 1 < d.size(); ++i)
            EXPECT_NE(d[i], d[i + 1]);
    }
}

TEST(Constructions, PatternIndex)
{
    EXPECT_EQ(pattern_index({0, 0}), 0u);
    EXPECT_EQ(pattern_index({1, 1}), 1u);
    EXPECT_EQ(pattern_index({0, 1}), 2u);
    EXPECT_EQ(pattern_index({1, 0}), 3u);
    EXPECT_EQ(pattern_index({}), 0u);
    std::set<std::size_t> seen;
    for (std::uint32_t v = 0; v < 8; ++v)
        seen.insert(pattern_index({static_cast<std::uint8_t>(v >> 2 & 1), static_cast<std::uint8_t>(v >> 1 & 1), static_cast<std::uint8_t>(v & 1)}));
    EXPECT_EQ(seen.size(), pattern_count(3));
    EXPECT_EQ(*seen.rbegin(), 7u);
}

TEST(Constructions, Monotonicity)
{
    EXPECT_EQ(monotonicity({0, 1, 3}), Monotone::increasing);
    EXPECT_EQ(monotonicity({3, 1}), Monotone::decreasing);
    EXPECT_EQ(monotonicity({1, 3, 2}), Monotone::neither);
    EXPECT_EQ(monotonicity({4}), Monotone::increasing);
}

TEST(Constructions, LimitSum)
{
    auto a = monochromatic_model(Diagram{A, C}, 2);
    auto b = monochromatic_model(Diagram{B}, 1);
    auto sum = build_limit_sum({a, b});
    ASSERT_EQ(sum.size(), 3u);
    Element first[2] = {0, 1}, cross[2] = {1, 2}, all[3] = {0, 1, 2};
    EXPECT_EQ(sum.color_of(first), C);
    EXPECT_EQ(sum.color_of(cross), C);
    EXPECT_EQ(sum.color_of(all), E);
    EXPECT_FALSE(is_monochromatic(sum, cross));
    DiagramSet W(Language({2, 2, 1}), {Diagram{}, Diagram{A}, Diagram{B}, Diagram{A, C}});
    EXPECT_FALSE(in_class(sum, W));
    EXPECT_THROW(build_limit_sum({a, a}), PreconditionError);
    EXPECT_EQ(build_limit_sum({}).size(), 0u);
}

TEST(Constructions, PairSplitting)
{
    auto M = build_pair_splitting(2, Diagram{A}, {Diagram{A, C}, Diagram{A, D}});
    ASSERT_EQ(M.size(), 4u);
    Element near[2] = {0, 1}, far[2] = {0, 2};
    EXPECT_EQ(M.color_of(near), D);
    EXPECT_EQ(M.color_of(far), C);
    DiagramSet W(Language({2, 2}), {Diagram{}, Diagram{A}, Diagram{A, C}, Diagram{A, D}});
    EXPECT_FALSE(in_class(M, W));
    EXPECT_TRUE(oracle_in_class(M, W));

    auto one = build_pair_splitting(1, Diagram{A}, {Diagram{A, C}});
    EXPECT_FALSE(in_class(one, W));

    EXPECT_THROW(build_pair_splitting(2, Diagram{A}, {Diagram{A, C}}), PreconditionError);
    EXPECT_THROW(build_pair_splitting(2, Diagram{A}, {Diagram{A, C}, Diagram{A, C}}), PreconditionError);
    EXPECT_THROW(build_pair_splitting(1, Diagram{A}, {Diagram{B, C}}), PreconditionError);
    EXPECT_THROW(build_pair_splitting(1, Diagram{A, C}, {Diagram{A, C}}), PreconditionError);
}

TEST(Constructions, PairSplittingHasNoMonochromaticTriple)
{
    std::vector<Diagram> wn;
    for (std::uint32_t i = 0; i < 4; ++i)
        wn.push_back(Diagram{A, RelSymbol{2, i}});
    for (std::size_t m = 1; m <= 4; ++m) {
        std::vector<Diagram> first(wn.begin(), wn.begin() + static_cast<std::ptrdiff_t>(m));
        auto M = build_pair_splitting(m, Diagram{A}, first);
        for (std::uint32_t mask = 1; mask < (1u << M.size()); ++mask)
            if (std::popcount(mask) == 3) {
                auto X = strings_of(mask);
                std::vector<Element> e(X.begin(), X.end());
                EXPECT_FALSE(is_monochromatic(M, e));
            }
    }
}

TEST(Constructions, KSplittingColors)
{
    auto W = wide_tree(4);
    auto comps = derive_k_splitting(W, Diagram{A, C}, 3);
    ASSERT_EQ(comps.size(), 2u);
    auto M = build_k_splitting(3, Diagram{A, C}, comps);
    ASSERT_EQ(M.size(), 8u);
    Element pair[2] = {0, 5};
    EXPECT_EQ(M.color_of(pair), C);
    // 000 < 001 < 011: deltas (2, 1), decreasing, component 1 on {1, 2}.
    Element dec[3] = {0, 1, 3};
    Element dset[2] = {1, 2};
    auto s = comps[1].color_of(dset);
    EXPECT_EQ(M.color_of(dec), (RelSymbol{s.arity + 1, s.id}));
    // 000 < 010 < 011: deltas (1, 2), increasing, component 0.
    Element inc[3] = {0, 2, 3};
    s = comps[0].color_of(dset);
    EXPECT_EQ(M.color_of(inc), (RelSymbol{s.arity + 1, s.id}));
    EXPECT_FALSE(in_class(M, prune(W, {Diagram{A, C}})));
    EXPECT_TRUE(oracle_in_class(M, prune(W, {Diagram{A, C}})));

    EXPECT_THROW(build_k_splitting(3, Diagram{A}, comps), PreconditionError);
    EXPECT_THROW(build_k_splitting(3, Diagram{A, C}, {comps[0]}), PreconditionError);
    EXPECT_THROW(derive_k_splitting(W, Diagram{B, C, RelSymbol{3, 9}}, 3), PreconditionError);
}

TEST(Constructions, KSplittingsLandInThePrunedSet)
{
    auto W = wide_tree(5);
    for (std::size_t m = 1; m <= 4; ++m)
        for (const auto & wbar : {Diagram{A, C}, Diagram{B, D}, Diagram{A, D, RelSymbol{3, 2}}}) {
            auto comps = derive_k_splitting(W, wbar, m);
            if (comps.size() > 2 && m < wbar.size())
                continue;
            auto M = build_k_splitting(m, wbar, comps);
            auto v = in_class(M, prune(W, {wbar}));
            EXPECT_FALSE(v) << to_string(wbar) << " m=" << m;
        }
}

TEST(Constructions, MixedSignSetsContainDifferentPatterns)
{
    // A (k+2)-set with non-monotone deltas has two (k+1)-subsets with
    // different sign patterns, so it is never monochromatic.
    for (std::size_t k = 2; k <= 4; ++k)
        for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != k + 2)
                continue;
            auto X = strings_of(mask);
            if (monotonicity(delta_sequence(X, 4)) != Monotone::neither)
                continue;
            std::set<std::size_t> patterns;
            for (std::size_t drop = 0; drop < X.size(); ++drop) {
                auto Y = X;
                Y.erase(Y.begin() + static_cast<std::ptrdiff_t>(drop));
                patterns.insert(pattern_index(s_pattern(Y, 4)));
            }
            EXPECT_GT(patterns.size(), 1u);
        }
}

TEST(Constructions, KSplittingMonochromaticSetsHaveMonotoneDeltas)
{
    auto W = wide_tree(5);
    auto comps = derive_k_splitting(W, Diagram{A, C}, 4);
    auto M = build_k_splitting(4, Diagram{A, C}, comps);
    std::size_t large = 0;
    for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
        if (std::popcount(mask) < 4)
            continue;
        auto X = strings_of(mask);
        std::vector<Element> e(X.begin(), X.end());
        if (! is_monochromatic(M, e))
            continue;
        ++large;
        auto d = delta_sequence(X, 4);
        auto mono = monotonicity(d);
        ASSERT_NE(mono, Monotone::neither);
        std::vector<Element> dset(d.begin(), d.end());
        std::sort(dset.begin(), dset.end());
        EXPECT_TRUE(is_monochromatic(comps[mono == Monotone::increasing ? 0 : 1], dset));
    }
    EXPECT_GT(large, 0u);
}

TEST(Constructions, IntervalSplitting)
{
    auto W = wide_tree(5);
    std::vector<SplitBlock> shape(2);
    shape[0].begin = 0;
    shape[0].end = 1;
    shape[0].wbar = Diagram{A, C};
    shape[0].wstar = Diagram{A, C};
    shape[1].begin = 1;
    shape[1].end = 4;
    shape[1].wbar = Diagram{A, D};
    shape[1].wstar = Diagram{A, D, RelSymbol{3, 1}};
    auto blocks = derive_interval_splitting(W, shape);
    ASSERT_EQ(blocks[0].comps.size(), 2u);
    ASSERT_EQ(blocks[1].comps.size(), 4u);
    auto M = build_interval_splitting(4, blocks);
    EXPECT_FALSE(in_class(M, prune(W, {Diagram{A, C}, Diagram{A, D, RelSymbol{3, 1}}})));

    // Sets whose deltas meet both blocks carry both pair colors.
    for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
        if (std::popcount(mask) < 3)
            continue;
        auto X = strings_of(mask);
        auto d = delta_sequence(X, 4);
        bool low = false, high = false;
        for (auto p : d)
            (p < 1 ? low : high) = true;
        if (low && high) {
            std::vector<Element> e(X.begin(), X.end());
            EXPECT_FALSE(is_monochromatic(M, e));
        }
    }

    auto gap = blocks;
    gap[1].begin = 2;
    EXPECT_THROW(build_interval_splitting(4, gap), PreconditionError);
    EXPECT_THROW(build_interval_splitting(5, blocks), PreconditionError);
    auto other = blocks;
    other[1].wbar = Diagram{B, D};
    other[1].wstar = Diagram{B, D};
    EXPECT_THROW(build_interval_splitting(4, other), PreconditionError);
}

TEST(Constructions, IntervalBlocksNeedDistinctStems)
{
    auto W = wide_tree(4);
    std::vector<SplitBlock> shape(2);
    shape[0].end = 1;
    shape[1].begin = 1;
    shape[1].end = 2;
    for (auto & b : shape)
        b.wbar = b.wstar = Diagram{A, C};
    auto blocks = derive_interval_splitting(W, shape);
    EXPECT_THROW(build_interval_splitting(2, blocks), PreconditionError);
}
