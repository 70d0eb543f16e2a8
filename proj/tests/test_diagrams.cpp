#include "support/fixtures.hpp"

#include <chroma/diagrams.hpp>

#include <gtest/gtest.h>

using namespace chroma;
using namespace fixtures;

namespace {

std::set<Diagram> members(const DiagramSet & W) { return W.members(); }

}

TEST(Diagrams, ValidateExamples)
{
    Language L({2, 2});
    EXPECT_FALSE(validate(DiagramSet(L, {Diagram{}, Diagram{A}, Diagram{A, C}})));

    auto broken = validate(DiagramSet(L, {Diagram{}, Diagram{A, C}}));
    ASSERT_TRUE(broken);
    EXPECT_EQ(broken->kind, DiagramViolation::Kind::missing_prefix);
    EXPECT_EQ(broken->diagram, (Diagram{A, C}));

    auto arity = validate(DiagramSet(L, {Diagram{}, Diagram{C}}));
    ASSERT_TRUE(arity);
    EXPECT_EQ(arity->kind, DiagramViolation::Kind::arity_mismatch);
    EXPECT_EQ(arity->position, 1u);

    auto rootless = validate(DiagramSet(L, std::set<Diagram>{Diagram{A}}));
    ASSERT_TRUE(rootless);
    EXPECT_EQ(rootless->kind, DiagramViolation::Kind::missing_root);

    auto unknown = validate(DiagramSet(L, {Diagram{}, Diagram{RelSymbol{1, 5}}}));
    ASSERT_TRUE(unknown);
    EXPECT_EQ(unknown->kind, DiagramViolation::Kind::unknown_symbol);

    EXPECT_THROW(DiagramSet::checked(L, {Diagram{}, Diagram{C}}), PreconditionError);
}

TEST(Diagrams, LanguageCounts)
{
    Language L({2, 3});
    EXPECT_EQ(L.count(1), 2u);
    EXPECT_EQ(L.count(2), 3u);
    EXPECT_EQ(L.count(7), 1u);
    Language R({2, 3}, true);
    EXPECT_EQ(R.count(7), 3u);
    EXPECT_EQ(L.shifted(1).count(1), 3u);
    EXPECT_EQ(L.shifted(1).count(2), 1u);
    EXPECT_EQ(R.shifted(5).count(1), 3u);
    EXPECT_THROW(Language({2, 0}), PreconditionError);
}

TEST(Diagrams, Levels)
{
    auto T1 = t1();
    EXPECT_EQ(level(T1, 1), (std::vector<Diagram>{Diagram{A}, Diagram{B}}));
    EXPECT_EQ(level(T1, 3), (std::vector<Diagram>{Diagram{A, C, E}}));
    EXPECT_EQ(level(T1, 0), (std::vector<Diagram>{Diagram{}}));
    EXPECT_TRUE(level(T1, 4).empty());
    EXPECT_EQ(T1.height(), 3u);
}

TEST(Diagrams, PruneExamples)
{
    auto T1 = t1();
    EXPECT_EQ(members(prune(T1, {Diagram{A}})), (std::set<Diagram>{Diagram{}, Diagram{A}, Diagram{A, C}, Diagram{A, D}, Diagram{A, C, E}}));
    EXPECT_EQ(members(prune(T1, {Diagram{}})), members(T1));
    EXPECT_EQ(members(prune(T1, {Diagram{A, C, E}})), (std::set<Diagram>{Diagram{}, Diagram{A}, Diagram{A, C}, Diagram{A, C, E}}));
    EXPECT_EQ(members(prune(T1, {Diagram{A, D}, Diagram{B}})), (std::set<Diagram>{Diagram{}, Diagram{A}, Diagram{A, D}, Diagram{B}}));
    EXPECT_THROW(prune(T1, {Diagram{B, C}}), PreconditionError);
}

TEST(Diagrams, QuotientExamples)
{
    auto T1 = t1();
    const RelSymbol c1{1, 0}, d1{1, 1}, e2{2, 0};
    auto Q = quotient(T1, Diagram{A});
    EXPECT_EQ(members(Q), (std::set<Diagram>{Diagram{}, Diagram{c1}, Diagram{d1}, Diagram{c1, e2}}));
    EXPECT_EQ(Q.language().count(1), 2u);
    EXPECT_EQ(Q.language().count(2), 1u);
    EXPECT_EQ(members(quotient(T1, Diagram{A, C})), (std::set<Diagram>{Diagram{}, Diagram{RelSymbol{1, 0}}}));
    auto chain = DiagramSet(Language({2}), {Diagram{}, Diagram{A}});
    EXPECT_EQ(members(quotient(chain, Diagram{A})), (std::set<Diagram>{Diagram{}}));
    EXPECT_THROW(quotient(T1, Diagram{B, C}), PreconditionError);
    EXPECT_THROW(quotient(T1, Diagram{}), PreconditionError);
}

TEST(Diagrams, StemRoundTrip)
{
    Diagram w{A, C, E};
    EXPECT_EQ(attach_stem(w.prefix(1), strip_stem(w, 1)), w);
    EXPECT_EQ(strip_stem(w, 3), Diagram{});
}

TEST(Diagrams, RandomPruneAndQuotientProperties)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        auto W = random_set(rng, 2 + rng() % 40, {2, 3, 2, 2});
        ASSERT_FALSE(validate(W));
        auto tree = to_tree(W);
        for (const auto & u : W) {
            auto P = prune(W, {u});
            EXPECT_FALSE(validate(P));
            EXPECT_EQ(members(prune(P, {u})), members(P));
            // Oracle: direct comparability filter.
            oracle::Tree expect;
            auto un = to_node(u);
            for (const auto & n : tree) {
                auto k = std::min(n.size(), un.size());
                if (std::equal(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(k), un.begin()))
                    expect.insert(n);
            }
            EXPECT_EQ(to_tree(P), expect);
            for (const auto & w : W)
                if (u.is_prefix_of(w)) {
                    EXPECT_TRUE(P.contains(w));
                }
            if (u.empty())
                continue;
            auto Q = quotient(W, u);
            EXPECT_FALSE(validate(Q));
            std::size_t above = 0;
            for (const auto & w : W)
                if (u.is_prefix_of(w)) {
                    ++above;
                    EXPECT_TRUE(Q.contains(strip_stem(w, u.size())));
                }
            EXPECT_EQ(Q.size(), above);
        }
    }
}

TEST(Diagrams, IndexWalksTheTree)
{
    auto T1 = t1();
    DiagramIndex index(T1);
    EXPECT_EQ(index.find(Diagram{}), index.root());
    for (const auto & w : T1) {
        auto node = index.find(w);
        ASSERT_NE(node, DiagramIndex::npos);
        EXPECT_EQ(index.diagram(node), w);
        EXPECT_EQ(index.depth(node), w.size());
    }
    EXPECT_EQ(index.find(Diagram{B, C}), DiagramIndex::npos);
    EXPECT_EQ(index.child(DiagramIndex::npos, A), DiagramIndex::npos);
}

TEST(Diagrams, FullTree)
{
    auto F = full_tree(Language({2, 2, 1}), 3);
    EXPECT_EQ(F.size(), 1u + 2 + 4 + 4);
    EXPECT_FALSE(validate(F));
    EXPECT_EQ(F.children(Diagram{A}).size(), 2u);
}
