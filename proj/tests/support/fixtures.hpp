#pragma once

// Shared fixtures and conversions between library values and oracle data.

#include "oracles.hpp"

#include <chroma/chroma.hpp>

#include <random>
#include <vector>

namespace fixtures {

using namespace chroma;

// T1: R1 = {A, B}, R2 = {C, D}, R3 = {E}.
inline const RelSymbol A{1, 0}, B{1, 1}, C{2, 0}, D{2, 1}, E{3, 0};

inline DiagramSet t1()
{
    return DiagramSet::checked(Language({2, 2, 1}), {Diagram{}, Diagram{A}, Diagram{B}, Diagram{A, C}, Diagram{A, D}, Diagram{A, C, E}});
}

inline oracle::Node to_node(const Diagram & w)
{
    oracle::Node out;
    for (const auto & s : w)
        out.emplace_back(s.arity, s.id);
    return out;
}

inline Diagram from_node(const oracle::Node & n)
{
    Diagram w;
    for (auto [a, i] : n)
        w.push_back(RelSymbol{a, i});
    return w;
}

inline oracle::Tree to_tree(const DiagramSet & W)
{
    oracle::Tree t;
    for (const auto & w : W)
        t.insert(to_node(w));
    return t;
}

inline DiagramSet from_tree(const oracle::Tree & t, const Language & L)
{
    std::set<Diagram> members;
    for (const auto & n : t)
        members.insert(from_node(n));
    return DiagramSet(L, std::move(members));
}

inline DiagramSet random_set(std::mt19937_64 & rng, std::size_t max_nodes, const std::vector<std::uint32_t> & counts)
{
    return from_tree(oracle::random_tree(rng, max_nodes, counts), Language(counts));
}

/// The coloring of a structure as an oracle table over positions.
inline oracle::Coloring to_table(const ColoringStructure & M)
{
    oracle::Coloring c(std::size_t{1} << M.size());
    for (std::uint32_t m = 1; m < c.size(); ++m) {
        auto s = M.color_of_mask(m);
        c[m] = {s.arity, s.id};
    }
    return c;
}

inline bool oracle_in_class(const ColoringStructure & M, const DiagramSet & W)
{
    return oracle::in_class(to_table(M), M.size(), to_tree(W));
}

inline ColoringStructure from_colors(std::vector<Element> universe, const std::map<Subset, RelSymbol> & colors)
{
    return ColoringStructure::from_table(std::move(universe), colors);
}

}
