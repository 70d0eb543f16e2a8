#pragma once

// The growth sequence kappa, disjoint sums, and colorings of binary-string
// universes that split sets by the first position where strings differ.

#include <chroma/diagrams.hpp>
#include <chroma/error.hpp>
#include <chroma/ordinal.hpp>
#include <chroma/rank.hpp>
#include <chroma/search.hpp>
#include <chroma/structures.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace chroma {

/// kappa_a: a below omega, the supremum of earlier values at limits, 2^kappa_b
/// at successors b + 1 with b >= omega, and beth_a from omega^2 on.
inline CardinalExpr kappa(const Ordinal & alpha)
{
    if (auto n = alpha.finite_value())
        return CardinalExpr::finite(*n);
    const auto omega2 = Ordinal::omega_power(Ordinal::finite(2));
    if (alpha >= omega2)
        return CardinalExpr::beth(alpha);
    if (alpha.is_limit())
        return CardinalExpr::sup_kappa(alpha);
    auto [beta, k] = split(alpha);
    return CardinalExpr::power_set(CardinalExpr::kappa_ref(beta + Ordinal::finite(k - 1)));
}

/// Binary strings of length m are stored as integers with position 0 the
/// most significant bit, so numeric order is the lexicographic order.
using BinaryString = std::uint32_t;

inline constexpr std::size_t max_string_length = 16;

inline std::string binary_string(BinaryString f, std::size_t m)
{
    std::string out(m, '0');
    for (std::size_t p = 0; p < m; ++p)
        if (f >> (m - 1 - p) & 1)
            out[p] = '1';
    return out;
}

/// The first position where f and g differ.
inline std::size_t delta(BinaryString f, BinaryString g, std::size_t m)
{
    if (f == g)
        throw PreconditionError("delta: equal strings");
    return m - static_cast<std::size_t>(std::bit_width(f ^ g));
}

/// Delta of consecutive elements of a lexicographically sorted tuple.
inline std::vector<std::size_t> delta_sequence(std::span<const BinaryString> X, std::size_t m)
{
    if (X.size() < 2)
        throw PreconditionError("delta_sequence: needs at least two strings");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < X.size(); ++i) {
        if (X[i] >= X[i + 1])
            throw PreconditionError("delta_sequence: strings must be distinct and sorted");
        out.push_back(delta(X[i], X[i + 1], m));
    }
    return out;
}

/// 0 where consecutive deltas increase, 1 where they decrease.
inline std::vector<std::uint8_t> s_pattern(std::span<const BinaryString> X, std::size_t m)
{
    if (X.size() < 3)
        throw PreconditionError("s_pattern: needs at least three strings");
    auto d = delta_sequence(X, m);
    std::vector<std::uint8_t> s;
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        s.push_back(d[i] < d[i + 1] ? 0 : 1);
    return s;
}

inline std::string to_string(const std::vector<std::uint8_t> & s)
{
    std::string out;
    for (auto b : s)
        out += b ? '1' : '0';
    return out;
}

/// Index of a pattern among all patterns of its length: the constant-0
/// pattern is 0, the constant-1 pattern is 1, and the rest follow from 2 in
/// order of their binary value.
inline std::size_t pattern_index(const std::vector<std::uint8_t> & s)
{
    if (std::all_of(s.begin(), s.end(), [](auto b) { return b == 0; }))
        return 0;
    if (std::all_of(s.begin(), s.end(), [](auto b) { return b == 1; }))
        return 1;
    std::size_t value = 0;
    for (auto b : s)
        value = value * 2 + b;
    // Values 1 .. 2^len - 2 map to 2 .. 2^len - 1.
    return value + 1;
}

inline std::size_t pattern_count(std::size_t length) { return std::size_t{1} << length; }

enum class Monotone { increasing, decreasing, neither };

inline Monotone monotonicity(const std::vector<std::size_t> & d)
{
    bool inc = true, dec = true;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        inc = inc && d[i] < d[i + 1];
        dec = dec && d[i] > d[i + 1];
    }
    if (inc)
        return Monotone::increasing;
    if (dec)
        return Monotone::decreasing;
    return Monotone::neither;
}

namespace detail {

    inline std::vector<Element> string_universe(std::size_t m)
    {
        if (m > max_string_length)
            throw PreconditionError("binary-string universe: length " + std::to_string(m) + " exceeds " + std::to_string(max_string_length));
        return iota_universe(std::size_t{1} << m);
    }

    inline std::vector<BinaryString> strings_at(std::span<const Position> a)
    {
        // Universe element i is the string with value i, at position i.
        return {a.begin(), a.end()};
    }

    inline RelSymbol arbitrary(std::size_t arity) { return RelSymbol{static_cast<std::uint32_t>(arity), 0}; }

    // Color of a set of positions in a component, lifted by `shift` arities.
    inline RelSymbol lifted(const ColoringStructure & comp, std::span<const Element> subset, std::uint32_t shift)
    {
        auto s = comp.color_of(subset);
        return RelSymbol{s.arity + shift, s.id};
    }

}

/// Disjoint union; elements are renumbered consecutively component by
/// component and subsets meeting two components get symbol 0.
inline ColoringStructure build_limit_sum(const std::vector<ColoringStructure> & components)
{
    // Singleton colors must be disjoint across components.
    std::vector<std::vector<RelSymbol>> per(components.size());
    for (std::size_t i = 0; i < components.size(); ++i)
        for (Position p = 0; p < components[i].size(); ++p) {
            Position one[1] = {p};
            per[i].push_back(components[i].color(one));
        }
    for (std::size_t i = 0; i < per.size(); ++i)
        for (std::size_t j = i + 1; j < per.size(); ++j)
            for (auto s : per[i])
                if (std::find(per[j].begin(), per[j].end(), s) != per[j].end())
                    throw PreconditionError("build_limit_sum: components " + std::to_string(i) + " and " + std::to_string(j) + " share the singleton color " + to_string(s));

    std::vector<std::size_t> owner;
    std::vector<Position> local;
    for (std::size_t i = 0; i < components.size(); ++i)
        for (Position p = 0; p < components[i].size(); ++p) {
            owner.push_back(i);
            local.push_back(p);
        }
    auto parts = std::make_shared<const std::vector<ColoringStructure>>(components);
    return ColoringStructure(iota_universe(owner.size()), [parts, owner, local](std::span<const Position> a) {
        auto first = owner[a.front()];
        std::vector<Position> inner;
        for (auto p : a) {
            if (owner[p] != first)
                return detail::arbitrary(a.size());
            inner.push_back(local[p]);
        }
        return (*parts)[first].color(inner);
    });
}

/// Universe ^m 2; singletons get wbar(1), a pair {f, g} gets wn[delta(f, g)](2),
/// larger sets symbol 0. No triple is monochromatic.
inline ColoringStructure build_pair_splitting(std::size_t m, const Diagram & wbar, const std::vector<Diagram> & wn)
{
    if (wbar.size() != 1)
        throw PreconditionError("build_pair_splitting: wbar must have length 1");
    if (wn.size() != m)
        throw PreconditionError("build_pair_splitting: needs exactly m = " + std::to_string(m) + " pair diagrams");
    for (std::size_t i = 0; i < wn.size(); ++i) {
        if (wn[i].size() != 2 || ! wbar.is_prefix_of(wn[i]))
            throw PreconditionError("build_pair_splitting: " + to_string(wn[i]) + " does not extend wbar by one symbol");
        for (std::size_t j = 0; j < i; ++j)
            if (wn[i] == wn[j])
                throw PreconditionError("build_pair_splitting: repeated diagram " + to_string(wn[i]));
    }
    return ColoringStructure(detail::string_universe(m), [m, wbar, wn](std::span<const Position> a) {
        if (a.size() == 1)
            return wbar.at(1);
        if (a.size() == 2)
            return wn[delta(a[0], a[1], m)].at(2);
        return detail::arbitrary(a.size());
    });
}

/// Universe ^m 2 for wbar of length k >= 2 and 2^(k-1) components c_j, each a
/// coloring of positions {0..m-1} in the language shifted by one arity.
/// Sets of size <= k get wbar(|X|); (k+1)-sets with sign pattern j get
/// c_j(Delta(X)) for j < 2 and c_j({0..k-1}) otherwise; larger sets get
/// c_0 or c_1 on a strictly increasing or decreasing Delta(X), and symbol 0
/// when Delta(X) is not monotone.
inline ColoringStructure build_k_splitting(std::size_t m, const Diagram & wbar, const std::vector<ColoringStructure> & comps)
{
    const auto k = wbar.size();
    if (k < 2)
        throw PreconditionError("build_k_splitting: wbar must have length at least 2");
    if (comps.size() != pattern_count(k - 1))
        throw PreconditionError("build_k_splitting: needs " + std::to_string(pattern_count(k - 1)) + " components");
    auto positions = iota_universe(m);
    for (const auto & c : comps)
        if (! std::equal(positions.begin(), positions.end(), c.universe().begin(), c.universe().end()))
            throw PreconditionError("build_k_splitting: components must color the positions 0..m-1");
    if (comps.size() > 2 && m < k)
        throw PreconditionError("build_k_splitting: m = " + std::to_string(m) + " is too short for the canonical " + std::to_string(k) + "-set");
    auto parts = std::make_shared<const std::vector<ColoringStructure>>(comps);
    return ColoringStructure(detail::string_universe(m), [m, k, wbar, parts](std::span<const Position> a) {
        if (a.size() <= k)
            return wbar.at(a.size());
        auto X = detail::strings_at(a);
        auto d = delta_sequence(X, m);
        std::vector<Element> dset(d.begin(), d.end());
        if (a.size() == k + 1) {
            auto j = pattern_index(s_pattern(X, m));
            if (j < 2)
                return detail::lifted((*parts)[j], dset, 1);
            auto canonical = iota_universe(k);
            return detail::lifted((*parts)[j], canonical, 1);
        }
        switch (monotonicity(d)) {
        case Monotone::increasing: return detail::lifted((*parts)[0], dset, 1);
        case Monotone::decreasing: return detail::lifted((*parts)[1], dset, 1);
        case Monotone::neither: break;
        }
        return detail::arbitrary(a.size());
    });
}

/// Per-block data of the interval splitting: the block [begin, end) of
/// positions, wbar_i of length 2, wstar_i extending it with length k_i + 2,
/// and 2^(k_i + 1) components coloring the positions of the block in the
/// language shifted by one arity.
struct SplitBlock {
    std::size_t begin = 0;
    std::size_t end = 0;
    Diagram wbar;
    Diagram wstar;
    std::vector<ColoringStructure> comps;

    [[nodiscard]] std::size_t k() const { return wstar.size() - 2; }
};

/// Universe ^m 2. A pair gets wbar_i(2) for the block i holding its delta;
/// the wbar_i are pairwise distinct.
/// Sets whose deltas all lie in block i are colored like the k-splitting
/// with wstar_i; every other set of size >= 3 gets symbol 0.
inline ColoringStructure build_interval_splitting(std::size_t m, const std::vector<SplitBlock> & blocks)
{
    if (blocks.empty())
        throw PreconditionError("build_interval_splitting: no blocks");
    std::size_t at = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto & b = blocks[i];
        auto where = "build_interval_splitting: block " + std::to_string(i) + ": ";
        if (b.begin != at || b.end <= b.begin)
            throw PreconditionError(where + "blocks must be consecutive nonempty intervals starting at 0");
        at = b.end;
        if (b.wbar.size() != 2 || b.wstar.size() < 2 || ! b.wbar.is_prefix_of(b.wstar))
            throw PreconditionError(where + "wstar must extend a length-2 wbar");
        if (b.wbar.at(1) != blocks[0].wbar.at(1))
            throw PreconditionError(where + "all blocks must share wbar(1)");
        for (std::size_t j = 0; j < i; ++j)
            if (blocks[j].wbar == b.wbar)
                throw PreconditionError(where + "wbar repeats block " + std::to_string(j) + "; pair colors must tell blocks apart");
        if (b.comps.size() != pattern_count(b.k() + 1))
            throw PreconditionError(where + "needs " + std::to_string(pattern_count(b.k() + 1)) + " components");
        for (const auto & c : b.comps) {
            auto u = c.universe();
            if (u.size() != b.end - b.begin || (u.size() && (u.front() != static_cast<Element>(b.begin) || u.back() != static_cast<Element>(b.end - 1))))
                throw PreconditionError(where + "components must color the positions of the block");
        }
        if (b.comps.size() > 2 && b.end - b.begin < b.k() + 2)
            throw PreconditionError(where + "block too short for the canonical " + std::to_string(b.k() + 2) + "-set");
    }
    if (at != m)
        throw PreconditionError("build_interval_splitting: blocks must cover 0..m-1");

    std::vector<std::size_t> block_of(m);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (auto p = blocks[i].begin; p < blocks[i].end; ++p)
            block_of[p] = i;
    auto data = std::make_shared<const std::vector<SplitBlock>>(blocks);
    return ColoringStructure(detail::string_universe(m), [m, block_of, data](std::span<const Position> a) {
        const auto & bs = *data;
        if (a.size() == 1)
            return bs[0].wbar.at(1);
        auto X = detail::strings_at(a);
        auto d = delta_sequence(X, m);
        const auto i = block_of[d[0]];
        if (a.size() == 2)
            return bs[i].wbar.at(2);
        if (! std::all_of(d.begin(), d.end(), [&](std::size_t p) { return block_of[p] == i; }))
            return detail::arbitrary(a.size());
        const auto & b = bs[i];
        const auto k = b.k();
        if (a.size() <= k + 2)
            return b.wstar.at(a.size());
        std::vector<Element> dset(d.begin(), d.end());
        if (a.size() == k + 3) {
            auto j = pattern_index(s_pattern(X, m));
            if (j < 2)
                return detail::lifted(b.comps[j], dset, 1);
            std::vector<Element> canonical;
            for (std::size_t p = 0; p < k + 2; ++p)
                canonical.push_back(static_cast<Element>(b.begin + p));
            return detail::lifted(b.comps[j], canonical, 1);
        }
        switch (monotonicity(d)) {
        case Monotone::increasing: return detail::lifted(b.comps[0], dset, 1);
        case Monotone::decreasing: return detail::lifted(b.comps[1], dset, 1);
        case Monotone::neither: break;
        }
        return detail::arbitrary(a.size());
    });
}

namespace detail {

    // Children of w sorted by decreasing rank, dealt round-robin into `parts` sets.
    inline std::vector<std::vector<Diagram>> deal_children(const DiagramSet & W, const Diagram & w, std::size_t parts)
    {
        auto children = W.children(w);
        if (children.size() < parts)
            throw PreconditionError("splitting: " + to_string(w) + " has " + std::to_string(children.size()) + " children, needs " + std::to_string(parts));
        auto ranks = rank_table(W);
        std::stable_sort(children.begin(), children.end(), [&](const Diagram & a, const Diagram & b) { return ranks.at(a) > ranks.at(b); });
        std::vector<std::vector<Diagram>> out(parts);
        for (std::size_t i = 0; i < children.size(); ++i)
            out[i % parts].push_back(children[i]);
        return out;
    }

    inline ColoringStructure relabeled(const ColoringStructure & c, Element offset)
    {
        std::vector<Element> u;
        for (auto e : c.universe())
            u.push_back(e + offset);
        return ColoringStructure(u, [c](std::span<const Position> a) { return c.color(a); }).materialized();
    }

}

/// The components of a k-splitting above wbar: the children of wbar are
/// dealt into 2^(k-1) sets S_j and c_j is the first coloring of m points in
/// W pruned to S_j, quotiented by wbar(1).
inline std::vector<ColoringStructure> derive_k_splitting(const DiagramSet & W, const Diagram & wbar, std::size_t m)
{
    if (wbar.size() < 2 || ! W.contains(wbar))
        throw PreconditionError("derive_k_splitting: wbar must be a member of length at least 2");
    auto S = detail::deal_children(W, wbar, pattern_count(wbar.size() - 1));
    std::vector<ColoringStructure> comps;
    for (std::size_t j = 0; j < S.size(); ++j) {
        auto U = quotient(prune(W, S[j]), wbar.prefix(1));
        auto c = find_coloring(U, m);
        if (! c)
            throw PreconditionError("derive_k_splitting: component " + std::to_string(j) + " has no coloring of " + std::to_string(m) + " points");
        comps.push_back(*c);
    }
    return comps;
}

/// Fills in the components of interval-splitting blocks that only give
/// their bounds, wbar_i and wstar_i, in the same way.
inline std::vector<SplitBlock> derive_interval_splitting(const DiagramSet & W, std::vector<SplitBlock> blocks)
{
    for (auto & b : blocks) {
        if (! W.contains(b.wstar) || b.wstar.size() < 2)
            throw PreconditionError("derive_interval_splitting: " + to_string(b.wstar) + " is not a member of length at least 2");
        auto S = detail::deal_children(W, b.wstar, pattern_count(b.k() + 1));
        b.comps.clear();
        for (std::size_t j = 0; j < S.size(); ++j) {
            auto U = quotient(prune(W, S[j]), b.wstar.prefix(1));
            auto c = find_coloring(U, b.end - b.begin);
            if (! c)
                throw PreconditionError("derive_interval_splitting: a component has no coloring of the block");
            b.comps.push_back(detail::relabeled(*c, static_cast<Element>(b.begin)));
        }
    }
    return blocks;
}

}
