#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond plain data types: trees are sets of (arity, id) vectors and
// colorings are tables indexed by subset bitmask.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Sym = std::pair<std::uint32_t, std::uint32_t>;
using Node = std::vector<Sym>;
using Tree = std::set<Node>;

/// Rank by direct recursion: scan the whole tree for one-step extensions.
inline std::uint64_t naive_rank(const Tree & tree, const Node & w)
{
    std::uint64_t best = 0;
    bool leaf = true;
    for (const auto & u : tree) {
        if (u.size() != w.size() + 1 || ! std::equal(w.begin(), w.end(), u.begin()))
            continue;
        leaf = false;
        best = std::max(best, naive_rank(tree, u) + 1);
    }
    return leaf ? 0 : best;
}

/// A random prefix-closed tree with at most max_nodes members (the root
/// included), arities up to max_arity and `counts[n-1]` symbols of arity n.
inline Tree random_tree(std::mt19937_64 & rng, std::size_t max_nodes, const std::vector<std::uint32_t> & counts)
{
    Tree tree{Node{}};
    std::vector<Node> open{Node{}};
    const auto max_arity = counts.size();
    while (tree.size() < max_nodes && ! open.empty()) {
        auto pick = rng() % open.size();
        auto w = open[pick];
        if (w.size() >= max_arity) {
            open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
            continue;
        }
        auto arity = static_cast<std::uint32_t>(w.size() + 1);
        auto id = static_cast<std::uint32_t>(rng() % counts[arity - 1]);
        auto u = w;
        u.emplace_back(arity, id);
        if (tree.insert(u).second)
            open.push_back(u);
        else if (rng() % 4 == 0)
            open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return tree;
}

/// A coloring of the nonempty subsets of {0..n-1}: color[mask] = (|mask|, id).
using Coloring = std::vector<Sym>;

inline std::vector<std::uint32_t> members_of(std::uint32_t mask)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < 32; ++i)
        if (mask >> i & 1)
            out.push_back(i);
    return out;
}

/// Monochromatic by definition: every two subsets of equal size share a color.
inline bool is_mono(const Coloring & c, std::uint32_t mask)
{
    std::map<int, Sym> seen;
    for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
        auto size = std::popcount(sub);
        auto [it, fresh] = seen.emplace(size, c[sub]);
        if (! fresh && it->second != c[sub])
            return false;
    }
    return true;
}

inline Node diagram_of(const Coloring & c, std::uint32_t mask)
{
    Node d;
    auto elems = members_of(mask);
    std::uint32_t prefix = 0;
    for (auto e : elems) {
        prefix |= std::uint32_t{1} << e;
        d.push_back(c[prefix]);
    }
    return d;
}

/// The smallest violating subset by (size, lexicographic), or nullopt.
inline std::optional<std::uint32_t> violation(const Coloring & c, std::size_t n, const Tree & W)
{
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); ++m)
        masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        if (std::popcount(a) != std::popcount(b))
            return std::popcount(a) < std::popcount(b);
        return members_of(a) < members_of(b);
    });
    for (auto m : masks)
        if (is_mono(c, m) && ! W.contains(diagram_of(c, m)))
            return m;
    return std::nullopt;
}

inline bool in_class(const Coloring & c, std::size_t n, const Tree & W) { return ! violation(c, n, W); }

/// Every assignment of the free masks (given fixed colors) that yields a
/// W-coloring, enumerated by plain counting. f returns false to stop.
/// Returns the number of W-colorings visited.
inline std::uint64_t for_each_completion(std::size_t n, const std::vector<std::optional<Sym>> & fixed, const std::function<std::uint32_t(std::uint32_t)> & count,
    const Tree & W, const std::function<bool(const Coloring &)> & f)
{
    std::vector<std::uint32_t> free;
    Coloring c(std::size_t{1} << n);
    for (std::uint32_t m = 1; m < c.size(); ++m) {
        if (fixed[m])
            c[m] = *fixed[m];
        else
            free.push_back(m);
    }
    std::vector<std::uint32_t> digit(free.size(), 0);
    std::uint64_t good = 0;
    while (true) {
        for (std::size_t i = 0; i < free.size(); ++i)
            c[free[i]] = {static_cast<std::uint32_t>(std::popcount(free[i])), digit[i]};
        if (in_class(c, n, W)) {
            ++good;
            if (! f(c))
                return good;
        }
        std::size_t i = 0;
        for (; i < free.size(); ++i) {
            if (++digit[i] < count(static_cast<std::uint32_t>(std::popcount(free[i]))))
                break;
            digit[i] = 0;
        }
        if (i == free.size())
            return good;
    }
}

inline bool completion_exists(std::size_t n, const std::vector<std::optional<Sym>> & fixed, const std::function<std::uint32_t(std::uint32_t)> & count, const Tree & W)
{
    return for_each_completion(n, fixed, count, W, [](const Coloring &) { return false; }) > 0;
}

}
