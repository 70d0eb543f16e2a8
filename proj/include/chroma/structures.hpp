#pragma once

// Finite coloring structures and membership in K(W).

#include <chroma/diagrams.hpp>
#include <chroma/error.hpp>
#include <chroma/parallel.hpp>
#include <chroma/rank.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chroma {

using Element = std::int64_t;
using Subset = std::vector<Element>;
using Position = std::uint32_t;

/// Universes up to this size store their coloring as a table indexed by bitmask.
inline constexpr std::size_t dense_limit = 20;

inline std::string to_string(std::span<const Element> subset)
{
    std::string out = "[";
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(subset[i]);
    }
    return out + "]";
}

/// A finite universe with a coloring c of its nonempty subsets, where c(A)
/// has arity |A|. The coloring is addressed by positions into the sorted
/// universe; subsets are passed as ascending position lists.
class ColoringStructure {
public:
    using ColorFn = std::function<RelSymbol(std::span<const Position>)>;

    ColoringStructure() = default;

    /// `universe` need not be sorted; duplicates are rejected.
    ColoringStructure(std::vector<Element> universe, ColorFn fn) : universe_(std::move(universe)), fn_(std::move(fn))
    {
        std::sort(universe_.begin(), universe_.end());
        if (std::adjacent_find(universe_.begin(), universe_.end()) != universe_.end())
            throw PreconditionError("coloring structure: duplicate universe element");
    }

    /// A table indexed by position bitmask (entry 0 unused); |universe| <= dense_limit.
    static ColoringStructure dense(std::vector<Element> universe, std::vector<RelSymbol> by_mask)
    {
        std::sort(universe.begin(), universe.end());
        if (universe.size() > dense_limit || by_mask.size() != (std::size_t{1} << universe.size()))
            throw PreconditionError("dense coloring: table size does not match the universe");
        auto table = std::make_shared<const std::vector<RelSymbol>>(std::move(by_mask));
        return ColoringStructure(std::move(universe), [table](std::span<const Position> a) {
            std::uint32_t mask = 0;
            for (auto p : a)
                mask |= std::uint32_t{1} << p;
            return (*table)[mask];
        });
    }

    /// Builds from explicit subset colors. Up to dense_limit elements every
    /// nonempty subset must be listed; above it unlisted subsets get symbol 0.
    static ColoringStructure from_table(std::vector<Element> universe, const std::map<Subset, RelSymbol> & colors);

    [[nodiscard]] std::span<const Element> universe() const { return universe_; }
    [[nodiscard]] std::size_t size() const { return universe_.size(); }
    [[nodiscard]] Element element(Position p) const { return universe_[p]; }

    [[nodiscard]] std::optional<Position> position_of(Element e) const
    {
        auto it = std::lower_bound(universe_.begin(), universe_.end(), e);
        if (it == universe_.end() || *it != e)
            return std::nullopt;
        return static_cast<Position>(it - universe_.begin());
    }

    [[nodiscard]] RelSymbol color(std::span<const Position> positions) const { return fn_(positions); }

    [[nodiscard]] RelSymbol color_of_mask(std::uint32_t mask) const
    {
        Position buf[32];
        std::size_t n = 0;
        for (; mask; mask &= mask - 1)
            buf[n++] = static_cast<Position>(std::countr_zero(mask));
        return fn_(std::span<const Position>(buf, n));
    }

    /// Color of a subset given by element ids, in any order.
    [[nodiscard]] RelSymbol color_of(std::span<const Element> subset) const { return color(positions_of(subset)); }

    [[nodiscard]] std::vector<Position> positions_of(std::span<const Element> subset) const
    {
        std::vector<Position> pos;
        pos.reserve(subset.size());
        for (auto e : subset) {
            auto p = position_of(e);
            if (! p)
                throw PreconditionError("element " + std::to_string(e) + " is not in the universe");
            pos.push_back(*p);
        }
        std::sort(pos.begin(), pos.end());
        if (std::adjacent_find(pos.begin(), pos.end()) != pos.end())
            throw PreconditionError("subset has repeated elements");
        return pos;
    }

    [[nodiscard]] Subset elements_of(std::span<const Position> positions) const
    {
        Subset out;
        for (auto p : positions)
            out.push_back(universe_[p]);
        return out;
    }

    /// The induced substructure on `subset`.
    [[nodiscard]] ColoringStructure restricted_to(std::span<const Element> subset) const
    {
        auto pos = positions_of(subset);
        auto parent = *this;
        return ColoringStructure(elements_of(pos), [parent, pos](std::span<const Position> a) {
            std::vector<Position> mapped;
            mapped.reserve(a.size());
            for (auto p : a)
                mapped.push_back(pos[p]);
            return parent.color(mapped);
        });
    }

    /// A table-backed copy; lookups no longer go through composed rules.
    [[nodiscard]] ColoringStructure materialized() const
    {
        if (size() > dense_limit)
            return *this;
        std::vector<RelSymbol> table(std::size_t{1} << size());
        for (std::uint32_t mask = 1; mask < table.size(); ++mask)
            table[mask] = color_of_mask(mask);
        return dense(universe_, std::move(table));
    }

private:
    std::vector<Element> universe_;
    ColorFn fn_ = [](std::span<const Position> a) { return RelSymbol{static_cast<std::uint32_t>(a.size()), 0}; };
};

inline ColoringStructure ColoringStructure::from_table(std::vector<Element> universe, const std::map<Subset, RelSymbol> & colors)
{
    ColoringStructure shell(std::move(universe), {});
    const auto n = shell.size();
    if (n <= dense_limit) {
        std::vector<RelSymbol> table(std::size_t{1} << n);
        std::vector<bool> seen(table.size(), false);
        for (const auto & [subset, sym] : colors) {
            auto pos = shell.positions_of(subset);
            if (pos.empty())
                throw InputError("coloring lists the empty set");
            std::uint32_t mask = 0;
            for (auto p : pos)
                mask |= std::uint32_t{1} << p;
            table[mask] = sym;
            seen[mask] = true;
        }
        for (std::uint32_t mask = 1; mask < table.size(); ++mask)
            if (! seen[mask]) {
                std::vector<Position> pos;
                for (auto m = mask; m; m &= m - 1)
                    pos.push_back(static_cast<Position>(std::countr_zero(m)));
                throw InputError("coloring is not total: missing " + to_string(shell.elements_of(pos)));
            }
        return dense({shell.universe().begin(), shell.universe().end()}, std::move(table));
    }
    auto sparse = std::make_shared<std::map<std::vector<Position>, RelSymbol>>();
    for (const auto & [subset, sym] : colors)
        (*sparse)[shell.positions_of(subset)] = sym;
    return ColoringStructure({shell.universe().begin(), shell.universe().end()}, [sparse](std::span<const Position> a) {
        auto it = sparse->find(std::vector<Position>(a.begin(), a.end()));
        if (it != sparse->end())
            return it->second;
        return RelSymbol{static_cast<std::uint32_t>(a.size()), 0};
    });
}

/// Calls f(positions) for every nonempty subset of {0..n-1} (n <= 31), by bitmask.
template <class F>
void for_each_nonempty_subset(std::size_t n, F && f)
{
    std::vector<Position> pos;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        pos.clear();
        for (auto m = mask; m; m &= m - 1)
            pos.push_back(static_cast<Position>(std::countr_zero(m)));
        f(std::span<const Position>(pos), mask);
    }
}

/// The first subset whose color has the wrong arity or is not in the language.
inline std::optional<Subset> coloring_violation(const ColoringStructure & M, const Language & language)
{
    if (M.size() > dense_limit)
        throw PreconditionError("coloring_violation: universe too large to enumerate");
    std::optional<Subset> bad;
    for_each_nonempty_subset(M.size(), [&](std::span<const Position> a, std::uint32_t) {
        if (bad)
            return;
        auto s = M.color(a);
        if (s.arity != a.size() || ! language.has(s))
            bad = M.elements_of(a);
    });
    return bad;
}

inline bool equal_colorings(const ColoringStructure & a, const ColoringStructure & b)
{
    if (! std::equal(a.universe().begin(), a.universe().end(), b.universe().begin(), b.universe().end()))
        return false;
    bool same = true;
    for_each_nonempty_subset(a.size(), [&](std::span<const Position> p, std::uint32_t) {
        if (same && a.color(p) != b.color(p))
            same = false;
    });
    return same;
}

/// True iff all equal-size subsets of A share a color, for every size.
inline bool is_monochromatic(const ColoringStructure & M, std::span<const Element> A)
{
    if (A.empty())
        throw PreconditionError("is_monochromatic: empty subset");
    auto pos = M.positions_of(A);
    if (pos.size() > 30)
        throw PreconditionError("is_monochromatic: subset too large");
    std::vector<std::optional<RelSymbol>> by_size(pos.size() + 1);
    std::vector<Position> sub;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << pos.size()); ++mask) {
        sub.clear();
        for (auto m = mask; m; m &= m - 1)
            sub.push_back(pos[static_cast<std::size_t>(std::countr_zero(m))]);
        auto c = M.color(sub);
        auto & slot = by_size[sub.size()];
        if (! slot)
            slot = c;
        else if (*slot != c)
            return false;
    }
    return true;
}

/// The diagram <c(A_1), ..., c(A_|A|)> of a monochromatic subset, A_k any k-subset.
inline Diagram diagram_of(const ColoringStructure & M, std::span<const Element> A)
{
    if (! is_monochromatic(M, A))
        throw PreconditionError("diagram_of: " + to_string(A) + " is not monochromatic");
    auto pos = M.positions_of(A);
    Diagram d;
    for (std::size_t k = 1; k <= pos.size(); ++k)
        d.push_back(M.color(std::span<const Position>(pos.data(), k)));
    return d;
}

/// A monochromatic subset together with its diagram.
struct MonochromaticSet {
    std::vector<Position> positions;
    Diagram diagram;
};

/// Extends a monochromatic set S by a position x above max(S): S + x is
/// monochromatic iff every subset {x} + T, T a proper subset of S, has the
/// color d_S(|T| + 1). Returns the extended diagram on success.
inline std::optional<Diagram> extend_monochromatic(const ColoringStructure & M, const MonochromaticSet & S, Position x)
{
    const auto s = S.positions.size();
    std::vector<Position> sub;
    sub.reserve(s + 1);
    for (std::uint32_t mask = 0; mask + 1 < (std::uint32_t{1} << s); ++mask) {
        sub.clear();
        for (auto m = mask; m; m &= m - 1)
            sub.push_back(S.positions[static_cast<std::size_t>(std::countr_zero(m))]);
        sub.push_back(x);
        if (M.color(sub) != S.diagram.at(sub.size()))
            return std::nullopt;
    }
    sub = S.positions;
    sub.push_back(x);
    return S.diagram.extended(M.color(sub));
}

namespace detail {

    inline std::vector<MonochromaticSet> singletons(const ColoringStructure & M)
    {
        std::vector<MonochromaticSet> level;
        for (Position p = 0; p < M.size(); ++p) {
            Position one[1] = {p};
            level.push_back({{p}, Diagram{M.color(one)}});
        }
        return level;
    }

    // The monochromatic (k+1)-sets extending a lexicographically sorted level
    // of monochromatic k-sets, again in lexicographic order.
    inline std::vector<MonochromaticSet> next_level(const ColoringStructure & M, const std::vector<MonochromaticSet> & level)
    {
        constexpr std::size_t min_chunk = 64;
        auto chunks = chunk_count(level.size(), min_chunk);
        std::vector<std::vector<MonochromaticSet>> parts(chunks);
        for_each_chunk(level.size(), min_chunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
            for (auto i = begin; i < end; ++i) {
                const auto & S = level[i];
                for (Position x = S.positions.back() + 1; x < M.size(); ++x)
                    if (auto d = extend_monochromatic(M, S, x)) {
                        auto pos = S.positions;
                        pos.push_back(x);
                        parts[c].push_back({std::move(pos), std::move(*d)});
                    }
            }
        });
        std::vector<MonochromaticSet> next;
        for (auto & part : parts)
            std::move(part.begin(), part.end(), std::back_inserter(next));
        return next;
    }

}

/// Calls f(set) for every monochromatic subset, smallest sizes first and
/// lexicographically within a size, while f returns true.
template <class F>
void for_each_monochromatic(const ColoringStructure & M, F && f, std::size_t max_size = SIZE_MAX)
{
    if (M.size() == 0 || max_size == 0)
        return;
    auto level = detail::singletons(M);
    for (std::size_t k = 1; ! level.empty(); ++k) {
        for (const auto & S : level)
            if (! f(S))
                return;
        if (k == max_size)
            return;
        level = detail::next_level(M, level);
    }
}

struct ClassViolation {
    Subset subset;
    Diagram diagram;
};

/// nullopt iff every finite monochromatic substructure has its diagram in W;
/// otherwise the violating subset that is smallest by size, then lexicographically.
inline std::optional<ClassViolation> in_class(const ColoringStructure & M, const DiagramSet & W)
{
    std::optional<ClassViolation> violation;
    for_each_monochromatic(M, [&](const MonochromaticSet & S) {
        if (W.contains(S.diagram))
            return true;
        violation = ClassViolation{M.elements_of(S.positions), S.diagram};
        return false;
    });
    return violation;
}

/// Every diagram realized by a monochromatic subset.
inline std::set<Diagram> realized_diagrams(const ColoringStructure & M)
{
    std::set<Diagram> out{Diagram{}};
    for_each_monochromatic(M, [&](const MonochromaticSet & S) {
        out.insert(S.diagram);
        return true;
    });
    return out;
}

/// The structure on {0..n-1} coloring every k-set by d(k).
inline ColoringStructure monochromatic_model(const InfiniteDiagram & d, std::size_t n)
{
    std::vector<Element> universe(n);
    for (std::size_t i = 0; i < n; ++i)
        universe[i] = static_cast<Element>(i);
    return ColoringStructure(std::move(universe), [d](std::span<const Position> a) { return d(a.size()); });
}

inline ColoringStructure monochromatic_model(const Diagram & d, std::size_t n)
{
    if (n > d.size())
        throw PreconditionError("monochromatic_model: size " + std::to_string(n) + " exceeds the diagram length " + std::to_string(d.size()));
    return monochromatic_model(diagram_with_prefix(d), n);
}

/// True iff small's universe is contained in big's and colors agree on it.
inline bool is_substructure(const ColoringStructure & small, const ColoringStructure & big)
{
    for (auto e : small.universe())
        if (! big.position_of(e))
            return false;
    if (small.size() > dense_limit)
        throw PreconditionError("is_substructure: universe too large to compare");
    bool ok = true;
    for_each_nonempty_subset(small.size(), [&](std::span<const Position> p, std::uint32_t) {
        if (ok && small.color(p) != big.color_of(small.elements_of(p)))
            ok = false;
    });
    return ok;
}

struct TripleExtension {
    ColoringStructure n1, n2, n3;
};

/// Adds the fresh points X to each of M1 subset M2, M3: old subsets keep their
/// colors and every subset meeting X of size n gets d(n).
inline TripleExtension extend_triple(const ColoringStructure & m1, const ColoringStructure & m2, const ColoringStructure & m3,
    std::span<const Element> X, const InfiniteDiagram & d, const DiagramSet & W)
{
    if (! is_substructure(m1, m2) || ! is_substructure(m1, m3))
        throw PreconditionError("extend_triple: M1 is not a substructure of both M2 and M3");
    for (auto x : X)
        if (m2.position_of(x) || m3.position_of(x))
            throw PreconditionError("extend_triple: " + std::to_string(x) + " is not fresh");
    Subset fresh(X.begin(), X.end());
    std::sort(fresh.begin(), fresh.end());
    if (std::adjacent_find(fresh.begin(), fresh.end()) != fresh.end())
        throw PreconditionError("extend_triple: X has repeated elements");
    auto depth = std::max(m2.size(), m3.size()) + fresh.size();
    if (! infinite_diagram_consistent(W, d, depth))
        throw PreconditionError("extend_triple: the diagram leaves W before depth " + std::to_string(depth));

    auto extend = [&](const ColoringStructure & m) {
        std::vector<Element> universe(m.universe().begin(), m.universe().end());
        universe.insert(universe.end(), fresh.begin(), fresh.end());
        std::sort(universe.begin(), universe.end());
        // For each new position, its position in m or npos.
        std::vector<std::optional<Position>> back;
        for (auto e : universe)
            back.push_back(m.position_of(e));
        return ColoringStructure(universe, [m, back, d](std::span<const Position> a) {
            std::vector<Position> old;
            old.reserve(a.size());
            for (auto p : a) {
                if (! back[p])
                    return d(a.size());
                old.push_back(*back[p]);
            }
            return m.color(old);
        }).materialized();
    };
    return TripleExtension{extend(m1), extend(m2), extend(m3)};
}

}
