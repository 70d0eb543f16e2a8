#pragma once

// Backtracking search for W-colorings of a small universe with some subset
// colors fixed in advance.

#include <chroma/diagrams.hpp>
#include <chroma/error.hpp>
#include <chroma/structures.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace chroma {

enum class SearchStatus { sat, unsat, budget_exhausted };

/// A monochromatic set whose diagram is not in W, as a position mask.
struct SearchConflict {
    std::uint32_t mask = 0;
    Diagram diagram;
};

/// The first conflict met under each candidate color of the first free set.
struct BranchRefutation {
    RelSymbol choice;
    SearchConflict conflict;
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::unsat;
    /// Color by position mask; entry 0 unused. Filled when sat.
    std::vector<RelSymbol> coloring;
    std::vector<BranchRefutation> refutation;
    /// Set when the fixed colors alone already contain a violation.
    std::optional<SearchConflict> fixed_conflict;
    std::uint64_t nodes = 0;
};

/// Colors every nonempty subset of positions {0..n-1}. Sets are visited by
/// size and then lexicographically; fixed sets take their given color and
/// free sets try symbol ids in ascending order (or in a shuffled order when
/// an rng is supplied). A branch is cut as soon as a monochromatic set's
/// diagram leaves W. Monochromatic status is kept per mask as a node of a
/// trie over W, so each new set costs one pass over the subsets of its tail.
/// When only one coloring is wanted, a free set with a non-monochromatic
/// proper subset tries a single color: no superset of it can be
/// monochromatic either, so its color is never read.
class ColoringSearch {
public:
    static constexpr std::size_t max_positions = 16;

    ColoringSearch(const DiagramSet & W, std::size_t n, std::vector<std::optional<RelSymbol>> fixed) :
        W_(W), index_(W), n_(n), fixed_(std::move(fixed))
    {
        if (n > max_positions)
            throw PreconditionError("coloring search: at most " + std::to_string(max_positions) + " points");
        const std::size_t total = std::size_t{1} << n;
        if (fixed_.size() != total)
            fixed_.resize(total);
        for (std::uint32_t mask = 1; mask < total; ++mask)
            order_.push_back(mask);
        std::sort(order_.begin(), order_.end(), [](std::uint32_t a, std::uint32_t b) {
            auto pa = std::popcount(a), pb = std::popcount(b);
            if (pa != pb)
                return pa < pb;
            // Lexicographic on ascending position lists.
            while (a && b) {
                auto la = std::countr_zero(a), lb = std::countr_zero(b);
                if (la != lb)
                    return la < lb;
                a &= a - 1;
                b &= b - 1;
            }
            return false;
        });
        color_.assign(total, RelSymbol{});
        node_.assign(total, not_mono);
    }

    [[nodiscard]] std::size_t positions() const { return n_; }

    /// The first coloring in search order.
    SearchOutcome solve(std::uint64_t budget, std::mt19937_64 * rng = nullptr)
    {
        SearchOutcome out;
        skip_dead_ = true;
        run(budget, rng, out, [&](const std::vector<RelSymbol> & c) {
            out.coloring = c;
            return false;
        });
        return out;
    }

    /// Calls f(coloring) on every coloring in search order while f returns true.
    template <class F>
    SearchOutcome enumerate(std::uint64_t budget, F && f)
    {
        SearchOutcome out;
        skip_dead_ = false;
        run(budget, nullptr, out, f);
        return out;
    }

private:
    static constexpr std::int32_t not_mono = -2;

    // Assigns color_[mask] and derives node_[mask]; false on a violation.
    bool place(std::uint32_t mask, RelSymbol s, SearchConflict * conflict)
    {
        color_[mask] = s;
        const auto low = mask & (~mask + 1);
        const auto rest = mask ^ low;
        std::int32_t parent = index_.root();
        if (rest) {
            parent = node_[rest];
            if (parent == not_mono) {
                node_[mask] = not_mono;
                return true;
            }
            // low joined with every proper subset T of rest must carry the
            // color of the (|T|+1)-sets of rest.
            for (std::uint32_t t = 0;; t = (t - rest) & rest) {
                if (t != rest) {
                    auto want = prefix_mask(rest, static_cast<std::size_t>(std::popcount(t)) + 1);
                    if (color_[t | low] != color_[want]) {
                        node_[mask] = not_mono;
                        return true;
                    }
                }
                if (t == rest)
                    break;
            }
        }
        auto child = index_.child(parent, s);
        if (child == DiagramIndex::npos) {
            if (conflict) {
                conflict->mask = mask;
                conflict->diagram = index_.diagram(parent).extended(s);
            }
            return false;
        }
        node_[mask] = child;
        return true;
    }

    // The k lowest positions of mask.
    static std::uint32_t prefix_mask(std::uint32_t mask, std::size_t k)
    {
        std::uint32_t out = 0;
        for (; k; --k) {
            auto low = mask & (~mask + 1);
            out |= low;
            mask ^= low;
        }
        return out;
    }

    // Some maximal proper subset is not monochromatic.
    [[nodiscard]] bool dead(std::uint32_t mask) const
    {
        if (std::popcount(mask) < 2)
            return false;
        for (auto m = mask; m; m &= m - 1)
            if (node_[mask ^ (m & (~m + 1))] == not_mono)
                return true;
        return false;
    }

    std::vector<RelSymbol> candidates(std::uint32_t mask, std::mt19937_64 * rng) const
    {
        if (fixed_[mask])
            return {*fixed_[mask]};
        auto arity = static_cast<std::uint32_t>(std::popcount(mask));
        const auto count = W_.language().count(arity);
        if (skip_dead_ && dead(mask))
            return {RelSymbol{arity, rng ? static_cast<std::uint32_t>((*rng)() % count) : 0}};
        std::vector<RelSymbol> out;
        for (std::uint32_t id = 0; id < count; ++id)
            out.push_back(RelSymbol{arity, id});
        if (rng)
            for (std::size_t i = out.size(); i > 1; --i)
                std::swap(out[i - 1], out[(*rng)() % i]);
        return out;
    }

    template <class F>
    void run(std::uint64_t budget, std::mt19937_64 * rng, SearchOutcome & out, F && on_solution)
    {
        for (std::uint32_t mask = 1; mask < fixed_.size(); ++mask) {
            if (fixed_[mask] && (fixed_[mask]->arity != static_cast<std::uint32_t>(std::popcount(mask))))
                throw PreconditionError("coloring search: fixed color has the wrong arity");
        }
        // The first free set in order; its branches carry the refutation.
        std::size_t top = order_.size();
        for (std::size_t i = 0; i < order_.size(); ++i)
            if (! fixed_[order_[i]]) {
                top = i;
                break;
            }
        // Fixed sets before the first free one have a single candidate each.
        for (std::size_t i = 0; i < top; ++i) {
            SearchConflict c;
            if (! place(order_[i], *fixed_[order_[i]], &c)) {
                out.status = SearchStatus::unsat;
                out.fixed_conflict = c;
                return;
            }
        }
        if (top == order_.size()) {
            out.status = SearchStatus::sat;
            on_solution(color_);
            return;
        }

        struct Frame {
            std::vector<RelSymbol> options;
            std::size_t next = 0;
        };
        std::vector<Frame> stack;
        stack.reserve(order_.size() - top);
        stack.push_back({candidates(order_[top], rng), 0});
        std::optional<SearchConflict> branch_conflict;
        bool found = false;

        auto close_top_branch = [&] {
            if (! branch_conflict)
                return;
            out.refutation.push_back({stack.front().options[stack.front().next - 1], *branch_conflict});
            branch_conflict.reset();
        };

        while (! stack.empty()) {
            const auto depth = stack.size() - 1;
            const auto mask = order_[top + depth];
            auto & frame = stack.back();
            if (frame.next == frame.options.size()) {
                if (depth == 0)
                    close_top_branch();
                stack.pop_back();
                continue;
            }
            if (depth == 0 && frame.next > 0)
                close_top_branch();
            auto s = frame.options[frame.next++];
            if (! fixed_[mask] && ++out.nodes > budget) {
                out.status = SearchStatus::budget_exhausted;
                out.refutation.clear();
                return;
            }
            SearchConflict c;
            if (! place(mask, s, &c)) {
                if (! branch_conflict && ! found)
                    branch_conflict = c;
                continue;
            }
            if (top + depth + 1 == order_.size()) {
                found = true;
                out.status = SearchStatus::sat;
                if (! on_solution(color_))
                    return;
                continue;
            }
            stack.push_back({candidates(order_[top + depth + 1], rng), 0});
        }
        if (found) {
            out.refutation.clear();
            return;
        }
        out.status = SearchStatus::unsat;
    }

    const DiagramSet & W_;
    DiagramIndex index_;
    std::size_t n_;
    std::vector<std::optional<RelSymbol>> fixed_;
    std::vector<std::uint32_t> order_;
    std::vector<RelSymbol> color_;
    std::vector<std::int32_t> node_;
    bool skip_dead_ = false;
};

/// A W-coloring of `universe` (sorted) found by ColoringSearch, with the
/// positions of the search matching the sorted universe.
inline ColoringStructure structure_from_masks(std::vector<Element> universe, const std::vector<RelSymbol> & by_mask)
{
    return ColoringStructure::dense(std::move(universe), by_mask);
}

inline std::vector<Element> iota_universe(std::size_t n)
{
    std::vector<Element> u(n);
    for (std::size_t i = 0; i < n; ++i)
        u[i] = static_cast<Element>(i);
    return u;
}

/// The first W-coloring of an n-point universe {0..n-1} in search order.
inline std::optional<ColoringStructure> find_coloring(const DiagramSet & W, std::size_t n, std::uint64_t budget = 1'000'000)
{
    if (n == 0)
        return ColoringStructure{};
    ColoringSearch search(W, n, {});
    auto out = search.solve(budget);
    if (out.status == SearchStatus::budget_exhausted)
        throw PreconditionError("find_coloring: budget exhausted");
    if (out.status != SearchStatus::sat)
        return std::nullopt;
    return structure_from_masks(iota_universe(n), out.coloring);
}

/// A W-coloring of {0..n-1} found with shuffled value orders.
inline std::optional<ColoringStructure> sample_coloring(const DiagramSet & W, std::size_t n, std::mt19937_64 & rng, std::uint64_t budget = 1'000'000)
{
    if (n == 0)
        return ColoringStructure{};
    ColoringSearch search(W, n, {});
    auto out = search.solve(budget, &rng);
    if (out.status != SearchStatus::sat)
        return std::nullopt;
    return structure_from_masks(iota_universe(n), out.coloring);
}

}
