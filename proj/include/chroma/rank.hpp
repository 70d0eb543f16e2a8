#pragma once

// The existence rank on (W, subset) and what follows from it structurally.

#include <chroma/diagrams.hpp>
#include <chroma/ordinal.hpp>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace chroma {

using RankTable = std::map<Diagram, Ordinal>;

/// Rank of every member: leaves get 0, inner nodes the max over children
/// of (child rank + 1).
inline RankTable rank_table(const DiagramSet & W)
{
    RankTable ranks;
    std::map<Diagram, Ordinal> from_children;
    // Reverse lexicographic order visits every child before its parent.
    for (auto it = W.members().rbegin(); it != W.members().rend(); ++it) {
        const auto & w = *it;
        auto found = from_children.find(w);
        Ordinal r = found == from_children.end() ? Ordinal{} : found->second;
        if (! w.empty()) {
            auto & acc = from_children[w.prefix(w.size() - 1)];
            acc = std::max(acc, r.successor());
        }
        ranks.emplace(w, std::move(r));
    }
    return ranks;
}

/// ER(w; W) for a member w.
inline Ordinal er_rank(const DiagramSet & W, const Diagram & w)
{
    if (! W.contains(w))
        throw PreconditionError("er_rank: " + to_string(w) + " is not a member");
    // The subtree of w is the contiguous run starting at w.
    auto first = W.members().find(w);
    auto last = first;
    while (last != W.end() && w.is_prefix_of(*last))
        ++last;
    std::map<Diagram, Ordinal> from_children;
    Ordinal result;
    for (auto it = std::make_reverse_iterator(last); it != std::make_reverse_iterator(first); ++it) {
        auto found = from_children.find(*it);
        Ordinal r = found == from_children.end() ? Ordinal{} : found->second;
        if (*it == w) {
            result = r;
            break;
        }
        auto & acc = from_children[it->prefix(it->size() - 1)];
        acc = std::max(acc, r.successor());
    }
    return result;
}

struct RankTableViolation {
    Diagram diagram;
    Ordinal recorded;
    Ordinal expected;
};

/// Checks the defining recursion of a rank table over W.
inline std::optional<RankTableViolation> check_rank_table(const DiagramSet & W, const RankTable & table)
{
    for (const auto & w : W) {
        Ordinal expected;
        for (const auto & c : W.children(w)) {
            auto it = table.find(c);
            if (it == table.end())
                return RankTableViolation{c, Ordinal{}, Ordinal{}};
            expected = std::max(expected, it->second.successor());
        }
        auto it = table.find(w);
        if (it == table.end() || it->second != expected)
            return RankTableViolation{w, it == table.end() ? Ordinal{} : it->second, expected};
    }
    return std::nullopt;
}

/// A chain <w_0 = {}, ..., w_k> with ER(w_j) = ER({}) - j.
inline std::vector<Diagram> rank_witness_chain(const DiagramSet & W, std::uint64_t k)
{
    auto ranks = rank_table(W);
    auto top = ranks.at(Diagram{}).finite_value();
    if (! top || *top < k)
        throw PreconditionError("rank_witness_chain: the root has rank " + ranks.at(Diagram{}).to_string() + " < " + std::to_string(k));
    std::vector<Diagram> chain{Diagram{}};
    for (std::uint64_t j = 1; j <= k; ++j) {
        auto want = Ordinal::finite(*top - j);
        auto children = W.children(chain.back());
        auto it = std::find_if(children.begin(), children.end(), [&](const Diagram & c) { return ranks.at(c) == want; });
        chain.push_back(*it);
    }
    return chain;
}

/// The symbolic size bound beth_{beta + n*k + k(k-1)/2}(|L|) for models of
/// K(W_{w}) when ER(w; W) < rank_strict_bound = beta + k.
inline CardinalExpr max_model_bound(const Diagram & w, const Ordinal & rank_strict_bound, const CardinalExpr & langsize)
{
    auto [beta, k] = split(rank_strict_bound);
    return CardinalExpr::beth(bound_index(beta, w.size(), k), langsize);
}

/// A total map from n >= 1 to a symbol of arity n.
template <class Symbol>
using InfiniteDiagramOf = std::function<Symbol(std::size_t)>;
using InfiniteDiagram = InfiniteDiagramOf<RelSymbol>;

/// The infinite diagram that repeats `id` in every arity.
inline InfiniteDiagram constant_diagram(std::uint32_t id = 0)
{
    return [id](std::size_t n) { return RelSymbol{static_cast<std::uint32_t>(n), id}; };
}

/// Follows `prefix` and then continues with `tail_id` in every later arity.
inline InfiniteDiagram diagram_with_prefix(Diagram prefix, std::uint32_t tail_id = 0)
{
    return [prefix = std::move(prefix), tail_id](std::size_t n) {
        if (n <= prefix.size())
            return prefix.at(n);
        return RelSymbol{static_cast<std::uint32_t>(n), tail_id};
    };
}

/// Trees that answer membership for their own diagram type.
template <class T>
concept DiagramOracle = requires(const T & t, const typename T::diagram_type & w) {
    typename T::symbol_type;
    { t.contains(w) } -> std::convertible_to<bool>;
};

/// True iff d restricted to [n] is a member for every n <= depth.
template <DiagramOracle Tree>
bool infinite_diagram_consistent(const Tree & tree, const InfiniteDiagramOf<typename Tree::symbol_type> & d, std::size_t depth)
{
    typename Tree::diagram_type w{};
    for (std::size_t n = 1; n <= depth; ++n) {
        w.push_back(d(n));
        if (! tree.contains(w))
            return false;
    }
    return true;
}

/// Trees that can list the children of a node.
template <class T>
concept FinitelyBranchingTree = requires(const T & t, const typename T::diagram_type & w) {
    { t.children(w) } -> std::convertible_to<std::vector<typename T::diagram_type>>;
};

/// The intensional tree of all diagrams over a language, optionally cut at a
/// depth. Without a cut it is the tree with no leaves.
class FullTreeView {
public:
    using diagram_type = Diagram;
    using symbol_type = RelSymbol;

    explicit FullTreeView(Language language, std::optional<std::size_t> depth = std::nullopt) :
        language_(std::move(language)), depth_(depth)
    {
    }

    [[nodiscard]] bool contains(const Diagram & w) const
    {
        if (w.arity_violation() || (depth_ && w.size() > *depth_))
            return false;
        return std::all_of(w.begin(), w.end(), [&](const RelSymbol & s) { return language_.has(s); });
    }

    [[nodiscard]] std::vector<Diagram> children(const Diagram & w) const
    {
        std::vector<Diagram> out;
        if (depth_ && w.size() >= *depth_)
            return out;
        auto arity = static_cast<std::uint32_t>(w.size() + 1);
        for (std::uint32_t id = 0; id < language_.count(arity); ++id)
            out.push_back(w.extended(RelSymbol{arity, id}));
        return out;
    }

private:
    Language language_;
    std::optional<std::size_t> depth_;
};

struct ExactRank {
    std::uint64_t rank;
    friend bool operator==(const ExactRank &, const ExactRank &) = default;
};

struct RankAtLeast {
    std::uint64_t bound;
    friend bool operator==(const RankAtLeast &, const RankAtLeast &) = default;
};

using RankVerdict = std::variant<ExactRank, RankAtLeast>;

namespace detail {

    // min(rank(w), budget), exploring at most `budget` levels below w.
    template <FinitelyBranchingTree Tree>
    std::uint64_t capped_rank(const Tree & tree, const typename Tree::diagram_type & w, std::uint64_t budget)
    {
        if (budget == 0)
            return 0;
        std::uint64_t best = 0;
        for (const auto & c : tree.children(w)) {
            best = std::max(best, capped_rank(tree, c, budget - 1) + 1);
            if (best == budget)
                break;
        }
        return best;
    }

}

/// Explores a finitely branching tree to `budget` levels below the root and
/// reports either its exact (finite) rank or that the rank is at least the
/// budget. By Koenig's lemma an unbounded finitely branching tree has an
/// infinite branch, so "at least budget" for every budget means rank infinity.
template <FinitelyBranchingTree Tree>
RankVerdict has_infinite_rank_surrogate(const Tree & tree, std::uint64_t budget, const typename Tree::diagram_type & from = {})
{
    if (budget == 0)
        throw PreconditionError("has_infinite_rank_surrogate: budget must be positive");
    auto r = detail::capped_rank(tree, from, budget);
    if (r >= budget)
        return RankAtLeast{budget};
    return ExactRank{r};
}

}
