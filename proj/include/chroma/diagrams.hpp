#pragma once

// Relational languages, diagrams and prefix-closed diagram sets.

#include <chroma/error.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chroma {

/// A relation symbol, identified structurally by its arity and its index
/// within the symbols of that arity.
struct RelSymbol {
    std::uint32_t arity = 1;
    std::uint32_t id = 0;

    friend auto operator<=>(const RelSymbol &, const RelSymbol &) = default;
    friend bool operator==(const RelSymbol &, const RelSymbol &) = default;
};

inline std::string to_string(const RelSymbol & s)
{
    return "[" + std::to_string(s.arity) + "," + std::to_string(s.id) + "]";
}

/// Per-arity symbol counts. Arities past the tracked maximum repeat the last
/// count when `repeats` is set, and otherwise carry exactly one symbol.
class Language {
public:
    Language() = default;
    explicit Language(std::vector<std::uint32_t> counts, bool repeats = false) :
        counts_(std::move(counts)), repeats_(repeats)
    {
        for (std::size_t i = 0; i < counts_.size(); ++i)
            if (counts_[i] == 0)
                throw PreconditionError("language: arity " + std::to_string(i + 1) + " has no symbols");
    }

    /// `per_arity` symbols in every arity 1..max_arity.
    static Language uniform(std::uint32_t per_arity, std::uint32_t max_arity, bool repeats = false)
    {
        return Language(std::vector<std::uint32_t>(max_arity, per_arity), repeats);
    }

    [[nodiscard]] std::uint32_t count(std::uint32_t arity) const
    {
        if (arity == 0)
            return 0;
        if (arity <= counts_.size())
            return counts_[arity - 1];
        if (repeats_ && ! counts_.empty())
            return counts_.back();
        return 1;
    }

    [[nodiscard]] bool has(const RelSymbol & s) const { return s.arity >= 1 && s.id < count(s.arity); }

    [[nodiscard]] std::uint32_t max_tracked_arity() const { return static_cast<std::uint32_t>(counts_.size()); }
    [[nodiscard]] const std::vector<std::uint32_t> & counts() const { return counts_; }
    [[nodiscard]] bool repeats() const { return repeats_; }

    /// The language whose n-ary symbols are this language's (n+k)-ary symbols.
    [[nodiscard]] Language shifted(std::uint32_t k) const
    {
        if (k < counts_.size())
            return Language({counts_.begin() + k, counts_.end()}, repeats_);
        if (repeats_ && ! counts_.empty())
            return Language({counts_.back()}, true);
        return Language{};
    }

    friend bool operator==(const Language &, const Language &) = default;

private:
    std::vector<std::uint32_t> counts_;
    bool repeats_ = false;
};

/// A finite diagram <w(1), ..., w(n)>; entry k is meant to have arity k.
class Diagram {
public:
    Diagram() = default;
    Diagram(std::initializer_list<RelSymbol> entries) : entries_(entries) {}
    explicit Diagram(std::vector<RelSymbol> entries) : entries_(std::move(entries)) {}

    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    /// 1-based access matching w(k).
    [[nodiscard]] const RelSymbol & at(std::size_t k) const { return entries_.at(k - 1); }
    [[nodiscard]] const RelSymbol & back() const { return entries_.back(); }
    [[nodiscard]] const std::vector<RelSymbol> & entries() const { return entries_; }
    [[nodiscard]] auto begin() const { return entries_.begin(); }
    [[nodiscard]] auto end() const { return entries_.end(); }

    void push_back(RelSymbol s) { entries_.push_back(s); }
    void pop_back() { entries_.pop_back(); }

    /// w restricted to [m].
    [[nodiscard]] Diagram prefix(std::size_t m) const
    {
        return Diagram(std::vector<RelSymbol>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(std::min(m, size()))));
    }

    [[nodiscard]] Diagram extended(RelSymbol s) const
    {
        auto copy = *this;
        copy.push_back(s);
        return copy;
    }

    /// this is a (not necessarily proper) initial segment of other.
    [[nodiscard]] bool is_prefix_of(const Diagram & other) const
    {
        return size() <= other.size() && std::equal(begin(), end(), other.begin());
    }

    [[nodiscard]] bool comparable_with(const Diagram & other) const
    {
        return is_prefix_of(other) || other.is_prefix_of(*this);
    }

    /// Index of the first entry violating the arity discipline (1-based).
    [[nodiscard]] std::optional<std::size_t> arity_violation() const
    {
        for (std::size_t k = 0; k < entries_.size(); ++k)
            if (entries_[k].arity != k + 1)
                return k + 1;
        return std::nullopt;
    }

    friend auto operator<=>(const Diagram &, const Diagram &) = default;
    friend bool operator==(const Diagram &, const Diagram &) = default;

private:
    std::vector<RelSymbol> entries_;
};

inline std::string to_string(const Diagram & w)
{
    std::string out = "[";
    for (const auto & s : w) {
        if (out.size() > 1)
            out += ",";
        out += to_string(s);
    }
    return out + "]";
}

struct DiagramViolation {
    enum class Kind { missing_root, missing_prefix, arity_mismatch, unknown_symbol };

    Kind kind;
    Diagram diagram;
    /// 1-based position of the offending entry, or the length of the missing prefix.
    std::size_t position = 0;

    [[nodiscard]] std::string describe() const
    {
        switch (kind) {
        case Kind::missing_root: return "the empty diagram is not a member";
        case Kind::missing_prefix:
            return "prefix of length " + std::to_string(position) + " of " + to_string(diagram) + " is not a member";
        case Kind::arity_mismatch: return "arity mismatch at position " + std::to_string(position) + " of " + to_string(diagram);
        case Kind::unknown_symbol:
            return "symbol at position " + std::to_string(position) + " of " + to_string(diagram) + " is not in the language";
        }
        return {};
    }
};

/// A finite set of diagrams over a language. Members are kept in
/// lexicographic order, so every subtree is a contiguous run after its root.
class DiagramSet {
public:
    using diagram_type = Diagram;
    using symbol_type = RelSymbol;

    DiagramSet() : members_{Diagram{}} {}
    DiagramSet(Language language, std::set<Diagram> members) :
        language_(std::move(language)), members_(std::move(members))
    {
    }
    DiagramSet(Language language, std::initializer_list<Diagram> members) :
        language_(std::move(language)), members_(members)
    {
    }

    /// Builds the set and throws PreconditionError if it is not a valid set
    /// of allowed diagrams.
    static DiagramSet checked(Language language, std::set<Diagram> members);

    [[nodiscard]] const Language & language() const { return language_; }
    [[nodiscard]] const std::set<Diagram> & members() const { return members_; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] bool contains(const Diagram & w) const { return members_.contains(w); }
    [[nodiscard]] auto begin() const { return members_.begin(); }
    [[nodiscard]] auto end() const { return members_.end(); }

    /// Members w' = w + one symbol, in canonical order.
    [[nodiscard]] std::vector<Diagram> children(const Diagram & w) const
    {
        std::vector<Diagram> out;
        auto it = members_.upper_bound(w);
        for (; it != members_.end() && w.is_prefix_of(*it); ++it)
            if (it->size() == w.size() + 1)
                out.push_back(*it);
        return out;
    }

    /// Length of the longest member.
    [[nodiscard]] std::size_t height() const
    {
        std::size_t h = 0;
        for (const auto & w : members_)
            h = std::max(h, w.size());
        return h;
    }

    friend bool operator==(const DiagramSet &, const DiagramSet &) = default;

private:
    Language language_;
    std::set<Diagram> members_;
};

/// The first violation in canonical member order, or nullopt when W is
/// prefix-closed, contains the empty diagram and respects arities.
inline std::optional<DiagramViolation> validate(const DiagramSet & W)
{
    if (! W.contains(Diagram{}))
        return DiagramViolation{DiagramViolation::Kind::missing_root, Diagram{}, 0};
    for (const auto & w : W) {
        if (auto k = w.arity_violation())
            return DiagramViolation{DiagramViolation::Kind::arity_mismatch, w, *k};
        for (std::size_t k = 1; k <= w.size(); ++k)
            if (! W.language().has(w.at(k)))
                return DiagramViolation{DiagramViolation::Kind::unknown_symbol, w, k};
        if (! w.empty() && ! W.contains(w.prefix(w.size() - 1)))
            return DiagramViolation{DiagramViolation::Kind::missing_prefix, w, w.size() - 1};
    }
    return std::nullopt;
}

inline DiagramSet DiagramSet::checked(Language language, std::set<Diagram> members)
{
    DiagramSet W(std::move(language), std::move(members));
    if (auto v = validate(W))
        throw PreconditionError("invalid diagram set: " + v->describe());
    return W;
}

/// Members of length exactly n.
inline std::vector<Diagram> level(const DiagramSet & W, std::size_t n)
{
    std::vector<Diagram> out;
    for (const auto & w : W)
        if (w.size() == n)
            out.push_back(w);
    return out;
}

/// Members comparable with some element of S.
inline DiagramSet prune(const DiagramSet & W, std::span<const Diagram> S)
{
    for (const auto & u : S)
        if (! W.contains(u))
            throw PreconditionError("prune: " + to_string(u) + " is not a member");
    std::set<Diagram> kept;
    for (const auto & w : W)
        if (std::any_of(S.begin(), S.end(), [&](const Diagram & u) { return w.comparable_with(u); }))
            kept.insert(w);
    return DiagramSet(W.language(), std::move(kept));
}

inline DiagramSet prune(const DiagramSet & W, std::initializer_list<Diagram> S)
{
    return prune(W, std::span<const Diagram>(S.begin(), S.size()));
}

/// Drops the first k entries of w and shifts the arities of the rest down by k.
inline Diagram strip_stem(const Diagram & w, std::size_t k)
{
    std::vector<RelSymbol> tail;
    for (std::size_t i = k + 1; i <= w.size(); ++i)
        tail.push_back(RelSymbol{static_cast<std::uint32_t>(i - k), w.at(i).id});
    return Diagram(std::move(tail));
}

/// Prepends a stem: arities of u are shifted up by |stem|.
inline Diagram attach_stem(const Diagram & stem, const Diagram & u)
{
    auto out = stem;
    auto k = static_cast<std::uint32_t>(stem.size());
    for (const auto & s : u)
        out.push_back(RelSymbol{s.arity + k, s.id});
    return out;
}

/// The subtree above wbar with its stem of length |wbar| removed.
inline DiagramSet quotient(const DiagramSet & W, const Diagram & wbar)
{
    if (wbar.empty())
        throw PreconditionError("quotient: the stem must be nonempty");
    if (! W.contains(wbar))
        throw PreconditionError("quotient: " + to_string(wbar) + " is not a member");
    std::set<Diagram> out;
    for (auto it = W.members().find(wbar); it != W.end() && wbar.is_prefix_of(*it); ++it)
        out.insert(strip_stem(*it, wbar.size()));
    return DiagramSet(W.language().shifted(static_cast<std::uint32_t>(wbar.size())), std::move(out));
}

/// Adds every prefix of every given diagram.
inline DiagramSet prefix_closure(Language language, std::span<const Diagram> diagrams)
{
    std::set<Diagram> out{Diagram{}};
    for (const auto & w : diagrams)
        for (std::size_t m = 1; m <= w.size(); ++m)
            out.insert(w.prefix(m));
    return DiagramSet(std::move(language), std::move(out));
}

/// Every diagram of length <= depth over the language.
inline DiagramSet full_tree(const Language & language, std::size_t depth)
{
    std::set<Diagram> out{Diagram{}};
    std::vector<Diagram> frontier{Diagram{}};
    for (std::size_t n = 1; n <= depth; ++n) {
        std::vector<Diagram> next;
        auto arity = static_cast<std::uint32_t>(n);
        for (const auto & w : frontier)
            for (std::uint32_t id = 0; id < language.count(arity); ++id)
                next.push_back(w.extended(RelSymbol{arity, id}));
        out.insert(next.begin(), next.end());
        frontier = std::move(next);
    }
    return DiagramSet(language, std::move(out));
}

/// A trie over a diagram set for incremental membership tests: walking from
/// the root one symbol at a time answers "is w + s a member" in O(branching).
class DiagramIndex {
public:
    static constexpr std::int32_t npos = -1;

    explicit DiagramIndex(const DiagramSet & W)
    {
        nodes_.push_back(Node{});
        for (const auto & w : W) {
            if (w.empty())
                continue;
            auto parent = find(w.prefix(w.size() - 1));
            if (parent == npos)
                continue;
            auto id = static_cast<std::int32_t>(nodes_.size());
            nodes_.push_back(Node{parent, w.back(), static_cast<std::uint32_t>(w.size()), {}});
            nodes_[static_cast<std::size_t>(parent)].children.emplace_back(w.back(), id);
        }
    }

    [[nodiscard]] std::int32_t root() const { return 0; }

    [[nodiscard]] std::int32_t child(std::int32_t node, RelSymbol s) const
    {
        if (node == npos)
            return npos;
        for (const auto & [sym, id] : nodes_[static_cast<std::size_t>(node)].children)
            if (sym == s)
                return id;
        return npos;
    }

    [[nodiscard]] std::int32_t find(const Diagram & w) const
    {
        std::int32_t node = root();
        for (const auto & s : w)
            node = child(node, s);
        return node;
    }

    [[nodiscard]] Diagram diagram(std::int32_t node) const
    {
        std::vector<RelSymbol> out;
        for (; node > 0; node = nodes_[static_cast<std::size_t>(node)].parent)
            out.push_back(nodes_[static_cast<std::size_t>(node)].symbol);
        std::reverse(out.begin(), out.end());
        return Diagram(std::move(out));
    }

    [[nodiscard]] std::size_t depth(std::int32_t node) const { return nodes_[static_cast<std::size_t>(node)].depth; }

private:
    struct Node {
        std::int32_t parent = npos;
        RelSymbol symbol{};
        std::uint32_t depth = 0;
        std::vector<std::pair<RelSymbol, std::int32_t>> children;
    };

    std::vector<Node> nodes_;
};

}
