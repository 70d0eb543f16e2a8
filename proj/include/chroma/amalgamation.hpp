#pragma once

// Special (lambda,2)-systems and their amalgams.

#include <chroma/diagrams.hpp>
#include <chroma/error.hpp>
#include <chroma/rank.hpp>
#include <chroma/search.hpp>
#include <chroma/structures.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace chroma {

/// Two colorings of X + {a1} and X + {a2} agreeing on the subsets of X.
struct SpecialSystem {
    std::vector<Element> X;
    Element a1 = 0;
    Element a2 = 1;
    ColoringStructure c1;
    ColoringStructure c2;
};

inline constexpr std::uint64_t default_budget = 10'000'000;

/// Checks the system invariants and that both sides are W-colorings.
inline void validate_system(const SpecialSystem & sys, const DiagramSet & W)
{
    auto X = sys.X;
    std::sort(X.begin(), X.end());
    if (std::adjacent_find(X.begin(), X.end()) != X.end())
        throw PreconditionError("system: X has repeated elements");
    if (sys.a1 == sys.a2)
        throw PreconditionError("system: a1 and a2 coincide");
    if (std::binary_search(X.begin(), X.end(), sys.a1) || std::binary_search(X.begin(), X.end(), sys.a2))
        throw PreconditionError("system: a1 or a2 lies in X");
    auto expect = [&](const ColoringStructure & c, Element a, const char * name) {
        auto u = X;
        u.push_back(a);
        std::sort(u.begin(), u.end());
        if (! std::equal(u.begin(), u.end(), c.universe().begin(), c.universe().end()))
            throw PreconditionError(std::string("system: ") + name + " is not a coloring of X + {" + name + "}");
        if (auto bad = coloring_violation(c, W.language()))
            throw PreconditionError(std::string("system: ") + name + " gives " + to_string(*bad) + " a color outside the language");
        if (auto v = in_class(c, W))
            throw PreconditionError(std::string("system: ") + name + " is not a W-coloring, monochromatic " + to_string(v->subset) + " has diagram " + to_string(v->diagram));
    };
    expect(sys.c1, sys.a1, "c1");
    expect(sys.c2, sys.a2, "c2");
    bool agree = true;
    for_each_nonempty_subset(X.size(), [&](std::span<const Position> p, std::uint32_t) {
        if (! agree)
            return;
        Subset s;
        for (auto i : p)
            s.push_back(X[i]);
        agree = sys.c1.color_of(s) == sys.c2.color_of(s);
    });
    if (! agree)
        throw PreconditionError("system: c1 and c2 disagree on a subset of X");
}

/// True iff c1({a1} + C) = c2({a2} + C) for every C subset of X.
inline bool identifiable(const SpecialSystem & sys)
{
    bool same = true;
    const auto lam = sys.X.size();
    for (std::uint32_t mask = 0; same && mask < (std::uint32_t{1} << lam); ++mask) {
        Subset s1, s2;
        for (std::size_t i = 0; i < lam; ++i)
            if (mask >> i & 1) {
                s1.push_back(sys.X[i]);
                s2.push_back(sys.X[i]);
            }
        s1.push_back(sys.a1);
        s2.push_back(sys.a2);
        same = sys.c1.color_of(s1) == sys.c2.color_of(s2);
    }
    return same;
}

struct AmalgamResult {
    enum class Kind { witness, identification, unsat, budget_exhausted };

    struct Refutation {
        RelSymbol choice;
        Subset subset;
        Diagram diagram;
    };

    Kind kind = Kind::unsat;
    std::string method;
    /// witness: the coloring of X + {a1, a2}; identification: the amalgam on
    /// X + {a1} with a2 sent to a1.
    std::optional<ColoringStructure> coloring;
    /// unsat: the first violating monochromatic set under each color of {a1, a2}.
    std::vector<Refutation> refutation;
    /// Case 3: the set whose color was changed and its temporary color.
    std::optional<Subset> recolored;
    std::optional<RelSymbol> temporary_color;
    std::uint64_t nodes = 0;

    [[nodiscard]] bool ok() const { return kind == Kind::witness || kind == Kind::identification; }
};

inline std::string to_string(AmalgamResult::Kind k)
{
    switch (k) {
    case AmalgamResult::Kind::witness: return "witness";
    case AmalgamResult::Kind::identification: return "identification";
    case AmalgamResult::Kind::unsat: return "unsat";
    case AmalgamResult::Kind::budget_exhausted: return "budget-exhausted";
    }
    return {};
}

namespace detail {

    // Layout of the amalgam universe inside a search: X sorted at positions
    // 0..lambda-1, then a1, then a2.
    struct AmalgamLayout {
        std::vector<Element> X;
        Element a1, a2;

        explicit AmalgamLayout(const SpecialSystem & sys) : X(sys.X), a1(sys.a1), a2(sys.a2)
        {
            std::sort(X.begin(), X.end());
        }

        [[nodiscard]] std::size_t size() const { return X.size() + 2; }
        [[nodiscard]] std::uint32_t bit_a1() const { return std::uint32_t{1} << X.size(); }
        [[nodiscard]] std::uint32_t bit_a2() const { return std::uint32_t{1} << (X.size() + 1); }

        [[nodiscard]] Element element(std::size_t p) const
        {
            if (p < X.size())
                return X[p];
            return p == X.size() ? a1 : a2;
        }

        [[nodiscard]] Subset elements(std::uint32_t mask) const
        {
            Subset out;
            for (auto m = mask; m; m &= m - 1)
                out.push_back(element(static_cast<std::size_t>(std::countr_zero(m))));
            std::sort(out.begin(), out.end());
            return out;
        }

        // Colors of every set missing a1 or a2, taken from c1 or c2.
        [[nodiscard]] std::vector<std::optional<RelSymbol>> fixed(const SpecialSystem & sys) const
        {
            std::vector<std::optional<RelSymbol>> out(std::size_t{1} << size());
            for (std::uint32_t mask = 1; mask < out.size(); ++mask) {
                bool has1 = mask & bit_a1(), has2 = mask & bit_a2();
                if (has1 && has2)
                    continue;
                out[mask] = has2 ? sys.c2.color_of(elements(mask)) : sys.c1.color_of(elements(mask));
            }
            return out;
        }

        // A structure over the sorted amalgam universe from search colors.
        [[nodiscard]] ColoringStructure structure(const std::vector<RelSymbol> & by_mask) const
        {
            std::vector<Element> universe;
            for (std::size_t p = 0; p < size(); ++p)
                universe.push_back(element(p));
            auto sorted = universe;
            std::sort(sorted.begin(), sorted.end());
            // search position of each sorted position
            std::vector<std::size_t> to_search(sorted.size());
            for (std::size_t p = 0; p < universe.size(); ++p)
                to_search[static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), universe[p]) - sorted.begin())] = p;
            std::vector<RelSymbol> table(by_mask.size());
            for (std::uint32_t mask = 1; mask < table.size(); ++mask) {
                std::uint32_t m = 0;
                for (auto r = mask; r; r &= r - 1)
                    m |= std::uint32_t{1} << to_search[static_cast<std::size_t>(std::countr_zero(r))];
                table[mask] = by_mask[m];
            }
            return ColoringStructure::dense(std::move(sorted), std::move(table));
        }
    };

    // Colors c on X + {a1, a2} extending the system, with sets containing
    // both new points colored by rule(C) for C the part inside X.
    template <class Rule>
    ColoringStructure amalgam_by_rule(const SpecialSystem & sys, Rule && rule)
    {
        AmalgamLayout layout(sys);
        auto fixed = layout.fixed(sys);
        std::vector<RelSymbol> table(fixed.size());
        const auto both = layout.bit_a1() | layout.bit_a2();
        for (std::uint32_t mask = 1; mask < table.size(); ++mask) {
            if (fixed[mask])
                table[mask] = *fixed[mask];
            else
                table[mask] = rule(layout.elements(mask & ~both));
        }
        return layout.structure(table);
    }

}

/// Complete search for a W-coloring of X + {a1, a2} extending c1 and c2.
inline AmalgamResult dap_search(const SpecialSystem & sys, const DiagramSet & W, std::uint64_t budget = default_budget)
{
    validate_system(sys, W);
    detail::AmalgamLayout layout(sys);
    ColoringSearch search(W, layout.size(), layout.fixed(sys));
    auto out = search.solve(budget);
    AmalgamResult r;
    r.method = "search";
    r.nodes = out.nodes;
    switch (out.status) {
    case SearchStatus::sat:
        r.kind = AmalgamResult::Kind::witness;
        r.coloring = layout.structure(out.coloring);
        break;
    case SearchStatus::budget_exhausted: r.kind = AmalgamResult::Kind::budget_exhausted; break;
    case SearchStatus::unsat:
        r.kind = AmalgamResult::Kind::unsat;
        for (const auto & b : out.refutation)
            r.refutation.push_back({b.choice, layout.elements(b.conflict.mask), b.conflict.diagram});
        break;
    }
    return r;
}

/// Identification when the two one-point extensions agree over X, otherwise
/// the disjoint search.
inline AmalgamResult ap_search(const SpecialSystem & sys, const DiagramSet & W, std::uint64_t budget = default_budget)
{
    validate_system(sys, W);
    if (identifiable(sys)) {
        AmalgamResult r;
        r.kind = AmalgamResult::Kind::identification;
        r.method = "search";
        r.coloring = sys.c1;
        return r;
    }
    return dap_search(sys, W, budget);
}

/// The conditions under which AP and DAP coincide, checked up to arity
/// 2|X| + 4: at least two symbols in each arity 2..2|X|+4, and every w in W^1
/// has two extensions of a common length whose last symbols differ. Returns
/// a description of the first failure.
inline std::optional<std::string> ap_dap_hypotheses_violation(const DiagramSet & W, std::size_t lambda)
{
    for (std::uint32_t k = 2; k <= 2 * lambda + 4; ++k)
        if (W.language().count(k) < 2)
            return "arity " + std::to_string(k) + " has a single symbol";
    for (const auto & w : level(W, 1)) {
        bool split = false;
        for (std::size_t n = 2; ! split && n <= W.height(); ++n) {
            std::optional<Diagram> first;
            for (const auto & u : level(W, n))
                if (w.is_prefix_of(u)) {
                    if (! first)
                        first = u;
                    else if (first->back() != u.back()) {
                        split = true;
                        break;
                    }
                }
        }
        if (! split)
            return "no pair of extensions of " + to_string(w) + " differs in its last symbol";
    }
    return std::nullopt;
}

using ApOracle = std::function<AmalgamResult(const SpecialSystem &)>;

/// A disjoint amalgam assembled from an AP oracle following the three cases:
/// the two extensions already differ over X; some diagram above d_{a1} is
/// not realized in X + {a1}, which colors the new sets; or every such
/// diagram is realized, and a single set C containing a1 is recolored so
/// that the first case applies, after which C gets its color back.
inline AmalgamResult dap_from_ap(const SpecialSystem & sys, const DiagramSet & W, const ApOracle & oracle)
{
    validate_system(sys, W);
    if (auto why = ap_dap_hypotheses_violation(W, sys.X.size()))
        throw PreconditionError("dap_from_ap: hypotheses fail: " + *why);

    if (! identifiable(sys)) {
        auto r = oracle(sys);
        if (r.kind == AmalgamResult::Kind::identification)
            throw PreconditionError("dap_from_ap: the oracle identified non-identifiable points");
        r.method = "case1";
        return r;
    }

    Element a1_only[1] = {sys.a1};
    auto root = Diagram{sys.c1.color_of(a1_only)};
    auto realized = realized_diagrams(sys.c1);

    // Case 2: the first member above d_{a1}, by length and then
    // lexicographically, that no monochromatic subset realizes.
    std::optional<Diagram> unrealized;
    for (std::size_t k = 2; ! unrealized && k <= W.height(); ++k)
        for (const auto & w : level(W, k))
            if (root.is_prefix_of(w) && ! realized.contains(w)) {
                unrealized = w;
                break;
            }
    if (unrealized) {
        const auto & w = *unrealized;
        AmalgamResult r;
        r.kind = AmalgamResult::Kind::witness;
        r.method = "case2";
        r.coloring = detail::amalgam_by_rule(sys, [&](const Subset & C) {
            auto size = C.size() + 2;
            if (size <= w.size())
                return w.at(size);
            return RelSymbol{static_cast<std::uint32_t>(size), 0};
        });
        return r;
    }

    // Case 3: w1, w2 above d_{a1} of a common length n with different last
    // symbols, and monochromatic n-sets B1, B2 realizing them.
    std::optional<std::pair<Diagram, Diagram>> pair;
    for (std::size_t n = 2; ! pair && n <= W.height(); ++n) {
        auto members = level(W, n);
        for (std::size_t i = 0; ! pair && i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                if (root.is_prefix_of(members[i]) && root.is_prefix_of(members[j]) && members[i].back() != members[j].back()) {
                    pair.emplace(members[i], members[j]);
                    break;
                }
    }
    if (! pair)
        throw PreconditionError("dap_from_ap: no pair of extensions with different last symbols");

    auto find_realizer = [&](const Diagram & target) {
        std::optional<Subset> with_a1, any;
        for_each_monochromatic(
            sys.c1,
            [&](const MonochromaticSet & S) {
                if (S.diagram != target)
                    return true;
                auto elems = sys.c1.elements_of(S.positions);
                if (! any)
                    any = elems;
                if (std::find(elems.begin(), elems.end(), sys.a1) != elems.end()) {
                    with_a1 = elems;
                    return false;
                }
                return true;
            },
            target.size());
        if (with_a1)
            return *with_a1;
        if (any)
            return *any;
        throw PreconditionError("dap_from_ap: " + to_string(target) + " is not realized in X + {a1}");
    };
    auto B1 = find_realizer(pair->first);
    auto B2 = find_realizer(pair->second);

    Subset core{sys.a1};
    core.insert(core.end(), B1.begin(), B1.end());
    core.insert(core.end(), B2.begin(), B2.end());
    std::sort(core.begin(), core.end());
    core.erase(std::unique(core.begin(), core.end()), core.end());

    const auto universe = sys.X.size() + 1;
    std::optional<std::size_t> k;
    for (auto cand = std::max<std::size_t>(core.size(), 2); cand <= universe; ++cand)
        if (W.language().count(static_cast<std::uint32_t>(cand)) > 1) {
            k = cand;
            break;
        }
    if (! k)
        throw PreconditionError("dap_from_ap: no arity between |core| and |X| + 1 has two symbols");

    // C: the core padded with the smallest remaining elements.
    Subset C = core;
    for (auto e : sys.c1.universe()) {
        if (C.size() == *k)
            break;
        if (! std::binary_search(core.begin(), core.end(), e))
            C.push_back(e);
    }
    std::sort(C.begin(), C.end());

    const auto original = sys.c1.color_of(C);
    const auto count = W.language().count(original.arity);
    const RelSymbol temporary{original.arity, (original.id + 1) % count};
    const auto c_positions = sys.c1.positions_of(C);
    auto base = sys.c1;
    SpecialSystem changed = sys;
    changed.c1 = ColoringStructure({sys.c1.universe().begin(), sys.c1.universe().end()}, [base, c_positions, temporary](std::span<const Position> a) {
        if (std::equal(a.begin(), a.end(), c_positions.begin(), c_positions.end()))
            return temporary;
        return base.color(a);
    }).materialized();

    auto r = oracle(changed);
    r.method = "case3";
    r.recolored = C;
    r.temporary_color = temporary;
    if (r.kind == AmalgamResult::Kind::identification)
        throw PreconditionError("dap_from_ap: the oracle identified non-identifiable points");
    if (r.kind != AmalgamResult::Kind::witness)
        return r;
    auto amalgam = *r.coloring;
    auto restored = amalgam.positions_of(C);
    r.coloring = ColoringStructure({amalgam.universe().begin(), amalgam.universe().end()}, [amalgam, restored, original](std::span<const Position> a) {
        if (std::equal(a.begin(), a.end(), restored.begin(), restored.end()))
            return original;
        return amalgam.color(a);
    }).materialized();
    return r;
}

/// Colors every set containing both new points by d(|C| + 2); when the two
/// singleton colors differ no such set is monochromatic and symbol 0 is used.
inline AmalgamResult amalgamate_infinite(const SpecialSystem & sys, const DiagramSet & W, const std::optional<InfiniteDiagram> & d)
{
    validate_system(sys, W);
    Element one1[1] = {sys.a1}, one2[1] = {sys.a2};
    auto s1 = sys.c1.color_of(one1), s2 = sys.c2.color_of(one2);
    AmalgamResult r;
    r.kind = AmalgamResult::Kind::witness;
    r.method = "infinite-diagram";
    if (s1 != s2) {
        r.coloring = detail::amalgam_by_rule(sys, [](const Subset & C) { return RelSymbol{static_cast<std::uint32_t>(C.size() + 2), 0}; });
        return r;
    }
    if (! d)
        throw PreconditionError("amalgamate_infinite: equal singleton colors need an infinite diagram");
    if ((*d)(1) != s1)
        throw PreconditionError("amalgamate_infinite: d(1) differs from the color of a1");
    if (! infinite_diagram_consistent(W, *d, sys.X.size() + 2))
        throw PreconditionError("amalgamate_infinite: d leaves W before depth " + std::to_string(sys.X.size() + 2));
    r.coloring = detail::amalgam_by_rule(sys, [&](const Subset & C) { return (*d)(C.size() + 2); });
    return r;
}

/// c({a1, a2}) = wbar(2) and c(Y + {a1, a2}) = cstar(Y) lifted back by two arities.
inline AmalgamResult amalgamate_quotient(const SpecialSystem & sys, const DiagramSet & W, const Diagram & wbar, const ColoringStructure & cstar)
{
    validate_system(sys, W);
    Element one1[1] = {sys.a1}, one2[1] = {sys.a2};
    auto s1 = sys.c1.color_of(one1);
    if (s1 != sys.c2.color_of(one2))
        throw PreconditionError("amalgamate_quotient: a1 and a2 have different colors");
    if (wbar.size() != 2 || ! W.contains(wbar))
        throw PreconditionError("amalgamate_quotient: " + to_string(wbar) + " is not a member of length 2");
    if (wbar.at(1) != s1)
        throw PreconditionError("amalgamate_quotient: wbar(1) differs from the color of a1");
    auto X = sys.X;
    std::sort(X.begin(), X.end());
    if (! std::equal(X.begin(), X.end(), cstar.universe().begin(), cstar.universe().end()))
        throw PreconditionError("amalgamate_quotient: cstar is not a coloring of X");
    auto Q = quotient(W, wbar);
    if (auto bad = coloring_violation(cstar, Q.language()))
        throw PreconditionError("amalgamate_quotient: cstar gives " + to_string(*bad) + " a color outside the quotient language");
    if (auto v = in_class(cstar, Q))
        throw PreconditionError("amalgamate_quotient: cstar is not a W/wbar-coloring at " + to_string(v->subset));
    AmalgamResult r;
    r.kind = AmalgamResult::Kind::witness;
    r.method = "quotient";
    r.coloring = detail::amalgam_by_rule(sys, [&](const Subset & C) {
        if (C.empty())
            return wbar.at(2);
        auto s = cstar.color_of(C);
        return RelSymbol{s.arity + 2, s.id};
    });
    return r;
}

/// Picks wbar above c1(a1) of largest rank, then the first W/wbar-coloring of X.
inline AmalgamResult amalgamate_quotient(const SpecialSystem & sys, const DiagramSet & W)
{
    Element one1[1] = {sys.a1};
    auto root = Diagram{sys.c1.color_of(one1)};
    auto ranks = rank_table(W);
    std::optional<Diagram> best;
    for (const auto & u : W.children(root))
        if (! best || ranks.at(u) > ranks.at(*best))
            best = u;
    if (! best)
        throw PreconditionError("amalgamate_quotient: " + to_string(root) + " has no extension in W");
    auto X = sys.X;
    std::sort(X.begin(), X.end());
    auto Q = quotient(W, *best);
    auto found = find_coloring(Q, X.size());
    if (! found)
        throw PreconditionError("amalgamate_quotient: X has no W/wbar-coloring");
    auto cstar = ColoringStructure::dense(X, [&] {
        std::vector<RelSymbol> t(std::size_t{1} << X.size());
        for (std::uint32_t m = 1; m < t.size(); ++m)
            t[m] = found->color_of_mask(m);
        return t;
    }());
    return amalgamate_quotient(sys, W, *best, cstar);
}

enum class Verdict { yes, no, unknown };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
    }
    return {};
}

struct SpectraRow {
    std::size_t lambda = 0;
    Verdict dap = Verdict::unknown;
    Verdict ap = Verdict::unknown;
    std::optional<SpecialSystem> dap_certificate;
    std::optional<SpecialSystem> ap_certificate;
    std::uint64_t systems = 0;
};

struct ExhaustiveMode {};
struct SampledMode {
    std::uint64_t seed = 0;
    std::size_t trials = 500;
};
using SpectraMode = std::variant<ExhaustiveMode, SampledMode>;

namespace detail {

    inline SpecialSystem make_system(std::size_t lambda, const ColoringStructure & e1, const ColoringStructure & e2)
    {
        // Extensions live on {0..lambda}; a2 is moved to lambda + 1.
        SpecialSystem sys;
        sys.X = iota_universe(lambda);
        sys.a1 = static_cast<Element>(lambda);
        sys.a2 = static_cast<Element>(lambda + 1);
        sys.c1 = e1;
        auto u = iota_universe(lambda);
        u.push_back(sys.a2);
        sys.c2 = ColoringStructure(u, [e2](std::span<const Position> a) { return e2.color(a); }).materialized();
        return sys;
    }

    // Every W-coloring of {0..lambda} agreeing with base on {0..lambda-1}.
    inline std::vector<ColoringStructure> one_point_extensions(const DiagramSet & W, const ColoringStructure & base, std::uint64_t budget, bool & complete)
    {
        const auto n = base.size() + 1;
        std::vector<std::optional<RelSymbol>> fixed(std::size_t{1} << n);
        const std::uint32_t top = std::uint32_t{1} << base.size();
        for (std::uint32_t m = 1; m < top; ++m)
            fixed[m] = base.color_of_mask(m);
        ColoringSearch search(W, n, fixed);
        std::vector<ColoringStructure> out;
        auto res = search.enumerate(budget, [&](const std::vector<RelSymbol> & c) {
            out.push_back(ColoringStructure::dense(iota_universe(n), c));
            return true;
        });
        complete = res.status != SearchStatus::budget_exhausted;
        return out;
    }

}

/// Per lambda = 1..lambda_max, whether every special system of size lambda
/// has a disjoint amalgam (DAP) and an amalgam (AP). Exhaustive mode visits
/// every base coloring, every pair of one-point extensions, and reports the
/// first failing system. Sampled mode draws random systems and can only
/// answer no or unknown.
inline std::vector<SpectraRow> spectra_scan(const DiagramSet & W, std::size_t lambda_max, const SpectraMode & mode, std::uint64_t budget = default_budget)
{
    std::vector<SpectraRow> rows;
    for (std::size_t lambda = 1; lambda <= lambda_max; ++lambda) {
        SpectraRow row;
        row.lambda = lambda;
        bool dap_complete = true, ap_complete = true;

        auto check = [&](const SpecialSystem & sys) {
            ++row.systems;
            if (! row.dap_certificate) {
                auto d = dap_search(sys, W, budget);
                if (d.kind == AmalgamResult::Kind::unsat)
                    row.dap_certificate = sys;
                else if (d.kind == AmalgamResult::Kind::budget_exhausted)
                    dap_complete = false;
            }
            if (! row.ap_certificate) {
                auto a = ap_search(sys, W, budget);
                if (a.kind == AmalgamResult::Kind::unsat)
                    row.ap_certificate = sys;
                else if (a.kind == AmalgamResult::Kind::budget_exhausted)
                    ap_complete = false;
            }
            return ! (row.dap_certificate && row.ap_certificate);
        };

        if (std::holds_alternative<ExhaustiveMode>(mode)) {
            ColoringSearch bases(W, lambda, {});
            bool going = true;
            auto res = bases.enumerate(budget, [&](const std::vector<RelSymbol> & c) {
                auto base = ColoringStructure::dense(iota_universe(lambda), c);
                bool complete = true;
                auto ext = detail::one_point_extensions(W, base, budget, complete);
                if (! complete)
                    dap_complete = ap_complete = false;
                for (std::size_t i = 0; going && i < ext.size(); ++i)
                    for (std::size_t j = i; going && j < ext.size(); ++j)
                        going = check(detail::make_system(lambda, ext[i], ext[j]));
                return going;
            });
            if (res.status == SearchStatus::budget_exhausted)
                dap_complete = ap_complete = false;
            row.dap = row.dap_certificate ? Verdict::no : (dap_complete ? Verdict::yes : Verdict::unknown);
            row.ap = row.ap_certificate ? Verdict::no : (ap_complete ? Verdict::yes : Verdict::unknown);
        }
        else {
            const auto & s = std::get<SampledMode>(mode);
            std::mt19937_64 rng(s.seed + lambda);
            for (std::size_t t = 0; t < s.trials; ++t) {
                auto base = sample_coloring(W, lambda, rng, budget);
                if (! base)
                    break;
                auto extend = [&]() -> std::optional<ColoringStructure> {
                    const auto n = lambda + 1;
                    std::vector<std::optional<RelSymbol>> fixed(std::size_t{1} << n);
                    for (std::uint32_t m = 1; m < (std::uint32_t{1} << lambda); ++m)
                        fixed[m] = base->color_of_mask(m);
                    ColoringSearch search(W, n, fixed);
                    auto out = search.solve(budget, &rng);
                    if (out.status != SearchStatus::sat)
                        return std::nullopt;
                    return ColoringStructure::dense(iota_universe(n), out.coloring);
                };
                auto e1 = extend(), e2 = extend();
                if (! e1 || ! e2)
                    continue;
                if (! check(detail::make_system(lambda, *e1, *e2)))
                    break;
            }
            row.dap = row.dap_certificate ? Verdict::no : Verdict::unknown;
            row.ap = row.ap_certificate ? Verdict::no : Verdict::unknown;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}
