#pragma once

// JSON interchange for diagram sets, structures, systems and results.

#include <chroma/amalgamation.hpp>
#include <chroma/diagrams.hpp>
#include <chroma/error.hpp>
#include <chroma/rank.hpp>
#include <chroma/structures.hpp>
#include <chroma/walpha.hpp>

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace chroma::json {

using nlohmann::json;

inline json parse(const std::string & text, const std::string & what = "input")
{
    try {
        return json::parse(text);
    }
    catch (const json::parse_error & e) {
        throw InputError(what + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

namespace detail {

    inline const json & field(const json & j, const char * key, const std::string & where)
    {
        if (! j.is_object() || ! j.contains(key))
            throw InputError(where + ": missing field \"" + key + "\"");
        return j.at(key);
    }

    inline std::uint64_t unsigned_value(const json & j, const std::string & where)
    {
        if (! j.is_number_unsigned() && ! (j.is_number_integer() && j.get<std::int64_t>() >= 0))
            throw InputError(where + ": expected a non-negative integer");
        return j.get<std::uint64_t>();
    }

    inline Element element_value(const json & j, const std::string & where)
    {
        if (! j.is_number_integer())
            throw InputError(where + ": expected an integer element id");
        return j.get<Element>();
    }

}

inline json to_json(const RelSymbol & s) { return json::array({s.arity, s.id}); }

inline RelSymbol symbol_from_json(const json & j, const std::string & where = "symbol")
{
    if (! j.is_array() || j.size() != 2)
        throw InputError(where + ": a symbol is an [arity, id] pair");
    auto arity = detail::unsigned_value(j[0], where + "[0]");
    auto id = detail::unsigned_value(j[1], where + "[1]");
    if (arity == 0)
        throw InputError(where + ": arity must be positive");
    return RelSymbol{static_cast<std::uint32_t>(arity), static_cast<std::uint32_t>(id)};
}

inline json to_json(const Diagram & w)
{
    json out = json::array();
    for (const auto & s : w)
        out.push_back(to_json(s));
    return out;
}

inline Diagram diagram_from_json(const json & j, const std::string & where = "diagram")
{
    if (! j.is_array())
        throw InputError(where + ": a diagram is an array of symbols");
    Diagram w;
    for (std::size_t i = 0; i < j.size(); ++i)
        w.push_back(symbol_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return w;
}

inline json to_json(const Language & L)
{
    json arities = json::object();
    for (std::size_t i = 0; i < L.counts().size(); ++i)
        arities[std::to_string(i + 1)] = L.counts()[i];
    return arities;
}

inline json to_json(const DiagramSet & W)
{
    json out;
    out["arities"] = to_json(W.language());
    if (W.language().repeats())
        out["repeats"] = true;
    json members = json::array();
    for (const auto & w : W)
        members.push_back(to_json(w));
    out["members"] = members;
    return out;
}

/// Parses and validates a diagram set.
inline DiagramSet diagram_set_from_json(const json & j, const std::string & where = "diagrams")
{
    const auto & ar = detail::field(j, "arities", where);
    if (! ar.is_object())
        throw InputError(where + ".arities: expected an object keyed by arity");
    std::map<std::uint32_t, std::uint32_t> by_arity;
    for (const auto & [key, value] : ar.items()) {
        std::size_t used = 0;
        unsigned long n = 0;
        try {
            n = std::stoul(key, &used);
        }
        catch (const std::exception &) {
            used = 0;
        }
        if (used != key.size() || n == 0)
            throw InputError(where + ".arities: \"" + key + "\" is not a positive arity");
        by_arity[static_cast<std::uint32_t>(n)] = static_cast<std::uint32_t>(detail::unsigned_value(value, where + ".arities." + key));
    }
    std::vector<std::uint32_t> counts;
    for (const auto & [n, c] : by_arity) {
        if (n != counts.size() + 1)
            throw InputError(where + ".arities: arity " + std::to_string(counts.size() + 1) + " is missing");
        if (c == 0)
            throw InputError(where + ".arities: arity " + std::to_string(n) + " has no symbols");
        counts.push_back(c);
    }
    bool repeats = j.contains("repeats") && j.at("repeats").get<bool>();
    const auto & mem = detail::field(j, "members", where);
    if (! mem.is_array())
        throw InputError(where + ".members: expected an array");
    std::set<Diagram> members;
    for (std::size_t i = 0; i < mem.size(); ++i)
        members.insert(diagram_from_json(mem[i], where + ".members[" + std::to_string(i) + "]"));
    DiagramSet W(Language(std::move(counts), repeats), std::move(members));
    if (auto v = validate(W))
        throw InputError(where + ": " + v->describe());
    return W;
}

inline json to_json(std::span<const Element> subset)
{
    json out = json::array();
    for (auto e : subset)
        out.push_back(e);
    return out;
}

inline Subset subset_from_json(const json & j, const std::string & where)
{
    if (! j.is_array())
        throw InputError(where + ": expected an array of element ids");
    Subset out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(detail::element_value(j[i], where + "[" + std::to_string(i) + "]"));
    std::sort(out.begin(), out.end());
    return out;
}

/// The color map {"[0]": [1,0], "[0,1]": [2,0], ...} of every nonempty subset.
inline json colors_to_json(const ColoringStructure & M)
{
    if (M.size() > dense_limit)
        throw PreconditionError("structure with " + std::to_string(M.size()) + " elements is too large to list every subset");
    json colors = json::object();
    for_each_nonempty_subset(M.size(), [&](std::span<const Position> p, std::uint32_t) {
        colors[to_string(M.elements_of(p))] = to_json(M.color(p));
    });
    return colors;
}

inline std::map<Subset, RelSymbol> colors_from_json(const json & j, const std::string & where)
{
    if (! j.is_object())
        throw InputError(where + ": expected an object keyed by subsets");
    std::map<Subset, RelSymbol> out;
    for (const auto & [key, value] : j.items()) {
        auto subset = subset_from_json(parse(key, where + " key \"" + key + "\""), where + " key \"" + key + "\"");
        auto s = symbol_from_json(value, where + "." + key);
        if (s.arity != subset.size())
            throw InputError(where + "." + key + ": color arity " + std::to_string(s.arity) + " differs from the subset size");
        if (! out.emplace(subset, s).second)
            throw InputError(where + ": subset " + key + " listed twice");
    }
    return out;
}

inline json to_json(const ColoringStructure & M)
{
    json out;
    out["universe"] = to_json(M.universe());
    out["colors"] = colors_to_json(M);
    return out;
}

inline ColoringStructure structure_from_json(const json & j, const std::string & where = "structure")
{
    auto universe = subset_from_json(detail::field(j, "universe", where), where + ".universe");
    auto colors = colors_from_json(detail::field(j, "colors", where), where + ".colors");
    try {
        return ColoringStructure::from_table(universe, colors);
    }
    catch (const PreconditionError & e) {
        throw InputError(where + ": " + e.what());
    }
    catch (const InputError & e) {
        throw InputError(where + ": " + e.what());
    }
}

inline json to_json(const SpecialSystem & sys)
{
    json out;
    auto X = sys.X;
    std::sort(X.begin(), X.end());
    out["X"] = to_json(X);
    out["a1"] = sys.a1;
    out["a2"] = sys.a2;
    out["c1"] = colors_to_json(sys.c1);
    out["c2"] = colors_to_json(sys.c2);
    return out;
}

inline SpecialSystem system_from_json(const json & j, const std::string & where = "system")
{
    SpecialSystem sys;
    sys.X = subset_from_json(detail::field(j, "X", where), where + ".X");
    sys.a1 = detail::element_value(detail::field(j, "a1", where), where + ".a1");
    sys.a2 = detail::element_value(detail::field(j, "a2", where), where + ".a2");
    auto side = [&](const char * key, Element a) {
        auto u = sys.X;
        u.push_back(a);
        auto colors = colors_from_json(detail::field(j, key, where), where + "." + key);
        try {
            return ColoringStructure::from_table(u, colors);
        }
        catch (const std::invalid_argument & e) {
            throw InputError(where + "." + key + ": " + e.what());
        }
    };
    sys.c1 = side("c1", sys.a1);
    sys.c2 = side("c2", sys.a2);
    return sys;
}

inline json to_json(const AmalgamResult & r)
{
    json out;
    out["result"] = to_string(r.kind);
    out["method"] = r.method;
    if (r.coloring)
        out["coloring"] = to_json(*r.coloring);
    if (r.kind == AmalgamResult::Kind::unsat) {
        json refutation = json::array();
        for (const auto & b : r.refutation)
            refutation.push_back({{"choice", to_json(b.choice)}, {"subset", to_json(b.subset)}, {"diagram", to_json(b.diagram)}});
        out["refutation"] = refutation;
    }
    if (r.recolored)
        out["recolored"] = to_json(*r.recolored);
    if (r.temporary_color)
        out["temporary_color"] = to_json(*r.temporary_color);
    out["nodes"] = r.nodes;
    return out;
}

inline AmalgamResult amalgam_result_from_json(const json & j, const std::string & where = "result")
{
    AmalgamResult r;
    auto kind = detail::field(j, "result", where).get<std::string>();
    if (kind == "witness")
        r.kind = AmalgamResult::Kind::witness;
    else if (kind == "identification")
        r.kind = AmalgamResult::Kind::identification;
    else if (kind == "unsat")
        r.kind = AmalgamResult::Kind::unsat;
    else if (kind == "budget-exhausted")
        r.kind = AmalgamResult::Kind::budget_exhausted;
    else
        throw InputError(where + ".result: unknown value \"" + kind + "\"");
    r.method = detail::field(j, "method", where).get<std::string>();
    if (j.contains("coloring"))
        r.coloring = structure_from_json(j.at("coloring"), where + ".coloring");
    if (j.contains("refutation"))
        for (const auto & b : j.at("refutation"))
            r.refutation.push_back({symbol_from_json(b.at("choice")), subset_from_json(b.at("subset"), where + ".refutation"), diagram_from_json(b.at("diagram"))});
    if (j.contains("recolored"))
        r.recolored = subset_from_json(j.at("recolored"), where + ".recolored");
    if (j.contains("temporary_color"))
        r.temporary_color = symbol_from_json(j.at("temporary_color"));
    if (j.contains("nodes"))
        r.nodes = j.at("nodes").get<std::uint64_t>();
    return r;
}

inline json to_json(const RankTable & table)
{
    json out = json::object();
    for (const auto & [w, r] : table)
        out[to_json(w).dump()] = r.to_string();
    return out;
}

inline json to_json(const ClassViolation & v)
{
    return {{"result", "violation"}, {"subset", to_json(v.subset)}, {"diagram", to_json(v.diagram)}};
}

inline json to_json(const std::vector<SpectraRow> & rows)
{
    json out = json::array();
    for (const auto & row : rows) {
        json r;
        r["lambda"] = row.lambda;
        r["dap"] = to_string(row.dap);
        r["ap"] = to_string(row.ap);
        r["systems"] = row.systems;
        if (row.dap_certificate)
            r["dap_certificate"] = to_json(*row.dap_certificate);
        if (row.ap_certificate)
            r["ap_certificate"] = to_json(*row.ap_certificate);
        out.push_back(r);
    }
    return out;
}

inline json to_json(const WAlphaReport & report, const WAlphaTruncation & trunc)
{
    json mismatches = json::array();
    for (const auto & m : report.mismatches) {
        json symbols = json::array();
        for (const auto & s : trunc.decode(m.diagram))
            symbols.push_back(to_string(s));
        mismatches.push_back({{"diagram", to_json(m.diagram)}, {"symbols", symbols}, {"expected", m.expected}, {"actual", m.actual.to_string()}});
    }
    return {{"result", report.ok() ? "pass" : "fail"}, {"nodes", report.nodes}, {"mismatches", mismatches}};
}

}
