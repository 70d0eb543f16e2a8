#pragma once

// The chroma command line: every operation over the JSON formats.
//
// Exit status: 0 success, 1 a negative verdict (unsat, violation,
// mismatch), 2 bad input, 3 search budget exhausted.

#include <chroma/amalgamation.hpp>
#include <chroma/constructions.hpp>
#include <chroma/diagrams.hpp>
#include <chroma/json_io.hpp>
#include <chroma/ordinal.hpp>
#include <chroma/rank.hpp>
#include <chroma/structures.hpp>
#include <chroma/walpha.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace chroma::cli {

enum Exit { ok = 0, negative = 1, bad_input = 2, budget = 3 };

namespace detail {

    inline std::string read_file(const std::string & path)
    {
        std::ifstream in(path);
        if (! in)
            throw InputError("cannot read " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    inline json::json read_json(const std::string & path) { return json::parse(read_file(path), path); }

    // Inline JSON text, or @path to read it from a file.
    inline json::json inline_json(const std::string & text, const std::string & what)
    {
        if (! text.empty() && text.front() == '@')
            return read_json(text.substr(1));
        return json::parse(text, what);
    }

    inline std::vector<Ordinal> parse_ordinal_list(const std::string & text)
    {
        std::vector<Ordinal> out;
        std::string item;
        std::stringstream in(text);
        while (std::getline(in, item, ','))
            if (item.find_first_not_of(" []") != std::string::npos) {
                auto b = item.find_first_not_of(" [");
                auto e = item.find_last_not_of(" ]");
                out.push_back(parse_ordinal(item.substr(b, e - b + 1)));
            }
        return out;
    }

    // A member of length depth above root, extended by symbol 0 forever.
    inline std::optional<InfiniteDiagram> consistent_diagram(const DiagramSet & W, const Diagram & root, std::size_t depth)
    {
        for (const auto & w : W)
            if (w.size() >= depth && root.is_prefix_of(w))
                return diagram_with_prefix(w.prefix(depth));
        return std::nullopt;
    }

    struct Options {
        std::string in, structure, system, diagrams, out, params, mode = "exhaustive", method = "search";
        std::string wbar, set, cstar, diagram, alpha = "1", F;
        std::uint64_t budget_nodes = default_budget;
        std::uint64_t seed = 0;
        std::size_t trials = 500, lambda_max = 2;
        std::uint32_t max_arity = 3;
        std::uint64_t max_gamma = 2, kappa = 2;
        std::string kind;
    };

    inline int emit(const Options & o, const json::json & value, std::ostream & out, int code)
    {
        auto text = value.dump(2) + "\n";
        if (o.out.empty())
            out << text;
        else {
            std::ofstream f(o.out);
            if (! f)
                throw InputError("cannot write " + o.out);
            f << text;
        }
        return code;
    }

    inline int amalgam_exit(const AmalgamResult & r)
    {
        switch (r.kind) {
        case AmalgamResult::Kind::witness:
        case AmalgamResult::Kind::identification: return ok;
        case AmalgamResult::Kind::unsat: return negative;
        case AmalgamResult::Kind::budget_exhausted: return budget;
        }
        return bad_input;
    }

    inline std::vector<ColoringStructure> structures(const json::json & j, const std::string & where)
    {
        if (! j.is_array())
            throw InputError(where + ": expected an array of structures");
        std::vector<ColoringStructure> out;
        for (std::size_t i = 0; i < j.size(); ++i)
            out.push_back(json::structure_from_json(j[i], where + "[" + std::to_string(i) + "]"));
        return out;
    }

    inline ColoringStructure build(const Options & o)
    {
        auto p = read_json(o.params);
        auto W = o.diagrams.empty() ? std::optional<DiagramSet>{} : json::diagram_set_from_json(read_json(o.diagrams));
        auto need_w = [&]() -> const DiagramSet & {
            if (! W)
                throw InputError("build " + o.kind + ": deriving components needs --diagrams");
            return *W;
        };
        auto m = [&] { return static_cast<std::size_t>(json::detail::unsigned_value(json::detail::field(p, "m", "params"), "params.m")); };
        if (o.kind == "mono") {
            auto d = json::diagram_from_json(json::detail::field(p, "diagram", "params"), "params.diagram");
            auto n = p.contains("n") ? json::detail::unsigned_value(p.at("n"), "params.n") : d.size();
            return monochromatic_model(d, n).materialized();
        }
        if (o.kind == "limit-sum")
            return build_limit_sum(structures(json::detail::field(p, "components", "params"), "params.components")).materialized();
        if (o.kind == "pair-split") {
            std::vector<Diagram> wn;
            const auto & list = json::detail::field(p, "wn", "params");
            for (std::size_t i = 0; i < list.size(); ++i)
                wn.push_back(json::diagram_from_json(list[i], "params.wn[" + std::to_string(i) + "]"));
            return build_pair_splitting(m(), json::diagram_from_json(json::detail::field(p, "wbar", "params"), "params.wbar"), wn).materialized();
        }
        if (o.kind == "k-split") {
            auto wbar = json::diagram_from_json(json::detail::field(p, "wbar", "params"), "params.wbar");
            auto comps = p.contains("comps") ? structures(p.at("comps"), "params.comps") : derive_k_splitting(need_w(), wbar, m());
            return build_k_splitting(m(), wbar, comps).materialized();
        }
        if (o.kind == "interval-split") {
            std::vector<SplitBlock> blocks;
            bool derive = false;
            const auto & list = json::detail::field(p, "blocks", "params");
            for (std::size_t i = 0; i < list.size(); ++i) {
                auto where = "params.blocks[" + std::to_string(i) + "]";
                const auto & b = list[i];
                SplitBlock block;
                block.begin = json::detail::unsigned_value(json::detail::field(b, "begin", where), where + ".begin");
                block.end = json::detail::unsigned_value(json::detail::field(b, "end", where), where + ".end");
                block.wbar = json::diagram_from_json(json::detail::field(b, "wbar", where), where + ".wbar");
                block.wstar = json::diagram_from_json(json::detail::field(b, "wstar", where), where + ".wstar");
                if (b.contains("comps"))
                    block.comps = structures(b.at("comps"), where + ".comps");
                else
                    derive = true;
                blocks.push_back(std::move(block));
            }
            if (derive)
                blocks = derive_interval_splitting(need_w(), std::move(blocks));
            return build_interval_splitting(m(), blocks).materialized();
        }
        throw InputError("build: unknown kind \"" + o.kind + "\" (mono, limit-sum, pair-split, k-split, interval-split)");
    }

}

/// Runs one command; args excludes the program name.
inline int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    using namespace detail;
    Options o;
    CLI::App app{"Coloring classes: ranks, membership, amalgamation and model builders", "chroma"};
    app.require_subcommand(1);
    app.add_option("--out", o.out, "Write the JSON result here instead of stdout");
    app.add_option("--budget", o.budget_nodes, "Search budget in nodes")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Seed for sampled modes");

    auto * rank = app.add_subcommand("rank", "Existence rank of every member");
    rank->add_option("--in", o.in, "Diagram set JSON")->required();

    auto * member = app.add_subcommand("member", "Check that a structure is in K(W)");
    member->add_option("--structure", o.structure, "Structure JSON")->required();
    member->add_option("--diagrams", o.diagrams, "Diagram set JSON")->required();

    auto * amalg = app.add_subcommand("amalgamate", "Amalgamate a special system");
    amalg->add_option("--system", o.system, "Special system JSON")->required();
    amalg->add_option("--diagrams", o.diagrams, "Diagram set JSON")->required();
    amalg->add_option("--method", o.method, "search | ap | from-ap | infinite | quotient")
        ->check(CLI::IsMember({"search", "ap", "from-ap", "infinite", "quotient"}));
    amalg->add_option("--diagram", o.diagram, "Infinite diagram {\"prefix\": [...], \"tail\": id} (JSON or @file)");
    amalg->add_option("--wbar", o.wbar, "Length-2 stem for the quotient method (JSON or @file)");
    amalg->add_option("--cstar", o.cstar, "Coloring of X in W/wbar (structure JSON file)");

    auto * build = app.add_subcommand("build", "Build a model");
    build->add_option("kind", o.kind, "mono | limit-sum | pair-split | k-split | interval-split")->required();
    build->add_option("--params", o.params, "Parameter JSON file")->required();
    build->add_option("--diagrams", o.diagrams, "Diagram set JSON, used to derive components");

    auto * spectra = app.add_subcommand("spectra", "Amalgamation verdicts for lambda = 1..max");
    spectra->add_option("--diagrams,--in", o.diagrams, "Diagram set JSON")->required();
    spectra->add_option("--lambda-max", o.lambda_max, "Largest base size")->check(CLI::PositiveNumber);
    spectra->add_option("--mode", o.mode, "exhaustive | sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    spectra->add_option("--trials", o.trials, "Systems per size in sampled mode");

    auto * walpha = app.add_subcommand("walpha-verify", "Check the closed-form ranks of W(alpha) on a truncation");
    walpha->add_option("--alpha", o.alpha, "alpha in Cantor normal form, e.g. w*1+2");
    walpha->add_option("--F", o.F, "Rank indices, comma separated")->required();
    walpha->add_option("--max-arity", o.max_arity, "Largest arity");
    walpha->add_option("--max-gamma", o.max_gamma, "Color indices per rank index")->check(CLI::PositiveNumber);
    walpha->add_option("--kappa", o.kappa, "Color-index bound of the family")->check(CLI::PositiveNumber);

    auto * quot = app.add_subcommand("quotient", "W / wbar");
    quot->add_option("--in,--diagrams", o.in, "Diagram set JSON")->required();
    quot->add_option("--wbar", o.wbar, "Stem diagram (JSON or @file)")->required();

    auto * prn = app.add_subcommand("prune", "W pruned to the members comparable with a set");
    prn->add_option("--in,--diagrams", o.in, "Diagram set JSON")->required();
    prn->add_option("--set", o.set, "Array of diagrams (JSON or @file)")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    }
    catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    }
    catch (const CLI::ParseError & e) {
        err << "chroma: " << e.what() << "\n";
        return bad_input;
    }

    try {
        if (*rank) {
            auto W = json::diagram_set_from_json(read_json(o.in), o.in);
            return emit(o, json::to_json(rank_table(W)), out, ok);
        }
        if (*member) {
            auto W = json::diagram_set_from_json(read_json(o.diagrams), o.diagrams);
            auto M = json::structure_from_json(read_json(o.structure), o.structure);
            if (auto bad = coloring_violation(M, W.language()))
                throw InputError(o.structure + ": subset " + to_string(*bad) + " has a color outside the language");
            if (auto v = in_class(M, W))
                return emit(o, json::to_json(*v), out, negative);
            return emit(o, json::json{{"result", "ok"}}, out, ok);
        }
        if (*amalg) {
            auto W = json::diagram_set_from_json(read_json(o.diagrams), o.diagrams);
            auto sys = json::system_from_json(read_json(o.system), o.system);
            validate_system(sys, W);
            AmalgamResult r;
            if (o.method == "search")
                r = dap_search(sys, W, o.budget_nodes);
            else if (o.method == "ap")
                r = ap_search(sys, W, o.budget_nodes);
            else if (o.method == "from-ap")
                r = dap_from_ap(sys, W, [&](const SpecialSystem & s) { return ap_search(s, W, o.budget_nodes); });
            else if (o.method == "infinite") {
                std::optional<InfiniteDiagram> d;
                if (! o.diagram.empty()) {
                    auto j = inline_json(o.diagram, "--diagram");
                    auto prefix = json::diagram_from_json(json::detail::field(j, "prefix", "--diagram"), "--diagram.prefix");
                    auto tail = j.contains("tail") ? json::detail::unsigned_value(j.at("tail"), "--diagram.tail") : 0;
                    d = diagram_with_prefix(prefix, static_cast<std::uint32_t>(tail));
                }
                else {
                    Element one[1] = {sys.a1};
                    d = consistent_diagram(W, Diagram{sys.c1.color_of(one)}, sys.X.size() + 2);
                }
                r = amalgamate_infinite(sys, W, d);
            }
            else {
                if (o.wbar.empty())
                    r = amalgamate_quotient(sys, W);
                else {
                    if (o.cstar.empty())
                        throw InputError("amalgamate --method quotient: --wbar needs --cstar");
                    auto wbar = json::diagram_from_json(inline_json(o.wbar, "--wbar"), "--wbar");
                    auto cstar = json::structure_from_json(read_json(o.cstar), o.cstar);
                    r = amalgamate_quotient(sys, W, wbar, cstar);
                }
            }
            return emit(o, json::to_json(r), out, amalgam_exit(r));
        }
        if (*build)
            return emit(o, json::to_json(detail::build(o)), out, ok);
        if (*spectra) {
            auto W = json::diagram_set_from_json(read_json(o.diagrams), o.diagrams);
            SpectraMode mode = ExhaustiveMode{};
            if (o.mode == "sampled")
                mode = SampledMode{o.seed, o.trials};
            auto rows = spectra_scan(W, o.lambda_max, mode, o.budget_nodes);
            return emit(o, json::to_json(rows), out, ok);
        }
        if (*walpha) {
            WAlphaParams params{parse_ordinal(o.alpha), o.kappa};
            WAlphaTruncation trunc(params, parse_ordinal_list(o.F), o.max_arity, o.max_gamma);
            auto report = walpha_check(trunc, trunc.diagrams());
            return emit(o, json::to_json(report, trunc), out, report.ok() ? ok : negative);
        }
        if (*quot) {
            auto W = json::diagram_set_from_json(read_json(o.in), o.in);
            auto wbar = json::diagram_from_json(inline_json(o.wbar, "--wbar"), "--wbar");
            return emit(o, json::to_json(quotient(W, wbar)), out, ok);
        }
        if (*prn) {
            auto W = json::diagram_set_from_json(read_json(o.in), o.in);
            auto j = inline_json(o.set, "--set");
            if (! j.is_array())
                throw InputError("--set: expected an array of diagrams");
            std::vector<Diagram> S;
            for (std::size_t i = 0; i < j.size(); ++i)
                S.push_back(json::diagram_from_json(j[i], "--set[" + std::to_string(i) + "]"));
            return emit(o, json::to_json(prune(W, S)), out, ok);
        }
    }
    catch (const std::invalid_argument & e) {
        err << "chroma: " << e.what() << "\n";
        return bad_input;
    }
    catch (const nlohmann::json::exception & e) {
        err << "chroma: " << e.what() << "\n";
        return bad_input;
    }
    return bad_input;
}

}
