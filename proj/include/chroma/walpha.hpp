#pragma once

// The family W(alpha): symbols P_{n; gamma, beta} whose rank indices beta
// strictly descend along a diagram, and its finite truncations.

#include <chroma/diagrams.hpp>
#include <chroma/error.hpp>
#include <chroma/ordinal.hpp>
#include <chroma/rank.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace chroma {

/// P_{arity; gamma, beta}. Unary symbols carry beta = alpha.
struct WAlphaSymbol {
    std::uint32_t arity = 1;
    std::uint64_t gamma = 0;
    Ordinal beta;

    friend bool operator==(const WAlphaSymbol &, const WAlphaSymbol &) = default;
};

using WAlphaDiagram = std::vector<WAlphaSymbol>;

inline std::string to_string(const WAlphaSymbol & s)
{
    return "P_{" + std::to_string(s.arity) + ";" + std::to_string(s.gamma) + "," + s.beta.to_string() + "}";
}

struct WAlphaParams {
    Ordinal alpha = Ordinal::finite(1);
    /// Finite stand-in for the number of color indices.
    std::uint64_t kappa_surrogate = 2;
};

/// Membership in W(alpha): arity discipline, unary index alpha with
/// gamma <= kappa, higher indices at most alpha with gamma < kappa, and rank
/// indices strictly descending.
inline bool walpha_is_allowed(const WAlphaParams & params, const WAlphaDiagram & w)
{
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto & s = w[i];
        if (s.arity != i + 1)
            return false;
        if (s.arity == 1) {
            if (s.beta != params.alpha || s.gamma > params.kappa_surrogate)
                return false;
        }
        else if (s.beta > params.alpha || s.gamma >= params.kappa_surrogate)
            return false;
        if (i > 0 && ! (w[i - 1].beta > s.beta))
            return false;
    }
    return true;
}

/// The rank of a nonempty member: the rank index of its last symbol.
inline Ordinal walpha_rank(const WAlphaParams & params, const WAlphaDiagram & w)
{
    if (w.empty())
        throw PreconditionError("walpha_rank: the empty diagram");
    if (! walpha_is_allowed(params, w))
        throw PreconditionError("walpha_rank: not a member of W(alpha)");
    return w.back().beta;
}

/// W(alpha) as an intensional tree. Children are listed only for finite alpha.
class WAlphaFamily {
public:
    using diagram_type = WAlphaDiagram;
    using symbol_type = WAlphaSymbol;

    explicit WAlphaFamily(WAlphaParams params) : params_(std::move(params)) {}

    [[nodiscard]] bool contains(const WAlphaDiagram & w) const { return walpha_is_allowed(params_, w); }

    [[nodiscard]] std::vector<WAlphaDiagram> children(const WAlphaDiagram & w) const
    {
        auto top = params_.alpha.finite_value();
        if (! top)
            throw PreconditionError("W(alpha) children: alpha must be finite");
        std::vector<WAlphaDiagram> out;
        const auto arity = static_cast<std::uint32_t>(w.size() + 1);
        if (w.empty()) {
            for (std::uint64_t g = 0; g <= params_.kappa_surrogate; ++g)
                out.push_back({WAlphaSymbol{1, g, params_.alpha}});
            return out;
        }
        auto below = *w.back().beta.finite_value();
        for (std::uint64_t b = 0; b < below && b <= *top; ++b)
            for (std::uint64_t g = 0; g < params_.kappa_surrogate; ++g) {
                auto u = w;
                u.push_back(WAlphaSymbol{arity, g, Ordinal::finite(b)});
                out.push_back(std::move(u));
            }
        return out;
    }

private:
    WAlphaParams params_;
};

/// A finite fragment of W(alpha): rank indices from F at arities >= 2,
/// arities up to max_arity, gamma below max_gamma. Symbol ids encode gamma
/// for unary symbols and index_in_F * max_gamma + gamma above.
class WAlphaTruncation {
public:
    WAlphaTruncation(WAlphaParams params, std::vector<Ordinal> F, std::uint32_t max_arity, std::uint64_t max_gamma) :
        params_(std::move(params)), F_(std::move(F)), max_arity_(max_arity), max_gamma_(max_gamma)
    {
        if (F_.empty())
            throw PreconditionError("walpha_truncate: F is empty");
        if (max_gamma_ == 0)
            throw PreconditionError("walpha_truncate: max_gamma must be positive");
        std::sort(F_.begin(), F_.end());
        F_.erase(std::unique(F_.begin(), F_.end()), F_.end());
        if (F_.back() > params_.alpha)
            throw PreconditionError("walpha_truncate: F has an index above alpha");
    }

    [[nodiscard]] const std::vector<Ordinal> & F() const { return F_; }
    [[nodiscard]] const WAlphaParams & params() const { return params_; }
    [[nodiscard]] std::uint32_t max_arity() const { return max_arity_; }
    [[nodiscard]] std::uint64_t max_gamma() const { return max_gamma_; }

    [[nodiscard]] Language language() const
    {
        std::vector<std::uint32_t> counts;
        for (std::uint32_t n = 1; n <= std::max<std::uint32_t>(max_arity_, 1); ++n)
            counts.push_back(static_cast<std::uint32_t>(n == 1 ? max_gamma_ : F_.size() * max_gamma_));
        return Language(std::move(counts));
    }

    [[nodiscard]] RelSymbol encode(const WAlphaSymbol & s) const
    {
        if (s.arity == 1)
            return RelSymbol{1, static_cast<std::uint32_t>(s.gamma)};
        auto it = std::lower_bound(F_.begin(), F_.end(), s.beta);
        if (it == F_.end() || *it != s.beta)
            throw PreconditionError("walpha encode: rank index " + s.beta.to_string() + " is not in F");
        return RelSymbol{s.arity, static_cast<std::uint32_t>(static_cast<std::uint64_t>(it - F_.begin()) * max_gamma_ + s.gamma)};
    }

    [[nodiscard]] WAlphaSymbol decode(const RelSymbol & s) const
    {
        if (s.arity == 1)
            return WAlphaSymbol{1, s.id, params_.alpha};
        return WAlphaSymbol{s.arity, s.id % max_gamma_, F_.at(s.id / max_gamma_)};
    }

    [[nodiscard]] WAlphaDiagram decode(const Diagram & w) const
    {
        WAlphaDiagram out;
        for (const auto & s : w)
            out.push_back(decode(s));
        return out;
    }

    [[nodiscard]] DiagramSet diagrams() const
    {
        std::set<Diagram> members{Diagram{}};
        std::vector<Diagram> frontier{Diagram{}};
        for (std::uint32_t n = 1; n <= max_arity_; ++n) {
            std::vector<Diagram> next;
            for (const auto & w : frontier) {
                if (n == 1) {
                    for (std::uint64_t g = 0; g < max_gamma_; ++g)
                        next.push_back(w.extended(encode(WAlphaSymbol{1, g, params_.alpha})));
                    continue;
                }
                auto previous = decode(w.back()).beta;
                for (const auto & b : F_) {
                    if (! (b < previous))
                        break;
                    for (std::uint64_t g = 0; g < max_gamma_; ++g)
                        next.push_back(w.extended(encode(WAlphaSymbol{n, g, b})));
                }
            }
            members.insert(next.begin(), next.end());
            frontier = std::move(next);
        }
        return DiagramSet(language(), std::move(members));
    }

    /// The rank the family predicts inside the truncation: the order type of
    /// the indices of F below the last index, capped by the arities left.
    [[nodiscard]] std::uint64_t expected_rank(const Diagram & w) const
    {
        auto beta = decode(w.back()).beta;
        auto below = static_cast<std::uint64_t>(std::lower_bound(F_.begin(), F_.end(), beta) - F_.begin());
        return std::min<std::uint64_t>(below, max_arity_ - w.size());
    }

private:
    WAlphaParams params_;
    std::vector<Ordinal> F_;
    std::uint32_t max_arity_;
    std::uint64_t max_gamma_;
};

inline DiagramSet walpha_truncate(const WAlphaParams & params, const std::vector<Ordinal> & F, std::uint32_t max_arity, std::uint64_t max_gamma)
{
    return WAlphaTruncation(params, F, max_arity, max_gamma).diagrams();
}

struct WAlphaMismatch {
    Diagram diagram;
    std::uint64_t expected = 0;
    Ordinal actual;
};

struct WAlphaReport {
    std::size_t nodes = 0;
    std::vector<WAlphaMismatch> mismatches;

    [[nodiscard]] bool ok() const { return mismatches.empty(); }
};

/// Compares the rank of every nonempty node of `T` (a truncation, possibly
/// altered) against the closed form.
inline WAlphaReport walpha_check(const WAlphaTruncation & trunc, const DiagramSet & T)
{
    WAlphaReport report;
    auto ranks = rank_table(T);
    for (const auto & [w, r] : ranks) {
        if (w.empty())
            continue;
        ++report.nodes;
        auto expected = trunc.expected_rank(w);
        if (r != Ordinal::finite(expected))
            report.mismatches.push_back({w, expected, r});
    }
    return report;
}

inline WAlphaReport walpha_verify_claim(const WAlphaParams & params, const std::vector<Ordinal> & F, std::uint32_t max_arity, std::uint64_t max_gamma)
{
    WAlphaTruncation trunc(params, F, max_arity, max_gamma);
    return walpha_check(trunc, trunc.diagrams());
}

}
