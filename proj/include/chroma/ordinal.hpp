#pragma once

// Ordinals below epsilon_0 in Cantor normal form, plus symbolic cardinal
// expressions used to report size bounds.

#include <chroma/error.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chroma {

/// An ordinal below epsilon_0, stored as omega^e1*c1 + ... + omega^en*cn with
/// e1 > ... > en and every ci >= 1. The empty term list is 0.
class Ordinal {
public:
    struct Term;

    Ordinal() = default;

    static Ordinal finite(std::uint64_t n);
    static Ordinal omega();
    /// omega^exponent * coefficient (coefficient 0 yields 0).
    static Ordinal omega_power(Ordinal exponent, std::uint64_t coefficient = 1);

    [[nodiscard]] const std::vector<Term> & terms() const { return terms_; }

    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_finite() const;
    [[nodiscard]] bool is_successor() const;
    [[nodiscard]] bool is_limit() const;
    /// The value of a finite ordinal; nullopt when infinite.
    [[nodiscard]] std::optional<std::uint64_t> finite_value() const;

    [[nodiscard]] Ordinal successor() const;
    /// Ordinal (non-commutative) sum *this + rhs.
    [[nodiscard]] Ordinal plus(const Ordinal & rhs) const;
    [[nodiscard]] Ordinal plus(std::uint64_t n) const { return plus(finite(n)); }

    [[nodiscard]] std::string to_string() const;

    friend std::strong_ordering compare(const Ordinal & a, const Ordinal & b);
    friend std::strong_ordering operator<=>(const Ordinal & a, const Ordinal & b) { return compare(a, b); }
    friend bool operator==(const Ordinal & a, const Ordinal & b) { return compare(a, b) == 0; }

    friend Ordinal operator+(const Ordinal & a, const Ordinal & b) { return a.plus(b); }

private:
    explicit Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {}

    std::vector<Term> terms_;
};

struct Ordinal::Term {
    Ordinal exponent;
    std::uint64_t coefficient = 1;
};

inline Ordinal Ordinal::finite(std::uint64_t n)
{
    if (n == 0)
        return {};
    return Ordinal{std::vector<Term>{Term{Ordinal{}, n}}};
}

inline Ordinal Ordinal::omega() { return omega_power(finite(1)); }

inline Ordinal Ordinal::omega_power(Ordinal exponent, std::uint64_t coefficient)
{
    if (coefficient == 0)
        return {};
    return Ordinal{std::vector<Term>{Term{std::move(exponent), coefficient}}};
}

inline bool Ordinal::is_finite() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().exponent.is_zero());
}

inline bool Ordinal::is_successor() const
{
    return ! terms_.empty() && terms_.back().exponent.is_zero();
}

inline bool Ordinal::is_limit() const { return ! terms_.empty() && ! is_successor(); }

inline std::optional<std::uint64_t> Ordinal::finite_value() const
{
    if (terms_.empty())
        return 0;
    if (! is_finite())
        return std::nullopt;
    return terms_.front().coefficient;
}

inline std::strong_ordering compare(const Ordinal & a, const Ordinal & b)
{
    auto n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto & ta = a.terms_[i];
        const auto & tb = b.terms_[i];
        if (auto c = compare(ta.exponent, tb.exponent); c != 0)
            return c;
        if (auto c = ta.coefficient <=> tb.coefficient; c != 0)
            return c;
    }
    return a.terms_.size() <=> b.terms_.size();
}

inline Ordinal Ordinal::successor() const { return plus(1); }

inline Ordinal Ordinal::plus(const Ordinal & rhs) const
{
    if (rhs.is_zero())
        return *this;
    const auto & lead = rhs.terms_.front().exponent;
    std::vector<Term> out;
    for (const auto & t : terms_) {
        auto c = compare(t.exponent, lead);
        if (c > 0)
            out.push_back(t);
        else {
            if (c == 0)
                out.push_back(Term{t.exponent, t.coefficient + rhs.terms_.front().coefficient});
            break;
        }
    }
    if (! out.empty() && out.back().exponent == lead) {
        out.insert(out.end(), rhs.terms_.begin() + 1, rhs.terms_.end());
    }
    else {
        out.insert(out.end(), rhs.terms_.begin(), rhs.terms_.end());
    }
    return Ordinal{std::move(out)};
}

inline std::string Ordinal::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto & t : terms_) {
        if (! out.empty())
            out += '+';
        if (t.exponent.is_zero()) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += 'w';
        if (t.exponent != finite(1)) {
            auto e = t.exponent.to_string();
            if (t.exponent.terms_.size() == 1 && t.exponent.is_finite())
                out += "^" + e;
            else
                out += "^(" + e + ")";
        }
        out += "*" + std::to_string(t.coefficient);
    }
    return out;
}

/// Split a into (beta, k) with a = beta + k, beta zero or a limit, k finite.
inline std::pair<Ordinal, std::uint64_t> split(const Ordinal & a)
{
    if (! a.is_successor())
        return {a, 0};
    const auto & terms = a.terms();
    std::vector<Ordinal::Term> head(terms.begin(), terms.end() - 1);
    Ordinal beta;
    for (const auto & t : head)
        beta = beta + Ordinal::omega_power(t.exponent, t.coefficient);
    return {beta, terms.back().coefficient};
}

/// Canonical fundamental sequence of a limit ordinal below epsilon_0.
///
/// For beta = gamma + omega^d: if d = d' + 1 the i-th element is
/// gamma + omega^d' * i, and if d is a limit it is gamma + omega^(d[i]).
inline Ordinal fundamental_sequence(const Ordinal & beta, std::uint64_t i)
{
    if (! beta.is_limit())
        throw PreconditionError("fundamental_sequence: " + beta.to_string() + " is not a limit ordinal");
    const auto & terms = beta.terms();
    Ordinal prefix;
    for (std::size_t t = 0; t + 1 < terms.size(); ++t)
        prefix = prefix + Ordinal::omega_power(terms[t].exponent, terms[t].coefficient);
    const auto & last = terms.back();
    if (last.coefficient > 1)
        prefix = prefix + Ordinal::omega_power(last.exponent, last.coefficient - 1);
    if (last.exponent.is_successor()) {
        auto [e, k] = split(last.exponent);
        return prefix + Ordinal::omega_power(e + Ordinal::finite(k - 1), i);
    }
    return prefix + Ordinal::omega_power(fundamental_sequence(last.exponent, i));
}

/// beta + n*k + k(k-1)/2, the beth index bounding models over a diagram of
/// length n whose rank is below beta + k.
inline Ordinal bound_index(const Ordinal & beta, std::uint64_t n, std::uint64_t k)
{
    return beta + Ordinal::finite(n * k + k * (k == 0 ? 0 : k - 1) / 2);
}

namespace detail {

    class OrdinalParser {
    public:
        explicit OrdinalParser(std::string_view text) : text_(text) {}

        Ordinal parse()
        {
            auto result = sum();
            skip_space();
            if (pos_ != text_.size())
                fail("unexpected character");
            return result;
        }

    private:
        [[noreturn]] void fail(const std::string & what) const
        {
            throw InputError("cannot parse ordinal '" + std::string(text_) + "' at position " + std::to_string(pos_) + ": " + what);
        }

        void skip_space()
        {
            while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
                ++pos_;
        }

        bool accept(char c)
        {
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == c) {
                ++pos_;
                return true;
            }
            return false;
        }

        std::uint64_t number()
        {
            skip_space();
            auto start = pos_;
            std::uint64_t value = 0;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
                value = value * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
            if (start == pos_)
                fail("expected a number");
            return value;
        }

        bool omega_token()
        {
            skip_space();
            if (text_.substr(pos_).starts_with("omega")) {
                pos_ += 5;
                return true;
            }
            if (pos_ < text_.size() && (text_[pos_] == 'w' || text_[pos_] == 'W')) {
                ++pos_;
                return true;
            }
            return false;
        }

        Ordinal exponent()
        {
            if (accept('(')) {
                auto e = sum();
                if (! accept(')'))
                    fail("expected ')'");
                return e;
            }
            skip_space();
            if (omega_token())
                return Ordinal::omega();
            return Ordinal::finite(number());
        }

        Ordinal term()
        {
            if (omega_token()) {
                Ordinal e = Ordinal::finite(1);
                if (accept('^'))
                    e = exponent();
                std::uint64_t c = 1;
                if (accept('*'))
                    c = number();
                return Ordinal::omega_power(std::move(e), c);
            }
            return Ordinal::finite(number());
        }

        Ordinal sum()
        {
            auto result = term();
            while (accept('+'))
                result = result + term();
            return result;
        }

        std::string_view text_;
        std::size_t pos_ = 0;
    };

}

/// Parses "w^2*3+w*1+4" style text; also accepts "omega", bare "w" and
/// parenthesized exponents such as "w^(w+1)".
inline Ordinal parse_ordinal(std::string_view text) { return detail::OrdinalParser{text}.parse(); }

/// Symbolic cardinal expression. Never evaluated beyond finite values.
class CardinalExpr {
public:
    enum class Kind {
        finite,    ///< a natural number
        named,     ///< an opaque named cardinal such as |L|
        kappa,     ///< kappa_index, unexpanded
        sup_kappa, ///< sup of kappa_b for b < index
        power_set, ///< 2^operand
        beth,      ///< beth_index(operand), or beth_index when there is no operand
    };

    static CardinalExpr finite(std::uint64_t n)
    {
        CardinalExpr e{Kind::finite};
        e.value_ = n;
        return e;
    }

    static CardinalExpr named(std::string name)
    {
        CardinalExpr e{Kind::named};
        e.name_ = std::move(name);
        return e;
    }

    static CardinalExpr kappa_ref(Ordinal index)
    {
        CardinalExpr e{Kind::kappa};
        e.index_ = std::move(index);
        return e;
    }

    static CardinalExpr sup_kappa(Ordinal below)
    {
        CardinalExpr e{Kind::sup_kappa};
        e.index_ = std::move(below);
        return e;
    }

    static CardinalExpr power_set(CardinalExpr operand)
    {
        CardinalExpr e{Kind::power_set};
        e.operand_ = std::make_shared<const CardinalExpr>(std::move(operand));
        return e;
    }

    /// beth_index(base); beth_0(base) normalizes to base itself.
    static CardinalExpr beth(Ordinal index, std::optional<CardinalExpr> base = std::nullopt)
    {
        if (index.is_zero() && base)
            return *base;
        CardinalExpr e{Kind::beth};
        e.index_ = std::move(index);
        if (base)
            e.operand_ = std::make_shared<const CardinalExpr>(std::move(*base));
        return e;
    }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] std::optional<std::uint64_t> finite_value() const
    {
        return kind_ == Kind::finite ? std::optional{value_} : std::nullopt;
    }
    [[nodiscard]] const Ordinal & index() const { return index_; }
    [[nodiscard]] const std::string & name() const { return name_; }
    [[nodiscard]] const CardinalExpr * operand() const { return operand_.get(); }

    [[nodiscard]] std::string to_string() const
    {
        switch (kind_) {
        case Kind::finite: return std::to_string(value_);
        case Kind::named: return name_;
        case Kind::kappa: return "kappa_{" + index_.to_string() + "}";
        case Kind::sup_kappa: return "sup{kappa_b : b < " + index_.to_string() + "}";
        case Kind::power_set: return "2^(" + operand_->to_string() + ")";
        case Kind::beth:
            if (operand_)
                return "beth_{" + index_.to_string() + "}(" + operand_->to_string() + ")";
            return "beth_{" + index_.to_string() + "}";
        }
        return {};
    }

    friend bool operator==(const CardinalExpr & a, const CardinalExpr & b)
    {
        if (a.kind_ != b.kind_ || a.value_ != b.value_ || a.name_ != b.name_ || a.index_ != b.index_)
            return false;
        if (! a.operand_ || ! b.operand_)
            return ! a.operand_ && ! b.operand_;
        return *a.operand_ == *b.operand_;
    }

private:
    explicit CardinalExpr(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::uint64_t value_ = 0;
    std::string name_;
    Ordinal index_;
    std::shared_ptr<const CardinalExpr> operand_;
};

}
