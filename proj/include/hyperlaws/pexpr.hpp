#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

// Boost 1.74 mixed rational/integer equality recurses forever under C++20
// rewritten comparisons; exact non-template overloads take precedence.
namespace boost {
inline constexpr bool operator==(const rational<std::int64_t>& a, int b) {
    return a.denominator() == 1 && a.numerator() == b;
}
inline constexpr bool operator==(const rational<std::int64_t>& a, long b) {
    return a.denominator() == 1 && a.numerator() == b;
}
inline constexpr bool operator==(const rational<std::int64_t>& a, long long b) {
    return a.denominator() == 1 && a.numerator() == b;
}
inline constexpr bool operator==(const rational<std::int64_t>& a, unsigned b) {
    return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);
}
} // namespace boost

namespace hyperlaws {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& q);
double to_double(const Rational& q);

// coeff * n^npow * (log n)^logpow * (log log n)^llpow
struct Monomial {
    Rational coeff{0};
    Rational npow{0};
    Rational logpow{0};
    Rational llpow{0};

    // Lexicographic growth order of (npow, logpow, llpow); coefficient ignored.
    int compare_growth(const Monomial& o) const;
};

struct AsymptoticOrder {
    enum class Rel { Less, Greater, Similar };
    Rel rel = Rel::Similar;
    Rational c{1};  // ratio of leading coefficients when Similar
};

// A*(log n + l*loglog n + c)/n^d
struct WindowForm {
    Rational A;
    Rational l;
    Rational c;
    std::int64_t d;
};

// Normalized sum of monomials: like terms merged, zero terms dropped, terms
// sorted from fastest to slowest growing.
class EdgeProbExpr {
public:
    EdgeProbExpr() = default;
    explicit EdgeProbExpr(Rational constant);
    explicit EdgeProbExpr(std::vector<Monomial> terms);

    static EdgeProbExpr monomial(Rational coeff, Rational npow, Rational logpow = 0,
                                 Rational llpow = 0);

    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    // Fastest-growing term; requires !is_zero().
    const Monomial& dominant() const { return terms_.front(); }
    bool is_constant() const;
    std::optional<Rational> constant_value() const;

    std::optional<WindowForm> window_form() const;

    std::string str() const;

    friend EdgeProbExpr operator+(const EdgeProbExpr& a, const EdgeProbExpr& b);
    friend EdgeProbExpr operator-(const EdgeProbExpr& a, const EdgeProbExpr& b);
    friend EdgeProbExpr operator*(const EdgeProbExpr& a, const EdgeProbExpr& b);
    friend EdgeProbExpr operator-(const EdgeProbExpr& a);
    friend bool operator==(const EdgeProbExpr& a, const EdgeProbExpr& b);

private:
    void normalize();
    std::vector<Monomial> terms_;
};

bool operator==(const Monomial& a, const Monomial& b);

// Variables such as d may be bound to integer values.
using Bindings = std::map<std::string, std::int64_t>;

// Throws ParseError.
EdgeProbExpr parse(const std::string& text, const Bindings& bindings = {});

AsymptoticOrder compare(const EdgeProbExpr& a, const EdgeProbExpr& b);

struct EvalResult {
    long double value;
    bool clamped;
};
EvalResult eval(const EdgeProbExpr& p, double n);
long double eval_raw(const EdgeProbExpr& p, double n);

std::string to_string(const AsymptoticOrder& o);

} // namespace hyperlaws
