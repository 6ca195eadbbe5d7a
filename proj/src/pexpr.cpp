#include "hyperlaws/pexpr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "hyperlaws/errors.hpp"

namespace hyperlaws {

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double to_double(const Rational& q) {
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

int Monomial::compare_growth(const Monomial& o) const {
    if (npow != o.npow) return npow < o.npow ? -1 : 1;
    if (logpow != o.logpow) return logpow < o.logpow ? -1 : 1;
    if (llpow != o.llpow) return llpow < o.llpow ? -1 : 1;
    return 0;
}

bool operator==(const Monomial& a, const Monomial& b) {
    return a.coeff == b.coeff && a.compare_growth(b) == 0;
}

EdgeProbExpr::EdgeProbExpr(Rational constant) {
    terms_.push_back(Monomial{constant, 0, 0, 0});
    normalize();
}

EdgeProbExpr::EdgeProbExpr(std::vector<Monomial> terms) : terms_(std::move(terms)) { normalize(); }

EdgeProbExpr EdgeProbExpr::monomial(Rational coeff, Rational npow, Rational logpow,
                                    Rational llpow) {
    return EdgeProbExpr(std::vector<Monomial>{Monomial{coeff, npow, logpow, llpow}});
}

void EdgeProbExpr::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Monomial& a, const Monomial& b) { return a.compare_growth(b) > 0; });
    std::vector<Monomial> out;
    for (const auto& t : terms_) {
        if (!out.empty() && out.back().compare_growth(t) == 0)
            out.back().coeff += t.coeff;
        else
            out.push_back(t);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Monomial& m) { return m.coeff == 0; }),
              out.end());
    terms_ = std::move(out);
}

bool EdgeProbExpr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].npow == 0 &&
                              terms_[0].logpow == 0 && terms_[0].llpow == 0);
}

std::optional<Rational> EdgeProbExpr::constant_value() const {
    if (!is_constant()) return std::nullopt;
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

std::optional<WindowForm> EdgeProbExpr::window_form() const {
    if (terms_.empty() || terms_.size() > 3) return std::nullopt;
    const auto& lead = terms_[0];
    if (lead.logpow != 1 || lead.llpow != 0 || lead.npow.denominator() != 1 || lead.npow >= 0)
        return std::nullopt;
    WindowForm w{lead.coeff, 0, 0, -lead.npow.numerator()};
    for (std::size_t i = 1; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        if (t.npow != lead.npow || t.logpow != 0) return std::nullopt;
        if (t.llpow == 1)
            w.l = t.coeff / w.A;
        else if (t.llpow == 0)
            w.c = t.coeff / w.A;
        else
            return std::nullopt;
    }
    return w;
}

namespace {

std::string paren_rational(const Rational& q) {
    if (q.denominator() == 1 && q >= 0) return std::to_string(q.numerator());
    return "(" + to_string(q) + ")";
}

std::string factor(const char* base, const Rational& pw) {
    if (pw == 1) return base;
    return std::string(base) + "^" + paren_rational(pw);
}

std::string term_body(const Monomial& m, const Rational& abs_coeff) {
    std::vector<std::string> parts;
    if (abs_coeff != 1) parts.push_back(paren_rational(abs_coeff));
    if (m.npow != 0) parts.push_back(factor("n", m.npow));
    if (m.logpow != 0) parts.push_back(factor("log(n)", m.logpow));
    if (m.llpow != 0) parts.push_back(factor("loglog(n)", m.llpow));
    if (parts.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "*" : "") + parts[i];
    return s;
}

} // namespace

std::string EdgeProbExpr::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        const bool neg = t.coeff < 0;
        const Rational ac = neg ? -t.coeff : t.coeff;
        if (i == 0)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        s += term_body(t, ac);
    }
    return s;
}

EdgeProbExpr operator+(const EdgeProbExpr& a, const EdgeProbExpr& b) {
    auto t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return EdgeProbExpr(std::move(t));
}

EdgeProbExpr operator-(const EdgeProbExpr& a) {
    auto t = a.terms_;
    for (auto& m : t) m.coeff = -m.coeff;
    return EdgeProbExpr(std::move(t));
}

EdgeProbExpr operator-(const EdgeProbExpr& a, const EdgeProbExpr& b) { return a + (-b); }

EdgeProbExpr operator*(const EdgeProbExpr& a, const EdgeProbExpr& b) {
    std::vector<Monomial> t;
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_)
            t.push_back(Monomial{x.coeff * y.coeff, x.npow + y.npow, x.logpow + y.logpow,
                                 x.llpow + y.llpow});
    return EdgeProbExpr(std::move(t));
}

bool operator==(const EdgeProbExpr& a, const EdgeProbExpr& b) { return a.terms_ == b.terms_; }

namespace {

class Parser {
public:
    Parser(const std::string& text, const Bindings& b) : s_(text), bind_(b) {}

    EdgeProbExpr run() {
        auto e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, at);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    EdgeProbExpr expr() {
        auto e = term();
        for (;;) {
            if (accept('+'))
                e = e + term();
            else if (accept('-'))
                e = e - term();
            else
                return e;
        }
    }

    EdgeProbExpr term() {
        auto e = unary();
        for (;;) {
            if (accept('*')) {
                e = e * unary();
            } else if (accept('/')) {
                const auto at = pos_;
                auto den = unary();
                e = e * reciprocal(den, at);
            } else {
                return e;
            }
        }
    }

    EdgeProbExpr reciprocal(const EdgeProbExpr& den, std::size_t at) const {
        if (den.is_zero()) fail_at("division by zero", at);
        if (den.terms().size() != 1)
            fail_at("division by a sum is outside the supported L-fragment", at);
        const auto& m = den.terms()[0];
        return EdgeProbExpr::monomial(Rational(1) / m.coeff, -m.npow, -m.logpow, -m.llpow);
    }

    EdgeProbExpr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    EdgeProbExpr power() {
        auto base = postfix();
        if (!accept('^')) return base;
        const auto at = pos_;
        auto ex = unary();
        auto k = ex.constant_value();
        if (!k) fail_at("exponent must be a constant", at);
        return raise(base, *k, at);
    }

    EdgeProbExpr raise(const EdgeProbExpr& base, const Rational& k, std::size_t at) const {
        if (base.is_zero()) {
            if (k > 0) return base;
            if (k == 0) return EdgeProbExpr(Rational(1));
            fail_at("zero raised to a negative power", at);
        }
        if (base.terms().size() == 1) {
            const auto& m = base.terms()[0];
            Rational c;
            if (k.denominator() == 1) {
                c = pow_int(m.coeff, k.numerator(), at);
            } else if (m.coeff == 1) {
                c = 1;
            } else {
                fail_at("fractional power of a coefficient other than 1", at);
            }
            return EdgeProbExpr::monomial(c, m.npow * k, m.logpow * k, m.llpow * k);
        }
        if (k.denominator() != 1 || k < 0)
            fail_at("a sum may only be raised to a non-negative integer power", at);
        if (k > 32) fail_at("exponent too large", at);
        EdgeProbExpr r(Rational(1));
        for (std::int64_t i = 0; i < k.numerator(); ++i) r = r * base;
        return r;
    }

    Rational pow_int(Rational c, std::int64_t k, std::size_t at) const {
        if (k < 0) {
            if (c == 0) fail_at("zero raised to a negative power", at);
            c = Rational(1) / c;
            k = -k;
        }
        Rational r(1);
        for (std::int64_t i = 0; i < k; ++i) r *= c;
        return r;
    }

    EdgeProbExpr postfix() {
        auto e = primary();
        for (;;) {
            skip();
            if (pos_ < s_.size() && s_[pos_] == '!') {
                const auto at = pos_++;
                auto v = e.constant_value();
                if (!v || v->denominator() != 1 || *v < 0 || *v > 20)
                    fail_at("factorial needs an integer constant in 0..20", at);
                std::int64_t f = 1;
                for (std::int64_t i = 2; i <= v->numerator(); ++i) f *= i;
                e = EdgeProbExpr(Rational(f));
            } else {
                return e;
            }
        }
    }

    EdgeProbExpr number() {
        const auto start = pos_;
        std::int64_t num = 0, den = 1;
        bool digits = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            num = num * 10 + (s_[pos_++] - '0');
            digits = true;
        }
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                num = num * 10 + (s_[pos_++] - '0');
                den *= 10;
                digits = true;
            }
        }
        if (!digits) fail_at("malformed number", start);
        Rational q(num, den);
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
            (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-' ||
             s_[pos_ + 1] == '+')) {
            ++pos_;
            int sign = 1;
            if (s_[pos_] == '-' || s_[pos_] == '+') sign = s_[pos_++] == '-' ? -1 : 1;
            int ex = 0;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail_at("malformed exponent", start);
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ex = ex * 10 + (s_[pos_++] - '0');
            for (int i = 0; i < ex; ++i) q = sign > 0 ? q * 10 : q / 10;
        }
        return EdgeProbExpr(q);
    }

    std::string ident() {
        std::string id;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            id += s_[pos_++];
        return id;
    }

    EdgeProbExpr logarithm(std::size_t at) {
        expect('(');
        auto arg = expr();
        expect(')');
        const EdgeProbExpr logn = EdgeProbExpr::monomial(1, 0, 1);
        if (arg == logn) return EdgeProbExpr::monomial(1, 0, 0, 1);
        if (arg.terms().size() == 1) {
            const auto& m = arg.terms()[0];
            if (m.coeff == 1 && m.npow != 0 && m.logpow == 0 && m.llpow == 0)
                return EdgeProbExpr::monomial(m.npow, 0, 1);
        }
        fail_at("logarithm of this argument is outside the supported L-fragment", at);
    }

    EdgeProbExpr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            auto e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            const auto at = pos_;
            const auto id = ident();
            if (id == "n") return EdgeProbExpr::monomial(1, 1);
            if (id == "log" || id == "ln") return logarithm(at);
            if (id == "loglog") {
                auto l = logarithm(at);
                if (l.terms().size() != 1 || l.terms()[0].logpow != 1 || l.terms()[0].coeff != 1)
                    fail_at("loglog is only supported as loglog(n)", at);
                return EdgeProbExpr::monomial(1, 0, 0, 1);
            }
            if (id == "exp") fail_at("exp is outside the supported L-fragment", at);
            auto it = bind_.find(id);
            if (it != bind_.end()) return EdgeProbExpr(Rational(it->second));
            fail_at("unknown identifier '" + id + "'", at);
        }
        fail("unexpected '" + std::string(1, ch) + "'");
    }

    const std::string& s_;
    const Bindings& bind_;
    std::size_t pos_ = 0;
};

} // namespace

EdgeProbExpr parse(const std::string& text, const Bindings& bindings) {
    return Parser(text, bindings).run();
}

AsymptoticOrder compare(const EdgeProbExpr& a, const EdgeProbExpr& b) {
    using Rel = AsymptoticOrder::Rel;
    if (a.is_zero() && b.is_zero()) return {Rel::Similar, 1};
    if (a.is_zero()) return {Rel::Less, 0};
    if (b.is_zero()) return {Rel::Greater, 0};
    const int g = a.dominant().compare_growth(b.dominant());
    if (g < 0) return {Rel::Less, 0};
    if (g > 0) return {Rel::Greater, 0};
    return {Rel::Similar, a.dominant().coeff / b.dominant().coeff};
}

std::string to_string(const AsymptoticOrder& o) {
    switch (o.rel) {
    case AsymptoticOrder::Rel::Less: return "<<";
    case AsymptoticOrder::Rel::Greater: return ">>";
    default: return "~" + to_string(o.c);
    }
}

long double eval_raw(const EdgeProbExpr& p, double n) {
    const long double ln = std::log(static_cast<long double>(n));
    const long double lln = std::log(ln);
    long double s = 0;
    for (const auto& t : p.terms()) {
        long double x = static_cast<long double>(to_double(t.coeff));
        if (t.npow != 0) x *= std::pow(static_cast<long double>(n), to_double(t.npow));
        if (t.logpow != 0) x *= std::pow(ln, static_cast<long double>(to_double(t.logpow)));
        if (t.llpow != 0) x *= std::pow(lln, static_cast<long double>(to_double(t.llpow)));
        s += x;
    }
    return s;
}

EvalResult eval(const EdgeProbExpr& p, double n) {
    long double v = eval_raw(p, n);
    if (v < 0) return {0, true};
    if (v > 1) return {1, true};
    return {v, false};
}

} // namespace hyperlaws
