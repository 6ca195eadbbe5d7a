#include "hyperlaws/theory.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "hyperlaws/errors.hpp"

namespace hyperlaws {

double poisson_pmf(std::uint64_t k, double lambda) {
    if (lambda <= 0) return k == 0 ? 1.0 : 0.0;
    const double kd = static_cast<double>(k);
    return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

double poisson_upper_tail(std::uint64_t k, double lambda) {
    if (k == 0) return 1.0;
    if (lambda <= 0) return 0.0;
    return boost::math::gamma_p(static_cast<double>(k), lambda);
}

double capped_poisson(Count k, double lambda, unsigned s) {
    return k == kMany ? poisson_upper_tail(static_cast<std::uint64_t>(s) + 1, lambda)
                      : poisson_pmf(k, lambda);
}

Rational threshold_tree(unsigned d, unsigned l) {
    if (l == 0) throw std::invalid_argument("order must be >= 1");
    return Rational(1 + static_cast<std::int64_t>(l) * d, l);
}

double PoissonPrediction::lambda(const std::string& code) const {
    for (const auto& [k, v] : lambdas)
        if (k == code) return v;
    throw std::out_of_range("no prediction for type " + code);
}

std::vector<double> PoissonPrediction::values() const {
    std::vector<double> v;
    for (const auto& [k, x] : lambdas) v.push_back(x);
    return v;
}

PoissonPrediction poisson_means_tree_window(unsigned d, unsigned l, double c) {
    PoissonPrediction P;
    P.provenance = "tree-window";
    P.d = d;
    P.l = l;
    P.c = c;
    for (const auto& t : enumerate_tree_types(d, l)) {
        const double ratio = static_cast<double>(t.c) / static_cast<double>(factorial(t.v));
        P.lambdas.emplace_back(t.code, ratio * std::pow(c, static_cast<double>(l)));
    }
    return P;
}

PoissonPrediction poisson_means_marked_window(unsigned d, unsigned l, unsigned vstar, double c) {
    PoissonPrediction P;
    P.provenance = "marked-window";
    P.d = d;
    P.l = l;
    P.vstar = vstar;
    P.c = c;
    const double base = static_cast<double>(factorial(d)) / vstar;
    for (const auto& t : enumerate_marked_types(d, l, vstar, true)) {
        const double ratio = static_cast<double>(t.c) / static_cast<double>(factorial(t.base.v));
        P.lambdas.emplace_back(t.code, ratio * std::pow(base, static_cast<double>(l)) * std::exp(-c));
    }
    return P;
}

double expected_cycles_graph(std::uint64_t n, unsigned t, double p) {
    if (t < 3 || t > n) return 0.0;
    long double falling = 1;
    for (unsigned i = 0; i < t; ++i) falling *= static_cast<long double>(n - i);
    return static_cast<double>(falling / (2.0L * t) * std::pow(static_cast<long double>(p), t));
}

double expected_marked_trees(double n, const MarkedBergeTreeType& type, double p) {
    const unsigned l = type.base.l, v = type.base.v, d = type.base.d;
    if (p <= 0) return l == 0 ? n : 0.0;
    const double logE = std::log(static_cast<double>(type.c)) - std::lgamma(v + 1.0) +
                        v * std::log(n) + l * std::log(p) -
                        p * type.vstar * std::pow(n, d) / static_cast<double>(factorial(d));
    return std::exp(logE);
}

double expected_small_degree_vertices(double n, unsigned d, double p, std::uint64_t k) {
    double logC = std::lgamma(n) - std::lgamma(d + 1.0) - std::lgamma(n - d);
    const double mean = p * std::exp(logC);
    return n * poisson_pmf(k, mean);
}

std::string Limit::str() const {
    switch (kind) {
    case Kind::PosInf: return "+inf";
    case Kind::NegInf: return "-inf";
    default: return to_string(value);
    }
}

namespace {

const Monomial kLoglog{1, 0, 0, 1};
const Monomial kConst{1, 0, 0, 0};

Limit read_limit(const EdgeProbExpr& e, const Monomial& scale, EdgeProbExpr* rest) {
    if (e.is_zero()) {
        if (rest) *rest = e;
        return Limit::finite(0);
    }
    const auto& dom = e.dominant();
    const int g = dom.compare_growth(scale);
    if (g > 0) return {dom.coeff > 0 ? Limit::Kind::PosInf : Limit::Kind::NegInf, 0};
    if (g == 0) {
        if (rest)
            *rest = e - EdgeProbExpr::monomial(dom.coeff, scale.npow, scale.logpow, scale.llpow);
        return Limit::finite(dom.coeff);
    }
    if (rest) *rest = e;
    return Limit::finite(0);
}

} // namespace

WindowParams window_params_eval(const EdgeProbExpr& p, unsigned d, unsigned vstar) {
    if (vstar < 1) throw std::invalid_argument("v* must be >= 1");
    const Rational scale(static_cast<std::int64_t>(vstar), static_cast<std::int64_t>(factorial(d)));
    const auto q = p * EdgeProbExpr::monomial(scale, static_cast<std::int64_t>(d));
    const Monomial logn{1, 0, 1, 0};
    if (q.is_zero() || q.dominant().compare_growth(logn) != 0 || q.dominant().coeff != 1)
        throw DomainError("p is not asymptotic to (d!/v*) log n / n^d for d=" + std::to_string(d) +
                          ", v*=" + std::to_string(vstar) + ": " + p.str());
    const auto R = q - EdgeProbExpr::monomial(1, 0, 1);
    WindowParams w;
    w.d = d;
    w.vstar = vstar;
    EdgeProbExpr rest;
    w.omega = read_limit(R, kLoglog, &rest);
    if (w.omega.is_finite()) w.c = read_limit(rest, kConst, nullptr);
    return w;
}

std::string clause_label(Clause c) {
    switch (c) {
    case Clause::IA: return "(i)(a)";
    case Clause::IB: return "(i)(b)";
    case Clause::IC: return "(i)(c)";
    case Clause::ID: return "(i)(d)";
    case Clause::IE: return "(i)(e)";
    case Clause::IF: return "(i)(f)";
    case Clause::IG: return "(i)(g)";
    case Clause::IH: return "(i)(h)";
    case Clause::IIA: return "(ii)(a)";
    case Clause::IIB: return "(ii)(b)";
    case Clause::III: return "(iii)";
    default: return "out-of-J";
    }
}

namespace {

int sign_of_log_part(const Monomial& m) {
    if (m.logpow != 0) return m.logpow > 0 ? 1 : -1;
    if (m.llpow != 0) return m.llpow > 0 ? 1 : -1;
    return 0;
}

bool minimal_types_exist(unsigned d, unsigned l, unsigned vstar) {
    if (l == 0) return vstar == 1;
    return vstar >= 1 && vstar <= 1 + l * d;
}

Regime classify_window(const EdgeProbExpr& p, unsigned d, Regime R) {
    const Rational C = *R.C;
    const Rational dfact(static_cast<std::int64_t>(factorial(d)));
    if (C > dfact) {
        R.clause = Clause::IH;
        R.note = "C = " + to_string(C) + " exceeds d! = " + to_string(dfact);
        return R;
    }
    const Rational q = dfact / C;
    if (q.denominator() != 1) {
        R.clause = Clause::IE;
        R.vstar = static_cast<unsigned>(q.numerator() / q.denominator());
        return R;
    }
    const auto vstar = static_cast<unsigned>(q.numerator());
    R.vstar = vstar;
    const auto w = window_params_eval(p, d, vstar);
    R.omega = w.omega;
    if (!w.omega.is_finite()) {
        R.clause = Clause::IF;
        return R;
    }
    const Rational om = w.omega.value;
    if (om.denominator() != 1 || om < 0) {
        R.clause = Clause::IF;
        if (om < 0) R.note = "omega tends to a negative constant";
        return R;
    }
    const auto l = static_cast<unsigned>(om.numerator());
    R.l = l;
    if (!w.c.is_finite()) {
        R.clause = Clause::IG;
        R.note = "c(n) tends to " + w.c.str();
        return R;
    }
    if (!minimal_types_exist(d, l, vstar)) {
        R.clause = Clause::IF;
        R.note = "no minimal marked trees with these parameters";
        return R;
    }
    R.clause = Clause::IIB;
    R.c = w.c.value;
    return R;
}

} // namespace

Regime classify_regime(const EdgeProbExpr& p, unsigned d) {
    Regime R;
    R.d = d;
    if (p.is_zero()) {
        R.clause = Clause::IA;
        return R;
    }
    const auto& m = p.dominant();
    if (m.coeff < 0) throw DomainError("p is eventually negative: " + p.str());
    const bool at_const = m.npow == 0 && m.logpow == 0 && m.llpow == 0;
    if (m.npow > 0 || (m.npow == 0 && sign_of_log_part(m) > 0) || (at_const && m.coeff > 1) ||
        (at_const && m.coeff == 1 && p.terms().size() > 1 && p.terms()[1].coeff > 0))
        throw DomainError("p eventually exceeds 1: " + p.str());

    const Rational a = m.npow;
    const Rational md(-static_cast<std::int64_t>(d));
    const int logsign = sign_of_log_part(m);
    if (a > md) {
        R.clause = Clause::OutOfJ;
        R.note = "p is not below n^{-d+eps} for every eps > 0";
        return R;
    }
    if (a < md) {
        const Rational x = md - a;
        if (x > 1) {
            R.clause = Clause::IA;
            return R;
        }
        const Rational inv = Rational(1) / x;
        const auto l = static_cast<unsigned>(inv.numerator() / inv.denominator());
        if (inv.denominator() != 1) {
            R.clause = Clause::IB;
            R.l = l;
            return R;
        }
        if (logsign == 0) {
            R.clause = Clause::IIA;
            R.l = l;
            R.c = m.coeff;
            return R;
        }
        if (logsign > 0) {
            R.clause = Clause::IB;
            R.l = l;
            return R;
        }
        if (l == 1) {
            R.clause = Clause::IA;
            return R;
        }
        R.clause = Clause::IB;
        R.l = l - 1;
        return R;
    }
    // a == -d
    if (logsign < 0) {
        R.clause = Clause::IC;
        return R;
    }
    if (logsign == 0) {
        R.clause = Clause::III;
        R.lambda = m.coeff;
        return R;
    }
    const Monomial logn{1, m.npow, 1, 0};
    const int g = m.compare_growth(logn);
    if (g < 0) {
        R.clause = Clause::ID;
        return R;
    }
    if (g > 0) {
        R.clause = Clause::IH;
        return R;
    }
    R.C = m.coeff;
    return classify_window(p, d, R);
}

double sigma_limit_probability(const std::vector<Count>& m, const std::vector<double>& lambdas,
                               unsigned s) {
    if (m.size() != lambdas.size()) throw std::invalid_argument("length mismatch");
    double prob = 1.0;
    for (std::size_t i = 0; i < m.size(); ++i) prob *= capped_poisson(m[i], lambdas[i], s);
    return prob;
}

double cycle_length_mean(unsigned d, double lambda, unsigned t) {
    const double base = lambda / static_cast<double>(factorial(d - 1));
    return std::pow(base, t) / (2.0 * t);
}

BranchingValueDistribution::BranchingValueDistribution(unsigned r, unsigned s, double mu,
                                                       unsigned d)
    : r_(r), s_(s), d_(d), mu_(mu) {
    if (mu < 0) throw std::invalid_argument("mu must be non-negative");
}

double BranchingValueDistribution::pattern_probability(const Pattern& p) const {
    if (auto it = pattern_memo_.find(p.key); it != pattern_memo_.end()) return it->second;
    double logq = std::lgamma(d_ + 1.0);
    bool zero = false;
    for (const auto& [v, k] : p.parts) {
        const double pv = probability(*v);
        if (pv <= 0) {
            zero = true;
            break;
        }
        logq += k * std::log(pv) - std::lgamma(k + 1.0);
    }
    const double q = zero || p.arity() != d_ ? 0.0 : std::exp(logq);
    pattern_memo_.emplace(p.key, q);
    return q;
}

double BranchingValueDistribution::probability(const Value& v) const {
    if (v.r == 0) return 1.0;
    if (auto it = value_memo_.find(v.key); it != value_memo_.end()) return it->second;
    // Patterns outside the support contribute exp(-mu q) each; they sum to 1 - sum_supp q.
    double logp = -mu_;
    bool zero = false;
    for (const auto& [pat, k] : v.entries) {
        const double x = mu_ * pattern_probability(*pat);
        const double f = capped_poisson(k, x, s_);
        if (f <= 0) {
            zero = true;
            break;
        }
        logp += std::log(f) + x;
    }
    const double prob = zero ? 0.0 : std::exp(logp);
    value_memo_.emplace(v.key, prob);
    return prob;
}

std::vector<PatternPtr> enumerate_patterns(const std::vector<ValuePtr>& values, unsigned d) {
    std::vector<PatternPtr> out;
    if (values.empty()) return out;
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
        std::vector<ValuePtr> kids;
        for (auto i : idx) kids.push_back(values[i]);
        out.push_back(make_pattern(std::move(kids)));
        int j = static_cast<int>(d) - 1;
        while (j >= 0 && idx[j] == values.size() - 1) --j;
        if (j < 0) break;
        ++idx[j];
        for (std::size_t k = j + 1; k < d; ++k) idx[k] = idx[j];
    }
    return out;
}

std::vector<ValuePtr> enumerate_values(unsigned r, unsigned s, unsigned d, std::size_t cap) {
    std::vector<ValuePtr> level{trivial_value(s)};
    for (unsigned lvl = 1; lvl <= r; ++lvl) {
        const auto pats = enumerate_patterns(level, d);
        const std::size_t radix = s + 2;
        double total = std::pow(static_cast<double>(radix), static_cast<double>(pats.size()));
        if (total > static_cast<double>(cap))
            throw ResourceError("VAL(" + std::to_string(lvl) + "," + std::to_string(s) +
                                ") has about " + std::to_string(total) + " elements, cap is " +
                                std::to_string(cap));
        std::vector<ValuePtr> next;
        std::vector<std::size_t> digit(pats.size(), 0);
        for (;;) {
            std::vector<std::pair<PatternPtr, Count>> entries;
            for (std::size_t i = 0; i < pats.size(); ++i)
                if (digit[i] != 0)
                    entries.emplace_back(pats[i],
                                         digit[i] == s + 1 ? kMany : static_cast<Count>(digit[i]));
            next.push_back(make_value(lvl, s, std::move(entries)));
            std::size_t i = 0;
            while (i < digit.size() && ++digit[i] == radix) digit[i++] = 0;
            if (i == digit.size()) break;
        }
        level = std::move(next);
    }
    return level;
}

std::vector<std::pair<ValuePtr, double>> BranchingValueDistribution::support(std::size_t cap) const {
    std::vector<std::pair<ValuePtr, double>> out;
    for (auto& v : enumerate_values(r_, s_, d_, cap)) {
        const double pr = probability(*v);
        out.emplace_back(std::move(v), pr);
    }
    return out;
}

double BranchingValueDistribution::total_variation(const ValueFrequencies& emp) const {
    double diff = 0, covered = 0;
    for (const auto& [key, f] : emp.freq) {
        double t = 0;
        if (auto it = emp.values.find(key); it != emp.values.end()) {
            t = probability(*it->second);
            covered += t;
        }
        diff += std::abs(f - t);
    }
    return 0.5 * (diff + std::max(0.0, 1.0 - covered));
}

} // namespace hyperlaws
