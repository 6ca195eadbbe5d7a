#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperlaws/berge_enum.hpp"
#include "hyperlaws/census.hpp"
#include "hyperlaws/local_values.hpp"
#include "hyperlaws/pexpr.hpp"

namespace hyperlaws {

double poisson_pmf(std::uint64_t k, double lambda);
// P(X >= k)
double poisson_upper_tail(std::uint64_t k, double lambda);
// pmf for k <= s, upper tail P(X >= s+1) for kMany.
double capped_poisson(Count k, double lambda, unsigned s);

// Exponent v/l with n^{-v/l} the threshold for order-l tree components.
Rational threshold_tree(unsigned d, unsigned l);

struct PoissonPrediction {
    std::string provenance;  // "tree-window" or "marked-window"
    unsigned d = 1, l = 0, vstar = 0;
    double c = 0;
    std::vector<std::pair<std::string, double>> lambdas;  // sorted by type code

    double lambda(const std::string& code) const;
    std::vector<double> values() const;
};

// lambda_i = c^l / a_i over all tree types of order l.
PoissonPrediction poisson_means_tree_window(unsigned d, unsigned l, double c);
// lambda_i = (c_i/v!) (d!/v*)^l e^{-c} over minimal v*-marked l-tree types.
PoissonPrediction poisson_means_marked_window(unsigned d, unsigned l, unsigned vstar, double c);

// (1/2) C(n,t) p^t (t-1)!
double expected_cycles_graph(std::uint64_t n, unsigned t, double p);

// (c_i/v!) n^v p^l exp(-p v* n^d / d!); asymptotic, not exact.
double expected_marked_trees(double n, const MarkedBergeTreeType& type, double p);

// n * Poisson pmf at k with mean p*C(n-1,d).
double expected_small_degree_vertices(double n, unsigned d, double p, std::uint64_t k);

struct Limit {
    enum class Kind { Finite, PosInf, NegInf };
    Kind kind = Kind::Finite;
    Rational value{0};

    static Limit finite(Rational v) { return {Kind::Finite, v}; }
    bool is_finite() const { return kind == Kind::Finite; }
    std::string str() const;
};

struct WindowParams {
    unsigned d = 1;
    unsigned vstar = 1;
    Limit omega;
    // Meaningful when omega is finite.
    Limit c;
};

// Throws DomainError unless p ~ (d!/v*) log n / n^d.
WindowParams window_params_eval(const EdgeProbExpr& p, unsigned d, unsigned vstar);

enum class Clause { IA, IB, IC, ID, IE, IF, IG, IH, IIA, IIB, III, OutOfJ };

std::string clause_label(Clause c);

struct Regime {
    Clause clause = Clause::OutOfJ;
    unsigned d = 1;
    std::optional<unsigned> l;
    std::optional<unsigned> vstar;
    std::optional<Rational> C;       // coefficient of log n / n^d
    std::optional<Rational> c;       // limit constant for (ii)(a), (ii)(b)
    std::optional<Rational> lambda;  // (iii)
    std::optional<Limit> omega;
    std::string note;

    std::string label() const { return clause_label(clause); }
    bool in_J() const { return clause != Clause::OutOfJ; }
};

// Throws DomainError for negative or eventually-above-one p.
Regime classify_regime(const EdgeProbExpr& p, unsigned d);

// Product of capped Poisson probabilities.
double sigma_limit_probability(const std::vector<Count>& m, const std::vector<double>& lambdas,
                               unsigned s);

// Limits of the mean numbers of incidence cycles with t edges at p ~ lambda/n^d.
double cycle_length_mean(unsigned d, double lambda, unsigned t);

// Exact law of the (r,s)-value of the Poisson branching tree B(r,mu).
class BranchingValueDistribution {
public:
    BranchingValueDistribution(unsigned r, unsigned s, double mu, unsigned d);

    unsigned r() const { return r_; }
    unsigned s() const { return s_; }
    double mu() const { return mu_; }

    double probability(const Value& v) const;
    double pattern_probability(const Pattern& p) const;

    // Every (r,s)-value with its probability. Throws ResourceError past cap.
    std::vector<std::pair<ValuePtr, double>> support(std::size_t cap = 1'000'000) const;

    // Total variation against empirical frequencies (NonTree mass counts fully).
    double total_variation(const ValueFrequencies& emp) const;

private:
    unsigned r_, s_, d_;
    double mu_;
    mutable std::unordered_map<std::string, double> value_memo_, pattern_memo_;
};

// All (r,s)-values and all patterns over them, for small (r,s,d).
std::vector<ValuePtr> enumerate_values(unsigned r, unsigned s, unsigned d,
                                       std::size_t cap = 1'000'000);
std::vector<PatternPtr> enumerate_patterns(const std::vector<ValuePtr>& values, unsigned d);

} // namespace hyperlaws
