#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlaws/theory.hpp"

namespace hyperlaws {

inline constexpr int kSchemaVersion = 1;

enum class Analysis { Tree, Marked, Cycles, Values };
std::string to_string(Analysis a);
Analysis analysis_from_string(const std::string& s);

struct Tolerances {
    double sigmas = 3.0;
    double mean_rel = 0.05;
    double finite_n_allowance = 0.0;
    double tv_max = 0.05;
};

struct ExperimentConfig {
    unsigned d = 1;
    std::string p_text;
    std::vector<std::size_t> n_list;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    Analysis analysis = Analysis::Tree;
    unsigned l = 1;
    unsigned vstar = 1;
    unsigned t_max = 6;
    unsigned r = 1;
    unsigned s = 1;
    unsigned s_cap = 10;
    Tolerances tol;
    // Law to predict from, when it differs from the sampled p.
    std::optional<std::string> predict_with;
    unsigned threads = 0;  // 0: hardware concurrency

    void validate() const;
    nlohmann::json to_json() const;
};

struct PoissonFit {
    std::vector<double> empirical;  // buckets 0..s_cap-1, then tail
    std::vector<double> expected;
    double tv = 0;
    double chi2 = 0;
    unsigned dof = 0;
    double pvalue = 1;
};

PoissonFit compare_to_poisson(const std::vector<std::uint64_t>& counts, double lambda,
                              unsigned s_cap);

struct TypeComparison {
    std::string code;
    double empirical_mean = 0;
    double empirical_variance = 0;
    double lambda = 0;
    PoissonFit fit;
    bool mean_ok = false;
    bool tv_ok = false;
    bool verdict = false;
};

struct Covariance {
    std::string a, b;
    double cov = 0;
    double stderr_ = 0;
};

struct ComparisonReport {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t master_seed = 0;
    std::vector<TypeComparison> types;
    std::vector<Covariance> covariances;
    std::optional<double> value_tv;  // values analysis only
    bool pass = true;
};

struct ExperimentReport {
    ExperimentConfig config;
    Regime regime;
    std::vector<ComparisonReport> per_n;
    bool pass = true;
};

// Master seed used for a given configured seed and n.
std::uint64_t derive_master(std::uint64_t seed, std::size_t n);

// Throws DomainError("no prediction in this regime") when the classified
// regime gives no law for the analysis.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Runs body(i) for i in [0,count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

// Empirical covariance of paired samples and a standard error from fourth moments.
Covariance sample_covariance(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y);

nlohmann::json to_json(const ExperimentReport& r);
std::string emit(const ExperimentReport& r, const std::string& format);

} // namespace hyperlaws
