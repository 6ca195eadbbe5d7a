#include "hyperlaws/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "hyperlaws/census.hpp"
#include "hyperlaws/errors.hpp"
#include "hyperlaws/random_model.hpp"

namespace hyperlaws {

std::string to_string(Analysis a) {
    switch (a) {
    case Analysis::Tree: return "tree";
    case Analysis::Marked: return "marked";
    case Analysis::Cycles: return "cycles";
    default: return "values";
    }
}

Analysis analysis_from_string(const std::string& s) {
    if (s == "tree") return Analysis::Tree;
    if (s == "marked") return Analysis::Marked;
    if (s == "cycles") return Analysis::Cycles;
    if (s == "values") return Analysis::Values;
    throw std::invalid_argument("unknown analysis '" + s + "' (tree|marked|cycles|values)");
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
    if (n_list.empty()) throw std::invalid_argument("n list must be nonempty");
    if (!std::is_sorted(n_list.begin(), n_list.end()) ||
        std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end())
        throw std::invalid_argument("n list must be strictly ascending");
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    if (s_cap < 1) throw std::invalid_argument("s_cap must be >= 1");
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j{{"d", d},
                     {"p", p_text},
                     {"n", n_list},
                     {"trials", trials},
                     {"seed", seed},
                     {"analysis", hyperlaws::to_string(analysis)},
                     {"s_cap", s_cap},
                     {"tolerances",
                      {{"sigmas", tol.sigmas},
                       {"mean_rel", tol.mean_rel},
                       {"finite_n_allowance", tol.finite_n_allowance},
                       {"tv_max", tol.tv_max}}}};
    switch (analysis) {
    case Analysis::Tree: j["l"] = l; break;
    case Analysis::Marked:
        j["l"] = l;
        j["vstar"] = vstar;
        break;
    case Analysis::Cycles: j["t_max"] = t_max; break;
    case Analysis::Values:
        j["r"] = r;
        j["s"] = s;
        break;
    }
    if (predict_with) j["predict_with"] = *predict_with;
    return j;
}

PoissonFit compare_to_poisson(const std::vector<std::uint64_t>& counts, double lambda,
                              unsigned s_cap) {
    if (counts.empty()) throw std::invalid_argument("no counts to compare");
    PoissonFit f;
    const double T = static_cast<double>(counts.size());
    f.empirical.assign(s_cap + 1, 0.0);
    for (auto c : counts) f.empirical[std::min<std::uint64_t>(c, s_cap)] += 1.0 / T;
    f.expected.resize(s_cap + 1);
    for (unsigned k = 0; k < s_cap; ++k) f.expected[k] = poisson_pmf(k, lambda);
    f.expected[s_cap] = poisson_upper_tail(s_cap, lambda);
    double tv = 0;
    for (unsigned k = 0; k <= s_cap; ++k) tv += std::abs(f.empirical[k] - f.expected[k]);
    f.tv = 0.5 * tv;

    // Merge neighbouring buckets until each expects at least 5 observations.
    std::vector<double> obs, expct;
    double o = 0, e = 0;
    for (unsigned k = 0; k <= s_cap; ++k) {
        o += f.empirical[k] * T;
        e += f.expected[k] * T;
        if (e >= 5.0) {
            obs.push_back(o);
            expct.push_back(e);
            o = e = 0;
        }
    }
    if (e > 0 || o > 0) {
        if (expct.empty()) {
            obs.push_back(o);
            expct.push_back(e);
        } else {
            obs.back() += o;
            expct.back() += e;
        }
    }
    if (expct.size() >= 2) {
        for (std::size_t i = 0; i < expct.size(); ++i)
            f.chi2 += (obs[i] - expct[i]) * (obs[i] - expct[i]) / expct[i];
        f.dof = static_cast<unsigned>(expct.size() - 1);
        boost::math::chi_squared dist(f.dof);
        f.pvalue = boost::math::cdf(boost::math::complement(dist, f.chi2));
    }
    return f;
}

std::uint64_t derive_master(std::uint64_t seed, std::size_t n) {
    std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(n) + 1));
    return splitmix64(s);
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(m);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

Covariance sample_covariance(const std::vector<std::uint64_t>& x,
                             const std::vector<std::uint64_t>& y) {
    Covariance c;
    const std::size_t T = x.size();
    if (T < 2 || y.size() != T) return c;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < T; ++i) {
        mx += static_cast<double>(x[i]);
        my += static_cast<double>(y[i]);
    }
    mx /= T;
    my /= T;
    std::vector<double> prod(T);
    double s = 0;
    for (std::size_t i = 0; i < T; ++i) {
        prod[i] = (static_cast<double>(x[i]) - mx) * (static_cast<double>(y[i]) - my);
        s += prod[i];
    }
    c.cov = s / (T - 1);
    const double mean_prod = s / T;
    double v = 0;
    for (double p : prod) v += (p - mean_prod) * (p - mean_prod);
    v /= (T - 1);
    c.stderr_ = std::sqrt(v / T);
    return c;
}

namespace {

struct Plan {
    unsigned l = 0;
    std::vector<std::string> keys;
    std::vector<double> lambdas;
    std::vector<MarkedBergeTreeType> marked;
    std::optional<BranchingValueDistribution> branching;
};

[[noreturn]] void no_prediction(const Regime& R, Analysis a) {
    throw DomainError("no prediction in this regime: " + R.label() + " gives no law for the " +
                      to_string(a) + " analysis");
}

Plan make_plan(const ExperimentConfig& cfg, const Regime& R) {
    Plan P;
    const unsigned d = cfg.d;
    switch (cfg.analysis) {
    case Analysis::Tree: {
        if (R.clause != Clause::IIA) no_prediction(R, cfg.analysis);
        P.l = *R.l;
        auto pred = poisson_means_tree_window(d, P.l, to_double(*R.c));
        for (auto& [k, v] : pred.lambdas) {
            P.keys.push_back(k);
            P.lambdas.push_back(v);
        }
        break;
    }
    case Analysis::Marked: {
        if (R.clause != Clause::IIB) no_prediction(R, cfg.analysis);
        auto pred = poisson_means_marked_window(d, *R.l, *R.vstar, to_double(*R.c));
        P.marked = enumerate_marked_types(d, *R.l, *R.vstar, true);
        for (auto& [k, v] : pred.lambdas) {
            P.keys.push_back(k);
            P.lambdas.push_back(v);
        }
        break;
    }
    case Analysis::Cycles: {
        if (R.clause != Clause::III) no_prediction(R, cfg.analysis);
        for (unsigned t = d == 1 ? 3 : 2; t <= cfg.t_max; ++t) {
            P.keys.push_back(cycle_key(t));
            P.lambdas.push_back(cycle_length_mean(d, to_double(*R.lambda), t));
        }
        break;
    }
    case Analysis::Values: {
        if (R.clause != Clause::III) no_prediction(R, cfg.analysis);
        P.branching.emplace(cfg.r, cfg.s, to_double(*R.lambda) / static_cast<double>(factorial(d)),
                            d);
        break;
    }
    }
    return P;
}

std::vector<std::uint64_t> trial_counts(const ExperimentConfig& cfg, const Plan& P,
                                        const Hypergraph& H) {
    CensusReport rep;
    switch (cfg.analysis) {
    case Analysis::Tree: rep = tree_component_census(H, P.l); break;
    case Analysis::Marked: rep = marked_copy_census(H, P.marked); break;
    case Analysis::Cycles: rep = cycle_census(H, cfg.t_max); break;
    case Analysis::Values: return {};
    }
    std::vector<std::uint64_t> out;
    for (const auto& k : P.keys) out.push_back(rep.count(k));
    return out;
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport out;
    out.config = cfg;
    const auto sampled = parse(cfg.p_text, {{"d", cfg.d}});
    const auto law = cfg.predict_with ? parse(*cfg.predict_with, {{"d", cfg.d}}) : sampled;
    out.regime = classify_regime(law, cfg.d);
    const Plan plan = make_plan(cfg, out.regime);

    for (std::size_t n : cfg.n_list) {
        ComparisonReport rep;
        rep.n = n;
        rep.trials = cfg.trials;
        rep.master_seed = derive_master(cfg.seed, n);
        const double p = static_cast<double>(eval(sampled, static_cast<double>(n)).value);

        std::vector<std::vector<std::uint64_t>> per_trial(cfg.trials);
        std::vector<ValueFrequencies> per_trial_values(
            cfg.analysis == Analysis::Values ? cfg.trials : 0);
        parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
            auto H = sample_gnp(n, cfg.d, p, Seed{rep.master_seed, i});
            if (cfg.analysis == Analysis::Values)
                per_trial_values[i] = value_distribution(H, cfg.r, cfg.s);
            else
                per_trial[i] = trial_counts(cfg, plan, H);
        });

        if (cfg.analysis == Analysis::Values) {
            ValueFrequencies avg;
            for (const auto& vf : per_trial_values) {
                for (const auto& [k, f] : vf.freq) avg.freq[k] += f / static_cast<double>(cfg.trials);
                for (const auto& [k, v] : vf.values) avg.values.try_emplace(k, v);
            }
            rep.value_tv = plan.branching->total_variation(avg);
            rep.pass = *rep.value_tv <= cfg.tol.tv_max;
        } else {
            std::vector<std::vector<std::uint64_t>> series(plan.keys.size(),
                                                           std::vector<std::uint64_t>(cfg.trials));
            for (std::size_t i = 0; i < cfg.trials; ++i)
                for (std::size_t j = 0; j < plan.keys.size(); ++j) series[j][i] = per_trial[i][j];
            for (std::size_t j = 0; j < plan.keys.size(); ++j) {
                TypeComparison tc;
                tc.code = plan.keys[j];
                tc.lambda = plan.lambdas[j];
                double sum = 0, sq = 0;
                for (auto c : series[j]) {
                    sum += static_cast<double>(c);
                    sq += static_cast<double>(c) * static_cast<double>(c);
                }
                const double T = static_cast<double>(cfg.trials);
                tc.empirical_mean = sum / T;
                tc.empirical_variance = T > 1 ? (sq - sum * sum / T) / (T - 1) : 0.0;
                tc.fit = compare_to_poisson(series[j], tc.lambda, cfg.s_cap);
                const double band = std::max(cfg.tol.sigmas * std::sqrt(tc.lambda / T),
                                             cfg.tol.mean_rel * tc.lambda + cfg.tol.finite_n_allowance);
                tc.mean_ok = std::abs(tc.empirical_mean - tc.lambda) <= band;
                tc.tv_ok = tc.fit.tv <= cfg.tol.tv_max;
                tc.verdict = tc.mean_ok && tc.tv_ok;
                rep.pass = rep.pass && tc.verdict;
                rep.types.push_back(std::move(tc));
            }
            for (std::size_t a = 0; a < plan.keys.size(); ++a)
                for (std::size_t b = a + 1; b < plan.keys.size(); ++b) {
                    auto c = sample_covariance(series[a], series[b]);
                    c.a = plan.keys[a];
                    c.b = plan.keys[b];
                    rep.covariances.push_back(std::move(c));
                }
        }
        out.pass = out.pass && rep.pass;
        out.per_n.push_back(std::move(rep));
    }
    return out;
}

namespace {

nlohmann::json regime_json(const Regime& R) {
    nlohmann::json j{{"clause", R.label()}, {"d", R.d}};
    if (R.l) j["l"] = *R.l;
    if (R.vstar) j["vstar"] = *R.vstar;
    if (R.C) j["C"] = to_string(*R.C);
    if (R.c) j["c"] = to_string(*R.c);
    if (R.lambda) j["lambda"] = to_string(*R.lambda);
    if (R.omega) j["omega"] = R.omega->str();
    if (!R.note.empty()) j["note"] = R.note;
    return j;
}

} // namespace

nlohmann::json to_json(const ExperimentReport& r) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = r.config.to_json();
    j["regime"] = regime_json(r.regime);
    j["pass"] = r.pass;
    j["results"] = nlohmann::json::array();
    for (const auto& c : r.per_n) {
        nlohmann::json e{{"n", c.n}, {"trials", c.trials}, {"master_seed", c.master_seed},
                         {"pass", c.pass}};
        e["types"] = nlohmann::json::array();
        for (const auto& t : c.types)
            e["types"].push_back({{"type_code", t.code},
                                  {"empirical_mean", t.empirical_mean},
                                  {"empirical_variance", t.empirical_variance},
                                  {"lambda", t.lambda},
                                  {"tv", t.fit.tv},
                                  {"chi2", t.fit.chi2},
                                  {"dof", t.fit.dof},
                                  {"pvalue", t.fit.pvalue},
                                  {"empirical_distribution", t.fit.empirical},
                                  {"poisson_distribution", t.fit.expected},
                                  {"mean_ok", t.mean_ok},
                                  {"tv_ok", t.tv_ok},
                                  {"verdict", t.verdict}});
        e["covariances"] = nlohmann::json::array();
        for (const auto& cv : c.covariances)
            e["covariances"].push_back(
                {{"a", cv.a}, {"b", cv.b}, {"cov", cv.cov}, {"stderr", cv.stderr_}});
        if (c.value_tv) e["value_tv"] = *c.value_tv;
        j["results"].push_back(std::move(e));
    }
    return j;
}

std::string emit(const ExperimentReport& r, const std::string& format) {
    if (format == "json") return to_json(r).dump(2) + "\n";
    if (format != "csv") throw std::invalid_argument("format must be json or csv");
    std::ostringstream os;
    os << std::setprecision(10);
    os << "type_code,n,T,empirical_mean,lambda,tv,chi2,pvalue,verdict\n";
    for (const auto& c : r.per_n) {
        if (c.value_tv) {
            os << "values," << c.n << ',' << c.trials << ",,," << *c.value_tv << ",,,"
               << (c.pass ? "pass" : "fail") << '\n';
            continue;
        }
        for (const auto& t : c.types)
            os << '"' << t.code << "\"," << c.n << ',' << c.trials << ',' << t.empirical_mean << ','
               << t.lambda << ',' << t.fit.tv << ',' << t.fit.chi2 << ',' << t.fit.pvalue << ','
               << (t.verdict ? "pass" : "fail") << '\n';
    }
    return os.str();
}

} // namespace hyperlaws
