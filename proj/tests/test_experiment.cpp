#include <doctest.h>

#include <atomic>
#include <random>
#include <sstream>

#include "hyperlaws/errors.hpp"
#include "hyperlaws/experiment.hpp"

using namespace hyperlaws;

namespace {

ExperimentConfig small_tree_config() {
    ExperimentConfig cfg;
    cfg.d = 1;
    cfg.p_text = "2*n^(-2)";
    cfg.n_list = {100, 200};
    cfg.trials = 40;
    cfg.seed = 77;
    cfg.analysis = Analysis::Tree;
    return cfg;
}

} // namespace

TEST_SUITE("experiment") {

TEST_CASE("synthetic poisson samples fit") {
    std::mt19937_64 rng(1);
    for (double lam : {0.3, 1.0, 3.5}) {
        std::poisson_distribution<std::uint64_t> P(lam);
        std::vector<std::uint64_t> xs(100000);
        for (auto& x : xs) x = P(rng);
        auto f = compare_to_poisson(xs, lam, 10);
        CHECK(f.tv < 0.01);
        CHECK(f.pvalue > 0.001);
        CHECK(f.dof >= 1);
        double se = 0, sx = 0;
        for (double v : f.empirical) se += v;
        for (double v : f.expected) sx += v;
        CHECK(se == doctest::Approx(1.0));
        CHECK(sx == doctest::Approx(1.0));
    }
    std::vector<std::uint64_t> wrong(10000, 3);
    auto bad = compare_to_poisson(wrong, 1.0, 10);
    CHECK(bad.tv > 0.5);
    CHECK(bad.pvalue < 1e-6);
    CHECK_THROWS_AS(compare_to_poisson({}, 1.0, 10), std::invalid_argument);
}

TEST_CASE("covariance") {
    std::mt19937_64 rng(2);
    std::poisson_distribution<std::uint64_t> P(2.0);
    std::vector<std::uint64_t> a(20000), b(20000);
    for (auto& x : a) x = P(rng);
    for (auto& x : b) x = P(rng);
    auto ind = sample_covariance(a, b);
    CHECK(std::abs(ind.cov) <= 4 * ind.stderr_);
    auto self = sample_covariance(a, a);
    CHECK(self.cov == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("parallel_for covers every index and propagates errors") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(1000, 4, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(100, 3,
                                 [](std::size_t i) {
                                     if (i == 50) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}

TEST_CASE("seeds") {
    CHECK(derive_master(1, 100) == derive_master(1, 100));
    CHECK(derive_master(1, 100) != derive_master(1, 101));
    CHECK(derive_master(1, 100) != derive_master(2, 100));
}

TEST_CASE("config validation") {
    auto cfg = small_tree_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_tree_config();
    cfg.n_list = {200, 100};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.n_list = {};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(analysis_from_string("bogus"), std::invalid_argument);
    CHECK(analysis_from_string("cycles") == Analysis::Cycles);
}

TEST_CASE("no prediction outside the matching regime") {
    auto cfg = small_tree_config();
    cfg.p_text = "1/n";
    CHECK_THROWS_WITH_AS(run_experiment(cfg), doctest::Contains("no prediction in this regime"),
                         DomainError);
    cfg.analysis = Analysis::Marked;
    CHECK_THROWS_AS(run_experiment(cfg), DomainError);
    cfg.p_text = "exp(n)";
    CHECK_THROWS_AS(run_experiment(cfg), ParseError);
}

TEST_CASE("runs are deterministic across thread counts") {
    auto cfg = small_tree_config();
    cfg.threads = 1;
    auto a = to_json(run_experiment(cfg));
    cfg.threads = 4;
    auto b = to_json(run_experiment(cfg));
    a["config"].erase("threads");
    b["config"].erase("threads");
    CHECK(a == b);
    cfg.seed = 78;
    auto c = to_json(run_experiment(cfg));
    CHECK(a["results"] != c["results"]);
}

TEST_CASE("json output") {
    auto cfg = small_tree_config();
    auto rep = run_experiment(cfg);
    auto text = emit(rep, "json");
    auto j = nlohmann::json::parse(text);
    CHECK(j == to_json(rep));
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["regime"]["clause"] == "(ii)(a)");
    REQUIRE(j["results"].size() == 2);
    CHECK(j["results"][0]["n"] == 100);
    CHECK(j["results"][0]["types"].size() == 1);
    CHECK(j["results"][0]["types"][0]["lambda"].get<double>() == doctest::Approx(1.0));
    CHECK(j["config"]["p"] == "2*n^(-2)");
}

TEST_CASE("csv output") {
    auto cfg = small_tree_config();
    cfg.p_text = "n^(-3/2)";
    auto rep = run_experiment(cfg);
    auto csv = emit(rep, "csv");
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "type_code,n,T,empirical_mean,lambda,tv,chi2,pvalue,verdict");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 8);
        CHECK((line.substr(line.size() - 4) == "pass" || line.substr(line.size() - 4) == "fail"));
    }
    CHECK(rows == 2);
    CHECK_THROWS_AS(emit(rep, "xml"), std::invalid_argument);
}

TEST_CASE("predicting with a different law") {
    auto cfg = small_tree_config();
    cfg.p_text = "n^-2";
    cfg.predict_with = "2*n^-2";
    auto rep = run_experiment(cfg);
    CHECK(rep.per_n[0].types[0].lambda == doctest::Approx(1.0));
    CHECK(rep.per_n[0].types[0].empirical_mean < 0.9);
}

TEST_CASE("cycles and values analyses") {
    ExperimentConfig cfg;
    cfg.d = 1;
    cfg.p_text = "1/n";
    cfg.n_list = {300};
    cfg.trials = 30;
    cfg.seed = 5;
    cfg.analysis = Analysis::Cycles;
    cfg.t_max = 5;
    auto rep = run_experiment(cfg);
    REQUIRE(rep.per_n[0].types.size() == 3);
    CHECK(rep.per_n[0].types[0].code == "cycle:3");
    CHECK(rep.per_n[0].types[0].lambda == doctest::Approx(1.0 / 6));
    cfg.analysis = Analysis::Values;
    cfg.r = 2;
    cfg.s = 1;
    auto vals = run_experiment(cfg);
    REQUIRE(vals.per_n[0].value_tv);
    CHECK(*vals.per_n[0].value_tv < 0.1);
}

}
