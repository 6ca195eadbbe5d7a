#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hyperlaws/berge_enum.hpp"
#include "hyperlaws/census.hpp"
#include "hyperlaws/completions.hpp"
#include "hyperlaws/ef_game.hpp"
#include "hyperlaws/errors.hpp"
#include "hyperlaws/experiment.hpp"
#include "hyperlaws/random_model.hpp"
#include "hyperlaws/theory.hpp"

using namespace hyperlaws;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitStatFail = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string& s) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &pos, 0);
    } catch (const std::exception&) {
        throw UsageError("bad seed '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("bad seed '" + s + "'");
    return v;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

Hypergraph load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_text(ss.str());
}

json regime_json(const Regime& R) {
    json j{{"clause", R.label()}, {"d", R.d}};
    if (R.l) j["l"] = *R.l;
    if (R.vstar) j["vstar"] = *R.vstar;
    if (R.C) j["C"] = to_string(*R.C);
    if (R.c) j["c"] = to_string(*R.c);
    if (R.lambda) j["lambda"] = to_string(*R.lambda);
    if (R.omega) j["omega"] = R.omega->str();
    if (!R.note.empty()) j["note"] = R.note;
    if (R.in_J()) j["space"] = to_string(space_kind(R));
    return j;
}

json prediction_json(const PoissonPrediction& p) {
    json lam = json::object();
    for (const auto& [k, v] : p.lambdas) lam[k] = v;
    return {{"provenance", p.provenance}, {"d", p.d}, {"l", p.l}, {"vstar", p.vstar}, {"c", p.c},
            {"lambdas", lam}};
}

std::string regime_text(const Regime& R) {
    std::ostringstream os;
    os << R.label();
    if (R.l) os << " l=" << *R.l;
    if (R.vstar) os << " v*=" << *R.vstar;
    if (R.C) os << " C=" << to_string(*R.C);
    if (R.c) os << " c=" << to_string(*R.c);
    if (R.lambda) os << " lambda=" << to_string(*R.lambda);
    if (R.omega) os << " omega=" << R.omega->str();
    if (R.in_J()) os << " space=" << to_string(space_kind(R));
    if (!R.note.empty()) os << " (" << R.note << ")";
    return os.str() + "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random uniform hypergraph limit laws: sampling, censuses, predictions and checks"};
    app.require_subcommand(1);

    unsigned d = 1;
    std::string p_text, seed_text = "0", format = "json", out;
    std::vector<std::size_t> ns;
    std::size_t trials = 100;

    auto add_common = [&](CLI::App* sc, bool need_p) {
        sc->add_option("--d", d, "Edge size minus one")->check(CLI::Range(1u, 16u));
        auto* p = sc->add_option("--p", p_text, "Edge probability expression in n");
        if (need_p) p->required();
        sc->add_option("--out", out, "Output file (default stdout)");
    };

    auto* sample = app.add_subcommand("sample", "Sample one hypergraph and print it");
    add_common(sample, true);
    std::size_t sample_n = 0;
    std::uint64_t stream = 0;
    sample->add_option("--n", sample_n, "Vertex count")->required();
    sample->add_option("--seed", seed_text, "Seed, decimal or 0x-hex");
    sample->add_option("--stream", stream, "Stream index");

    auto* census = app.add_subcommand("census", "Count local structures in a hypergraph file");
    std::string in_path, analysis = "tree";
    unsigned l = 1, vstar = 1, t_max = 6, r = 1, s = 1;
    census->add_option("--in", in_path, "Hypergraph text file")->required();
    census->add_option("--analysis", analysis, "tree|marked|cycles|values|unicyclic");
    census->add_option("--l", l, "Tree order");
    census->add_option("--vstar", vstar, "Marked vertex count");
    census->add_option("--t-max", t_max, "Largest cycle length");
    census->add_option("--r", r, "Value radius");
    census->add_option("--s", s, "Count cap");
    census->add_option("--out", out, "Output file (default stdout)");

    auto* predict = app.add_subcommand("predict", "Limit-law parameters for an edge probability");
    add_common(predict, true);
    predict->add_option("--t-max", t_max, "Largest cycle length");

    auto* classify = app.add_subcommand("classify", "Regime of an edge probability");
    add_common(classify, true);
    std::string classify_format = "text";
    classify->add_option("--format", classify_format, "text|json")->check(CLI::IsMember({"text", "json"}));

    auto* verify = app.add_subcommand("verify", "Monte Carlo check of the predicted limit law");
    add_common(verify, true);
    std::string predict_with;
    double tv_max = 0.05, mean_rel = 0.05, allowance = 0.0;
    unsigned threads = 0, s_cap = 10;
    verify->add_option("--n", ns, "Vertex counts, ascending")->required();
    verify->add_option("--trials", trials, "Samples per n");
    verify->add_option("--seed", seed_text, "Seed, decimal or 0x-hex");
    verify->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--analysis", analysis, "tree|marked|cycles|values");
    verify->add_option("--t-max", t_max, "Largest cycle length");
    verify->add_option("--r", r, "Value radius");
    verify->add_option("--s", s, "Count cap for values");
    verify->add_option("--s-cap", s_cap, "Histogram cap");
    verify->add_option("--predict-with", predict_with, "Law used for predictions");
    verify->add_option("--tv-max", tv_max, "TV threshold");
    verify->add_option("--mean-rel", mean_rel, "Relative mean tolerance");
    verify->add_option("--allowance", allowance, "Additive finite-n allowance on the mean");
    verify->add_option("--threads", threads, "Worker threads (0: all cores)");

    auto* efgame = app.add_subcommand("efgame", "Solve the k-round Ehrenfeucht-Fraisse game");
    std::string a_path, b_path;
    unsigned k = 1;
    efgame->add_option("--a", a_path, "First hypergraph file")->required();
    efgame->add_option("--b", b_path, "Second hypergraph file")->required();
    efgame->add_option("--k", k, "Rounds")->required();

    auto* tree = app.add_subcommand("tree", "Dump a weighted spanning tree of the completion space");
    add_common(tree, true);
    unsigned depth = 3;
    tree->add_option("--depth", depth, "Tree depth")->check(CLI::Range(0u, 8u));

    auto* catalog = app.add_subcommand("catalog", "List tree or marked tree types");
    catalog->add_option("--d", d, "Edge size minus one")->check(CLI::Range(1u, 16u));
    catalog->add_option("--l", l, "Tree order");
    catalog->add_option("--vstar", vstar, "Marked vertex count (0: unmarked)");
    catalog->add_option("--out", out, "Output file (default stdout)");
    bool all_marked = false;
    catalog->add_flag("--all", all_marked, "Include non-minimal marked types");
    vstar = 0;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const Bindings bind{{"d", d}};
        if (*sample) {
            const auto p = eval(parse(p_text, bind), static_cast<double>(sample_n));
            if (p.clamped) std::cerr << "warning: p(n) clamped to " << double(p.value) << "\n";
            auto H = sample_gnp(sample_n, d, double(p.value), {parse_seed(seed_text), stream});
            write_out(out, to_text(H));
        } else if (*census) {
            auto H = load(in_path);
            CensusReport rep;
            if (analysis == "tree")
                rep = tree_component_census(H, l);
            else if (analysis == "marked")
                rep = marked_copy_census(H, l, vstar == 0 ? 1 : vstar);
            else if (analysis == "cycles")
                rep = cycle_census(H, t_max);
            else if (analysis == "unicyclic")
                rep = unicyclic_pattern_census(H, r, s);
            else if (analysis == "values") {
                auto vd = value_distribution(H, r, s);
                rep.meta = {{"n", H.n()}, {"d", H.d()}, {"r", r}, {"s", s}, {"analysis", "values"}};
                json j{{"meta", rep.meta}, {"frequencies", vd.freq}};
                write_out(out, j.dump(2) + "\n");
                return kExitOk;
            } else
                throw UsageError("unknown analysis '" + analysis + "'");
            write_out(out, rep.to_json().dump(2) + "\n");
        } else if (*predict) {
            const auto R = classify_regime(parse(p_text, bind), d);
            json j{{"regime", regime_json(R)}};
            if (R.clause == Clause::IIA)
                j["prediction"] = prediction_json(poisson_means_tree_window(d, *R.l, to_double(*R.c)));
            else if (R.clause == Clause::IIB)
                j["prediction"] = prediction_json(
                    poisson_means_marked_window(d, *R.l, *R.vstar, to_double(*R.c)));
            else if (R.clause == Clause::III) {
                const double lam = to_double(*R.lambda);
                json cyc = json::object();
                for (unsigned t = d == 1 ? 3 : 2; t <= t_max; ++t) cyc[cycle_key(t)] = cycle_length_mean(d, lam, t);
                j["prediction"] = {{"provenance", "double-jump"},
                                   {"cycles", cyc},
                                   {"branching_mu", lam / double(factorial(d))}};
            }
            write_out(out, j.dump(2) + "\n");
        } else if (*classify) {
            const auto R = classify_regime(parse(p_text, bind), d);
            write_out(out, classify_format == "json" ? regime_json(R).dump(2) + "\n" : regime_text(R));
        } else if (*verify) {
            ExperimentConfig cfg;
            cfg.d = d;
            cfg.p_text = p_text;
            cfg.n_list = ns;
            cfg.trials = trials;
            cfg.seed = parse_seed(seed_text);
            cfg.analysis = analysis_from_string(analysis);
            cfg.t_max = t_max;
            cfg.r = r;
            cfg.s = s;
            cfg.s_cap = s_cap;
            cfg.threads = threads;
            cfg.tol.tv_max = tv_max;
            cfg.tol.mean_rel = mean_rel;
            cfg.tol.finite_n_allowance = allowance;
            if (!predict_with.empty()) cfg.predict_with = predict_with;
            try {
                cfg.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            auto rep = run_experiment(cfg);
            write_out(out, emit(rep, format));
            return rep.pass ? kExitOk : kExitStatFail;
        } else if (*efgame) {
            auto A = load(a_path), B = load(b_path);
            auto res = solve_ef_game(A, B, k);
            json j{{"k", k}, {"duplicator_wins", res.duplicator_wins}, {"states", res.states}};
            if (res.spoiler_move)
                j["spoiler_move"] = {{"side", res.spoiler_move->side}, {"vertex", res.spoiler_move->vertex}};
            std::cout << j.dump(2) << "\n";
        } else if (*tree) {
            const auto R = classify_regime(parse(p_text, bind), d);
            const auto kind = space_kind(R);
            json j{{"regime", regime_json(R)}, {"space", to_string(kind)}};
            if (R.clause == Clause::IIA)
                j["tree"] = build_weighted_tree(poisson_means_tree_window(d, *R.l, to_double(*R.c)), depth).to_json();
            else if (R.clause == Clause::IIB)
                j["tree"] = build_weighted_tree(
                                poisson_means_marked_window(d, *R.l, *R.vstar, to_double(*R.c)), depth)
                                .to_json();
            else if (R.clause == Clause::III)
                j["tree"] = build_cantor_tree(d, to_double(*R.lambda), depth).to_json();
            else
                j["tree"] = build_weighted_tree(std::vector<double>{}, 0).to_json();
            write_out(out, j.dump(2) + "\n");
        } else if (*catalog) {
            json arr = json::array();
            if (vstar == 0) {
                for (const auto& t : enumerate_tree_types(d, l))
                    arr.push_back({{"code", t.code}, {"v", t.v}, {"aut", t.a}, {"labelled", t.c},
                                   {"edges", t.tree.edge_list()}});
            } else {
                for (const auto& m : enumerate_marked_types(d, l, vstar, !all_marked))
                    arr.push_back({{"code", m.code}, {"marks", m.marks}, {"aut", m.a},
                                   {"labelled", m.c}, {"minimal", m.minimal},
                                   {"edges", m.base.tree.edge_list()}});
            }
            write_out(out, arr.dump(2) + "\n");
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
