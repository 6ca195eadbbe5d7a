#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "hyperlaws/census.hpp"

using namespace hyperlaws;

namespace {

Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t n, unsigned d, std::size_t m) {
    std::vector<std::vector<Vertex>> edges;
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
        std::shuffle(all.begin(), all.end(), rng);
        edges.emplace_back(all.begin(), all.begin() + d + 1);
    }
    return Hypergraph::build(n, d, edges);
}

Hypergraph relabel(const Hypergraph& H, const std::vector<Vertex>& perm) {
    std::vector<std::vector<Vertex>> es;
    for (auto e : H.edge_list()) {
        for (auto& x : e) x = perm[x];
        es.push_back(e);
    }
    return Hypergraph::build(H.n(), H.d(), es);
}

// Closed walks v0 e0 v1 e1 ... e_{t-1} v0 with distinct edges and vertices,
// divided by the 2t starting points and directions.
std::vector<std::uint64_t> brute_cycles(const Hypergraph& H, unsigned t_max) {
    std::vector<std::uint64_t> found(t_max + 1, 0);
    std::vector<char> used_e(H.num_edges(), 0), used_v(H.n(), 0);
    std::function<void(Vertex, Vertex, unsigned)> go = [&](Vertex start, Vertex u, unsigned len) {
        for (std::size_t e = 0; e < H.num_edges(); ++e) {
            if (used_e[e]) continue;
            auto E = H.edge(e);
            if (std::find(E.begin(), E.end(), u) == E.end()) continue;
            used_e[e] = 1;
            for (Vertex w : E) {
                if (w == u) continue;
                if (w == start && len + 1 >= 2) ++found[len + 1];
                if (w != start && !used_v[w] && len + 1 < t_max) {
                    used_v[w] = 1;
                    go(start, w, len + 1);
                    used_v[w] = 0;
                }
            }
            used_e[e] = 0;
        }
    };
    for (Vertex s = 0; s < H.n(); ++s) {
        used_v[s] = 1;
        go(s, s, 0);
        used_v[s] = 0;
    }
    for (unsigned t = 2; t <= t_max; ++t) found[t] /= 2 * t;
    return found;
}

Hypergraph complete_graph(std::size_t n) {
    std::vector<std::vector<Vertex>> es;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) es.push_back({i, j});
    return Hypergraph::build(n, 1, es);
}

} // namespace

TEST_SUITE("census") {

TEST_CASE("tree component examples") {
    auto M = Hypergraph::build(6, 1, {{0, 1}, {2, 3}, {4, 5}});
    auto rep = tree_component_census(M, 3);
    auto edge = enumerate_tree_types(1, 1)[0].code;
    CHECK(rep.count(edge) == 3);
    CHECK(rep.total() == 3);
    auto tri = tree_component_census(Hypergraph::build(3, 1, {{0, 1}, {1, 2}, {0, 2}}), 3);
    CHECK(tri.counts.empty());
    CHECK(tri.residual.at(kResidualNonTree) == 1);
    auto iso = tree_component_census(Hypergraph::build(2, 1, {}), 1);
    CHECK(iso.count("v") == 2);
    auto big = tree_component_census(Hypergraph::build(4, 1, {{0, 1}, {1, 2}, {2, 3}}), 2);
    CHECK(big.residual.at(kResidualLarge) == 1);
}

TEST_CASE("tree census matches isomorphism classification") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 60; ++iter) {
        const unsigned d = 1 + iter % 2;
        auto H = random_hypergraph(rng, 14, d, 3 + iter % 5);
        auto rep = tree_component_census(H, 3);
        std::map<std::string, std::uint64_t> oracle;
        std::uint64_t nontree = 0, large = 0;
        for (const auto& C : components(H)) {
            auto S = induced(H, C);
            if (C.order == 0) {
                ++oracle["v"];
            } else if (S.n() != 1 + C.order * d || components(S).size() != 1 || !is_berge_acyclic(S)) {
                ++nontree;
            } else if (C.order > 3) {
                ++large;
            } else {
                for (const auto& t : enumerate_tree_types(d, static_cast<unsigned>(C.order)))
                    if (are_isomorphic(S, t.tree)) ++oracle[t.code];
            }
        }
        CHECK(rep.counts == oracle);
        CHECK(rep.count(kResidualNonTree) == 0);
        CHECK((rep.residual.count(kResidualNonTree) ? rep.residual.at(kResidualNonTree) : 0) == nontree);
        CHECK((rep.residual.count(kResidualLarge) ? rep.residual.at(kResidualLarge) : 0) == large);
    }
}

TEST_CASE("marked copy census") {
    auto star = Hypergraph::build(4, 1, {{0, 1}, {0, 2}, {0, 3}});
    auto rep = marked_copy_census(star, 1, 1);
    REQUIRE(rep.counts.size() == 1);
    CHECK(rep.counts.begin()->second == 3);
    auto e = marked_copy_census(Hypergraph::build(2, 1, {{0, 1}}), 1, 2);
    CHECK(e.counts.begin()->second == 1);
    auto tri = marked_copy_census(Hypergraph::build(3, 1, {{0, 1}, {1, 2}, {0, 2}}), 1, 1);
    CHECK(tri.counts.begin()->second == 0);
}

TEST_CASE("cycle census") {
    auto tri = cycle_census(Hypergraph::build(3, 1, {{0, 1}, {1, 2}, {0, 2}}), 5);
    CHECK(tri.count(cycle_key(3)) == 1);
    CHECK(tri.count(cycle_key(4)) == 0);
    auto acyc = cycle_census(Hypergraph::build(5, 2, {{0, 1, 2}, {2, 3, 4}}), 5);
    for (const auto& [k, c] : acyc.counts) CHECK(c == 0);
    auto K4 = cycle_census(complete_graph(4), 4);
    CHECK(K4.count(cycle_key(3)) == 4);
    CHECK(K4.count(cycle_key(4)) == 3);
    for (std::size_t n = 3; n <= 6; ++n) {
        auto rep = cycle_census(complete_graph(n), static_cast<unsigned>(n));
        for (unsigned t = 3; t <= n; ++t) {
            std::uint64_t ff = 1;
            for (unsigned i = 0; i < t; ++i) ff *= n - i;
            CHECK(rep.count(cycle_key(t)) == ff / (2 * t));
        }
    }
    auto two = cycle_census(Hypergraph::build(4, 2, {{0, 1, 2}, {0, 1, 3}}), 3);
    CHECK(two.count(cycle_key(2)) == 1);
}

TEST_CASE("cycle census matches brute force walks") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 60; ++iter) {
        const unsigned d = 1 + iter % 3;
        auto H = random_hypergraph(rng, 8, d, 3 + iter % 6);
        auto rep = cycle_census(H, 5);
        auto oracle = brute_cycles(H, 5);
        for (unsigned t = 2; t <= 5; ++t) CHECK(rep.count(cycle_key(t)) == oracle[t]);
    }
}

TEST_CASE("value examples") {
    auto H = Hypergraph::build(8, 1, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 6}, {6, 7}, {5, 7}});
    for (unsigned r = 1; r <= 3; ++r) {
        auto lv = value_of_ball(Hypergraph::build(1, 2, {}), 0, r, 2);
        REQUIRE(std::holds_alternative<ValuePtr>(lv));
        CHECK(std::get<ValuePtr>(lv)->entries.empty());
    }
    const unsigned s = 2;
    auto center = value_of_ball(H, 0, 1, s);
    REQUIRE(std::holds_alternative<ValuePtr>(center));
    auto cv = std::get<ValuePtr>(center);
    REQUIRE(cv->entries.size() == 1);
    CHECK(cv->entries[0].second == kMany);
    auto c1 = std::get<ValuePtr>(value_of_ball(H, 0, 1, 5));
    CHECK(c1->entries[0].second == 4);
    CHECK(std::holds_alternative<NonTree>(value_of_ball(H, 5, 1, 1)));
    CHECK(key_of(value_of_ball(H, 5, 1, 1)) == kNonTreeKey);
    CHECK(key_of(value_of_ball(H, 1, 1, 1)) != key_of(value_of_ball(H, 1, 2, 1)));
}

TEST_CASE("values distinguish by structure and ignore labels") {
    auto P = Hypergraph::build(4, 1, {{0, 1}, {1, 2}, {2, 3}});
    auto S = Hypergraph::build(4, 1, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(key_of(value_of_ball(P, 0, 3, 2)) == key_of(value_of_ball(P, 3, 3, 2)));
    CHECK(key_of(value_of_ball(P, 0, 3, 2)) != key_of(value_of_ball(S, 1, 3, 2)));
    CHECK(key_of(value_of_ball(P, 1, 1, 2)) != key_of(value_of_ball(S, 1, 1, 2)));
}

TEST_CASE("coarsening commutes with computing values") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 40; ++iter) {
        const unsigned d = 1 + iter % 2;
        auto H = random_hypergraph(rng, 40, d, 14 + iter % 10);
        for (Vertex v = 0; v < H.n(); ++v) {
            auto full = value_of_ball(H, v, 3, 3);
            if (!std::holds_alternative<ValuePtr>(full)) continue;
            for (unsigned r2 = 0; r2 <= 3; ++r2)
                for (unsigned s2 = 1; s2 <= 3; ++s2)
                    CHECK(coarsen(std::get<ValuePtr>(full), r2, s2)->key ==
                          key_of(value_of_ball(H, v, r2, s2)));
        }
    }
}

TEST_CASE("value distribution") {
    auto empty = value_distribution(Hypergraph::build(5, 1, {}), 2, 1);
    REQUIRE(empty.freq.size() == 1);
    CHECK(empty.freq.begin()->second == 1.0);
    std::mt19937_64 rng(11);
    auto H = random_hypergraph(rng, 60, 2, 25);
    auto vd = value_distribution(H, 2, 1);
    double sum = 0;
    for (const auto& [k, f] : vd.freq) sum += f;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    std::map<std::string, double> direct;
    for (Vertex v = 0; v < H.n(); ++v) direct[key_of(value_of_ball(H, v, 2, 1))] += 1.0 / 60;
    for (const auto& [k, f] : direct) CHECK(vd.freq.at(k) == doctest::Approx(f));
}

TEST_CASE("unicyclic patterns") {
    auto tri = Hypergraph::build(3, 1, {{0, 1}, {1, 2}, {0, 2}});
    auto rep = unicyclic_pattern_census(tri, 2, 1);
    REQUIRE(rep.counts.size() == 1);
    CHECK(rep.counts.begin()->second == 1);
    CHECK(rep.counts.begin()->first == bare_cycle_key(1, 3, 2, 1));
    CHECK(rep.counts.begin()->first.rfind("C3:", 0) == 0);

    auto two = Hypergraph::build(6, 1, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    auto rep2 = unicyclic_pattern_census(two, 2, 1);
    REQUIRE(rep2.counts.size() == 1);
    CHECK(rep2.counts.begin()->second == 2);

    auto pend = Hypergraph::build(4, 1, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    auto rep3 = unicyclic_pattern_census(pend, 2, 1);
    CHECK(rep3.counts.begin()->first != bare_cycle_key(1, 3, 2, 1));

    auto k4 = unicyclic_pattern_census(complete_graph(4), 2, 1);
    CHECK(k4.counts.empty());
    CHECK(k4.residual.at(kResidualMulticyclic) == 1);
    CHECK(unicyclic_pattern_census(Hypergraph::build(3, 1, {{0, 1}}), 2, 1).counts.empty());
}

TEST_CASE("unicyclic keys are invariant under relabelling") {
    std::mt19937_64 rng(23);
    // Cycle of length 5 with pendant edges at two positions, and a d=2 two-cycle.
    auto A = Hypergraph::build(9, 1, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 5}, {5, 6}, {3, 7}, {8, 7}});
    auto B = Hypergraph::build(8, 2, {{0, 1, 2}, {0, 1, 3}, {2, 4, 5}, {5, 6, 7}});
    for (const auto* H : {&A, &B}) {
        auto key = unicyclic_pattern_census(*H, 2, 1).counts;
        REQUIRE(key.size() == 1);
        std::vector<Vertex> perm(H->n());
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = 0; i < 30; ++i) {
            std::shuffle(perm.begin(), perm.end(), rng);
            CHECK(unicyclic_pattern_census(relabel(*H, perm), 2, 1).counts == key);
        }
    }
    // Reflection of the pendant positions gives the same key; shifting them does not.
    auto near = Hypergraph::build(6, 1, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 5}});
    auto C = Hypergraph::build(7, 1, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 5}, {2, 6}});
    auto D = Hypergraph::build(7, 1, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 5}, {3, 6}});
    CHECK(unicyclic_pattern_census(C, 1, 1).counts != unicyclic_pattern_census(D, 1, 1).counts);
    CHECK(unicyclic_pattern_census(near, 1, 1).counts.size() == 1);
}

}
