#include "hyperlaws/census.hpp"

#include <algorithm>

namespace hyperlaws {

std::uint64_t CensusReport::total() const {
    std::uint64_t t = 0;
    for (const auto& [k, c] : counts) t += c;
    for (const auto& [k, c] : residual) t += c;
    return t;
}

nlohmann::json CensusReport::to_json() const {
    nlohmann::json j;
    j["meta"] = meta;
    j["counts"] = counts;
    j["residual"] = residual;
    return j;
}

CensusReport tree_component_census(const Hypergraph& H, unsigned l_max) {
    CensusReport rep;
    rep.meta = {{"n", H.n()}, {"d", H.d()}, {"l_max", l_max}, {"analysis", "tree-components"}};
    for (const auto& C : components(H)) {
        if (!C.is_berge_tree) {
            ++rep.residual[kResidualNonTree];
        } else if (C.order > l_max) {
            ++rep.residual[kResidualLarge];
        } else if (C.order == 0) {
            ++rep.counts["v"];
        } else {
            ++rep.counts[canonical_code(induced(H, C))];
        }
    }
    return rep;
}

CensusReport marked_copy_census(const Hypergraph& H,
                                const std::vector<MarkedBergeTreeType>& types) {
    CensusReport rep;
    rep.meta = {{"n", H.n()}, {"d", H.d()}, {"analysis", "marked-copies"}};
    if (!types.empty()) {
        rep.meta["l"] = types.front().base.l;
        rep.meta["vstar"] = types.front().vstar;
    }
    for (const auto& t : types) rep.counts[t.code] = count_marked_copies(H, t);
    return rep;
}

CensusReport marked_copy_census(const Hypergraph& H, unsigned l, unsigned vstar) {
    return marked_copy_census(H, enumerate_marked_types(H.d(), l, vstar, true));
}

namespace {

struct CycleWalker {
    const Hypergraph& H;
    unsigned t_max;
    Vertex start = 0;
    std::vector<char> used_v, used_e;
    std::vector<std::uint64_t> found;

    void walk(Vertex u, unsigned len) {
        for (auto e : H.incident(u)) {
            if (used_e[e]) continue;
            used_e[e] = 1;
            for (Vertex w : H.edge(e)) {
                if (w == u) continue;
                if (w == start) {
                    if (len + 1 >= 2) ++found[len + 1];
                } else if (w > start && !used_v[w] && len + 1 < t_max) {
                    used_v[w] = 1;
                    walk(w, len + 1);
                    used_v[w] = 0;
                }
            }
            used_e[e] = 0;
        }
    }
};

ValuePtr tree_value(const Hypergraph& T, Vertex w, std::int64_t parent_edge, unsigned t,
                    unsigned s, const std::vector<char>* blocked) {
    if (t == 0) return trivial_value(s);
    std::vector<std::pair<PatternPtr, Count>> entries;
    for (auto e : T.incident(w)) {
        if (static_cast<std::int64_t>(e) == parent_edge) continue;
        if (blocked && (*blocked)[e]) continue;
        std::vector<ValuePtr> kids;
        for (Vertex u : T.edge(e))
            if (u != w) kids.push_back(tree_value(T, u, e, t - 1, s, blocked));
        entries.emplace_back(make_pattern(std::move(kids)), 1);
    }
    return make_value(t, s, std::move(entries));
}

} // namespace

CensusReport cycle_census(const Hypergraph& H, unsigned t_max) {
    CensusReport rep;
    rep.meta = {{"n", H.n()}, {"d", H.d()}, {"t_max", t_max}, {"analysis", "cycles"}};
    for (unsigned t = 2; t <= t_max; ++t) rep.counts[cycle_key(t)] = 0;
    if (t_max < 2) return rep;
    CycleWalker w{H, t_max, 0, std::vector<char>(H.n(), 0), std::vector<char>(H.num_edges(), 0),
                  std::vector<std::uint64_t>(t_max + 1, 0)};
    for (const auto& C : components(H)) {
        if (C.is_berge_tree) continue;
        for (Vertex s : C.vertices) {
            if (H.degree(s) < 2) continue;
            w.start = s;
            w.used_v[s] = 1;
            w.walk(s, 0);
            w.used_v[s] = 0;
        }
    }
    for (unsigned t = 2; t <= t_max; ++t) rep.counts[cycle_key(t)] = w.found[t] / 2;
    return rep;
}

LocalValue value_of_ball(const Hypergraph& H, Vertex v, unsigned r, unsigned s) {
    if (r == 0) return trivial_value(s);
    if (H.degree(v) == 0) return make_value(r, s, {});
    auto B = ball(H, v, r);
    if (!is_berge_acyclic(B.graph)) return NonTree{};
    return tree_value(B.graph, 0, -1, r, s, nullptr);
}

ValueFrequencies value_distribution(const Hypergraph& H, unsigned r, unsigned s) {
    ValueFrequencies out;
    if (H.n() == 0) return out;
    std::map<std::string, std::uint64_t> counts;
    for (Vertex v = 0; v < H.n(); ++v) {
        auto lv = value_of_ball(H, v, r, s);
        const auto k = key_of(lv);
        ++counts[k];
        if (auto* p = std::get_if<ValuePtr>(&lv); p && !out.values.count(k))
            out.values.emplace(k, *p);
    }
    for (const auto& [k, c] : counts)
        out.freq[k] = static_cast<double>(c) / static_cast<double>(H.n());
    return out;
}

CensusReport unicyclic_pattern_census(const Hypergraph& H, unsigned r, unsigned s) {
    CensusReport rep;
    rep.meta = {{"n", H.n()}, {"d", H.d()}, {"r", r}, {"s", s}, {"analysis", "unicyclic-patterns"}};
    const std::size_t n = H.n(), m = H.num_edges();
    std::vector<char> blocked(m, 0);
    std::vector<std::size_t> deg(n + m, 0);
    std::vector<char> gone(n + m, 0);
    for (const auto& C : components(H)) {
        if (C.is_berge_tree) continue;
        if (!C.is_unicyclic) {
            ++rep.residual[kResidualMulticyclic];
            continue;
        }
        // Peel leaves of the incidence graph; the survivors form the cycle.
        std::vector<std::size_t> stack;
        for (Vertex v : C.vertices) {
            deg[v] = H.degree(v);
            gone[v] = 0;
            if (deg[v] == 1) stack.push_back(v);
        }
        for (auto e : C.edges) {
            deg[n + e] = H.arity();
            gone[n + e] = 0;
        }
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            if (gone[x]) continue;
            gone[x] = 1;
            if (x < n) {
                for (auto e : H.incident(static_cast<Vertex>(x)))
                    if (!gone[n + e] && --deg[n + e] == 1) stack.push_back(n + e);
            } else {
                for (Vertex w : H.edge(x - n))
                    if (!gone[w] && --deg[w] == 1) stack.push_back(w);
            }
        }
        std::vector<Vertex> cyc_v;
        for (Vertex v : C.vertices)
            if (!gone[v]) cyc_v.push_back(v);
        for (auto e : C.edges)
            if (!gone[n + e]) blocked[e] = 1;

        std::vector<std::string> tokens;
        std::vector<std::uint32_t> cyc_e;
        Vertex cur = cyc_v.front();
        std::int64_t prev = -1;
        do {
            tokens.push_back("V" + tree_value(H, cur, -1, r, s, &blocked)->key);
            std::uint32_t next_e = 0;
            for (auto e : H.incident(cur))
                if (blocked[e] && static_cast<std::int64_t>(e) != prev) {
                    next_e = e;
                    break;
                }
            Vertex next_v = cur;
            std::vector<std::string> hang;
            for (Vertex w : H.edge(next_e)) {
                if (w == cur) continue;
                if (!gone[w])
                    next_v = w;
                else
                    hang.push_back(tree_value(H, w, next_e, r, s, &blocked)->key);
            }
            std::sort(hang.begin(), hang.end());
            std::string tok = "E[";
            for (std::size_t i = 0; i < hang.size(); ++i) tok += (i ? "," : "") + hang[i];
            tokens.push_back(tok + "]");
            cyc_e.push_back(next_e);
            prev = next_e;
            cur = next_v;
        } while (cur != cyc_v.front());

        const std::size_t L = tokens.size();
        std::vector<std::string> rev;
        rev.push_back(tokens[0]);
        for (std::size_t i = L - 1; i >= 1; --i) rev.push_back(tokens[i]);
        std::string best;
        bool first = true;
        for (const auto* seq : {&tokens, &rev})
            for (std::size_t off = 0; off < L; off += 2) {
                std::string k;
                for (std::size_t i = 0; i < L; ++i) k += (*seq)[(off + i) % L] + "|";
                if (first || k < best) best = std::move(k);
                first = false;
            }
        ++rep.counts["C" + std::to_string(L / 2) + ":" + best];
        for (auto e : cyc_e) blocked[e] = 0;
    }
    return rep;
}

std::string bare_cycle_key(unsigned d, unsigned t, unsigned r, unsigned s) {
    std::vector<std::vector<Vertex>> edges;
    Vertex next = t;
    for (Vertex i = 0; i < t; ++i) {
        std::vector<Vertex> e{i, (i + 1) % t};
        for (unsigned j = 1; j < d; ++j) e.push_back(next++);
        edges.push_back(std::move(e));
    }
    auto rep = unicyclic_pattern_census(Hypergraph::build(next, d, edges), r, s);
    return rep.counts.begin()->first;
}

} // namespace hyperlaws
