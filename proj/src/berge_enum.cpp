#include "hyperlaws/berge_enum.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hyperlaws/errors.hpp"

namespace hyperlaws {

namespace {

// Incidence tree: nodes [0,n) are vertices, [n,n+m) are edges.
struct IncidenceTree {
    std::size_t n = 0;
    std::vector<std::vector<std::uint32_t>> adj;
    std::vector<char> kind;
};

IncidenceTree incidence(const Hypergraph& T, const std::vector<Vertex>& marks) {
    IncidenceTree I;
    I.n = T.n();
    const std::size_t m = T.num_edges();
    I.adj.assign(T.n() + m, {});
    I.kind.assign(T.n() + m, 'v');
    for (Vertex v : marks) I.kind[v] = 'm';
    for (std::size_t e = 0; e < m; ++e) {
        const auto node = static_cast<std::uint32_t>(T.n() + e);
        I.kind[node] = 'e';
        for (Vertex v : T.edge(e)) {
            I.adj[node].push_back(v);
            I.adj[v].push_back(node);
        }
    }
    return I;
}

void require_tree(const Hypergraph& T) {
    if (T.n() == 0 || T.n() != 1 + T.num_edges() * T.d() || !is_berge_acyclic(T))
        throw std::invalid_argument("hypergraph is not a Berge-tree");
}

std::vector<std::uint32_t> centers(const IncidenceTree& I) {
    const std::size_t N = I.adj.size();
    if (N <= 2) {
        std::vector<std::uint32_t> c(N);
        for (std::size_t i = 0; i < N; ++i) c[i] = static_cast<std::uint32_t>(i);
        return c;
    }
    std::vector<std::size_t> deg(N);
    std::vector<std::uint32_t> layer;
    for (std::size_t i = 0; i < N; ++i) {
        deg[i] = I.adj[i].size();
        if (deg[i] <= 1) layer.push_back(static_cast<std::uint32_t>(i));
    }
    std::size_t left = N;
    while (left > 2) {
        left -= layer.size();
        std::vector<std::uint32_t> next;
        for (auto u : layer)
            for (auto w : I.adj[u])
                if (--deg[w] == 1) next.push_back(w);
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

struct Rooted {
    std::string code;
    std::uint64_t aut = 1;
};

Rooted rooted(const IncidenceTree& I, std::uint32_t u, std::uint32_t parent) {
    std::vector<Rooted> kids;
    for (auto w : I.adj[u])
        if (w != parent) kids.push_back(rooted(I, w, u));
    std::sort(kids.begin(), kids.end(),
              [](const Rooted& a, const Rooted& b) { return a.code < b.code; });
    Rooted r;
    r.code.push_back(I.kind[u]);
    if (!kids.empty()) {
        r.code.push_back('(');
        for (std::size_t i = 0; i < kids.size();) {
            std::size_t j = i;
            while (j < kids.size() && kids[j].code == kids[i].code) {
                r.code += kids[j].code;
                r.aut *= kids[j].aut;
                ++j;
            }
            r.aut *= factorial(static_cast<unsigned>(j - i));
            i = j;
        }
        r.code.push_back(')');
    }
    return r;
}

Rooted canonical(const Hypergraph& T, const std::vector<Vertex>& marks) {
    require_tree(T);
    auto I = incidence(T, marks);
    Rooted best;
    bool first = true;
    // Two centers are always of different kinds, so no automorphism swaps them.
    for (auto c : centers(I)) {
        auto r = rooted(I, c, UINT32_MAX);
        if (first || r.code < best.code) best = std::move(r);
        first = false;
    }
    return best;
}

} // namespace

std::uint64_t factorial(unsigned k) {
    if (k > 20) throw std::overflow_error("factorial exceeds 64 bits");
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return f;
}

std::string canonical_code(const Hypergraph& T) { return canonical(T, {}).code; }

std::string canonical_code(const Hypergraph& T, const std::vector<Vertex>& marks) {
    return canonical(T, marks).code;
}

std::uint64_t automorphism_count(const Hypergraph& T) { return canonical(T, {}).aut; }

std::uint64_t automorphism_count(const Hypergraph& T, const std::vector<Vertex>& marks) {
    return canonical(T, marks).aut;
}

std::uint64_t labelled_count(const BergeTreeType& t) { return factorial(t.v) / t.a; }

BergeTreeType make_tree_type(const Hypergraph& T) {
    auto r = canonical(T, {});
    BergeTreeType t;
    t.d = T.d();
    t.l = static_cast<unsigned>(T.num_edges());
    t.v = static_cast<unsigned>(T.n());
    t.code = std::move(r.code);
    t.a = r.aut;
    t.c = t.v <= 20 ? factorial(t.v) / t.a : 0;
    t.tree = T;
    return t;
}

MarkedBergeTreeType make_marked_type(const Hypergraph& T, const std::vector<Vertex>& marks) {
    MarkedBergeTreeType m;
    m.base = make_tree_type(T);
    m.marks = marks;
    std::sort(m.marks.begin(), m.marks.end());
    m.marks.erase(std::unique(m.marks.begin(), m.marks.end()), m.marks.end());
    for (Vertex v : m.marks)
        if (v >= T.n()) throw std::invalid_argument("marked vertex out of range");
    m.vstar = static_cast<unsigned>(m.marks.size());
    auto r = canonical(T, m.marks);
    m.code = std::move(r.code);
    m.a = r.aut;
    m.c = m.base.v <= 20 ? factorial(m.base.v) / m.a : 0;
    m.minimal = is_minimal(T, m.marks);
    return m;
}

std::vector<BergeTreeType> enumerate_tree_types(unsigned d, unsigned l, std::size_t max_vertices) {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    const std::size_t v = 1 + static_cast<std::size_t>(l) * d;
    if (v > max_vertices)
        throw ResourceError("tree enumeration needs " + std::to_string(v) +
                            " vertices, bound is " + std::to_string(max_vertices));
    std::map<std::string, Hypergraph> level;
    level.emplace("v", Hypergraph::build(1, d, {}));
    for (unsigned k = 1; k <= l; ++k) {
        std::map<std::string, Hypergraph> next;
        for (const auto& [code, T] : level) {
            auto edges = T.edge_list();
            const auto n0 = static_cast<Vertex>(T.n());
            for (Vertex at = 0; at < n0; ++at) {
                std::vector<Vertex> e{at};
                for (unsigned j = 0; j < d; ++j) e.push_back(n0 + j);
                auto grown = edges;
                grown.push_back(e);
                auto G = Hypergraph::build(n0 + d, d, grown);
                auto c = canonical_code(G);
                next.try_emplace(std::move(c), std::move(G));
            }
        }
        level = std::move(next);
    }
    std::vector<BergeTreeType> out;
    out.reserve(level.size());
    for (const auto& [code, T] : level) out.push_back(make_tree_type(T));
    return out;
}

std::vector<std::size_t> leaf_edges(const Hypergraph& T) {
    std::vector<std::size_t> out;
    const std::size_t m = T.num_edges();
    for (std::size_t e = 0; e < m; ++e) {
        std::size_t touching = 0;
        for (Vertex w : T.edge(e)) touching += T.degree(w) - 1;
        if (touching == 1 || m == 1) out.push_back(e);
    }
    return out;
}

bool is_minimal(const Hypergraph& T, const std::vector<Vertex>& marks) {
    std::vector<char> marked(T.n(), 0);
    for (Vertex v : marks) marked[v] = 1;
    for (auto e : leaf_edges(T)) {
        bool any = false;
        for (Vertex w : T.edge(e)) any = any || marked[w];
        if (!any) return false;
    }
    return true;
}

std::vector<MarkedBergeTreeType> enumerate_marked_types(unsigned d, unsigned l, unsigned vstar,
                                                        bool minimal_only,
                                                        std::size_t max_vertices) {
    const unsigned v = 1 + l * d;
    if (vstar > v)
        throw std::invalid_argument("v* = " + std::to_string(vstar) + " exceeds tree size " +
                                    std::to_string(v));
    std::map<std::string, MarkedBergeTreeType> found;
    for (const auto& t : enumerate_tree_types(d, l, max_vertices)) {
        std::vector<char> pick(v, 0);
        std::fill(pick.begin(), pick.begin() + vstar, 1);
        do {
            std::vector<Vertex> marks;
            for (unsigned i = 0; i < v; ++i)
                if (pick[i]) marks.push_back(i);
            auto code = canonical_code(t.tree, marks);
            if (found.count(code)) continue;
            auto m = make_marked_type(t.tree, marks);
            if (minimal_only && !m.minimal) continue;
            found.emplace(std::move(code), std::move(m));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::vector<MarkedBergeTreeType> out;
    out.reserve(found.size());
    for (auto& [code, m] : found) out.push_back(std::move(m));
    return out;
}

namespace {

struct PatternStep {
    std::size_t edge;
    Vertex parent;
    std::vector<Vertex> fresh;
};

struct CopyCounter {
    const Hypergraph& H;
    const Hypergraph& T;
    std::vector<char> marked;
    std::vector<PatternStep> steps;
    std::vector<Vertex> phi;
    std::vector<char> used;  // host vertices in the image
    std::vector<Vertex> used_list;
    std::uint64_t total = 0;

    bool admissible(Vertex pattern, Vertex host) const {
        if (used[host]) return false;
        const auto want = T.degree(pattern);
        const auto have = H.degree(host);
        return marked[pattern] ? have == want : have >= want;
    }

    void search(std::size_t i) {
        if (i == steps.size()) {
            ++total;
            return;
        }
        const auto& st = steps[i];
        const Vertex hp = phi[st.parent];
        std::vector<Vertex> others;
        for (auto he : H.incident(hp)) {
            others.clear();
            for (Vertex w : H.edge(he))
                if (w != hp) others.push_back(w);
            do {
                bool ok = true;
                std::size_t j = 0;
                for (; j < st.fresh.size(); ++j) {
                    if (!admissible(st.fresh[j], others[j])) {
                        ok = false;
                        break;
                    }
                    phi[st.fresh[j]] = others[j];
                    used[others[j]] = 1;
                }
                if (ok) search(i + 1);
                for (std::size_t k = 0; k < j; ++k) used[others[k]] = 0;
            } while (std::next_permutation(others.begin(), others.end()));
        }
    }
};

} // namespace

std::uint64_t count_marked_copies(const Hypergraph& H, const MarkedBergeTreeType& m) {
    const Hypergraph& T = m.base.tree;
    if (H.d() != T.d()) throw std::invalid_argument("uniformity mismatch");
    if (H.n() < T.n()) return 0;
    CopyCounter cc{H, T, std::vector<char>(T.n(), 0), {}, std::vector<Vertex>(T.n(), 0),
                   std::vector<char>(H.n(), 0), {}, 0};
    for (Vertex v : m.marks) cc.marked[v] = 1;
    const Vertex root = m.marks.empty() ? 0 : m.marks.front();

    std::vector<char> seen_v(T.n(), 0), seen_e(T.num_edges(), 0);
    std::vector<Vertex> queue{root};
    seen_v[root] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        Vertex u = queue[h];
        for (auto e : T.incident(u)) {
            if (seen_e[e]) continue;
            seen_e[e] = 1;
            PatternStep st{e, u, {}};
            for (Vertex w : T.edge(e))
                if (w != u) {
                    st.fresh.push_back(w);
                    seen_v[w] = 1;
                    queue.push_back(w);
                }
            cc.steps.push_back(std::move(st));
        }
    }

    for (Vertex x = 0; x < H.n(); ++x) {
        if (!cc.admissible(root, x)) continue;
        cc.phi[root] = x;
        cc.used[x] = 1;
        cc.search(0);
        cc.used[x] = 0;
    }
    return cc.total / m.a;
}

std::string to_text(const MarkedBergeTreeType& m) {
    std::ostringstream os;
    write_text(os, m.base.tree);
    os << "marks:";
    for (Vertex v : m.marks) os << ' ' << v;
    os << '\n';
    return os.str();
}

} // namespace hyperlaws
