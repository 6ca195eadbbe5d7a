#include "hyperlaws/hypergraph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hyperlaws {

namespace {

std::string edge_string(const std::vector<Vertex>& e) {
    std::string s = "{";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s + "}";
}

struct DisjointSets {
    std::vector<std::uint32_t> parent, rank;
    explicit DisjointSets(std::size_t n) : parent(n), rank(n, 0) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank[a] < rank[b]) std::swap(a, b);
        parent[b] = a;
        if (rank[a] == rank[b]) ++rank[a];
        return true;
    }
};

} // namespace

Hypergraph Hypergraph::build(std::size_t n, unsigned d,
                             const std::vector<std::vector<Vertex>>& edges) {
    if (d < 1) throw std::invalid_argument("uniformity parameter d must be >= 1");
    const unsigned k = d + 1;
    std::vector<std::vector<Vertex>> sorted;
    sorted.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.size() != k)
            throw std::invalid_argument("edge " + edge_string(e) + " has " +
                                        std::to_string(e.size()) + " vertices, expected " +
                                        std::to_string(k));
        auto s = e;
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] >= n)
                throw std::invalid_argument("edge " + edge_string(e) + ": vertex " +
                                            std::to_string(s[i]) + " >= n=" + std::to_string(n));
            if (i && s[i] == s[i - 1])
                throw std::invalid_argument("edge " + edge_string(e) + " repeats vertex " +
                                            std::to_string(s[i]));
        }
        sorted.push_back(std::move(s));
    }
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    Hypergraph H(n, d);
    H.flat_.reserve(sorted.size() * k);
    for (const auto& e : sorted) H.flat_.insert(H.flat_.end(), e.begin(), e.end());
    H.index();
    return H;
}

Hypergraph Hypergraph::from_sorted_flat(std::size_t n, unsigned d, std::vector<Vertex> flat) {
    if (d < 1) throw std::invalid_argument("uniformity parameter d must be >= 1");
    if (flat.size() % (d + 1) != 0)
        throw std::invalid_argument("flat edge list length is not a multiple of d+1");
    for (Vertex v : flat)
        if (v >= n) throw std::invalid_argument("vertex " + std::to_string(v) + " >= n");
    Hypergraph H(n, d);
    H.flat_ = std::move(flat);
    H.index();
    return H;
}

void Hypergraph::index() {
    inc_off_.assign(n_ + 1, 0);
    for (Vertex v : flat_) ++inc_off_[v + 1];
    for (std::size_t i = 0; i < n_; ++i) inc_off_[i + 1] += inc_off_[i];
    inc_.assign(flat_.size(), 0);
    std::vector<std::uint32_t> pos(inc_off_.begin(), inc_off_.end() - 1);
    const std::size_t m = num_edges();
    for (std::size_t e = 0; e < m; ++e)
        for (Vertex v : edge(e)) inc_[pos[v]++] = static_cast<std::uint32_t>(e);
}

bool Hypergraph::has_edge(std::span<const Vertex> sorted_edge) const {
    if (sorted_edge.size() != arity()) return false;
    std::size_t lo = 0, hi = num_edges();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto e = edge(mid);
        if (std::lexicographical_compare(e.begin(), e.end(), sorted_edge.begin(),
                                         sorted_edge.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < num_edges() && std::equal(sorted_edge.begin(), sorted_edge.end(), edge(lo).begin());
}

std::vector<std::vector<Vertex>> Hypergraph::edge_list() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(num_edges());
    for (std::size_t e = 0; e < num_edges(); ++e) {
        auto s = edge(e);
        out.emplace_back(s.begin(), s.end());
    }
    return out;
}

bool is_berge_acyclic(const Hypergraph& H) {
    // Each edge acts as a star in the incidence graph; the incidence graph has a
    // cycle iff some edge joins two vertices already connected.
    DisjointSets ds(H.n());
    for (std::size_t e = 0; e < H.num_edges(); ++e) {
        auto ed = H.edge(e);
        for (std::size_t i = 1; i < ed.size(); ++i)
            if (!ds.unite(ed[0], ed[i])) return false;
    }
    return true;
}

std::vector<Component> components(const Hypergraph& H) {
    const std::size_t n = H.n();
    std::vector<std::uint32_t> comp(n, UINT32_MAX);
    std::vector<Component> out;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] != UINT32_MAX) continue;
        const auto id = static_cast<std::uint32_t>(out.size());
        Component C;
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            C.vertices.push_back(v);
            for (auto e : H.incident(v)) {
                if (H.edge(e)[0] == v) C.edges.push_back(e);
                for (Vertex w : H.edge(e))
                    if (comp[w] == UINT32_MAX) {
                        comp[w] = id;
                        stack.push_back(w);
                    }
            }
        }
        std::sort(C.vertices.begin(), C.vertices.end());
        std::sort(C.edges.begin(), C.edges.end());
        C.order = C.edges.size();
        C.is_berge_tree = component_is_berge_tree(C, H.d());
        C.is_unicyclic = C.order > 0 && C.vertices.size() == C.order * H.d();
        out.push_back(std::move(C));
    }
    return out;
}

bool component_is_berge_tree(const Component& C, unsigned d) {
    return C.vertices.size() == 1 + C.order * d;
}

std::size_t degree(const Hypergraph& H, Vertex v) { return H.degree(v); }

Ball ball(const Hypergraph& H, Vertex v, unsigned r) {
    Ball B;
    std::unordered_map<Vertex, Vertex> local;
    local.emplace(v, 0);
    B.original.push_back(v);
    B.depth.push_back(0);
    for (std::size_t head = 0; head < B.original.size(); ++head) {
        Vertex u = B.original[head];
        unsigned du = B.depth[head];
        if (du == r) continue;
        for (auto e : H.incident(u))
            for (Vertex w : H.edge(e))
                if (local.emplace(w, static_cast<Vertex>(B.original.size())).second) {
                    B.original.push_back(w);
                    B.depth.push_back(du + 1);
                }
    }
    std::vector<std::uint32_t> ids;
    for (Vertex u : B.original)
        for (auto e : H.incident(u)) ids.push_back(e);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<std::vector<Vertex>> edges;
    for (auto e : ids) {
        std::vector<Vertex> img;
        for (Vertex w : H.edge(e)) {
            auto it = local.find(w);
            if (it == local.end()) break;
            img.push_back(it->second);
        }
        if (img.size() == H.arity()) edges.push_back(std::move(img));
    }
    B.graph = Hypergraph::build(B.original.size(), H.d(), edges);
    return B;
}

Hypergraph induced(const Hypergraph& H, const Component& C) {
    std::vector<std::vector<Vertex>> edges;
    edges.reserve(C.edges.size());
    for (auto e : C.edges) {
        std::vector<Vertex> img;
        for (Vertex w : H.edge(e))
            img.push_back(static_cast<Vertex>(
                std::lower_bound(C.vertices.begin(), C.vertices.end(), w) - C.vertices.begin()));
        edges.push_back(std::move(img));
    }
    return Hypergraph::build(C.vertices.size(), H.d(), edges);
}

namespace {

struct IsoSearch {
    const Hypergraph& A;
    const Hypergraph& B;
    std::vector<std::int64_t> fwd, bwd;
    std::vector<Vertex> img;

    bool edges_consistent(Vertex a) {
        for (auto e : A.incident(a)) {
            bool full = true;
            img.clear();
            for (Vertex w : A.edge(e)) {
                if (fwd[w] < 0) {
                    full = false;
                    break;
                }
                img.push_back(static_cast<Vertex>(fwd[w]));
            }
            if (!full) continue;
            std::sort(img.begin(), img.end());
            if (!B.has_edge(img)) return false;
        }
        Vertex b = static_cast<Vertex>(fwd[a]);
        for (auto e : B.incident(b)) {
            bool full = true;
            for (Vertex w : B.edge(e))
                if (bwd[w] < 0) {
                    full = false;
                    break;
                }
            if (!full) continue;
            img.clear();
            for (Vertex w : B.edge(e)) img.push_back(static_cast<Vertex>(bwd[w]));
            std::sort(img.begin(), img.end());
            if (!A.has_edge(img)) return false;
        }
        return true;
    }

    bool extend(Vertex a) {
        if (a == A.n()) return true;
        for (Vertex b = 0; b < B.n(); ++b) {
            if (bwd[b] >= 0 || A.degree(a) != B.degree(b)) continue;
            fwd[a] = b;
            bwd[b] = a;
            if (edges_consistent(a) && extend(a + 1)) return true;
            fwd[a] = -1;
            bwd[b] = -1;
        }
        return false;
    }
};

} // namespace

bool are_isomorphic(const Hypergraph& A, const Hypergraph& B) {
    if (A.n() != B.n() || A.d() != B.d() || A.num_edges() != B.num_edges()) return false;
    std::vector<std::size_t> da(A.n()), db(B.n());
    for (Vertex v = 0; v < A.n(); ++v) {
        da[v] = A.degree(v);
        db[v] = B.degree(v);
    }
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    IsoSearch s{A, B, std::vector<std::int64_t>(A.n(), -1), std::vector<std::int64_t>(B.n(), -1), {}};
    return s.extend(0);
}

void write_text(std::ostream& os, const Hypergraph& H) {
    os << H.d() << ' ' << H.n() << '\n';
    for (std::size_t e = 0; e < H.num_edges(); ++e) {
        auto ed = H.edge(e);
        for (std::size_t i = 0; i < ed.size(); ++i) os << (i ? " " : "") << ed[i];
        os << '\n';
    }
}

Hypergraph read_text(std::istream& is) {
    std::string line;
    while (std::getline(is, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
    }
    std::istringstream hdr(line);
    unsigned d = 0;
    std::size_t n = 0;
    if (!(hdr >> d >> n)) throw std::invalid_argument("missing \"d n\" header line");
    std::vector<std::vector<Vertex>> edges;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line.rfind("marks:", 0) == 0) break;
        std::istringstream ls(line);
        std::vector<Vertex> e;
        long long x;
        while (ls >> x) {
            if (x < 0) throw std::invalid_argument("negative vertex in line: " + line);
            e.push_back(static_cast<Vertex>(x));
        }
        edges.push_back(std::move(e));
    }
    return Hypergraph::build(n, d, edges);
}

std::string to_text(const Hypergraph& H) {
    std::ostringstream os;
    write_text(os, H);
    return os.str();
}

Hypergraph from_text(const std::string& s) {
    std::istringstream is(s);
    return read_text(is);
}

} // namespace hyperlaws
