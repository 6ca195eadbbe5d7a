#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hyperlaws {

using Vertex = std::uint32_t;

// Finite (d+1)-uniform hypergraph on vertices 0..n-1. Edges are kept sorted
// and deduplicated; each vertex has a list of incident edge ids.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::size_t n, unsigned d) : n_(n), d_(d), inc_off_(n + 1, 0) {}

    // Throws std::invalid_argument naming the offending edge.
    static Hypergraph build(std::size_t n, unsigned d,
                            const std::vector<std::vector<Vertex>>& edges);

    // Flat edge list, d+1 entries per edge, each edge sorted and the list
    // strictly increasing in lexicographic order. Not re-validated beyond
    // cheap range checks.
    static Hypergraph from_sorted_flat(std::size_t n, unsigned d,
                                       std::vector<Vertex> flat);

    std::size_t n() const noexcept { return n_; }
    unsigned d() const noexcept { return d_; }
    unsigned arity() const noexcept { return d_ + 1; }
    std::size_t num_edges() const noexcept { return arity() ? flat_.size() / arity() : 0; }

    std::span<const Vertex> edge(std::size_t e) const {
        return {flat_.data() + e * arity(), arity()};
    }
    std::span<const std::uint32_t> incident(Vertex v) const {
        return {inc_.data() + inc_off_[v], inc_off_[v + 1] - inc_off_[v]};
    }
    std::size_t degree(Vertex v) const { return inc_off_[v + 1] - inc_off_[v]; }
    bool has_edge(std::span<const Vertex> sorted_edge) const;

    const std::vector<Vertex>& flat_edges() const noexcept { return flat_; }
    std::vector<std::vector<Vertex>> edge_list() const;

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.n_ == b.n_ && a.d_ == b.d_ && a.flat_ == b.flat_;
    }

private:
    void index();

    std::size_t n_ = 0;
    unsigned d_ = 1;
    std::vector<Vertex> flat_;
    std::vector<std::uint32_t> inc_off_{0};
    std::vector<std::uint32_t> inc_;
};

struct Component {
    std::vector<Vertex> vertices;   // sorted
    std::vector<std::uint32_t> edges;  // sorted edge ids into the host
    std::size_t order = 0;          // edge count
    bool is_berge_tree = false;
    bool is_unicyclic = false;
};

bool is_berge_acyclic(const Hypergraph& H);

std::vector<Component> components(const Hypergraph& H);

// Counting criterion |V| = 1 + m*d; valid for connected C.
bool component_is_berge_tree(const Component& C, unsigned d);

std::size_t degree(const Hypergraph& H, Vertex v);

// Induced ball of edge-hop radius r around v. The root becomes vertex 0 and
// the remaining vertices keep the BFS discovery order.
struct Ball {
    Hypergraph graph;
    std::vector<Vertex> original;  // original[i] = host id of local vertex i
    std::vector<unsigned> depth;
};
Ball ball(const Hypergraph& H, Vertex v, unsigned r);

// Sub-hypergraph spanned by a component, relabelled to 0..|V|-1 in sorted order.
Hypergraph induced(const Hypergraph& H, const Component& C);

// Brute-force isomorphism for small hypergraphs.
bool are_isomorphic(const Hypergraph& A, const Hypergraph& B);

void write_text(std::ostream& os, const Hypergraph& H);
Hypergraph read_text(std::istream& is);
std::string to_text(const Hypergraph& H);
Hypergraph from_text(const std::string& s);

} // namespace hyperlaws
