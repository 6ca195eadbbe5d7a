#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperlaws/hypergraph.hpp"

namespace hyperlaws {

inline constexpr std::size_t kDefaultMaxTreeVertices = 16;

struct BergeTreeType {
    unsigned d = 1;
    unsigned l = 0;
    unsigned v = 1;
    std::string code;
    std::uint64_t a = 1;  // |Aut|
    std::uint64_t c = 1;  // v!/a labelled copies
    Hypergraph tree;      // a representative
};

struct MarkedBergeTreeType {
    BergeTreeType base;
    std::vector<Vertex> marks;  // sorted, vertices of base.tree
    unsigned vstar = 0;
    std::string code;        // iso-complete among marked trees
    std::uint64_t a = 1;     // mark-preserving automorphisms
    std::uint64_t c = 1;     // v!/a
    bool minimal = false;
};

// Throws std::invalid_argument if T is not a Berge-tree.
std::string canonical_code(const Hypergraph& T);
std::string canonical_code(const Hypergraph& T, const std::vector<Vertex>& marks);

std::uint64_t automorphism_count(const Hypergraph& T);
std::uint64_t automorphism_count(const Hypergraph& T, const std::vector<Vertex>& marks);

std::uint64_t labelled_count(const BergeTreeType& t);

std::uint64_t factorial(unsigned k);

// Sorted by code. Throws ResourceError when 1+l*d exceeds max_vertices.
std::vector<BergeTreeType> enumerate_tree_types(unsigned d, unsigned l,
                                                std::size_t max_vertices = kDefaultMaxTreeVertices);

// l = 0 is accepted: the lone vertex, markable once.
std::vector<MarkedBergeTreeType> enumerate_marked_types(
    unsigned d, unsigned l, unsigned vstar, bool minimal_only,
    std::size_t max_vertices = kDefaultMaxTreeVertices);

// Edges of a Berge-tree adjacent to exactly one other edge; the unique edge of
// an order-1 tree also counts as a leaf.
std::vector<std::size_t> leaf_edges(const Hypergraph& T);

bool is_minimal(const Hypergraph& T, const std::vector<Vertex>& marks);
inline bool is_minimal(const MarkedBergeTreeType& m) { return is_minimal(m.base.tree, m.marks); }

MarkedBergeTreeType make_marked_type(const Hypergraph& T, const std::vector<Vertex>& marks);
BergeTreeType make_tree_type(const Hypergraph& T);

// Copies of m in H: injective edge-preserving maps whose marked vertices land
// on host vertices of exactly the same degree, modulo Aut(m).
std::uint64_t count_marked_copies(const Hypergraph& H, const MarkedBergeTreeType& m);

std::string to_text(const MarkedBergeTreeType& m);

} // namespace hyperlaws
