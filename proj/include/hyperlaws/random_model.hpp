#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hyperlaws/hypergraph.hpp"

namespace hyperlaws {

struct Seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;
};

std::uint64_t splitmix64(std::uint64_t& state);

// Engine for one (master, stream) pair; streams are decorrelated by hashing.
std::mt19937_64 make_engine(const Seed& seed);

// Exact C(n, k), or 0 when it does not fit below 2^63.
std::uint64_t binomial_coefficient(std::uint64_t n, std::uint64_t k);

// The k-subset of {0..n-1} with the given rank in lexicographic order.
std::vector<Vertex> unrank_lex(std::uint64_t rank, std::uint32_t n, std::uint32_t k);
std::uint64_t rank_lex(const std::vector<Vertex>& subset, std::uint32_t n);

// G^{d+1}(n,p). Throws ResourceError when C(n,d+1) >= 2^63.
Hypergraph sample_gnp(std::size_t n, unsigned d, double p, const Seed& seed);

struct RootedBergeTree {
    Hypergraph tree;
    Vertex root = 0;
    std::vector<unsigned> depth;
};

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

// Every vertex of depth < r sprouts Poisson(mu) edges of d fresh vertices.
RootedBergeTree sample_poisson_tree(unsigned r, double mu, unsigned d, const Seed& seed,
                                    std::size_t node_budget = kDefaultNodeBudget);

// As above but the root carries exactly one forced edge and nothing else.
RootedBergeTree sample_poisson_tree_edge_rooted(unsigned r, double mu, unsigned d,
                                                const Seed& seed,
                                                std::size_t node_budget = kDefaultNodeBudget);

} // namespace hyperlaws
