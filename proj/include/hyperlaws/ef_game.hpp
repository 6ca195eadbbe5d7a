#pragma once

#include <cstddef>
#include <optional>

#include "hyperlaws/hypergraph.hpp"

namespace hyperlaws {

inline constexpr std::size_t kDefaultGameStateCap = 5'000'000;

struct SpoilerMove {
    int side = 1;  // 1 or 2
    Vertex vertex = 0;
};

struct GameResult {
    bool duplicator_wins = true;
    std::optional<SpoilerMove> spoiler_move;  // a winning first move when Spoiler wins
    std::size_t states = 0;
};

// k-round game, vertices never repeated. When k exceeds either vertex count
// Duplicator wins iff the hypergraphs are isomorphic. Throws ResourceError
// past state_cap memoized positions.
GameResult solve_ef_game(const Hypergraph& H1, const Hypergraph& H2, unsigned k,
                         std::size_t state_cap = kDefaultGameStateCap);

bool duplicator_wins(const Hypergraph& H1, const Hypergraph& H2, unsigned k,
                     std::size_t state_cap = kDefaultGameStateCap);

std::optional<unsigned> distinguishing_depth(const Hypergraph& H1, const Hypergraph& H2,
                                             unsigned k_max,
                                             std::size_t state_cap = kDefaultGameStateCap);

// Same sentences of quantifier depth <= k, by comparing Hintikka types.
// Requires k <= 3 and at most 6 vertices per side.
bool fo_equivalent_depth(const Hypergraph& H1, const Hypergraph& H2, unsigned k);

} // namespace hyperlaws
