#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlaws/local_values.hpp"
#include "hyperlaws/theory.hpp"

namespace hyperlaws {

// Coordinate not yet constrained at this height.
inline constexpr Count kUnset = kMany - 1;

struct SpanningNode {
    std::vector<Count> m;
    unsigned h = 0;
    double weight = 1.0;
    std::vector<SpanningNode> children;
};

struct WeightedTree {
    std::vector<std::string> labels;
    std::vector<double> lambdas;
    std::vector<unsigned> entry_level;  // height at which each coordinate is first split
    unsigned depth = 0;
    SpanningNode root;

    std::size_t node_count() const;
    nlohmann::json to_json() const;
};

// Coordinate i enters at height entry_level[i] >= 1 splitting into
// {0..h, MANY}; afterwards MANY at height h-1 splits into {h, MANY}.
WeightedTree build_spanning_tree(std::vector<double> lambdas, std::vector<unsigned> entry_level,
                                 unsigned depth, std::vector<std::string> labels = {});

WeightedTree build_weighted_tree(const PoissonPrediction& prediction, unsigned s_max);
WeightedTree build_weighted_tree(const std::vector<double>& lambdas, unsigned s_max);

// Double Jump tree: one new cycle-length coordinate per height.
WeightedTree build_cantor_tree(unsigned d, double lambda, unsigned depth);

struct ConsistencyReport {
    bool ok = true;
    double max_defect = 0;
};
ConsistencyReport verify_hereditary_consistency(const WeightedTree& tree, double tol);

enum class SpaceKind { OnePoint, Countable, Cantor };
std::string to_string(SpaceKind k);

// Throws DomainError for regimes outside J.
SpaceKind space_kind(const Regime& regime);

enum class LimitPoints { One, CountablyMany };
std::string to_string(LimitPoints k);
LimitPoints limit_point_count(unsigned d, unsigned l);

} // namespace hyperlaws
