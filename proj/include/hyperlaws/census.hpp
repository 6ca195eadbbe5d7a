#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlaws/berge_enum.hpp"
#include "hyperlaws/hypergraph.hpp"
#include "hyperlaws/local_values.hpp"

namespace hyperlaws {

inline const std::string kResidualLarge = "order>l_max";
inline const std::string kResidualNonTree = "non-tree";
inline const std::string kResidualMulticyclic = "multicyclic";

struct CensusReport {
    std::map<std::string, std::uint64_t> counts;
    std::map<std::string, std::uint64_t> residual;
    nlohmann::json meta = nlohmann::json::object();

    std::uint64_t count(const std::string& key) const {
        auto it = counts.find(key);
        return it == counts.end() ? 0 : it->second;
    }
    std::uint64_t total() const;
    nlohmann::json to_json() const;
};

// Components keyed by tree code; isolated vertices have code "v".
CensusReport tree_component_census(const Hypergraph& H, unsigned l_max);

// Copies of every minimal v*-marked l-tree type, keyed by marked code.
CensusReport marked_copy_census(const Hypergraph& H, unsigned l, unsigned vstar);
CensusReport marked_copy_census(const Hypergraph& H, const std::vector<MarkedBergeTreeType>& types);

inline std::string cycle_key(unsigned t) { return "cycle:" + std::to_string(t); }

// Incidence cycles with t edges, 2 <= t <= t_max.
CensusReport cycle_census(const Hypergraph& H, unsigned t_max);

LocalValue value_of_ball(const Hypergraph& H, Vertex v, unsigned r, unsigned s);

struct ValueFrequencies {
    std::map<std::string, double> freq;      // key -> relative frequency
    std::map<std::string, ValuePtr> values;  // representatives (NonTree absent)
};
ValueFrequencies value_distribution(const Hypergraph& H, unsigned r, unsigned s);

// Keys "C<t>:<tokens>" for unicyclic components; tree components are skipped.
CensusReport unicyclic_pattern_census(const Hypergraph& H, unsigned r, unsigned s);

// Key of the bare cycle of size t with no pendant structure.
std::string bare_cycle_key(unsigned d, unsigned t, unsigned r, unsigned s);

} // namespace hyperlaws
