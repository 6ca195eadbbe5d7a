#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hyperlaws {

// Element of N_s = {0..s, MANY}.
using Count = std::uint32_t;
inline constexpr Count kMany = std::numeric_limits<Count>::max();

inline Count cap_count(std::uint64_t k, unsigned s) { return k > s ? kMany : static_cast<Count>(k); }
inline Count add_counts(Count a, Count b, unsigned s) {
    if (a == kMany || b == kMany) return kMany;
    return cap_count(static_cast<std::uint64_t>(a) + b, s);
}
std::string count_string(Count k);

struct Value;
struct Pattern;
using ValuePtr = std::shared_ptr<const Value>;
using PatternPtr = std::shared_ptr<const Pattern>;

// Multiset of d child (r,s)-values of an edge hanging below the root.
struct Pattern {
    unsigned r = 0;  // level of the child values
    unsigned s = 0;
    std::vector<std::pair<ValuePtr, unsigned>> parts;  // sorted by value key, multiplicities > 0
    std::string key;

    unsigned arity() const;
};

// (r,s)-value: number of root edges per pattern, capped at s. Patterns with
// count 0 are omitted.
struct Value {
    unsigned r = 0;
    unsigned s = 0;
    std::vector<std::pair<PatternPtr, Count>> entries;  // sorted by pattern key
    std::string key;

    std::uint64_t root_degree_lower_bound() const;
};

struct NonTree {
    friend bool operator==(const NonTree&, const NonTree&) { return true; }
};
inline const std::string kNonTreeKey = "nontree";

using LocalValue = std::variant<ValuePtr, NonTree>;
std::string key_of(const LocalValue& v);

ValuePtr trivial_value(unsigned s);
PatternPtr make_pattern(std::vector<ValuePtr> children);
// Entries with equal pattern keys are merged; counts are capped at s.
ValuePtr make_value(unsigned r, unsigned s, std::vector<std::pair<PatternPtr, Count>> entries);

// Coarsen an (r,s)-value to (r2,s2), r2 <= r and s2 <= s.
ValuePtr coarsen(const ValuePtr& v, unsigned r2, unsigned s2);
PatternPtr coarsen(const PatternPtr& p, unsigned r2, unsigned s2);

} // namespace hyperlaws
