#include "hyperlaws/local_values.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperlaws {

std::string count_string(Count k) { return k == kMany ? "M" : std::to_string(k); }

std::string key_of(const LocalValue& v) {
    if (std::holds_alternative<NonTree>(v)) return kNonTreeKey;
    return std::get<ValuePtr>(v)->key;
}

unsigned Pattern::arity() const {
    unsigned a = 0;
    for (const auto& [v, k] : parts) a += k;
    return a;
}

std::uint64_t Value::root_degree_lower_bound() const {
    std::uint64_t t = 0;
    for (const auto& [p, k] : entries) t += k == kMany ? s + 1 : k;
    return t;
}

ValuePtr trivial_value(unsigned s) {
    auto v = std::make_shared<Value>();
    v->r = 0;
    v->s = s;
    v->key = ".";
    return v;
}

PatternPtr make_pattern(std::vector<ValuePtr> children) {
    if (children.empty()) throw std::invalid_argument("pattern needs at least one child value");
    std::sort(children.begin(), children.end(),
              [](const ValuePtr& a, const ValuePtr& b) { return a->key < b->key; });
    auto p = std::make_shared<Pattern>();
    p->r = children.front()->r;
    p->s = children.front()->s;
    for (const auto& c : children) {
        if (c->r != p->r || c->s != p->s)
            throw std::invalid_argument("pattern children must share (r,s)");
        if (!p->parts.empty() && p->parts.back().first->key == c->key)
            ++p->parts.back().second;
        else
            p->parts.emplace_back(c, 1);
    }
    p->key = "<";
    for (const auto& [v, k] : p->parts) p->key += v->key + "*" + std::to_string(k) + ";";
    p->key += ">";
    return p;
}

ValuePtr make_value(unsigned r, unsigned s, std::vector<std::pair<PatternPtr, Count>> entries) {
    if (r == 0) {
        if (!entries.empty()) throw std::invalid_argument("level-0 value has no entries");
        return trivial_value(s);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first->key < b.first->key; });
    auto v = std::make_shared<Value>();
    v->r = r;
    v->s = s;
    for (auto& [p, k] : entries) {
        if (p->r + 1 != r || p->s != s)
            throw std::invalid_argument("pattern level does not match value level");
        if (k == 0) continue;
        if (!v->entries.empty() && v->entries.back().first->key == p->key)
            v->entries.back().second = add_counts(v->entries.back().second, k, s);
        else
            v->entries.emplace_back(p, k == kMany ? kMany : cap_count(k, s));
    }
    v->key = "{";
    for (const auto& [p, k] : v->entries) v->key += p->key + "=" + count_string(k) + ";";
    v->key += "}";
    return v;
}

PatternPtr coarsen(const PatternPtr& p, unsigned r2, unsigned s2) {
    std::vector<ValuePtr> kids;
    for (const auto& [v, k] : p->parts) {
        auto c = coarsen(v, r2, s2);
        for (unsigned i = 0; i < k; ++i) kids.push_back(c);
    }
    return make_pattern(std::move(kids));
}

ValuePtr coarsen(const ValuePtr& v, unsigned r2, unsigned s2) {
    if (r2 > v->r || s2 > v->s) throw std::invalid_argument("coarsening must not refine");
    if (r2 == 0) return trivial_value(s2);
    std::vector<std::pair<PatternPtr, Count>> entries;
    for (const auto& [p, k] : v->entries) entries.emplace_back(coarsen(p, r2 - 1, s2), k);
    return make_value(r2, s2, std::move(entries));
}

} // namespace hyperlaws
