#include "hyperlaws/completions.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperlaws/berge_enum.hpp"
#include "hyperlaws/errors.hpp"

namespace hyperlaws {

namespace {

double node_weight(const std::vector<Count>& m, const std::vector<double>& lambdas, unsigned h) {
    double w = 1.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != kUnset) w *= capped_poisson(m[i], lambdas[i], h);
    return w;
}

void expand(SpanningNode& node, const WeightedTree& T) {
    if (node.h == T.depth) return;
    const unsigned h = node.h + 1;
    // Per-coordinate options at height h.
    std::vector<std::vector<Count>> options(node.m.size());
    for (std::size_t i = 0; i < node.m.size(); ++i) {
        const Count cur = node.m[i];
        if (cur == kUnset) {
            if (T.entry_level[i] == h) {
                for (Count k = 0; k <= h; ++k) options[i].push_back(k);
                options[i].push_back(kMany);
            } else {
                options[i].push_back(kUnset);
            }
        } else if (cur == kMany) {
            options[i] = {static_cast<Count>(h), kMany};
        } else {
            options[i] = {cur};
        }
    }
    std::vector<std::size_t> digit(options.size(), 0);
    for (;;) {
        SpanningNode child;
        child.h = h;
        for (std::size_t i = 0; i < options.size(); ++i) child.m.push_back(options[i][digit[i]]);
        child.weight = node_weight(child.m, T.lambdas, h);
        node.children.push_back(std::move(child));
        std::size_t i = 0;
        while (i < digit.size() && ++digit[i] == options[i].size()) digit[i++] = 0;
        if (i == digit.size()) break;
    }
    for (auto& c : node.children) expand(c, T);
}

std::size_t count_nodes(const SpanningNode& n) {
    std::size_t c = 1;
    for (const auto& k : n.children) c += count_nodes(k);
    return c;
}

nlohmann::json node_json(const SpanningNode& n) {
    nlohmann::json m = nlohmann::json::array();
    for (Count k : n.m) {
        if (k == kUnset)
            m.push_back(nullptr);
        else if (k == kMany)
            m.push_back("M");
        else
            m.push_back(k);
    }
    nlohmann::json j{{"m", m}, {"h", n.h}, {"weight", n.weight}};
    if (!n.children.empty()) {
        j["children"] = nlohmann::json::array();
        for (const auto& c : n.children) j["children"].push_back(node_json(c));
    }
    return j;
}

void check(const SpanningNode& n, double tol, ConsistencyReport& rep) {
    if (n.children.empty()) return;
    double sum = 0;
    for (const auto& c : n.children) {
        sum += c.weight;
        check(c, tol, rep);
    }
    const double defect = std::abs(sum - n.weight);
    rep.max_defect = std::max(rep.max_defect, defect);
    if (defect > tol) rep.ok = false;
}

} // namespace

std::size_t WeightedTree::node_count() const { return count_nodes(root); }

nlohmann::json WeightedTree::to_json() const {
    return {{"labels", labels},
            {"lambdas", lambdas},
            {"entry_level", entry_level},
            {"depth", depth},
            {"root", node_json(root)}};
}

WeightedTree build_spanning_tree(std::vector<double> lambdas, std::vector<unsigned> entry_level,
                                 unsigned depth, std::vector<std::string> labels) {
    if (entry_level.size() != lambdas.size())
        throw std::invalid_argument("one entry level per coordinate required");
    for (auto e : entry_level)
        if (e < 1) throw std::invalid_argument("entry levels start at 1");
    WeightedTree T;
    T.lambdas = std::move(lambdas);
    T.entry_level = std::move(entry_level);
    T.depth = depth;
    T.labels = std::move(labels);
    T.root.m.assign(T.lambdas.size(), kUnset);
    T.root.h = 0;
    T.root.weight = 1.0;
    expand(T.root, T);
    return T;
}

WeightedTree build_weighted_tree(const std::vector<double>& lambdas, unsigned s_max) {
    return build_spanning_tree(lambdas, std::vector<unsigned>(lambdas.size(), 1), s_max);
}

WeightedTree build_weighted_tree(const PoissonPrediction& prediction, unsigned s_max) {
    std::vector<std::string> labels;
    for (const auto& [code, lam] : prediction.lambdas) labels.push_back(code);
    return build_spanning_tree(prediction.values(),
                               std::vector<unsigned>(prediction.lambdas.size(), 1), s_max,
                               std::move(labels));
}

WeightedTree build_cantor_tree(unsigned d, double lambda, unsigned depth) {
    const unsigned t0 = d == 1 ? 3 : 2;
    std::vector<double> lambdas;
    std::vector<unsigned> entry;
    std::vector<std::string> labels;
    for (unsigned h = 1; h <= depth; ++h) {
        const unsigned t = t0 + h - 1;
        lambdas.push_back(cycle_length_mean(d, lambda, t));
        entry.push_back(h);
        labels.push_back("cycle:" + std::to_string(t));
    }
    return build_spanning_tree(std::move(lambdas), std::move(entry), depth, std::move(labels));
}

ConsistencyReport verify_hereditary_consistency(const WeightedTree& tree, double tol) {
    ConsistencyReport rep;
    rep.max_defect = std::abs(tree.root.weight - 1.0);
    rep.ok = rep.max_defect <= tol;
    check(tree.root, tol, rep);
    return rep;
}

std::string to_string(SpaceKind k) {
    switch (k) {
    case SpaceKind::OnePoint: return "one-point";
    case SpaceKind::Countable: return "countable";
    default: return "cantor";
    }
}

SpaceKind space_kind(const Regime& regime) {
    switch (regime.clause) {
    case Clause::IIA:
    case Clause::IIB: return SpaceKind::Countable;
    case Clause::III: return SpaceKind::Cantor;
    case Clause::OutOfJ: throw DomainError("regime lies outside J");
    default: return SpaceKind::OnePoint;
    }
}

std::string to_string(LimitPoints k) {
    return k == LimitPoints::One ? "one" : "countably-many";
}

LimitPoints limit_point_count(unsigned d, unsigned l) {
    return enumerate_tree_types(d, l).size() == 1 ? LimitPoints::One : LimitPoints::CountablyMany;
}

} // namespace hyperlaws
