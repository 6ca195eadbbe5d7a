#include "hyperlaws/ef_game.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperlaws/errors.hpp"

namespace hyperlaws {

namespace {

class GameSolver {
public:
    GameSolver(const Hypergraph& a, const Hypergraph& b, std::size_t cap)
        : A(a), B(b), cap_(cap), used_a_(a.n(), 0), used_b_(b.n(), 0) {}

    GameResult solve(unsigned k) {
        GameResult res;
        res.duplicator_wins = true;
        for (int side = 1; side <= 2 && res.duplicator_wins; ++side) {
            const std::size_t n = side == 1 ? A.n() : B.n();
            for (Vertex v = 0; v < n; ++v)
                if (!has_answer(side, v, k)) {
                    res.duplicator_wins = false;
                    res.spoiler_move = SpoilerMove{side, v};
                    break;
                }
        }
        res.states = memo_.size();
        return res;
    }

private:
    // The pair just pushed keeps the map a partial isomorphism.
    bool last_pair_ok() {
        const std::size_t j = xs_.size() - 1;
        const unsigned d = A.d();
        if (j < d) return true;
        std::vector<std::size_t> idx(d);
        for (unsigned i = 0; i < d; ++i) idx[i] = i;
        std::vector<Vertex> ea(d + 1), eb(d + 1);
        for (;;) {
            for (unsigned i = 0; i < d; ++i) {
                ea[i] = xs_[idx[i]];
                eb[i] = ys_[idx[i]];
            }
            ea[d] = xs_[j];
            eb[d] = ys_[j];
            std::sort(ea.begin(), ea.end());
            std::sort(eb.begin(), eb.end());
            if (A.has_edge(ea) != B.has_edge(eb)) return false;
            int t = static_cast<int>(d) - 1;
            while (t >= 0 && idx[t] == j - d + t) --t;
            if (t < 0) return true;
            ++idx[t];
            for (unsigned u = t + 1; u < d; ++u) idx[u] = idx[u - 1] + 1;
        }
    }

    bool has_answer(int side, Vertex v, unsigned rounds) {
        const Hypergraph& other = side == 1 ? B : A;
        auto& used_here = side == 1 ? used_a_ : used_b_;
        auto& used_other = side == 1 ? used_b_ : used_a_;
        if (used_here[v]) return true;
        used_here[v] = 1;
        bool found = false;
        for (Vertex w = 0; w < other.n() && !found; ++w) {
            if (used_other[w]) continue;
            used_other[w] = 1;
            xs_.push_back(side == 1 ? v : w);
            ys_.push_back(side == 1 ? w : v);
            found = last_pair_ok() && duplicator_survives(rounds - 1);
            xs_.pop_back();
            ys_.pop_back();
            used_other[w] = 0;
        }
        used_here[v] = 0;
        return found;
    }

    bool duplicator_survives(unsigned rounds) {
        if (rounds == 0) return true;
        std::vector<std::uint64_t> pairs(xs_.size());
        for (std::size_t i = 0; i < xs_.size(); ++i)
            pairs[i] = (static_cast<std::uint64_t>(xs_[i]) << 32) | ys_[i];
        std::sort(pairs.begin(), pairs.end());
        std::string key(reinterpret_cast<const char*>(pairs.data()), pairs.size() * 8);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (memo_.size() >= cap_)
            throw ResourceError("EF game exceeded " + std::to_string(cap_) + " positions");
        bool ok = true;
        for (int side = 1; side <= 2 && ok; ++side) {
            const std::size_t n = side == 1 ? A.n() : B.n();
            const auto& used = side == 1 ? used_a_ : used_b_;
            for (Vertex v = 0; v < n && ok; ++v)
                if (!used[v]) ok = has_answer(side, v, rounds);
        }
        memo_.emplace(std::move(key), ok);
        return ok;
    }

    const Hypergraph& A;
    const Hypergraph& B;
    std::size_t cap_;
    std::vector<char> used_a_, used_b_;
    std::vector<Vertex> xs_, ys_;
    std::unordered_map<std::string, bool> memo_;
};

} // namespace

GameResult solve_ef_game(const Hypergraph& H1, const Hypergraph& H2, unsigned k,
                         std::size_t state_cap) {
    if (H1.d() != H2.d()) throw std::invalid_argument("uniformity mismatch");
    if (k > std::min(H1.n(), H2.n())) {
        GameResult r;
        r.duplicator_wins = are_isomorphic(H1, H2);
        return r;
    }
    if (k == 0) return GameResult{};
    return GameSolver(H1, H2, state_cap).solve(k);
}

bool duplicator_wins(const Hypergraph& H1, const Hypergraph& H2, unsigned k,
                     std::size_t state_cap) {
    return solve_ef_game(H1, H2, k, state_cap).duplicator_wins;
}

std::optional<unsigned> distinguishing_depth(const Hypergraph& H1, const Hypergraph& H2,
                                             unsigned k_max, std::size_t state_cap) {
    for (unsigned k = 1; k <= k_max; ++k)
        if (!duplicator_wins(H1, H2, k, state_cap)) return k;
    return std::nullopt;
}

namespace {

class TypeTable {
public:
    int intern(const std::string& key) {
        auto [it, fresh] = ids_.try_emplace(key, static_cast<int>(ids_.size()));
        return it->second;
    }

private:
    std::map<std::string, int> ids_;
};

std::string atomic_type(const Hypergraph& H, const std::vector<Vertex>& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) s.push_back(t[i] == t[j] ? '=' : '.');
    const unsigned k = H.arity();
    if (t.size() >= k) {
        std::vector<char> pick(t.size(), 0);
        std::fill(pick.begin(), pick.begin() + k, 1);
        std::vector<Vertex> e;
        do {
            e.clear();
            for (std::size_t i = 0; i < t.size(); ++i)
                if (pick[i]) e.push_back(t[i]);
            std::sort(e.begin(), e.end());
            const bool distinct = std::adjacent_find(e.begin(), e.end()) == e.end();
            s.push_back(distinct && H.has_edge(e) ? 'E' : '-');
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return s;
}

int hintikka(const Hypergraph& H, std::vector<Vertex>& tuple, unsigned depth, TypeTable& table) {
    std::string key = atomic_type(H, tuple);
    if (depth > 0) {
        std::vector<int> ext;
        for (Vertex b = 0; b < H.n(); ++b) {
            tuple.push_back(b);
            ext.push_back(hintikka(H, tuple, depth - 1, table));
            tuple.pop_back();
        }
        std::sort(ext.begin(), ext.end());
        ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
        key += "|" + std::to_string(depth) + ":";
        for (int x : ext) key += std::to_string(x) + ",";
    }
    return table.intern(key);
}

} // namespace

bool fo_equivalent_depth(const Hypergraph& H1, const Hypergraph& H2, unsigned k) {
    if (H1.d() != H2.d()) throw std::invalid_argument("uniformity mismatch");
    if (k > 3 || H1.n() > 6 || H2.n() > 6)
        throw ResourceError("first-order oracle limited to k <= 3 and 6 vertices");
    TypeTable table;
    std::vector<Vertex> t;
    const int a = hintikka(H1, t, k, table);
    const int b = hintikka(H2, t, k, table);
    return a == b;
}

} // namespace hyperlaws
