#include "hyperlaws/random_model.hpp"

#include <algorithm>
#include <stdexcept>

#include "hyperlaws/errors.hpp"

namespace hyperlaws {

namespace {

using u128 = unsigned __int128;
constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;

// C(x, i) for values known to stay below 2^63.
std::uint64_t choose_small(std::uint64_t x, std::uint32_t i) {
    if (i > x) return 0;
    u128 c = 1;
    for (std::uint32_t j = 1; j <= i; ++j) c = c * (x - i + j) / j;
    return static_cast<std::uint64_t>(c);
}

} // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::mt19937_64 make_engine(const Seed& seed) {
    std::uint64_t s = seed.master;
    s = splitmix64(s) ^ (seed.stream * 0xD1B54A32D192ED03ULL);
    std::vector<std::uint32_t> words;
    for (int i = 0; i < 8; ++i) {
        const auto w = splitmix64(s);
        words.push_back(static_cast<std::uint32_t>(w));
        words.push_back(static_cast<std::uint32_t>(w >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

std::uint64_t binomial_coefficient(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    u128 c = 1;
    for (std::uint64_t j = 1; j <= k; ++j) {
        c = c * (n - k + j) / j;
        if (c >= kLimit) return 0;
    }
    return static_cast<std::uint64_t>(c);
}

// Lex rank of c equals N-1 minus the colex rank of x_i = n-1-c_{k-1-i}.
std::vector<Vertex> unrank_lex(std::uint64_t rank, std::uint32_t n, std::uint32_t k) {
    const std::uint64_t N = binomial_coefficient(n, k);
    if (rank >= N) throw std::out_of_range("rank out of range");
    std::uint64_t R = N - 1 - rank;
    std::vector<Vertex> x(k);
    std::uint64_t hi = n - 1;
    for (std::uint32_t i = k; i >= 1; --i) {
        std::uint64_t lo = i - 1, up = hi;
        while (lo < up) {
            const std::uint64_t mid = (lo + up + 1) / 2;
            if (choose_small(mid, i) <= R)
                lo = mid;
            else
                up = mid - 1;
        }
        x[i - 1] = static_cast<Vertex>(lo);
        R -= choose_small(lo, i);
        hi = lo == 0 ? 0 : lo - 1;
    }
    std::vector<Vertex> c(k);
    for (std::uint32_t j = 0; j < k; ++j) c[j] = n - 1 - x[k - 1 - j];
    return c;
}

std::uint64_t rank_lex(const std::vector<Vertex>& subset, std::uint32_t n) {
    const auto k = static_cast<std::uint32_t>(subset.size());
    std::uint64_t colex = 0;
    for (std::uint32_t i = 0; i < k; ++i) colex += choose_small(n - 1 - subset[k - 1 - i], i + 1);
    return binomial_coefficient(n, k) - 1 - colex;
}

Hypergraph sample_gnp(std::size_t n, unsigned d, double p, const Seed& seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    const std::uint32_t k = d + 1;
    if (p == 0.0 || n < k) return Hypergraph::build(n, d, {});
    const std::uint64_t N = binomial_coefficient(n, k);
    if (N == 0)
        throw ResourceError("C(" + std::to_string(n) + "," + std::to_string(k) +
                            ") does not fit below 2^63");
    auto eng = make_engine(seed);
    std::int64_t M = static_cast<std::int64_t>(N);
    if (p < 1.0) {
        std::binomial_distribution<std::int64_t> bin(static_cast<std::int64_t>(N), p);
        M = bin(eng);
    }
    const auto m = static_cast<std::uint64_t>(M);
    const bool complement = m > N / 2;
    const std::uint64_t want = complement ? N - m : m;
    if (std::max(m, want) > (std::uint64_t{1} << 32))
        throw ResourceError("edge count " + std::to_string(m) + " exceeds memory budget");

    std::vector<std::uint64_t> ranks;
    ranks.reserve(want);
    std::uniform_int_distribution<std::uint64_t> uni(0, N - 1);
    while (ranks.size() < want) {
        const std::size_t have = ranks.size();
        for (std::size_t i = have; i < want; ++i) ranks.push_back(uni(eng));
        std::sort(ranks.begin(), ranks.end());
        ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    }
    if (complement) {
        std::vector<std::uint64_t> kept;
        kept.reserve(m);
        std::size_t j = 0;
        for (std::uint64_t r = 0; r < N; ++r) {
            if (j < ranks.size() && ranks[j] == r) {
                ++j;
                continue;
            }
            kept.push_back(r);
        }
        ranks = std::move(kept);
    }
    std::vector<Vertex> flat;
    flat.reserve(ranks.size() * k);
    for (auto r : ranks) {
        auto e = unrank_lex(r, static_cast<std::uint32_t>(n), k);
        flat.insert(flat.end(), e.begin(), e.end());
    }
    return Hypergraph::from_sorted_flat(n, d, std::move(flat));
}

namespace {

RootedBergeTree grow(unsigned r, double mu, unsigned d, const Seed& seed, std::size_t budget,
                     bool forced_root_edge) {
    if (mu < 0) throw std::invalid_argument("mu must be non-negative");
    auto eng = make_engine(seed);
    std::poisson_distribution<long> pois(mu > 0 ? mu : 1.0);
    std::vector<unsigned> depth{0};
    std::vector<std::vector<Vertex>> edges;
    auto sprout = [&](Vertex parent, long count) {
        for (long i = 0; i < count; ++i) {
            if (depth.size() + d > budget)
                throw ResourceError("branching tree exceeded node budget of " +
                                    std::to_string(budget));
            std::vector<Vertex> e{parent};
            for (unsigned j = 0; j < d; ++j) {
                e.push_back(static_cast<Vertex>(depth.size()));
                depth.push_back(depth[parent] + 1);
            }
            edges.push_back(std::move(e));
        }
    };
    for (std::size_t head = 0; head < depth.size(); ++head) {
        const auto v = static_cast<Vertex>(head);
        if (head == 0 && forced_root_edge) {
            sprout(v, 1);
            continue;
        }
        if (depth[v] >= r) continue;
        sprout(v, mu > 0 ? pois(eng) : 0);
    }
    RootedBergeTree t;
    t.tree = Hypergraph::build(depth.size(), d, edges);
    t.root = 0;
    t.depth = std::move(depth);
    return t;
}

} // namespace

RootedBergeTree sample_poisson_tree(unsigned r, double mu, unsigned d, const Seed& seed,
                                    std::size_t node_budget) {
    return grow(r, mu, d, seed, node_budget, false);
}

RootedBergeTree sample_poisson_tree_edge_rooted(unsigned r, double mu, unsigned d,
                                                const Seed& seed, std::size_t node_budget) {
    return grow(r, mu, d, seed, node_budget, true);
}

} // namespace hyperlaws
