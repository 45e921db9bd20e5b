// Brute-force reference routines for the test suites. Nothing here calls the
// library's structural or spectral algorithms beyond building graphs.
#ifndef BLOCKFIEDLER_TESTS_ORACLES_HPP
#define BLOCKFIEDLER_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "blockfiedler/graph.hpp"

namespace oracle {

using blockfiedler::Graph;
using blockfiedler::Vertex;
using blockfiedler::VertexPair;
using blockfiedler::VertexSet;

inline std::size_t component_count(const Graph &g, Vertex removed) {
    std::vector<char> seen(g.order() + 1, 0);
    if (removed) seen[removed] = 1;
    std::size_t count = 0;
    for (Vertex s = 1; s <= g.order(); ++s) {
        if (seen[s]) continue;
        ++count;
        std::vector<Vertex> st{s};
        seen[s] = 1;
        while (!st.empty()) {
            Vertex u = st.back();
            st.pop_back();
            for (Vertex w = 1; w <= g.order(); ++w)
                if (!seen[w] && g.weight(u, w) > 0) {
                    seen[w] = 1;
                    st.push_back(w);
                }
        }
    }
    return count;
}

/// Cut vertices by deleting each vertex and counting components.
inline VertexSet cut_vertices(const Graph &g) {
    VertexSet out;
    const auto base = component_count(g, 0);
    for (Vertex v = 1; v <= g.order(); ++v)
        if (component_count(g, v) > base) out.push_back(v);
    return out;
}

/// All-pairs hop distances (Floyd-Warshall), 1-based.
inline std::vector<std::vector<std::size_t>> all_pairs(const Graph &g) {
    const std::size_t n = g.order(), inf = 1u << 30;
    std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(n + 1, inf));
    for (Vertex v = 1; v <= n; ++v) d[v][v] = 0;
    for (const auto &e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
    for (Vertex k = 1; k <= n; ++k)
        for (Vertex i = 1; i <= n; ++i)
            for (Vertex j = 1; j <= n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

/// Relabels g by perm (perm[v-1] = new label of v).
inline Graph relabel(const Graph &g, const std::vector<Vertex> &perm) {
    std::vector<VertexPair> edges;
    for (const auto &e : g.edges()) edges.emplace_back(perm[e.u - 1], perm[e.v - 1]);
    return blockfiedler::build_graph(g.order(), edges);
}

/// Backtracking isomorphism test with degree pruning. Fine for the small and
/// highly symmetric graphs used in tests.
inline bool isomorphic(const Graph &a, const Graph &b) {
    const std::size_t n = a.order();
    if (n != b.order() || a.size() != b.size()) return false;
    std::vector<std::size_t> da, db;
    for (Vertex v = 1; v <= n; ++v) {
        da.push_back(a.degree(v));
        db.push_back(b.degree(v));
    }
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    std::vector<Vertex> map(n + 1, 0);
    std::vector<char> used(n + 1, 0);
    std::function<bool(Vertex)> extend = [&](Vertex v) -> bool {
        if (v > n) return true;
        for (Vertex w = 1; w <= n; ++w) {
            if (used[w] || a.degree(v) != b.degree(w)) continue;
            bool ok = true;
            for (Vertex x = 1; x < v && ok; ++x) ok = a.adjacent(v, x) == b.adjacent(w, map[x]);
            if (!ok) continue;
            map[v] = w;
            used[w] = 1;
            if (extend(v + 1)) return true;
            used[w] = 0;
        }
        return false;
    };
    return extend(1);
}

/// Canonical adjacency bitstring: minimum over all relabelings that keep
/// vertices sorted by degree. Exponential; meant for n <= 8.
inline std::vector<std::uint8_t> canonical_form(const Graph &g) {
    const std::size_t n = g.order();
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return g.degree(x) < g.degree(y); });
    std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) of equal degree
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && g.degree(order[j]) == g.degree(order[i])) ++j;
        groups.emplace_back(i, j);
        i = j;
    }
    std::vector<std::uint8_t> best;
    std::function<void(std::size_t)> rec = [&](std::size_t gi) {
        if (gi == groups.size()) {
            std::vector<std::uint8_t> code;
            code.push_back(static_cast<std::uint8_t>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) code.push_back(g.adjacent(order[i], order[j]));
            if (best.empty() || code < best) best = code;
            return;
        }
        auto [b, e] = groups[gi];
        std::sort(order.begin() + b, order.begin() + e);
        do {
            rec(gi + 1);
        } while (std::next_permutation(order.begin() + b, order.begin() + e));
    };
    rec(0);
    return best;
}

/// Every connected block graph on at most max_n vertices, up to isomorphism,
/// grown by gluing cliques one vertex at a time onto existing vertices.
inline std::vector<Graph> all_block_graphs(std::size_t max_n) {
    std::set<std::vector<std::uint8_t>> seen;
    std::vector<Graph> out;
    std::vector<std::vector<VertexPair>> frontier;
    std::vector<std::size_t> orders;
    for (std::size_t k = 1; k <= max_n; ++k) {
        std::vector<VertexPair> e;
        for (Vertex a = 1; a <= k; ++a)
            for (Vertex b = a + 1; b <= k; ++b) e.emplace_back(a, b);
        frontier.push_back(e);
        orders.push_back(k);
    }
    while (!frontier.empty()) {
        auto edges = frontier.back();
        auto n = orders.back();
        frontier.pop_back();
        orders.pop_back();
        Graph g = blockfiedler::build_graph(n, edges);
        if (!seen.insert(canonical_form(g)).second) continue;
        out.push_back(g);
        for (Vertex at = 1; at <= n; ++at) {
            for (std::size_t s = 2; n + s - 1 <= max_n; ++s) {
                auto e2 = edges;
                std::vector<Vertex> clique{at};
                for (std::size_t i = 1; i < s; ++i) clique.push_back(n + i);
                for (std::size_t i = 0; i < s; ++i)
                    for (std::size_t j = i + 1; j < s; ++j) e2.emplace_back(clique[i], clique[j]);
                frontier.push_back(e2);
                orders.push_back(n + s - 1);
            }
        }
    }
    return out;
}

/// Random connected graph: a random tree plus extra random edges.
inline Graph random_connected(std::mt19937 &rng, std::size_t n, double extra_density) {
    std::vector<VertexPair> edges;
    std::set<VertexPair> have;
    for (Vertex v = 2; v <= n; ++v) {
        Vertex p = std::uniform_int_distribution<Vertex>(1, v - 1)(rng);
        edges.emplace_back(p, v);
        have.insert({p, v});
    }
    std::bernoulli_distribution coin(extra_density);
    for (Vertex a = 1; a <= n; ++a)
        for (Vertex b = a + 1; b <= n; ++b)
            if (!have.count({a, b}) && coin(rng)) edges.emplace_back(a, b);
    return blockfiedler::build_graph(n, edges);
}

}  // namespace oracle

#endif  // BLOCKFIEDLER_TESTS_ORACLES_HPP
