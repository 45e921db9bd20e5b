#ifndef BLOCKFIEDLER_STRUCTURE_HPP
#define BLOCKFIEDLER_STRUCTURE_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <queue>
#include <utility>
#include <vector>

#include "blockfiedler/errors.hpp"
#include "blockfiedler/graph.hpp"

namespace blockfiedler {

/// Hop distances from `source` to every vertex; entry 0 is unused and
/// unreachable vertices hold `unreachable`.
inline constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

inline std::vector<std::size_t> bfs_distances(const Graph &g, Vertex source) {
    std::vector<std::size_t> dist(g.order() + 1, unreachable);
    if (!g.contains(source)) throw InvalidGraph("vertex " + std::to_string(source) + " out of range");
    std::queue<Vertex> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        Vertex u = frontier.front();
        frontier.pop();
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] == unreachable) {
                dist[w] = dist[u] + 1;
                frontier.push(w);
            }
        }
    }
    return dist;
}

inline bool is_connected(const Graph &g) {
    if (g.order() == 0) return true;
    auto dist = bfs_distances(g, 1);
    return std::none_of(dist.begin() + 1, dist.end(), [](std::size_t d) { return d == unreachable; });
}

inline void require_connected(const Graph &g, const char *what) {
    if (!is_connected(g)) throw PreconditionError(std::string(what) + ": graph is disconnected");
}

/// Components of g with `removed` deleted, each sorted, ordered by smallest vertex.
/// Pass removed = 0 to get the components of g itself.
inline std::vector<VertexSet> components_without(const Graph &g, Vertex removed) {
    std::vector<char> seen(g.order() + 1, 0);
    if (removed != 0) seen.at(removed) = 1;
    std::vector<VertexSet> out;
    for (Vertex s = 1; s <= g.order(); ++s) {
        if (seen[s]) continue;
        VertexSet comp;
        std::vector<Vertex> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (Vertex w : g.neighbors(u)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    // Seeds are scanned in increasing order, so out is already sorted by minimum.
    return out;
}

/// Connected components of G \ v.
inline std::vector<VertexSet> delete_vertex_components(const Graph &g, Vertex v) {
    if (!g.contains(v)) throw InvalidGraph("vertex " + std::to_string(v) + " out of range");
    return components_without(g, v);
}

// ---------------------------------------------------------------------------

struct BlockDecomposition {
    std::vector<VertexSet> blocks;          // sorted by smallest vertex, then lexicographically
    VertexSet articulation_points;          // vertices lying in >= 2 blocks
    std::vector<VertexSet> block_cut_points;  // per block: its articulation points
    std::map<Vertex, std::vector<std::size_t>> blocks_of_cut_point;  // per articulation point: block indices

    /// Indices of all blocks containing v.
    std::vector<std::size_t> blocks_containing(Vertex v) const {
        std::vector<std::size_t> out;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (std::binary_search(blocks[b].begin(), blocks[b].end(), v)) out.push_back(b);
        }
        return out;
    }

    bool is_articulation(Vertex v) const {
        return std::binary_search(articulation_points.begin(), articulation_points.end(), v);
    }
};

/// Biconnected components by the iterative Hopcroft-Tarjan edge-stack walk.
inline BlockDecomposition block_decomposition(const Graph &g) {
    require_connected(g, "block_decomposition");
    const std::size_t n = g.order();
    BlockDecomposition bd;
    if (n == 0) return bd;
    if (n == 1) {
        bd.blocks.push_back({1});
        bd.block_cut_points.emplace_back();
        return bd;
    }

    std::vector<std::size_t> disc(n + 1, 0), low(n + 1, 0), parent(n + 1, 0), next_child(n + 1, 0);
    std::vector<VertexPair> edge_stack;
    std::size_t timer = 0;

    auto pop_block = [&](Vertex u, Vertex w) {
        VertexSet block;
        while (true) {
            auto e = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(e.first);
            block.push_back(e.second);
            if (e.first == u && e.second == w) break;
        }
        std::sort(block.begin(), block.end());
        block.erase(std::unique(block.begin(), block.end()), block.end());
        bd.blocks.push_back(std::move(block));
    };

    std::vector<Vertex> stack{1};
    disc[1] = low[1] = ++timer;
    while (!stack.empty()) {
        Vertex u = stack.back();
        const auto &nb = g.neighbors(u);
        if (next_child[u] < nb.size()) {
            Vertex w = nb[next_child[u]++];
            if (disc[w] == 0) {
                parent[w] = u;
                disc[w] = low[w] = ++timer;
                edge_stack.emplace_back(u, w);
                stack.push_back(w);
            } else if (w != parent[u] && disc[w] < disc[u]) {
                edge_stack.emplace_back(u, w);
                low[u] = std::min(low[u], disc[w]);
            }
        } else {
            stack.pop_back();
            if (Vertex p = parent[u]; p != 0) {
                low[p] = std::min(low[p], low[u]);
                if (low[u] >= disc[p]) pop_block(p, u);
            }
        }
    }

    std::sort(bd.blocks.begin(), bd.blocks.end());  // lexicographic == by smallest vertex first

    std::vector<std::size_t> membership(n + 1, 0);
    for (const auto &b : bd.blocks)
        for (Vertex v : b) ++membership[v];
    for (Vertex v = 1; v <= n; ++v)
        if (membership[v] >= 2) bd.articulation_points.push_back(v);

    bd.block_cut_points.resize(bd.blocks.size());
    for (std::size_t b = 0; b < bd.blocks.size(); ++b) {
        for (Vertex v : bd.blocks[b]) {
            if (membership[v] >= 2) {
                bd.block_cut_points[b].push_back(v);
                bd.blocks_of_cut_point[v].push_back(b);
            }
        }
    }
    return bd;
}

inline bool is_clique(const Graph &g, const VertexSet &s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!g.adjacent(s[i], s[j])) return false;
    return true;
}

/// True iff every block induces a complete subgraph.
inline bool is_block_graph(const Graph &g) {
    auto bd = block_decomposition(g);
    return std::all_of(bd.blocks.begin(), bd.blocks.end(), [&](const VertexSet &b) { return is_clique(g, b); });
}

inline VertexSet closed_neighborhood(const Graph &g, Vertex v) {
    VertexSet nb = g.neighbors(v);
    nb.insert(std::upper_bound(nb.begin(), nb.end(), v), v);
    return nb;
}

struct TwinPartition {
    std::vector<VertexSet> classes;  // sorted by smallest vertex
};

/// Maximal classes of vertices with identical closed neighborhoods.
inline TwinPartition true_twin_partition(const Graph &g) {
    std::map<VertexSet, std::size_t> index_of;
    TwinPartition tp;
    for (Vertex v = 1; v <= g.order(); ++v) {
        auto key = closed_neighborhood(g, v);
        auto [it, inserted] = index_of.try_emplace(std::move(key), tp.classes.size());
        if (inserted) tp.classes.emplace_back();
        tp.classes[it->second].push_back(v);
    }
    return tp;
}

/// Shortest-path hop count; weights are ignored.
inline std::size_t distance(const Graph &g, Vertex u, Vertex v) {
    if (!g.contains(v)) throw InvalidGraph("vertex " + std::to_string(v) + " out of range");
    auto d = bfs_distances(g, u)[v];
    if (d == unreachable) throw PreconditionError("distance: vertices are in different components");
    return d;
}

inline std::vector<std::size_t> eccentricities(const Graph &g) {
    require_connected(g, "eccentricities");
    std::vector<std::size_t> ecc(g.order() + 1, 0);
    for (Vertex v = 1; v <= g.order(); ++v) {
        auto d = bfs_distances(g, v);
        ecc[v] = *std::max_element(d.begin() + 1, d.end());
    }
    return ecc;
}

/// Vertices of minimum eccentricity.
inline VertexSet center(const Graph &g) {
    auto ecc = eccentricities(g);
    VertexSet out;
    if (g.order() == 0) return out;
    auto best = *std::min_element(ecc.begin() + 1, ecc.end());
    for (Vertex v = 1; v <= g.order(); ++v)
        if (ecc[v] == best) out.push_back(v);
    return out;
}

/// Identifies vertex u of g with vertex w of h. g keeps its labels; the other
/// vertices of h become n_g+1, n_g+2, ... in increasing order of their h label.
inline Graph coalesce(const Graph &g, Vertex u, const Graph &h, Vertex w) {
    if (!g.contains(u)) throw InvalidGraph("coalesce: vertex " + std::to_string(u) + " not in first graph");
    if (!h.contains(w)) throw InvalidGraph("coalesce: vertex " + std::to_string(w) + " not in second graph");
    const std::size_t ng = g.order();
    auto relabel = [&](Vertex x) -> Vertex {
        if (x == w) return u;
        return ng + (x < w ? x : x - 1);
    };
    std::vector<VertexPair> edges;
    std::map<VertexPair, double> weights;
    for (const auto &e : g.edges()) {
        edges.emplace_back(e.u, e.v);
        weights[{e.u, e.v}] = e.weight;
    }
    for (const auto &e : h.edges()) {
        VertexPair p{relabel(e.u), relabel(e.v)};
        edges.push_back(p);
        weights[p] = e.weight;
    }
    return build_graph(ng + h.order() - 1, edges, weights);
}

/// Vertex connectivity, restricted to connected block graphs.
inline std::size_t block_graph_vertex_connectivity(const Graph &g) {
    if (!is_block_graph(g)) throw PreconditionError("vertex connectivity is only implemented for block graphs");
    auto bd = block_decomposition(g);
    if (!bd.articulation_points.empty()) return 1;
    return g.order() == 0 ? 0 : g.order() - 1;
}

/// Subgraph induced by `s`, relabeled 1..|s| in increasing order of the
/// original labels. Edge weights are kept.
inline Graph induced_subgraph(const Graph &g, const VertexSet &s) {
    std::map<Vertex, Vertex> pos;
    for (std::size_t i = 0; i < s.size(); ++i) pos[s[i]] = i + 1;
    std::vector<VertexPair> edges;
    std::map<VertexPair, double> weights;
    for (const auto &e : g.edges()) {
        auto a = pos.find(e.u), b = pos.find(e.v);
        if (a == pos.end() || b == pos.end()) continue;
        edges.emplace_back(a->second, b->second);
        weights[{a->second, b->second}] = e.weight;
    }
    return build_graph(s.size(), edges, weights);
}

}  // namespace blockfiedler

#endif  // BLOCKFIEDLER_STRUCTURE_HPP
