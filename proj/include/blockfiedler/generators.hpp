#ifndef BLOCKFIEDLER_GENERATORS_HPP
#define BLOCKFIEDLER_GENERATORS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blockfiedler/errors.hpp"
#include "blockfiedler/graph.hpp"
#include "blockfiedler/structure.hpp"

namespace blockfiedler {

struct BlockPathParams {
    std::size_t k = 2;  // clique size
    std::size_t p = 0;  // number of articulation points
};

struct BlockStarlikeParams {
    std::size_t r = 2;               // number of arms
    std::size_t k = 2;               // clique size
    std::vector<std::size_t> arms;   // articulation count of each arm's block path, non-increasing
};

inline std::size_t block_path_order(std::size_t k, std::size_t p) { return k * (p + 1) - p; }

inline std::size_t block_starlike_order(const BlockStarlikeParams &params) {
    std::size_t n = 1;
    for (auto p : params.arms) n += block_path_order(params.k, p) - 1;
    return n;
}

/// Articulation point between block j and block j+1 (j = 1..p).
inline Vertex block_path_articulation(std::size_t k, std::size_t j) { return j * k - j + 1; }

/// p+1 cliques K_k in a chain. Block j holds labels (j-1)(k-1)+1 .. (j-1)(k-1)+k,
/// so consecutive blocks share their last/first label.
inline Graph gen_block_path(const BlockPathParams &params) {
    const auto [k, p] = params;
    if (k < 2) throw PreconditionError("block path needs clique size k >= 2");
    std::vector<VertexPair> edges;
    for (std::size_t j = 0; j <= p; ++j) {
        const Vertex first = j * (k - 1) + 1;
        for (Vertex a = first; a < first + k; ++a)
            for (Vertex b = a + 1; b < first + k; ++b) edges.emplace_back(a, b);
    }
    return build_graph(block_path_order(k, p), edges);
}

/// Central vertex is 1. Arm i is a copy of G_{k,p_i} glued at its label-1
/// vertex (a non-articulation vertex of a terminal block); its other vertices
/// follow the previous arm's.
inline Graph gen_block_starlike(const BlockStarlikeParams &params) {
    if (params.r < 2) throw PreconditionError("block-starlike needs r >= 2 arms");
    if (params.k < 2) throw PreconditionError("block-starlike needs clique size k >= 2");
    if (params.arms.size() != params.r) {
        throw PreconditionError("block-starlike: expected " + std::to_string(params.r) + " arm lengths, got " +
                                std::to_string(params.arms.size()));
    }
    if (!std::is_sorted(params.arms.begin(), params.arms.end(), std::greater<>{})) {
        throw PreconditionError("block-starlike: arm lengths must be non-increasing");
    }
    Graph g = build_graph(1, {});
    for (auto p : params.arms) g = coalesce(g, 1, gen_block_path({params.k, p}), 1);
    return g;
}

/// First label of arm `i` (0-based) in gen_block_starlike's numbering.
inline Vertex block_starlike_arm_start(const BlockStarlikeParams &params, std::size_t i) {
    Vertex start = 2;
    for (std::size_t j = 0; j < i; ++j) start += block_path_order(params.k, params.arms[j]) - 1;
    return start;
}

/// The unique center vertex of G_{k,p} for odd p.
inline Vertex center_label(std::size_t k, std::size_t p) {
    if (p % 2 == 0) throw PreconditionError("center_label needs an odd articulation count p");
    const std::size_t h = (p + 1) / 2;
    return h * k - h + 1;
}

inline Graph gen_complete(std::size_t k) {
    if (k < 1) throw PreconditionError("complete graph needs k >= 1");
    std::vector<VertexPair> edges;
    for (Vertex a = 1; a <= k; ++a)
        for (Vertex b = a + 1; b <= k; ++b) edges.emplace_back(a, b);
    return build_graph(k, edges);
}

inline Graph gen_path(std::size_t n) {
    if (n < 1) throw PreconditionError("path needs n >= 1");
    std::vector<VertexPair> edges;
    for (Vertex v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
    return build_graph(n, edges);
}

/// K_{1,q}: hub 1, leaves 2..q+1.
inline Graph gen_star(std::size_t q) {
    if (q < 1) throw PreconditionError("star needs q >= 1");
    std::vector<VertexPair> edges;
    for (Vertex v = 2; v <= q + 1; ++v) edges.emplace_back(1, v);
    return build_graph(q + 1, edges);
}

/// Path 1..handle with `bristles` pendant vertices attached to vertex `handle`.
inline Graph gen_broom(std::size_t handle, std::size_t bristles) {
    if (handle < 1 || bristles < 1) throw PreconditionError("broom needs handle >= 1 and bristles >= 1");
    std::vector<VertexPair> edges;
    for (Vertex v = 1; v < handle; ++v) edges.emplace_back(v, v + 1);
    for (std::size_t i = 1; i <= bristles; ++i) edges.emplace_back(handle, handle + i);
    return build_graph(handle + bristles, edges);
}

// ---------------------------------------------------------------------------
// Recognition of the two families, up to isomorphism.

/// Returns {k, p} when g is a chain of equal cliques, each consecutive pair
/// sharing one vertex.
inline std::optional<BlockPathParams> recognize_block_path(const Graph &g) {
    if (g.order() < 2 || !is_connected(g)) return std::nullopt;
    auto bd = block_decomposition(g);
    const std::size_t k = bd.blocks.front().size();
    for (const auto &b : bd.blocks) {
        if (b.size() != k || !is_clique(g, b)) return std::nullopt;
    }
    for (const auto &cuts : bd.block_cut_points)
        if (cuts.size() > 2) return std::nullopt;
    for (const auto &[v, blocks] : bd.blocks_of_cut_point)
        if (blocks.size() != 2) return std::nullopt;
    // A tree whose nodes have degree <= 2 is a path.
    return BlockPathParams{k, bd.articulation_points.size()};
}

struct StarlikeProfile {
    Vertex central = 0;
    std::size_t k = 0;
    std::vector<std::size_t> arms;  // non-increasing
};

/// Finds a vertex v such that every component C of G \ v, together with v,
/// is a block path in which v is a non-articulation vertex of a terminal block.
/// Candidates are tried in order of decreasing block membership, then label.
inline std::optional<StarlikeProfile> recognize_block_starlike(const Graph &g, std::size_t min_arms = 2) {
    if (g.order() < 3 || !is_connected(g)) return std::nullopt;
    auto bd = block_decomposition(g);
    std::vector<Vertex> candidates = bd.articulation_points;
    std::stable_sort(candidates.begin(), candidates.end(), [&](Vertex a, Vertex b) {
        return bd.blocks_of_cut_point.at(a).size() > bd.blocks_of_cut_point.at(b).size();
    });
    for (Vertex v : candidates) {
        auto comps = delete_vertex_components(g, v);
        if (comps.size() < min_arms) continue;
        StarlikeProfile prof{v, 0, {}};
        bool ok = true;
        for (auto comp : comps) {
            comp.insert(std::upper_bound(comp.begin(), comp.end(), v), v);
            Graph arm = induced_subgraph(g, comp);
            auto bp = recognize_block_path(arm);
            if (!bp || (prof.k != 0 && bp->k != prof.k)) {
                ok = false;
                break;
            }
            prof.k = bp->k;
            const Vertex local_v =
                static_cast<Vertex>(std::lower_bound(comp.begin(), comp.end(), v) - comp.begin()) + 1;
            auto arm_bd = block_decomposition(arm);
            auto containing = arm_bd.blocks_containing(local_v);
            const bool terminal = containing.size() == 1 && arm_bd.block_cut_points[containing[0]].size() <= 1;
            if (!terminal) {
                ok = false;
                break;
            }
            prof.arms.push_back(bp->p);
        }
        if (!ok) continue;
        std::sort(prof.arms.begin(), prof.arms.end(), std::greater<>{});
        return prof;
    }
    return std::nullopt;
}

}  // namespace blockfiedler

#endif  // BLOCKFIEDLER_GENERATORS_HPP
