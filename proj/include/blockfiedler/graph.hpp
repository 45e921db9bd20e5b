#ifndef BLOCKFIEDLER_GRAPH_HPP
#define BLOCKFIEDLER_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <istream>
#include <locale>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "blockfiedler/errors.hpp"

namespace blockfiedler {

/// Vertices are labeled 1..n.
using Vertex = std::size_t;
using VertexSet = std::vector<Vertex>;  // always sorted ascending
using VertexPair = std::pair<Vertex, Vertex>;

struct Edge {
    Vertex u;  // u < v
    Vertex v;
    double weight;

    friend bool operator==(const Edge &, const Edge &) = default;
};

/// Undirected simple graph with positive edge weights (1.0 unless given).
///
/// Immutable once built. Adjacency lists and the edge list are kept sorted,
/// so two graphs with the same labeled edge set compare equal.
class Graph {
public:
    Graph() = default;

    std::size_t order() const { return n_; }
    std::size_t size() const { return edges_.size(); }

    const std::vector<Edge> &edges() const { return edges_; }

    /// Sorted open neighborhood of `v`.
    const VertexSet &neighbors(Vertex v) const { return adjacency_.at(index(v)); }

    std::size_t degree(Vertex v) const { return neighbors(v).size(); }

    bool contains(Vertex v) const { return v >= 1 && v <= n_; }

    bool adjacent(Vertex u, Vertex v) const {
        const auto &nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    /// Weight of edge {u, v}; 0 when the edge is absent.
    double weight(Vertex u, Vertex v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), VertexPair{u, v},
                                   [](const Edge &e, const VertexPair &p) {
                                       return std::pair{e.u, e.v} < p;
                                   });
        if (it == edges_.end() || it->u != u || it->v != v) return 0.0;
        return it->weight;
    }

    bool unit_weights() const {
        return std::all_of(edges_.begin(), edges_.end(),
                           [](const Edge &e) { return e.weight == 1.0; });
    }

    friend bool operator==(const Graph &a, const Graph &b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    friend Graph build_graph(std::size_t, const std::vector<VertexPair> &,
                             const std::optional<std::map<VertexPair, double>> &);

    std::size_t index(Vertex v) const {
        if (!contains(v)) throw InvalidGraph("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n_));
        return v - 1;
    }

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<VertexSet> adjacency_;
};

/// Builds a graph on vertices 1..n. Weights are looked up by the pair as given
/// or reversed; unspecified edges get weight 1.
inline Graph build_graph(std::size_t n, const std::vector<VertexPair> &edges,
                         const std::optional<std::map<VertexPair, double>> &weights = std::nullopt) {
    Graph g;
    g.n_ = n;
    g.adjacency_.assign(n, {});
    g.edges_.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a < 1 || a > n || b < 1 || b > n) {
            throw InvalidGraph("edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range 1.." +
                               std::to_string(n));
        }
        if (a == b) throw InvalidGraph("self-loop at vertex " + std::to_string(a));
        double w = 1.0;
        if (weights) {
            if (auto it = weights->find({a, b}); it != weights->end()) {
                w = it->second;
            } else if (auto jt = weights->find({b, a}); jt != weights->end()) {
                w = jt->second;
            }
        }
        if (!(w > 0.0)) {
            throw InvalidGraph("non-positive weight on edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
        g.edges_.push_back({std::min(a, b), std::max(a, b), w});
    }
    std::sort(g.edges_.begin(), g.edges_.end(),
              [](const Edge &x, const Edge &y) { return std::pair{x.u, x.v} < std::pair{y.u, y.v}; });
    for (std::size_t i = 1; i < g.edges_.size(); ++i) {
        if (g.edges_[i].u == g.edges_[i - 1].u && g.edges_[i].v == g.edges_[i - 1].v) {
            throw InvalidGraph("duplicate edge (" + std::to_string(g.edges_[i].u) + "," +
                               std::to_string(g.edges_[i].v) + ")");
        }
    }
    for (const auto &e : g.edges_) {
        g.adjacency_[e.u - 1].push_back(e.v);
        g.adjacency_[e.v - 1].push_back(e.u);
    }
    for (auto &nb : g.adjacency_) std::sort(nb.begin(), nb.end());
    return g;
}

// ---------------------------------------------------------------------------
// Edge-list text format:
//   n m
//   u v [w]      (m lines)
// Blank lines and lines starting with '#' are ignored.

inline Graph read_edge_list(std::istream &in) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back(line);
    }
    if (lines.empty()) throw InvalidGraph("edge list: missing header line \"n m\"");

    auto parse_error = [](std::size_t lineno, const std::string &what) {
        return InvalidGraph("edge list line " + std::to_string(lineno) + ": " + what);
    };

    std::istringstream header(lines[0]);
    header.imbue(std::locale::classic());
    long long n = -1, m = -1;
    std::string extra;
    if (!(header >> n >> m) || n < 0 || m < 0 || (header >> extra)) {
        throw parse_error(1, "expected two non-negative integers \"n m\"");
    }
    if (lines.size() - 1 != static_cast<std::size_t>(m)) {
        throw InvalidGraph("edge list: header declares " + std::to_string(m) + " edges but " +
                           std::to_string(lines.size() - 1) + " edge lines follow");
    }

    std::vector<VertexPair> edges;
    std::map<VertexPair, double> weights;
    bool weighted = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        row.imbue(std::locale::classic());
        long long u = 0, v = 0;
        if (!(row >> u >> v) || u < 1 || v < 1) throw parse_error(i + 1, "expected \"u v [w]\" with positive labels");
        double w = 1.0;
        if (row >> w) {
            weighted = true;
        } else if (!row.eof()) {
            throw parse_error(i + 1, "unparseable weight");
        }
        if (row >> extra) throw parse_error(i + 1, "trailing tokens");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        weights[{static_cast<Vertex>(u), static_cast<Vertex>(v)}] = w;
    }
    return build_graph(static_cast<std::size_t>(n), edges,
                       weighted ? std::optional{weights} : std::nullopt);
}

inline Graph parse_edge_list(const std::string &text) {
    std::istringstream in(text);
    return read_edge_list(in);
}

inline void write_edge_list(std::ostream &out, const Graph &g) {
    std::ostringstream buf;
    buf.imbue(std::locale::classic());
    buf.precision(17);
    buf << g.order() << ' ' << g.size() << '\n';
    const bool weighted = !g.unit_weights();
    for (const auto &e : g.edges()) {
        buf << e.u << ' ' << e.v;
        if (weighted) buf << ' ' << e.weight;
        buf << '\n';
    }
    out << buf.str();
}

inline std::string to_edge_list(const Graph &g) {
    std::ostringstream out;
    write_edge_list(out, g);
    return out.str();
}

/// Graphviz export, for looking at things. Node ids are the vertex labels.
inline void write_dot(std::ostream &out, const Graph &g, const std::string &name = "G") {
    std::ostringstream buf;
    buf.imbue(std::locale::classic());
    buf << "graph " << name << " {\n";
    for (Vertex v = 1; v <= g.order(); ++v) buf << "  " << v << ";\n";
    const bool weighted = !g.unit_weights();
    for (const auto &e : g.edges()) {
        buf << "  " << e.u << " -- " << e.v;
        if (weighted) buf << " [weight=" << e.weight << "]";
        buf << ";\n";
    }
    buf << "}\n";
    out << buf.str();
}

inline std::string to_dot(const Graph &g, const std::string &name = "G") {
    std::ostringstream out;
    write_dot(out, g, name);
    return out.str();
}

}  // namespace blockfiedler

#endif  // BLOCKFIEDLER_GRAPH_HPP
