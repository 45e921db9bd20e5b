#ifndef BLOCKFIEDLER_SPECTRAL_HPP
#define BLOCKFIEDLER_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockfiedler/errors.hpp"
#include "blockfiedler/graph.hpp"
#include "blockfiedler/linalg.hpp"
#include "blockfiedler/structure.hpp"

namespace blockfiedler {

/// Numerical knobs shared by the spectral routines.
struct Tolerances {
    JacobiOptions eig;
    PowerOptions power;
    double multiplicity_tol = 1e-8;  // relative to max(1, largest eigenvalue)
    double zero_tol = 1e-7;          // relative to max|y|
    double tie_tol = 1e-9;           // relative to the largest Perron value at a vertex
    double residual_tol = 1e-8;      // eigenvector residual checks
};

struct SpectralSummary {
    double lambda2 = 0.0;
    std::size_t multiplicity = 0;
    std::vector<Vector> fiedler_basis;  // orthonormal, index = vertex - 1
    Vector spectrum;                    // ascending
    bool connected = true;
    double laplacian_norm = 0.0;        // Frobenius
};

inline SpectralSummary spectral_summary(const Graph &g, const Tolerances &tol = {}) {
    SpectralSummary s;
    s.connected = is_connected(g);
    const SymMatrix l = laplacian(g);
    s.laplacian_norm = l.frobenius_norm();
    auto eig = eig_sym(l, tol.eig);
    s.spectrum = eig.eigenvalues;
    if (g.order() < 2) return s;
    s.lambda2 = s.spectrum[1];
    const double band = tol.multiplicity_tol * std::max(1.0, std::abs(s.spectrum.back()));
    for (std::size_t i = 1; i < s.spectrum.size() && s.spectrum[i] - s.lambda2 <= band; ++i) {
        ++s.multiplicity;
        s.fiedler_basis.push_back(std::move(eig.eigenvectors[i]));
    }
    if (!s.connected) s.lambda2 = 0.0;
    return s;
}

// ---------------------------------------------------------------------------

enum class CaseVerdict { A, B };

inline const char *to_string(CaseVerdict v) { return v == CaseVerdict::A ? "A" : "B"; }

struct CaseClassification {
    CaseVerdict verdict = CaseVerdict::A;
    std::optional<Vertex> z;                  // case B
    std::vector<VertexSet> perron_components;  // case B, Perron method only
    std::size_t predicted_multiplicity = 0;   // case B, Perron method: m - 1
    std::optional<VertexSet> mixed_block;     // case A, structural method only
};

struct PerronAtVertex {
    Vertex vertex = 0;
    std::vector<VertexSet> components;
    std::vector<PerronData> perron;       // parallel to components
    std::vector<std::size_t> maximizers;  // indices into components
    double tie_spread = 0.0;  // (max - min over maximizers) / max
    double gap = 0.0;         // (max - best non-maximizer) / max; 1 when every component ties

    double value(std::size_t i) const { return perron[i].value; }
};

struct PerronReport {
    std::vector<PerronAtVertex> vertices;  // one per articulation point, ascending

    const PerronAtVertex *at(Vertex v) const {
        for (const auto &p : vertices)
            if (p.vertex == v) return &p;
        return nullptr;
    }
};

/// Perron values of every component of G \ v.
inline PerronAtVertex perron_at_vertex(const Graph &g, const SymMatrix &l, Vertex v, const Tolerances &tol = {}) {
    PerronAtVertex pv;
    pv.vertex = v;
    pv.components = delete_vertex_components(g, v);
    double best = 0.0;
    for (const auto &c : pv.components) {
        pv.perron.push_back(perron_of_inverse(principal_submatrix(l, c), tol.power));
        best = std::max(best, pv.perron.back().value);
    }
    double lowest_max = best, runner_up = 0.0;
    for (std::size_t i = 0; i < pv.perron.size(); ++i) {
        const double x = pv.perron[i].value;
        if (x >= best * (1.0 - tol.tie_tol)) {
            pv.maximizers.push_back(i);
            lowest_max = std::min(lowest_max, x);
        } else {
            runner_up = std::max(runner_up, x);
        }
    }
    pv.tie_spread = best > 0.0 ? (best - lowest_max) / best : 0.0;
    pv.gap = best > 0.0 ? (best - runner_up) / best : 0.0;
    return pv;
}

inline PerronAtVertex perron_at_vertex(const Graph &g, Vertex v, const Tolerances &tol = {}) {
    return perron_at_vertex(g, laplacian(g), v, tol);
}

struct PerronClassification {
    CaseClassification classification;
    PerronReport report;
};

/// Case A/B through Perron components at the articulation points: case B
/// exactly when one vertex carries two or more Perron components.
inline PerronClassification classify_perron(const Graph &g, const Tolerances &tol = {}) {
    require_connected(g, "classify_perron");
    const auto bd = block_decomposition(g);
    if (bd.articulation_points.empty()) {
        throw PreconditionError("classify_perron: graph has no articulation point");
    }
    const SymMatrix l = laplacian(g);
    PerronClassification out;
    std::vector<Vertex> b_vertices;
    for (Vertex v : bd.articulation_points) {
        out.report.vertices.push_back(perron_at_vertex(g, l, v, tol));
        if (out.report.vertices.back().maximizers.size() >= 2) b_vertices.push_back(v);
    }
    if (b_vertices.size() > 1) {
        std::string list;
        for (Vertex v : b_vertices) list += (list.empty() ? "" : ",") + std::to_string(v);
        throw ConsistencyError("classify_perron: several vertices carry tied Perron components (" + list +
                               "); raise or lower the tie tolerance");
    }
    auto &cls = out.classification;
    if (b_vertices.empty()) {
        cls.verdict = CaseVerdict::A;
        return out;
    }
    cls.verdict = CaseVerdict::B;
    cls.z = b_vertices.front();
    const auto &pz = *out.report.at(*cls.z);
    for (auto i : pz.maximizers) cls.perron_components.push_back(pz.components[i]);
    cls.predicted_multiplicity = pz.maximizers.size() - 1;
    return out;
}

// ---------------------------------------------------------------------------

namespace detail {

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline std::vector<Sign> sign_pattern(const Vector &y, double zero_tol) {
    const double threshold = zero_tol * max_abs(y);
    std::vector<Sign> s(y.size() + 1, Sign::zero);  // 1-based
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] > threshold) s[i + 1] = Sign::positive;
        else if (y[i] < -threshold) s[i + 1] = Sign::negative;
    }
    return s;
}

inline bool has_both_signs(const VertexSet &vs, const std::vector<Sign> &s, Vertex skip = 0) {
    bool pos = false, neg = false;
    for (Vertex v : vs) {
        if (v == skip) continue;
        pos |= s[v] == Sign::positive;
        neg |= s[v] == Sign::negative;
    }
    return pos && neg;
}

inline bool single_sign(const VertexSet &vs, const std::vector<Sign> &s, Vertex skip = 0) {
    std::optional<Sign> seen;
    for (Vertex v : vs) {
        if (v == skip) continue;
        if (seen && *seen != s[v]) return false;
        seen = s[v];
    }
    return true;
}

/// Walks the block-cut tree away from `from_block` through articulation point
/// `a`, checking that articulation valuations move strictly away from zero in
/// the direction of sign(y_a), or stay identically zero.
inline std::string check_monotone_branch(const BlockDecomposition &bd, const Vector &y, const std::vector<Sign> &s,
                                         double threshold, Vertex a, std::size_t from_block, Sign direction) {
    for (std::size_t b : bd.blocks_of_cut_point.at(a)) {
        if (b == from_block) continue;
        if (direction == Sign::zero) {
            for (Vertex x : bd.blocks[b])
                if (s[x] != Sign::zero) return "nonzero vertex " + std::to_string(x) + " beyond zero articulation point";
        }
        for (Vertex a2 : bd.block_cut_points[b]) {
            if (a2 == a) continue;
            const double step = y[a2 - 1] - y[a - 1];
            if (direction == Sign::positive && !(step > threshold)) {
                return "articulation valuations not increasing from " + std::to_string(a) + " to " + std::to_string(a2);
            }
            if (direction == Sign::negative && !(step < -threshold)) {
                return "articulation valuations not decreasing from " + std::to_string(a) + " to " + std::to_string(a2);
            }
            if (auto err = check_monotone_branch(bd, y, s, threshold, a2, b, direction); !err.empty()) return err;
        }
    }
    return {};
}

}  // namespace detail

/// Case A/B from the sign pattern of one Fiedler vector y (index = vertex - 1).
/// When `lambda2` is given, y's Rayleigh quotient must match it.
inline CaseClassification classify_structural(const Graph &g, const Vector &y, const Tolerances &tol = {},
                                              std::optional<double> lambda2 = std::nullopt) {
    using detail::Sign;
    require_connected(g, "classify_structural");
    if (y.size() != g.order()) throw PreconditionError("classify_structural: vector length does not match graph order");
    const double ny = norm2(y);
    if (ny == 0.0) throw PreconditionError("classify_structural: zero vector");

    const SymMatrix l = laplacian(g);
    const double rq = dot(y, l.multiply(y)) / (ny * ny);
    const double res = eigen_residual(l, y, rq);
    if (res > tol.residual_tol * std::max(1.0, l.frobenius_norm()) * ny) {
        throw PreconditionError("classify_structural: y is not a Laplacian eigenvector (residual " +
                                std::to_string(res / ny) + ")");
    }
    double total = 0.0;
    for (double x : y) total += x;
    if (std::abs(total) > tol.residual_tol * ny * std::sqrt(static_cast<double>(y.size())) || rq <= tol.residual_tol) {
        throw PreconditionError("classify_structural: y lies in the kernel, not a Fiedler vector");
    }
    if (lambda2 && std::abs(rq - *lambda2) > tol.residual_tol * std::max(1.0, *lambda2)) {
        throw PreconditionError("classify_structural: eigenvalue of y is " + std::to_string(rq) +
                                ", not lambda2 = " + std::to_string(*lambda2));
    }

    const auto bd = block_decomposition(g);
    const auto s = detail::sign_pattern(y, tol.zero_tol);
    const double threshold = tol.zero_tol * max_abs(y);

    std::vector<std::size_t> mixed;
    for (std::size_t b = 0; b < bd.blocks.size(); ++b)
        if (detail::has_both_signs(bd.blocks[b], s)) mixed.push_back(b);

    CaseClassification cls;
    if (mixed.size() > 1) {
        throw ConsistencyError("classify_structural: " + std::to_string(mixed.size()) +
                               " blocks carry both signs; pattern matches neither case");
    }
    if (mixed.size() == 1) {
        const std::size_t c = mixed.front();
        for (std::size_t b = 0; b < bd.blocks.size(); ++b) {
            if (b != c && !detail::single_sign(bd.blocks[b], s)) {
                throw ConsistencyError("classify_structural: block " + std::to_string(b) +
                                       " outside the mixed block is not sign-pure");
            }
        }
        for (Vertex a : bd.block_cut_points[c]) {
            if (auto err = detail::check_monotone_branch(bd, y, s, threshold, a, c, s[a]); !err.empty()) {
                throw ConsistencyError("classify_structural: case A path condition fails: " + err);
            }
        }
        cls.verdict = CaseVerdict::A;
        cls.mixed_block = bd.blocks[c];
        return cls;
    }

    VertexSet frontier;  // zero vertices adjacent to a nonzero one
    for (Vertex v = 1; v <= g.order(); ++v) {
        if (s[v] != Sign::zero) continue;
        const auto &nb = g.neighbors(v);
        if (std::any_of(nb.begin(), nb.end(), [&](Vertex w) { return s[w] != Sign::zero; })) frontier.push_back(v);
    }
    if (frontier.size() != 1) {
        throw ConsistencyError("classify_structural: no mixed block and " + std::to_string(frontier.size()) +
                               " zero vertices adjacent to nonzero ones; pattern matches neither case");
    }
    const Vertex z = frontier.front();
    if (!bd.is_articulation(z)) {
        throw ConsistencyError("classify_structural: zero vertex " + std::to_string(z) + " is not an articulation point");
    }
    for (const auto &b : bd.blocks) {
        if (!detail::single_sign(b, s, z)) {
            throw ConsistencyError("classify_structural: a block is not sign-pure in case B");
        }
    }
    for (const auto &comp : delete_vertex_components(g, z)) {
        if (detail::has_both_signs(comp, s)) {
            throw ConsistencyError("classify_structural: a sign change avoids the zero vertex " + std::to_string(z));
        }
    }
    cls.verdict = CaseVerdict::B;
    cls.z = z;
    return cls;
}

/// Runs classify_structural on every vector of the lambda2 eigenspace; the
/// verdicts and case-B witnesses must coincide.
inline CaseClassification classify_structural(const Graph &g, const SpectralSummary &summary,
                                              const Tolerances &tol = {}) {
    if (summary.fiedler_basis.empty()) throw PreconditionError("classify_structural: empty Fiedler eigenspace");
    std::optional<CaseClassification> first;
    for (const auto &y : summary.fiedler_basis) {
        auto cls = classify_structural(g, y, tol, summary.lambda2);
        if (!first) {
            first = std::move(cls);
            continue;
        }
        if (cls.verdict != first->verdict || cls.z != first->z) {
            throw ConsistencyError("classify_structural: eigenspace basis vectors disagree on the case");
        }
    }
    return *first;
}

// ---------------------------------------------------------------------------

struct PerronFiedlerBasis {
    Vertex z = 0;
    std::vector<VertexSet> perron_components;
    double lambda2 = 0.0;            // 1 / rho of the first Perron component
    std::vector<Vector> vectors;     // m - 1 eigenvectors, index = vertex - 1
    double max_residual = 0.0;       // max ||L b - lambda2 b|| / ||b||
    double max_lambda_mismatch = 0.0;  // max over components |1/rho_i - lambda2(eigensolver)|
};

/// Eigenspace basis built from the Perron vectors at z: b_{i-1} is x_1 on C_1,
/// -x_i on C_i and zero elsewhere.
inline PerronFiedlerBasis perron_fiedler_basis(const Graph &g, Vertex z, const Tolerances &tol = {}) {
    require_connected(g, "perron_fiedler_basis");
    const SymMatrix l = laplacian(g);
    const auto pz = perron_at_vertex(g, l, z, tol);
    if (pz.maximizers.size() < 2) {
        throw PreconditionError("perron_fiedler_basis: vertex " + std::to_string(z) +
                                " has fewer than two Perron components");
    }
    PerronFiedlerBasis out;
    out.z = z;
    for (auto i : pz.maximizers) out.perron_components.push_back(pz.components[i]);
    const auto &first = pz.perron[pz.maximizers[0]];
    out.lambda2 = 1.0 / first.value;

    const auto &c1 = pz.components[pz.maximizers[0]];
    for (std::size_t j = 1; j < pz.maximizers.size(); ++j) {
        const auto idx = pz.maximizers[j];
        Vector b(g.order(), 0.0);
        for (std::size_t t = 0; t < c1.size(); ++t) b[c1[t] - 1] = first.vector[t];
        const auto &ci = pz.components[idx];
        for (std::size_t t = 0; t < ci.size(); ++t) b[ci[t] - 1] = -pz.perron[idx].vector[t];
        const double r = eigen_residual(l, b, out.lambda2) / norm2(b);
        out.max_residual = std::max(out.max_residual, r);
        out.vectors.push_back(std::move(b));
    }
    if (out.max_residual > tol.residual_tol * std::max(1.0, out.lambda2)) {
        throw ConsistencyError("perron_fiedler_basis: basis vector residual " + std::to_string(out.max_residual) +
                               " exceeds tolerance");
    }
    const double eig_lambda2 = spectral_summary(g, tol).lambda2;
    for (auto i : pz.maximizers) {
        out.max_lambda_mismatch = std::max(out.max_lambda_mismatch, std::abs(1.0 / pz.perron[i].value - eig_lambda2));
    }
    if (out.max_lambda_mismatch > tol.residual_tol * std::max(1.0, eig_lambda2)) {
        throw ConsistencyError("perron_fiedler_basis: 1/rho disagrees with the eigensolver's lambda2");
    }
    return out;
}

// ---------------------------------------------------------------------------

struct TreeType {
    int type = 1;
    std::optional<Vertex> characteristic_vertex;           // type 1
    std::optional<VertexPair> characteristic_edge;         // type 2: (u, w) with y_u > 0 > y_w
};

inline bool is_tree(const Graph &g) { return g.order() >= 1 && g.size() + 1 == g.order() && is_connected(g); }

/// Type from the first vector of the lambda2 eigenspace.
inline TreeType tree_type(const Graph &t, const Tolerances &tol = {}) {
    using detail::Sign;
    if (!is_tree(t)) throw PreconditionError("tree_type: input is not a tree");
    if (t.order() < 2) throw PreconditionError("tree_type: a single vertex has no Fiedler vector");
    const auto summary = spectral_summary(t, tol);
    const auto &y = summary.fiedler_basis.front();
    const auto s = detail::sign_pattern(y, tol.zero_tol);
    TreeType out;
    for (Vertex v = 1; v <= t.order(); ++v) {
        if (s[v] != Sign::zero) continue;
        const auto &nb = t.neighbors(v);
        if (std::any_of(nb.begin(), nb.end(), [&](Vertex w) { return s[w] != Sign::zero; })) {
            out.type = 1;
            out.characteristic_vertex = v;
            return out;
        }
    }
    for (const auto &e : t.edges()) {
        if (s[e.u] == Sign::positive && s[e.v] == Sign::negative) {
            out.type = 2;
            out.characteristic_edge = VertexPair{e.u, e.v};
            return out;
        }
        if (s[e.u] == Sign::negative && s[e.v] == Sign::positive) {
            out.type = 2;
            out.characteristic_edge = VertexPair{e.v, e.u};
            return out;
        }
    }
    throw ConsistencyError("tree_type: Fiedler vector has neither a characteristic vertex nor edge");
}

}  // namespace blockfiedler

#endif  // BLOCKFIEDLER_SPECTRAL_HPP
