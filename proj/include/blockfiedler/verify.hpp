#ifndef BLOCKFIEDLER_VERIFY_HPP
#define BLOCKFIEDLER_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "blockfiedler/errors.hpp"
#include "blockfiedler/generators.hpp"
#include "blockfiedler/graph.hpp"
#include "blockfiedler/linalg.hpp"
#include "blockfiedler/spectral.hpp"
#include "blockfiedler/structure.hpp"

namespace blockfiedler {

enum class CheckStatus { pass, fail, inconclusive, skipped, error, exploratory };

inline const char *to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::inconclusive: return "inconclusive";
        case CheckStatus::skipped: return "skipped";
        case CheckStatus::error: return "error";
        case CheckStatus::exploratory: return "exploratory";
    }
    return "?";
}

using Params = std::map<std::string, std::string>;

/// Outcome of one checker on one instance. Measured quantities are recorded on
/// pass as well as on fail; failures name the quantity and the bound it broke.
struct TheoremReport {
    std::string theorem;
    Params params;
    CheckStatus status = CheckStatus::inconclusive;
    std::size_t assertions = 0;
    std::map<std::string, double> measured;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    double elapsed_ms = 0.0;

    bool ok() const {
        return status == CheckStatus::pass || status == CheckStatus::skipped || status == CheckStatus::exploratory;
    }
};

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream o;
    o.imbue(std::locale::classic());
    o.precision(6);
    o << x;
    return o.str();
}

inline std::string join(const std::vector<std::size_t> &xs, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? std::string(1, sep) : "") + std::to_string(xs[i]);
    return out;
}

/// Accumulates assertions for a TheoremReport.
class ReportBuilder {
public:
    ReportBuilder(std::string theorem, Params params) : start_(std::chrono::steady_clock::now()) {
        r_.theorem = std::move(theorem);
        r_.params = std::move(params);
    }

    /// Asserts value <= limit and keeps the worst value seen under `name`.
    void expect_le(const std::string &name, double value, double limit) {
        ++r_.assertions;
        auto [it, fresh] = r_.measured.try_emplace(name, value);
        if (!fresh) it->second = std::max(it->second, value);
        if (!(value <= limit)) r_.failures.push_back(name + "=" + fmt(value) + " exceeds tolerance " + fmt(limit));
    }

    void expect(bool cond, const std::string &what) {
        ++r_.assertions;
        if (!cond) r_.failures.push_back(what);
    }

    template <class T>
    void expect_eq(const std::string &name, const T &actual, const T &expected) {
        ++r_.assertions;
        if (!(actual == expected)) {
            std::ostringstream o;
            o << name << ": got " << actual << ", expected " << expected;
            r_.failures.push_back(o.str());
        }
    }

    void measure(const std::string &name, double value) { r_.measured[name] = value; }

    /// Keeps the minimum across calls.
    void measure_min(const std::string &name, double value) {
        auto [it, fresh] = r_.measured.try_emplace(name, value);
        if (!fresh) it->second = std::min(it->second, value);
    }

    void note(std::string s) { r_.notes.push_back(std::move(s)); }

    TheoremReport finish() {
        if (!r_.failures.empty()) r_.status = CheckStatus::fail;
        else if (r_.assertions == 0) r_.status = CheckStatus::inconclusive;
        else r_.status = CheckStatus::pass;
        return done();
    }

    TheoremReport finish_as(CheckStatus s) {
        r_.status = s;
        return done();
    }

private:
    TheoremReport done() {
        r_.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        return std::move(r_);
    }

    TheoremReport r_;
    std::chrono::steady_clock::time_point start_;
};

inline bool contains_vertex(const VertexSet &s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

inline Params block_path_params(std::size_t k, std::size_t p) {
    return {{"family", "block-path"}, {"k", std::to_string(k)}, {"p", std::to_string(p)}};
}

inline Params starlike_params(const BlockStarlikeParams &s) {
    return {{"family", "block-starlike"},
            {"r", std::to_string(s.r)},
            {"k", std::to_string(s.k)},
            {"arms", join(s.arms)}};
}

/// Distance of y from span(basis) relative to ||y||; basis orthonormal.
inline double projection_residual(const Vector &y, const std::vector<Vector> &basis) {
    Vector r = y;
    for (const auto &q : basis) {
        const double c = dot(q, y);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * q[i];
    }
    return norm2(r) / norm2(y);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Checkers

/// Fiedler vectors are constant on true-twin classes of a block graph with a
/// cut vertex.
inline TheoremReport check_twins_lemma(const Graph &g, const Tolerances &tol = {}, Params params = {}) {
    if (!is_connected(g) || !is_block_graph(g)) throw PreconditionError("twins: input must be a connected block graph");
    if (block_decomposition(g).articulation_points.empty()) {
        throw PreconditionError("twins: block graph must have an articulation point");
    }
    detail::ReportBuilder rb("twins", std::move(params));
    const auto summary = spectral_summary(g, tol);
    const auto twins = true_twin_partition(g);
    std::size_t nontrivial = 0;
    for (const auto &cls : twins.classes) nontrivial += cls.size() >= 2;
    rb.measure("twin_classes", static_cast<double>(nontrivial));
    rb.measure("multiplicity", static_cast<double>(summary.multiplicity));
    rb.measure("twin_deviation", 0.0);
    for (const auto &y : summary.fiedler_basis) {
        const double scale = max_abs(y);
        for (const auto &cls : twins.classes) {
            if (cls.size() < 2) continue;
            double worst = 0.0;
            for (Vertex b : cls) worst = std::max(worst, std::abs(y[cls.front() - 1] - y[b - 1]));
            rb.expect_le("twin_deviation", worst / scale, 1e-8);
        }
    }
    if (nontrivial == 0) rb.note("no true twins; nothing to check");
    return rb.finish();
}

/// G_{k,p} is case B exactly when p is odd, with the zero vertex at the center label.
inline TheoremReport check_path_parity(std::size_t k, std::size_t p, const Tolerances &tol = {}) {
    if (k < 2 || p < 1) throw PreconditionError("path-parity: needs k >= 2 and p >= 1");
    detail::ReportBuilder rb("path-parity", detail::block_path_params(k, p));
    const Graph g = gen_block_path({k, p});
    const auto pc = classify_perron(g, tol);
    const auto &cls = pc.classification;
    const CaseVerdict expected = p % 2 == 1 ? CaseVerdict::B : CaseVerdict::A;
    rb.expect_eq<std::string>("verdict", to_string(cls.verdict), to_string(expected));
    if (cls.verdict == CaseVerdict::B && expected == CaseVerdict::B) {
        rb.expect_eq<std::size_t>("z", *cls.z, center_label(k, p));
        rb.measure("tie_spread", pc.report.at(*cls.z)->tie_spread);
    }
    for (const auto &pv : pc.report.vertices)
        if (pv.maximizers.size() == 1) rb.measure_min("unique_gap", pv.gap);
    rb.measure("n", static_cast<double>(g.order()));
    return rb.finish();
}

/// Equal arms: case B at the central vertex, multiplicity r - 1, center = {central}.
inline TheoremReport check_starlike_equal_arms(std::size_t r, std::size_t k, std::size_t p,
                                               const Tolerances &tol = {}) {
    const BlockStarlikeParams sp{r, k, std::vector<std::size_t>(r, p)};
    auto params = detail::starlike_params(sp);
    params["p"] = std::to_string(p);
    detail::ReportBuilder rb("equal-arms", std::move(params));
    const Graph g = gen_block_starlike(sp);
    const auto pc = classify_perron(g, tol);
    const auto &cls = pc.classification;
    rb.expect_eq<std::string>("verdict", to_string(cls.verdict), "B");
    if (cls.z) {
        rb.expect_eq<std::size_t>("z", *cls.z, 1);
        rb.expect_eq<std::size_t>("perron_components", cls.perron_components.size(), r);
        rb.measure("tie_spread", pc.report.at(*cls.z)->tie_spread);
    }
    const auto summary = spectral_summary(g, tol);
    rb.measure("lambda2", summary.lambda2);
    rb.expect_eq<std::size_t>("multiplicity", summary.multiplicity, r - 1);
    rb.expect(center(g) == VertexSet{1}, "center is not {central vertex}");
    return rb.finish();
}

/// Hypothesis p2 + p3 + 1 >= p1 > p2 (r >= 3) gives case A, with the longest
/// arm as the unique Perron component at the central vertex. Instances outside
/// the hypothesis are skipped and their classification logged.
inline TheoremReport check_starlike_caseA(const BlockStarlikeParams &sp, const Tolerances &tol = {}) {
    detail::ReportBuilder rb("starlike-A", detail::starlike_params(sp));
    const Graph g = gen_block_starlike(sp);
    const bool hypothesis =
        sp.r >= 3 && sp.arms[1] + sp.arms[2] + 1 >= sp.arms[0] && sp.arms[0] > sp.arms[1];
    const auto pc = classify_perron(g, tol);
    const auto &cls = pc.classification;
    if (!hypothesis) {
        rb.note("hypothesis not satisfied; observed case " + std::string(to_string(cls.verdict)) +
                (cls.z ? " at " + std::to_string(*cls.z) : ""));
        return rb.finish_as(CheckStatus::skipped);
    }
    rb.expect_eq<std::string>("verdict", to_string(cls.verdict), "A");
    const auto *pv = pc.report.at(1);
    rb.expect(pv != nullptr, "central vertex missing from Perron report");
    if (pv) {
        rb.expect_eq<std::size_t>("maximizers_at_central", pv->maximizers.size(), 1);
        const Vertex first = block_starlike_arm_start(sp, 0);
        const Vertex last = block_starlike_arm_start(sp, 1) - 1;
        VertexSet arm1;
        for (Vertex x = first; x <= last; ++x) arm1.push_back(x);
        rb.expect(!pv->maximizers.empty() && pv->components[pv->maximizers.front()] == arm1,
                  "longest arm is not the Perron component at the central vertex");
        rb.measure("central_gap", pv->gap);
    }
    for (const auto &q : pc.report.vertices) rb.measure_min("unique_gap", q.gap);
    return rb.finish();
}

/// Coalescing K_k onto the center of G_{k,p} (p odd) keeps lambda2, and the
/// zero-extended Fiedler vector stays a Fiedler vector.
inline TheoremReport check_coalescence(std::size_t k, std::size_t p, const Tolerances &tol = {}) {
    if (k < 2 || p % 2 == 0) throw PreconditionError("coalescence: needs k >= 2 and odd p");
    detail::ReportBuilder rb("coalescence", detail::block_path_params(k, p));
    const Graph g = gen_block_path({k, p});
    const Vertex u = center_label(k, p);
    const Graph gp = coalesce(g, u, gen_complete(k), 1);
    const auto s = spectral_summary(g, tol);
    const auto sp = spectral_summary(gp, tol);
    rb.measure("lambda2", s.lambda2);
    rb.measure("lambda2_coalesced", sp.lambda2);
    rb.expect_le("lambda2_mismatch", std::abs(s.lambda2 - sp.lambda2), 1e-8);

    const SymMatrix lp = laplacian(gp);
    rb.measure("extension_residual", 0.0);
    for (const auto &y : s.fiedler_basis) {
        Vector ext(gp.order(), 0.0);
        std::copy(y.begin(), y.end(), ext.begin());
        rb.expect_le("extension_residual", eigen_residual(lp, ext, sp.lambda2) / norm2(ext), 1e-8);
    }
    // (1 - lambda2) y_v = y_u on each new vertex v with y_u = 0, so the new
    // block vanishes unless lambda2 = 1.
    const bool forced_zero = std::abs(1.0 - sp.lambda2) > 1e-8;
    if (!forced_zero) rb.note("lambda2 = 1: the new block is not forced to zero");
    rb.measure("new_block_deviation", 0.0);
    for (const auto &y : sp.fiedler_basis) {
        const double scale = max_abs(y);
        const double yu = y[u - 1];
        rb.expect_le("center_deviation", std::abs(yu) / scale, 1e-8);
        for (Vertex v = g.order() + 1; v <= gp.order(); ++v) {
            rb.expect_le("new_block_deviation", std::abs((1.0 - sp.lambda2) * y[v - 1] - yu) / scale, 1e-8);
            if (forced_zero) rb.expect_le("new_block_deviation", std::abs(y[v - 1]) / scale, 1e-8);
        }
    }
    auto profile = recognize_block_starlike(gp, 3);
    rb.expect(profile.has_value(), "coalesced graph is not block-starlike");
    if (profile) {
        rb.note("arm profile k=" + std::to_string(profile->k) + " arms=" + detail::join(profile->arms) +
                " central=" + std::to_string(profile->central));
        const std::vector<std::size_t> expected{(p - 1) / 2, (p - 1) / 2, 0};
        rb.expect(profile->central == u && profile->k == k && profile->arms == expected,
                  "coalesced graph arm profile is " + detail::join(profile->arms) + ", expected " +
                      detail::join(expected));
    }
    return rb.finish();
}

/// Identities that hold when case B holds at z: lambda2 = 1/rho on every Perron
/// component, multiplicity m - 1, eigenspace zeros at z and the non-Perron
/// components, and the component containing z is the unique Perron component
/// everywhere else.
inline TheoremReport check_kirkland_identities(const Graph &g, const Tolerances &tol = {}, Params params = {},
                                               std::size_t samples = 10, unsigned seed = 20240501) {
    detail::ReportBuilder rb("kirkland", std::move(params));
    const auto pc = classify_perron(g, tol);
    const auto &cls = pc.classification;
    if (cls.verdict != CaseVerdict::B) throw PreconditionError("kirkland: instance is not case B");
    const Vertex z = *cls.z;
    const auto summary = spectral_summary(g, tol);
    const auto &pz = *pc.report.at(z);
    const std::size_t m = pz.maximizers.size();
    rb.measure("lambda2", summary.lambda2);
    rb.measure("z", static_cast<double>(z));
    rb.measure("perron_components", static_cast<double>(m));

    for (auto i : pz.maximizers) {
        rb.expect_le("inverse_rho_mismatch", std::abs(summary.lambda2 - 1.0 / pz.value(i)), 1e-8);
    }
    rb.expect_eq<std::size_t>("multiplicity", summary.multiplicity, m - 1);

    VertexSet forced_zero{z};
    for (std::size_t i = 0; i < pz.components.size(); ++i) {
        if (std::find(pz.maximizers.begin(), pz.maximizers.end(), i) != pz.maximizers.end()) continue;
        forced_zero.insert(forced_zero.end(), pz.components[i].begin(), pz.components[i].end());
    }
    rb.measure("zero_deviation", 0.0);
    for (const auto &y : summary.fiedler_basis) {
        const double scale = max_abs(y);
        double worst = 0.0;
        for (Vertex v : forced_zero) worst = std::max(worst, std::abs(y[v - 1]));
        rb.expect_le("zero_deviation", worst / scale, 1e-8);
    }

    const auto basis = perron_fiedler_basis(g, z, tol);
    rb.expect_le("basis_residual", basis.max_residual, 1e-8);
    for (const auto &b : basis.vectors) {
        rb.expect_le("basis_projection_residual", detail::projection_residual(b, summary.fiedler_basis), 1e-8);
    }

    std::vector<Vertex> others;
    for (Vertex v = 1; v <= g.order(); ++v)
        if (v != z) others.push_back(v);
    std::mt19937 rng(seed);
    std::shuffle(others.begin(), others.end(), rng);
    if (others.size() > samples) others.resize(samples);
    std::sort(others.begin(), others.end());
    const SymMatrix l = laplacian(g);
    for (Vertex v : others) {
        const auto pv = perron_at_vertex(g, l, v, tol);
        const bool ok = pv.maximizers.size() == 1 && detail::contains_vertex(pv.components[pv.maximizers[0]], z);
        rb.expect(ok, "Perron component at " + std::to_string(v) + " is not the unique one containing z");
        rb.measure_min("sampled_gap", pv.gap);
    }
    rb.measure("sampled_vertices", static_cast<double>(others.size()));
    return rb.finish();
}

/// Records the tree type of a broom. Reported, never asserted.
inline TheoremReport explore_broom(std::size_t handle, std::size_t bristles, const Tolerances &tol = {}) {
    detail::ReportBuilder rb("broom", {{"family", "broom"},
                                       {"handle", std::to_string(handle)},
                                       {"bristles", std::to_string(bristles)}});
    const auto t = tree_type(gen_broom(handle, bristles), tol);
    rb.measure("type", t.type);
    if (t.characteristic_vertex) rb.note("characteristic vertex " + std::to_string(*t.characteristic_vertex));
    if (t.characteristic_edge) {
        rb.note("characteristic edge (" + std::to_string(t.characteristic_edge->first) + "," +
                std::to_string(t.characteristic_edge->second) + ")");
    }
    return rb.finish_as(CheckStatus::exploratory);
}

// ---------------------------------------------------------------------------
// Sweeps

inline const std::vector<std::string> &theorem_ids() {
    static const std::vector<std::string> ids{"twins", "path-parity", "equal-arms", "starlike-A",
                                              "coalescence", "kirkland", "broom"};
    return ids;
}

inline bool is_theorem_id(const std::string &id) {
    const auto &ids = theorem_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace detail {

inline std::size_t param_count(const Params &p, const std::string &key) {
    auto it = p.find(key);
    if (it == p.end()) throw PreconditionError("missing parameter '" + key + "'");
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(it->second, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos == 0 || pos != it->second.size()) {
        throw PreconditionError("parameter '" + key + "' is not a non-negative integer: " + it->second);
    }
    return static_cast<std::size_t>(v);
}

inline std::vector<std::size_t> parse_count_list(const std::string &s) {
    std::vector<std::size_t> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        Params tmp{{"x", item}};
        out.push_back(param_count(tmp, "x"));
    }
    return out;
}

inline BlockStarlikeParams starlike_from(const Params &p) {
    BlockStarlikeParams sp;
    sp.r = param_count(p, "r");
    sp.k = param_count(p, "k");
    auto arms = p.find("arms");
    if (arms == p.end()) throw PreconditionError("missing parameter 'arms'");
    sp.arms = parse_count_list(arms->second);
    return sp;
}

}  // namespace detail

/// Graph described by a parameter map: family block-path (k, p) or
/// block-starlike (r, k, arms).
inline Graph graph_from_params(const Params &p) {
    auto fam = p.find("family");
    const std::string family = fam == p.end() ? (p.count("arms") ? "block-starlike" : "block-path") : fam->second;
    if (family == "block-path") return gen_block_path({detail::param_count(p, "k"), detail::param_count(p, "p")});
    if (family == "block-starlike") return gen_block_starlike(detail::starlike_from(p));
    throw PreconditionError("unknown family '" + family + "'");
}

/// Runs one checker on one parameter map; errors propagate.
inline TheoremReport dispatch_check(const std::string &theorem, const Params &params, const Tolerances &tol = {}) {
    using detail::param_count;
    if (theorem == "path-parity") return check_path_parity(param_count(params, "k"), param_count(params, "p"), tol);
    if (theorem == "coalescence") return check_coalescence(param_count(params, "k"), param_count(params, "p"), tol);
    if (theorem == "equal-arms") {
        return check_starlike_equal_arms(param_count(params, "r"), param_count(params, "k"), param_count(params, "p"),
                                         tol);
    }
    if (theorem == "starlike-A") return check_starlike_caseA(detail::starlike_from(params), tol);
    if (theorem == "twins") return check_twins_lemma(graph_from_params(params), tol, params);
    if (theorem == "kirkland") return check_kirkland_identities(graph_from_params(params), tol, params);
    if (theorem == "broom") return explore_broom(param_count(params, "handle"), param_count(params, "bristles"), tol);
    throw PreconditionError("unknown theorem id '" + theorem + "'");
}

/// Like dispatch_check, but one bad instance does not abort a sweep:
/// precondition failures become `skipped`, consistency errors `fail` and
/// numerical errors `error`.
inline TheoremReport run_check(const std::string &theorem, const Params &params, const Tolerances &tol = {}) {
    try {
        return dispatch_check(theorem, params, tol);
    } catch (const PreconditionError &e) {
        detail::ReportBuilder rb(theorem, params);
        rb.note(e.what());
        return rb.finish_as(CheckStatus::skipped);
    } catch (const ConsistencyError &e) {
        detail::ReportBuilder rb(theorem, params);
        rb.expect(false, e.what());
        return rb.finish();
    } catch (const Error &e) {
        detail::ReportBuilder rb(theorem, params);
        rb.note(e.what());
        return rb.finish_as(CheckStatus::error);
    }
}

struct SweepPlan {
    std::string theorem;
    std::vector<Params> instances;
};

/// Axis name -> values, parsed from "k=2..6,p=1..8" or "r=3,k=3|4,p1=0..4".
using Grid = std::map<std::string, std::vector<std::size_t>>;

inline Grid parse_grid(const std::string &text) {
    Grid grid;
    std::string spec;
    for (char c : text) {
        if (c == ' ' || c == '\t') continue;
        spec += c == ';' || c == '\n' || c == '\r' ? ',' : c;
    }
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw PreconditionError("grid: expected name=range, got '" + item + "'");
        const std::string name = item.substr(0, eq), range = item.substr(eq + 1);
        std::vector<std::size_t> values;
        if (auto dots = range.find(".."); dots != std::string::npos) {
            Params tmp{{"lo", range.substr(0, dots)}, {"hi", range.substr(dots + 2)}};
            const auto lo = detail::param_count(tmp, "lo"), hi = detail::param_count(tmp, "hi");
            for (auto v = lo; v <= hi; ++v) values.push_back(v);
        } else {
            std::istringstream alts(range);
            std::string a;
            while (std::getline(alts, a, '|')) {
                Params tmp{{"v", a}};
                values.push_back(detail::param_count(tmp, "v"));
            }
        }
        grid[name] = std::move(values);
    }
    return grid;
}

namespace detail {

/// Non-increasing tuples of length r with entries in [0, pmax].
inline std::vector<std::vector<std::size_t>> sorted_tuples(std::size_t r, std::size_t pmax) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t hi) {
        if (cur.size() == r) {
            out.push_back(cur);
            return;
        }
        for (std::size_t v = hi + 1; v-- > 0;) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(pmax);
    std::reverse(out.begin(), out.end());  // lexicographically ascending
    return out;
}

inline const std::vector<std::size_t> &axis(const Grid &g, const std::string &name) {
    auto it = g.find(name);
    if (it == g.end()) throw PreconditionError("grid: missing axis '" + name + "'");
    return it->second;
}

}  // namespace detail

/// Expands a grid into instances in a fixed order (axes nested in the order
/// listed for each theorem, the last varying fastest).
///
///   path-parity, coalescence:  k, p   (coalescence keeps odd p only)
///   equal-arms:                r, k, p
///   starlike-A:                r, k, p1  (every non-increasing arm tuple whose first arm is in p1)
///   twins, kirkland:           k, p for block paths, or r, k, p1 for starlike
///   broom:                     handle, bristles
inline SweepPlan expand_grid(const std::string &theorem, const Grid &grid) {
    using detail::axis;
    SweepPlan plan{theorem, {}};
    if (grid.empty()) return plan;
    auto starlike = [&] {
        const auto &firsts = axis(grid, "p1");
        const std::size_t top = *std::max_element(firsts.begin(), firsts.end());
        for (auto r : axis(grid, "r"))
            for (auto k : axis(grid, "k"))
                for (const auto &arms : detail::sorted_tuples(r, top)) {
                    if (std::find(firsts.begin(), firsts.end(), arms.front()) == firsts.end()) continue;
                    plan.instances.push_back(detail::starlike_params({r, k, arms}));
                }
    };
    if (theorem == "path-parity" || theorem == "coalescence") {
        for (auto k : axis(grid, "k"))
            for (auto p : axis(grid, "p")) {
                if (theorem == "coalescence" && p % 2 == 0) continue;
                plan.instances.push_back(detail::block_path_params(k, p));
            }
    } else if (theorem == "equal-arms") {
        for (auto r : axis(grid, "r"))
            for (auto k : axis(grid, "k"))
                for (auto p : axis(grid, "p")) {
                    auto params = detail::starlike_params({r, k, std::vector<std::size_t>(r, p)});
                    params["p"] = std::to_string(p);
                    plan.instances.push_back(std::move(params));
                }
    } else if (theorem == "starlike-A") {
        starlike();
    } else if (theorem == "twins" || theorem == "kirkland") {
        if (grid.count("r")) {
            starlike();
        } else {
            for (auto k : axis(grid, "k"))
                for (auto p : axis(grid, "p")) plan.instances.push_back(detail::block_path_params(k, p));
        }
    } else if (theorem == "broom") {
        for (auto h : axis(grid, "handle"))
            for (auto b : axis(grid, "bristles"))
                plan.instances.push_back(
                    {{"family", "broom"}, {"handle", std::to_string(h)}, {"bristles", std::to_string(b)}});
    } else {
        throw PreconditionError("unknown theorem id '" + theorem + "'");
    }
    return plan;
}

/// Runs every instance of the plan. With jobs > 1 instances run on worker
/// threads; reports come back in plan order either way.
inline std::vector<TheoremReport> sweep(const SweepPlan &plan, const Tolerances &tol = {}, std::size_t jobs = 1) {
    std::vector<TheoremReport> out(plan.instances.size());
    if (jobs <= 1 || plan.instances.size() <= 1) {
        for (std::size_t i = 0; i < plan.instances.size(); ++i) out[i] = run_check(plan.theorem, plan.instances[i], tol);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < plan.instances.size();)
            out[i] = run_check(plan.theorem, plan.instances[i], tol);
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(jobs, plan.instances.size()); ++t) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
    return out;
}

struct SweepSummary {
    std::map<std::string, std::size_t> status_counts;  // keyed by status name
    std::map<std::string, double> worst;  // max of *_residual, *_deviation, *_mismatch, *_spread; min of *_gap
    std::size_t total = 0;

    std::size_t count(CheckStatus s) const {
        auto it = status_counts.find(to_string(s));
        return it == status_counts.end() ? 0 : it->second;
    }

    bool all_ok() const {
        return count(CheckStatus::fail) == 0 && count(CheckStatus::error) == 0 &&
               count(CheckStatus::inconclusive) == 0;
    }
};

inline bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline SweepSummary summarize(const std::vector<TheoremReport> &reports) {
    SweepSummary s;
    s.total = reports.size();
    for (const auto &r : reports) {
        ++s.status_counts[to_string(r.status)];
        for (const auto &[name, value] : r.measured) {
            const bool larger_worse = ends_with(name, "_residual") || ends_with(name, "_deviation") ||
                                      ends_with(name, "_mismatch") || ends_with(name, "_spread");
            const bool smaller_worse = ends_with(name, "_gap");
            if (!larger_worse && !smaller_worse) continue;
            auto [it, fresh] = s.worst.try_emplace(name, value);
            if (!fresh) it->second = larger_worse ? std::max(it->second, value) : std::min(it->second, value);
        }
    }
    return s;
}

}  // namespace blockfiedler

#endif  // BLOCKFIEDLER_VERIFY_HPP
