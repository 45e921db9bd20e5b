// Command-line front end. run() takes its streams as arguments so tests can
// drive it in-process.
#ifndef BLOCKFIEDLER_TOOLS_CLI_HPP
#define BLOCKFIEDLER_TOOLS_CLI_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "blockfiedler/blockfiedler.hpp"

namespace blockfiedler::cli {

inline constexpr const char *kTool = "blockfiedler";
inline constexpr const char *kVersion = "0.1.0";

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_assertion = 2, exit_numerical = 3 };

using nlohmann::json;

namespace detail {

inline json tolerances_json(const Tolerances &t) {
    return {{"eig_tol", t.eig.offdiag_tol},
            {"eig_max_sweeps", t.eig.max_sweeps},
            {"multiplicity_tol", t.multiplicity_tol},
            {"power_max_iterations", t.power.max_iterations},
            {"power_rayleigh_tol", t.power.rayleigh_tol},
            {"power_residual_tol", t.power.residual_tol},
            {"residual_tol", t.residual_tol},
            {"tie_tol", t.tie_tol},
            {"zero_tol", t.zero_tol}};
}

inline json optional_vertex(const std::optional<Vertex> &v) { return v ? json(*v) : json(nullptr); }

inline json graph_instance(const std::string &source, const Graph &g) {
    return {{"source", source}, {"n", g.order()}, {"m", g.size()}};
}

inline Graph read_graph(const std::string &path, std::istream &in) {
    if (path == "-") return read_edge_list(in);
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot open '" + path + "'");
    return read_edge_list(f);
}

/// Writes text to --out when given, else to `out`.
inline void emit(const std::string &text, const std::string &out_path, std::ostream &out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw PreconditionError("cannot write '" + out_path + "'");
    f << text;
}

inline json report_json(const TheoremReport &r, bool timing) {
    json j{{"theorem", r.theorem},
           {"params", r.params},
           {"status", to_string(r.status)},
           {"assertions", r.assertions},
           {"measured", r.measured},
           {"failures", r.failures},
           {"notes", r.notes}};
    if (timing) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline std::string csv_number(double x) {
    std::ostringstream o;
    o.imbue(std::locale::classic());
    o.precision(17);
    o << x;
    return o.str();
}

inline std::string reports_csv(const std::vector<TheoremReport> &reports, bool timing) {
    std::ostringstream o;
    o << "theorem,status,assertions,params,measured,failures,notes" << (timing ? ",elapsed_ms" : "") << "\n";
    auto joined = [](const auto &items, auto &&render) {
        std::string s;
        for (const auto &item : items) s += (s.empty() ? "" : ";") + render(item);
        return s;
    };
    for (const auto &r : reports) {
        o << csv_field(r.theorem) << ',' << to_string(r.status) << ',' << r.assertions << ','
          << csv_field(joined(r.params, [](const auto &kv) { return kv.first + "=" + kv.second; })) << ','
          << csv_field(joined(r.measured, [](const auto &kv) { return kv.first + "=" + csv_number(kv.second); }))
          << ',' << csv_field(joined(r.failures, [](const std::string &s) { return s; })) << ','
          << csv_field(joined(r.notes, [](const std::string &s) { return s; }));
        if (timing) o << ',' << csv_number(r.elapsed_ms);
        o << "\n";
    }
    return o.str();
}

inline json perron_json(const PerronClassification &pc) {
    json vertices = json::array();
    for (const auto &pv : pc.report.vertices) {
        json values = json::array();
        for (const auto &d : pv.perron) values.push_back(d.value);
        vertices.push_back({{"vertex", pv.vertex},
                            {"components", pv.components},
                            {"perron_values", values},
                            {"maximizers", pv.maximizers},
                            {"tie_spread", pv.tie_spread},
                            {"gap", pv.gap}});
    }
    const auto &c = pc.classification;
    return {{"verdict", to_string(c.verdict)},
            {"z", optional_vertex(c.z)},
            {"perron_components", c.perron_components},
            {"predicted_multiplicity", c.predicted_multiplicity},
            {"report", vertices}};
}

inline json structural_json(const CaseClassification &c) {
    return {{"verdict", to_string(c.verdict)},
            {"z", optional_vertex(c.z)},
            {"mixed_block", c.mixed_block ? json(*c.mixed_block) : json(nullptr)}};
}

struct Envelope {
    std::vector<std::string> command;
    json instance;
    json payload;
    Tolerances tol;

    std::string dump() const {
        json j{{"tool", kTool},
               {"version", kVersion},
               {"command", command},
               {"instance", instance},
               {"payload", payload},
               {"tolerances", tolerances_json(tol)}};
        return j.dump(2) + "\n";
    }
};

}  // namespace detail

/// Runs the tool on `args` (without the program name) and returns the exit code.
inline int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
    Tolerances tol;
    CLI::App app{"Fiedler-vector analysis of block-path and block-starlike graphs", kTool};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--zero-tol", tol.zero_tol, "Sign threshold, relative to max|y|")->capture_default_str();
    app.add_option("--tie-tol", tol.tie_tol, "Relative tie tolerance between Perron values")->capture_default_str();
    app.add_option("--eig-tol", tol.eig.offdiag_tol, "Jacobi stopping tolerance, relative to ||M||_F")
        ->capture_default_str();

    std::string family, format = "edgelist", out_path, input, method = "both", theorem, sweep_spec;
    std::optional<std::size_t> k, p, r, n, q, handle, bristles;
    std::vector<std::size_t> arms;
    std::size_t jobs = 1;
    bool timing = false;

    auto *gen = app.add_subcommand("gen", "Generate a graph as an edge list or DOT");
    gen->add_option("family", family, "Graph family")
        ->required()
        ->check(CLI::IsMember({"block-path", "block-starlike", "path", "star", "broom", "complete"}));
    gen->add_option("-k", k, "Clique size");
    gen->add_option("-p", p, "Articulation points on the path");
    gen->add_option("-r", r, "Number of arms (defaults to the length of --arms)");
    gen->add_option("--arms", arms, "Arm lengths, non-increasing, comma separated")->delimiter(',');
    gen->add_option("-n", n, "Vertex count for path and complete");
    gen->add_option("-q", q, "Leaf count for star");
    gen->add_option("--handle", handle, "Broom handle length");
    gen->add_option("--bristles", bristles, "Broom bristle count");
    gen->add_option("--format", format, "Output format")->check(CLI::IsMember({"edgelist", "dot"}));
    gen->add_option("--out", out_path, "Write to this file instead of stdout");

    auto *spectrum = app.add_subcommand("spectrum", "Laplacian spectrum and Fiedler eigenspace as JSON");
    spectrum->add_option("input", input, "Edge-list file, or - for stdin")->required();
    spectrum->add_option("--out", out_path, "Write to this file instead of stdout");

    auto *classify = app.add_subcommand("classify", "Case A/B classification as JSON");
    classify->add_option("input", input, "Edge-list file, or - for stdin")->required();
    classify->add_option("--method", method, "Classifier")->check(CLI::IsMember({"structural", "perron", "both"}));
    classify->add_option("--out", out_path, "Write to this file instead of stdout");

    auto *verify = app.add_subcommand("verify", "Check a theorem on one instance or a parameter sweep");
    verify->add_option("--theorem", theorem, "Theorem id")->required();
    verify->add_option("-k", k, "Clique size");
    verify->add_option("-p", p, "Articulation points, or arm length for equal-arms");
    verify->add_option("-r", r, "Number of arms");
    verify->add_option("--arms", arms, "Arm lengths, non-increasing, comma separated")->delimiter(',');
    verify->add_option("--handle", handle, "Broom handle length");
    verify->add_option("--bristles", bristles, "Broom bristle count");
    verify->add_option("--input", input, "Edge-list file (twins and kirkland only)");
    verify->add_option("--sweep", sweep_spec, "Grid such as k=2..6,p=1..8, or a file holding one");
    verify->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    verify->add_option("--out", out_path, "Write to this file instead of stdout");
    verify->add_flag("--timing", timing, "Include per-instance elapsed time");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    auto usage = [&](const std::string &msg) {
        err << kTool << ": " << msg << "\n";
        return exit_usage;
    };
    auto need = [](const std::optional<std::size_t> &v) { return v.has_value(); };

    try {
        detail::Envelope env{args, json::object(), json::object(), tol};

        if (gen->parsed()) {
            Graph g;
            if (family == "block-path") {
                if (!need(k) || !need(p)) return usage("gen block-path needs -k and -p");
                g = gen_block_path({*k, *p});
            } else if (family == "block-starlike") {
                if (!need(k) || arms.empty()) return usage("gen block-starlike needs -k and --arms");
                g = gen_block_starlike({r.value_or(arms.size()), *k, arms});
            } else if (family == "path" || family == "complete") {
                if (!need(n)) return usage("gen " + family + " needs -n");
                g = family == "path" ? gen_path(*n) : gen_complete(*n);
            } else if (family == "star") {
                if (!need(q)) return usage("gen star needs -q");
                g = gen_star(*q);
            } else {
                if (!need(handle) || !need(bristles)) return usage("gen broom needs --handle and --bristles");
                g = gen_broom(*handle, *bristles);
            }
            if (format == "dot") {
                std::string name = family;
                std::replace(name.begin(), name.end(), '-', '_');
                detail::emit(to_dot(g, name), out_path, out);
            } else {
                detail::emit(to_edge_list(g), out_path, out);
            }
            return exit_ok;
        }

        if (spectrum->parsed()) {
            const Graph g = detail::read_graph(input, in);
            const auto s = spectral_summary(g, tol);
            env.instance = detail::graph_instance(input, g);
            env.payload = {{"connected", s.connected},
                           {"lambda2", s.lambda2},
                           {"multiplicity", s.multiplicity},
                           {"spectrum", s.spectrum},
                           {"fiedler_basis", s.fiedler_basis},
                           {"laplacian_norm", s.laplacian_norm}};
            detail::emit(env.dump(), out_path, out);
            return exit_ok;
        }

        if (classify->parsed()) {
            const Graph g = detail::read_graph(input, in);
            require_connected(g, "classify");
            if (!is_block_graph(g)) throw PreconditionError("classify: input is not a block graph");
            if (block_decomposition(g).articulation_points.empty()) {
                throw PreconditionError("classify: no articulation point");
            }
            env.instance = detail::graph_instance(input, g);
            const auto summary = spectral_summary(g, tol);
            env.payload["lambda2"] = summary.lambda2;
            env.payload["multiplicity"] = summary.multiplicity;
            std::optional<CaseClassification> structural;
            std::optional<PerronClassification> perron;
            if (method != "perron") {
                structural = classify_structural(g, summary, tol);
                env.payload["structural"] = detail::structural_json(*structural);
            }
            if (method != "structural") {
                perron = classify_perron(g, tol);
                env.payload["perron"] = detail::perron_json(*perron);
            }
            bool agree = true;
            if (structural && perron) {
                agree = structural->verdict == perron->classification.verdict &&
                        structural->z == perron->classification.z;
                env.payload["agreement"] = agree;
            }
            detail::emit(env.dump(), out_path, out);
            if (!agree) {
                err << kTool << ": structural and Perron classifications disagree\n";
                return exit_assertion;
            }
            return exit_ok;
        }

        // verify
        if (!is_theorem_id(theorem)) return usage("unknown theorem id '" + theorem + "'");
        std::vector<TheoremReport> reports;
        if (!sweep_spec.empty()) {
            std::string grid_text = sweep_spec;
            std::error_code ec;
            if (std::filesystem::is_regular_file(sweep_spec, ec)) {
                std::ifstream f(sweep_spec);
                grid_text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
            }
            const auto plan = expand_grid(theorem, parse_grid(grid_text));
            env.instance = {{"mode", "sweep"}, {"theorem", theorem}, {"grid", grid_text}};
            reports = sweep(plan, tol, jobs);
        } else if (!input.empty()) {
            if (theorem != "twins" && theorem != "kirkland") return usage("--input works with twins and kirkland only");
            const Graph g = detail::read_graph(input, in);
            const Params params{{"family", "file"}, {"source", input}};
            env.instance = {{"mode", "single"}, {"theorem", theorem}, {"params", params}};
            reports.push_back(theorem == "twins" ? check_twins_lemma(g, tol, params)
                                                 : check_kirkland_identities(g, tol, params));
        } else {
            Params params;
            auto put = [&](const char *key, const std::optional<std::size_t> &v) {
                if (v) params[key] = std::to_string(*v);
            };
            put("k", k);
            put("p", p);
            put("r", r);
            put("handle", handle);
            put("bristles", bristles);
            if (!arms.empty()) {
                params["arms"] = blockfiedler::detail::join(arms);
                if (!r) params["r"] = std::to_string(arms.size());
                params["family"] = "block-starlike";
            } else if (k && p) {
                params["family"] = "block-path";
            }
            env.instance = {{"mode", "single"}, {"theorem", theorem}, {"params", params}};
            reports.push_back(dispatch_check(theorem, params, tol));
        }

        const auto summary = summarize(reports);
        if (format == "csv") {
            detail::emit(detail::reports_csv(reports, timing), out_path, out);
        } else {
            json list = json::array();
            for (const auto &rep : reports) list.push_back(detail::report_json(rep, timing));
            env.payload = {{"reports", list},
                           {"summary",
                            {{"total", summary.total},
                             {"status_counts", summary.status_counts},
                             {"worst", summary.worst},
                             {"all_ok", summary.all_ok()}}}};
            detail::emit(env.dump(), out_path, out);
        }
        if (summary.count(CheckStatus::fail) || summary.count(CheckStatus::inconclusive)) return exit_assertion;
        if (summary.count(CheckStatus::error)) return exit_numerical;
        return exit_ok;
    } catch (const ConsistencyError &e) {
        err << kTool << ": " << e.what() << "\n";
        return exit_assertion;
    } catch (const ConvergenceError &e) {
        err << kTool << ": " << e.what() << "\n";
        return exit_numerical;
    } catch (const NotPositiveDefinite &e) {
        err << kTool << ": " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception &e) {
        err << kTool << ": " << e.what() << "\n";
        return exit_usage;
    }
}

}  // namespace blockfiedler::cli

#endif  // BLOCKFIEDLER_TOOLS_CLI_HPP
