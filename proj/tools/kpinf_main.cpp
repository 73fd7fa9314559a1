// kpinf: command-line front end for the k-graph / Kumjian-Pask toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kpinf/classify.hpp"
#include "kpinf/errors.hpp"
#include "kpinf/expression.hpp"
#include "kpinf/ideals.hpp"
#include "kpinf/paths.hpp"
#include "kpinf/steinberg.hpp"
#include "kpinf/witness.hpp"

using namespace kpinf;
using nlohmann::json;

namespace {

struct Globals {
    bool json_out = false;
    int depth = 6;
    std::string field = "Q";
    std::string graph_file;
};

Degree parse_degree(const KGraph& g, std::string text) {
    for (char& c : text)
        if (c == '(' || c == ')') c = ' ';
    std::vector<int> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            coords.push_back(std::stoi(item, &used));
        } catch (const std::exception&) {
            throw PreconditionError("bad degree '" + text + "'");
        }
    }
    if (coords.size() == 1 && g.rank() > 1) coords.assign(g.rank(), coords.front());
    if (coords.size() != static_cast<std::size_t>(g.rank()))
        throw PreconditionError("degree needs " + std::to_string(g.rank()) + " coordinates");
    return Degree(coords);
}

std::string user_degree(const Degree& d) { return d.to_string(); }

json path_json(const KGraph& g, const Path& p) {
    return {{"path", path_name(g, p)},
            {"range", g.vertex_name(p.range())},
            {"source", g.vertex_name(p.source())},
            {"degree", p.degree().coords()}};
}

void emit(const Globals& gl, const json& j, const std::string& text) {
    if (gl.json_out)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_validate(const Globals& gl, const KGraph& g) {
    const auto report = validate(g);
    json v = json::array();
    std::string text;
    for (const auto& x : report.violations) {
        v.push_back({{"kind", to_string(x.kind)}, {"detail", x.detail}, {"items", x.items}});
        text += std::string(to_string(x.kind)) + ": " + x.detail;
        if (!x.items.empty()) {
            text += " [";
            for (std::size_t i = 0; i < x.items.size(); ++i) text += (i ? " " : "") + x.items[i];
            text += "]";
        }
        text += "\n";
    }
    if (report.ok()) text = "ok: k=" + std::to_string(g.rank()) + ", " + std::to_string(g.vertex_count()) +
                            " vertices, " + std::to_string(g.edge_count()) + " edges\n";
    emit(gl, {{"ok", report.ok()}, {"violations", v}}, text);
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-graph toolkit: paths, ideals, Kumjian-Pask arithmetic and pure infiniteness"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals gl;
    app.add_flag("--json", gl.json_out, "Machine-readable output");
    app.add_option("--depth", gl.depth, "Search depth in total-degree units")->check(CLI::NonNegativeNumber);
    app.add_option("--field", gl.field, "Coefficient field: Q, Fp or F<prime>");

    auto graph_arg = [&](CLI::App* sub) {
        sub->add_option("graph", gl.graph_file, "Graph in kgraph v1 format")->required()->check(CLI::ExistingFile);
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check the factorization axioms");
    graph_arg(validate_cmd);

    std::string vertex, degree_text;
    bool boundary = false;
    auto* paths_cmd = app.add_subcommand("paths", "Enumerate vΛ^n or vΛ^{<=n}");
    graph_arg(paths_cmd);
    paths_cmd->add_option("vertex", vertex)->required();
    paths_cmd->add_option("n", degree_text, "Degree, e.g. 1,2")->required();
    paths_cmd->add_flag("--boundary", boundary, "Boundary paths instead of exact degree");

    std::string p_text, q_text;
    auto* mce_cmd = app.add_subcommand("mce", "Minimal common extensions of two paths");
    graph_arg(mce_cmd);
    mce_cmd->add_option("p", p_text)->required();
    mce_cmd->add_option("q", q_text)->required();

    std::string set_text;
    auto* closure_cmd = app.add_subcommand("closure", "Saturated hereditary closure of a vertex set");
    graph_arg(closure_cmd);
    closure_cmd->add_option("vertices", set_text, "Comma-separated vertices")->required();

    auto* ideals_cmd = app.add_subcommand("ideals", "Lattice of saturated hereditary sets");
    graph_arg(ideals_cmd);

    auto* quotient_cmd = app.add_subcommand("quotient", "Quotient graph by a saturated hereditary set");
    graph_arg(quotient_cmd);
    quotient_cmd->add_option("vertices", set_text)->required();

    auto* aperiodic_cmd = app.add_subcommand("aperiodic", "Aperiodicity semi-decision");
    graph_arg(aperiodic_cmd);

    bool assert_aperiodic = false;
    auto* classify_cmd = app.add_subcommand("classify", "Decide (proper) pure infiniteness");
    graph_arg(classify_cmd);
    classify_cmd->add_flag("--assert-aperiodic", assert_aperiodic, "Assume strong aperiodicity");

    auto* witness_cmd = app.add_subcommand("witness", "Certificates for one vertex idempotent");
    graph_arg(witness_cmd);
    witness_cmd->add_option("vertex", vertex)->required();
    witness_cmd->add_flag("--assert-aperiodic", assert_aperiodic, "Assume strong aperiodicity");

    std::string expr_file;
    auto* eval_cmd = app.add_subcommand("eval", "Normal forms of expressions, one per line ('a == b' compares)");
    graph_arg(eval_cmd);
    eval_cmd->add_option("exprs", expr_file)->required()->check(CLI::ExistingFile);

    std::string kappa_text;
    auto* contract_cmd = app.add_subcommand("contract", "Contracting bisection inside Z(kappa)");
    graph_arg(contract_cmd);
    contract_cmd->add_option("path", kappa_text)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const Field field = Field::parse(gl.field);
        auto g = std::make_shared<const KGraph>(load_kgraph_file(gl.graph_file));
        std::ostringstream out;

        if (*validate_cmd) return cmd_validate(gl, *g);

        if (*paths_cmd) {
            const Degree n = parse_degree(*g, degree_text);
            const auto set = enumerate_paths(*g, g->vertex_id(vertex), n,
                                             boundary ? PathMode::Boundary : PathMode::Exact);
            json arr = json::array();
            for (const auto& p : set.paths) {
                arr.push_back(path_json(*g, p));
                out << path_name(*g, p) << "  " << user_degree(p.degree()) << "\n";
            }
            out << set.size() << " path(s)\n";
            emit(gl, {{"vertex", vertex}, {"bound", n.coords()}, {"mode", boundary ? "boundary" : "exact"}, {"paths", arr}},
                 out.str());
            return 0;
        }

        if (*mce_cmd) {
            const Path p = parse_path(*g, p_text), q = parse_path(*g, q_text);
            json arr = json::array();
            for (const auto& l : mce(*g, p, q)) {
                arr.push_back(path_json(*g, l));
                out << path_name(*g, l) << "\n";
            }
            if (arr.empty()) out << "(empty)\n";
            emit(gl, {{"p", p_text}, {"q", q_text}, {"mce", arr}}, out.str());
            return 0;
        }

        if (*closure_cmd) {
            const auto h = sat_her_closure(*g, parse_vertex_list(*g, set_text));
            json names = json::array();
            for (VertexId v : h.vertices) names.push_back(g->vertex_name(v));
            emit(gl, {{"closure", names}},
                 "{" + vertex_list(*g, h.vertices) + "}\n");
            return 0;
        }

        if (*ideals_cmd) {
            const auto lat = enumerate_sat_her(*g);
            json sets = json::array(), hasse = json::array();
            for (std::size_t i = 0; i < lat.sets.size(); ++i) {
                json s = json::array();
                for (VertexId v : lat.sets[i].vertices) s.push_back(g->vertex_name(v));
                sets.push_back(s);
                out << i << ": {" << vertex_list(*g, lat.sets[i].vertices) << "}\n";
            }
            for (const auto& [a, b] : lat.hasse) {
                hasse.push_back({a, b});
                out << a << " < " << b << "\n";
            }
            emit(gl, {{"sets", sets}, {"hasse", hasse}}, out.str());
            return 0;
        }

        if (*quotient_cmd) {
            const SatHerSet h{parse_vertex_list(*g, set_text)};
            const KGraph q = quotient(*g, h);
            emit(gl, {{"graph", q.to_text()}}, q.to_text());
            return 0;
        }

        if (*aperiodic_cmd) {
            const auto v = aperiodicity_check(*g, gl.depth);
            out << to_string(v.status) << " (depth " << gl.depth << ")\n";
            for (const auto& e : v.aperiodic)
                out << "  " << g->vertex_name(e.vertex) << ": separated by " << path_name(*g, e.separator) << "\n";
            if (v.periodic)
                out << "  " << g->vertex_name(v.periodic->vertex) << ": " << path_name(*g, v.periodic->alpha)
                    << " and " << path_name(*g, v.periodic->beta) << " are never separated\n";
            emit(gl, to_json(*g, v), out.str());
            return 0;
        }

        if (*classify_cmd) {
            const auto r = classify_pure_infiniteness(g, {gl.depth, field, assert_aperiodic});
            out << to_string(r.verdict) << "\n" << r.reason << "\n";
            for (const auto& p : r.proofs) {
                out << "  " << g->vertex_name(p.vertex) << ": " << to_string(p.status) << "\n";
                for (const auto& qp : p.quotients)
                    if (qp.infinite)
                        out << "    H={" << vertex_list(*g, qp.ideal.vertices) << "} " << qp.route << ": q = "
                            << to_expression(qp.infinite->infinite().q) << "\n";
            }
            emit(gl, to_json(r), out.str());
            return r.verdict == ClassificationReport::Verdict::Inconclusive ? 3 : 0;
        }

        if (*witness_cmd) {
            const auto p = prove_vertex_properly_infinite(g, g->vertex_id(vertex), {gl.depth, field, assert_aperiodic});
            out << to_string(p.status) << ": " << p.explanation << "\n";
            for (const auto& qp : p.quotients) {
                out << "H={" << vertex_list(*g, qp.ideal.vertices) << "} route " << qp.route << "\n";
                if (qp.infinite) {
                    const auto& w = qp.infinite->infinite();
                    out << "  p = " << to_expression(qp.infinite->target()) << "\n  q = " << to_expression(w.q)
                        << "\n  r = " << to_expression(w.r) << "\n  s = " << to_expression(w.s) << "\n";
                }
                if (qp.properly_infinite) {
                    const auto& w = qp.properly_infinite->properly_infinite();
                    out << "  A = [" << to_expression(w.a.at(0, 0)) << "; " << to_expression(w.a.at(1, 0))
                        << "]\n  B = [" << to_expression(w.b.at(0, 0)) << ", " << to_expression(w.b.at(0, 1))
                        << "]\n";
                }
            }
            emit(gl, to_json(*g, p), out.str());
            return p.status == VertexProof::Status::ProperlyInfinite ? 0 : 3;
        }

        if (*eval_cmd) {
            std::ifstream in(expr_file);
            std::string line;
            json results = json::array();
            while (std::getline(in, line)) {
                if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                if (auto eq = line.find("=="); eq != std::string::npos) {
                    const auto a = parse_expression(g, field, line.substr(0, eq));
                    const auto b = parse_expression(g, field, line.substr(eq + 2));
                    const bool same = equals(a, b);
                    results.push_back({{"input", line}, {"equal", same}});
                    out << (same ? "true" : "false") << "\n";
                } else {
                    const auto nf = normal_form(parse_expression(g, field, line));
                    results.push_back({{"input", line}, {"normal_form", to_expression(nf)}});
                    out << to_expression(nf) << "\n";
                }
            }
            emit(gl, {{"field", field.name()}, {"results", results}}, out.str());
            return 0;
        }

        if (*contract_cmd) {
            const Path kappa = parse_path(*g, kappa_text);
            const auto b = locally_contracting_on(*g, kappa, gl.depth);
            if (!b) {
                emit(gl, {{"found", false}, {"depth", gl.depth}},
                     "not found up to depth " + std::to_string(gl.depth) + "\n");
                return 3;
            }
            const std::string nu = path_name(*g, b->bisection.lambda), mu = path_name(*g, b->bisection.mu);
            emit(gl,
                 {{"found", true}, {"range", nu}, {"source", mu}, {"entrance", path_name(*g, b->entrance)}},
                 "B = Z(" + nu + " * " + mu + "): Z(" + mu + ") is strictly inside Z(" + nu + "), entrance " +
                     path_name(*g, b->entrance) + "\n");
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
