#include "kpinf/classify.hpp"

#include <cmath>
#include <functional>

#include "kpinf/errors.hpp"

namespace kpinf {

using nlohmann::json;

bool receives_edges(const KGraph& g, VertexId v) {
    for (const Edge& e : g.edges())
        if (e.range == v) return true;
    return false;
}

VertexConditions cycle_condition(const KGraph& g, VertexId v) {
    VertexConditions out;
    out.vertex = v;
    out.receives = receives_edges(g, v);

    // Λ^0_{≥v}: vertices w with vΛw ≠ ∅.
    std::vector<char> reach(g.vertex_count(), 0);
    std::vector<VertexId> stack{v};
    reach[v] = 1;
    while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        for (const Edge& e : g.edges())
            if (e.range == u && !reach[e.source]) {
                reach[e.source] = 1;
                stack.push_back(e.source);
            }
    }
    long long t0 = 0;
    for (char c : reach) t0 += c;
    const double b = std::pow(static_cast<double>(t0), g.rank());
    out.bound = b > 1e15 ? static_cast<long long>(1e15) : static_cast<long long>(b);

    // Walks λ ∈ vΛ read edge by edge from the range; a repeated vertex on the
    // current walk closes a cycle. Vertices finished without a hit are skipped.
    enum : char { White, Gray, Black };
    std::vector<char> color(g.vertex_count(), White);
    std::vector<EdgeId> walk;
    std::vector<VertexId> at{v};
    std::function<bool(VertexId)> dfs = [&](VertexId u) {
        color[u] = Gray;
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const Edge& x = g.edge(static_cast<EdgeId>(e));
            if (x.range != u) continue;
            if (static_cast<long long>(walk.size()) + 1 > out.bound) continue;
            walk.push_back(static_cast<EdgeId>(e));
            at.push_back(x.source);
            if (color[x.source] == Gray) {
                std::size_t start = 0;
                while (at[start] != x.source) ++start;
                out.connector.assign(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(start));
                out.cycle.assign(walk.begin() + static_cast<std::ptrdiff_t>(start), walk.end());
                return true;
            }
            if (color[x.source] == White && dfs(x.source)) return true;
            walk.pop_back();
            at.pop_back();
        }
        color[u] = Black;
        return false;
    };
    out.reached_from_cycle = dfs(v);
    return out;
}

std::string_view to_string(ClassificationReport::Verdict v) {
    switch (v) {
        case ClassificationReport::Verdict::ProperlyPurelyInfinite: return "properly-purely-infinite";
        case ClassificationReport::Verdict::NotPurelyInfinite: return "not-purely-infinite";
        case ClassificationReport::Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ClassificationReport classify_pure_infiniteness(std::shared_ptr<const KGraph> g, const ClassifyOptions& opts) {
    const KGraph& graph = *g;
    if (graph.vertex_count() == 0) throw PreconditionError("graph has no vertices");
    const auto report = validate(graph);
    if (!report.ok())
        throw PreconditionError("graph does not validate: " + std::string(to_string(report.violations.front().kind)) +
                                " " + report.violations.front().detail);

    ClassificationReport out;
    out.graph = g;
    out.depth = opts.depth;
    out.field = opts.field.name();
    out.all_receive = true;
    out.all_reached = true;
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        out.conditions.push_back(cycle_condition(graph, static_cast<VertexId>(v)));
        out.all_receive = out.all_receive && out.conditions.back().receives;
        out.all_reached = out.all_reached && out.conditions.back().reached_from_cycle;
    }
    if (out.all_receive != out.all_reached)
        throw ConsistencyError("every vertex receives an edge: " + std::string(out.all_receive ? "yes" : "no") +
                               ", every vertex reached from a cycle: " + (out.all_reached ? "yes" : "no"));

    if (!out.all_receive) {
        for (const auto& c : out.conditions)
            if (!c.receives) {
                out.verdict = ClassificationReport::Verdict::NotPurelyInfinite;
                out.reason = "vertex " + graph.vertex_name(c.vertex) + " receives no edges, so the ideal it generates is matricial";
                break;
            }
        return out;
    }

    out.aperiodicity_assumed = opts.assume_aperiodic;
    if (!opts.assume_aperiodic) {
        out.sweep = strong_aperiodicity_sweep(graph, opts.depth);
        if (out.sweep->status == AperiodicityVerdict::Status::Periodic) {
            const auto& q = out.sweep->quotients[*out.sweep->first_periodic];
            out.verdict = ClassificationReport::Verdict::Inconclusive;
            out.reason = "refused: quotient by {" + vertex_list(graph, q.ideal.vertices) +
                         "} is periodic, so the graph is not strongly aperiodic";
            return out;
        }
        if (out.sweep->status == AperiodicityVerdict::Status::Unknown) {
            out.verdict = ClassificationReport::Verdict::Inconclusive;
            out.reason = "strong aperiodicity undecided at depth " + std::to_string(opts.depth) +
                         " (use --assert-aperiodic to assume it)";
            return out;
        }
    }

    ProofOptions po{opts.depth, opts.field, true};
    bool all = true;
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        out.proofs.push_back(prove_vertex_properly_infinite(g, static_cast<VertexId>(v), po));
        all = all && out.proofs.back().status == VertexProof::Status::ProperlyInfinite;
    }
    if (all) {
        out.verdict = ClassificationReport::Verdict::ProperlyPurelyInfinite;
        out.reason = "every vertex idempotent has a verified certificate in every quotient avoiding it";
    } else {
        out.verdict = ClassificationReport::Verdict::Inconclusive;
        out.incoherent = true;
        out.reason = "conditions hold but some certificate was not found up to depth " + std::to_string(opts.depth);
    }
    return out;
}

namespace {

json edge_names(const KGraph& g, const std::vector<EdgeId>& es) {
    json a = json::array();
    for (EdgeId e : es) a.push_back(g.edge(e).name);
    return a;
}

}  // namespace

json to_json(const KGraph& g, const AperiodicityVerdict& v) {
    json j{{"status", to_string(v.status)}, {"depth", v.depth}};
    json ap = json::array();
    for (const auto& e : v.aperiodic)
        ap.push_back({{"vertex", g.vertex_name(e.vertex)},
                      {"separator", path_name(g, e.separator)},
                      {"pairs_tested", e.pairs_tested}});
    j["aperiodic"] = ap;
    if (v.periodic)
        j["periodic"] = {{"vertex", g.vertex_name(v.periodic->vertex)},
                         {"alpha", path_name(g, v.periodic->alpha)},
                         {"beta", path_name(g, v.periodic->beta)},
                         {"closed_states", v.periodic->closed_states},
                         {"single_pair", v.periodic->single_pair}};
    else
        j["periodic"] = nullptr;
    json und = json::array();
    for (VertexId u : v.undecided) und.push_back(g.vertex_name(u));
    j["undecided"] = und;
    return j;
}

json to_json(const KGraph& g, const SweepResult& s) {
    json qs = json::array();
    for (const auto& q : s.quotients) {
        json ideal = json::array();
        for (VertexId u : q.ideal.vertices) ideal.push_back(g.vertex_name(u));
        const KGraph quotient_graph = quotient(g, q.ideal);
        qs.push_back({{"ideal", ideal}, {"verdict", to_json(quotient_graph, q.verdict)}});
    }
    return json{{"status", to_string(s.status)}, {"quotients", qs}};
}

json to_json(const ClassificationReport& r) {
    const KGraph& g = *r.graph;
    json conds = json::array();
    for (const auto& c : r.conditions) {
        json j{{"vertex", g.vertex_name(c.vertex)},
               {"receives_edges", c.receives},
               {"reached_from_cycle", c.reached_from_cycle},
               {"walk_bound", c.bound}};
        if (c.reached_from_cycle) {
            j["cycle"] = edge_names(g, c.cycle);
            j["connector"] = edge_names(g, c.connector);
        }
        conds.push_back(std::move(j));
    }
    json proofs = json::array();
    for (const auto& p : r.proofs) proofs.push_back(to_json(g, p));
    return json{{"verdict", to_string(r.verdict)},
                {"reason", r.reason},
                {"condition_receives_all", r.all_receive},
                {"condition_reached_all", r.all_reached},
                {"conditions", conds},
                {"aperiodicity", r.sweep ? to_json(g, *r.sweep) : json(nullptr)},
                {"aperiodicity_assumed", r.aperiodicity_assumed},
                {"incoherent", r.incoherent},
                {"certificates", proofs},
                {"provenance", {{"depth", r.depth}, {"field", r.field}}}};
}

}  // namespace kpinf
