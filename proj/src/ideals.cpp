#include "kpinf/ideals.hpp"

#include <algorithm>
#include <set>

#include "kpinf/errors.hpp"

namespace kpinf {

bool SatHerSet::contains(VertexId v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

namespace {

std::vector<char> membership(const KGraph& g, const std::vector<VertexId>& s) {
    std::vector<char> in(g.vertex_count(), 0);
    for (VertexId v : s) {
        if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count())
            throw PreconditionError("unknown vertex id " + std::to_string(v));
        in[v] = 1;
    }
    return in;
}

std::vector<VertexId> members(const std::vector<char>& in) {
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < in.size(); ++v)
        if (in[v]) out.push_back(static_cast<VertexId>(v));
    return out;
}

// v is forced into H by some color i: v receives color-i edges and all their sources lie in H.
bool forced(const KGraph& g, const std::vector<char>& in, VertexId v) {
    for (int c = 0; c < g.rank(); ++c) {
        const auto& es = g.edges_into(v, c);
        if (es.empty()) continue;
        if (std::all_of(es.begin(), es.end(), [&](EdgeId e) { return in[g.edge(e).source] != 0; }))
            return true;
    }
    return false;
}

}  // namespace

bool is_hereditary(const KGraph& g, const std::vector<VertexId>& s) {
    const auto in = membership(g, s);
    for (const Edge& e : g.edges())
        if (in[e.range] && !in[e.source]) return false;
    return true;
}

bool is_saturated(const KGraph& g, const std::vector<VertexId>& s) {
    const auto in = membership(g, s);
    for (std::size_t v = 0; v < in.size(); ++v)
        if (!in[v] && forced(g, in, static_cast<VertexId>(v))) return false;
    return true;
}

SatHerSet sat_her_closure(const KGraph& g, const std::vector<VertexId>& s) {
    auto in = membership(g, s);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Edge& e : g.edges()) {
            if (in[e.range] && !in[e.source]) {
                in[e.source] = 1;
                changed = true;
            }
        }
        for (std::size_t v = 0; v < in.size(); ++v) {
            if (!in[v] && forced(g, in, static_cast<VertexId>(v))) {
                in[v] = 1;
                changed = true;
            }
        }
    }
    return SatHerSet{members(in)};
}

IdealLattice enumerate_sat_her(const KGraph& g) {
    std::set<SatHerSet> found;
    found.insert(SatHerSet{});
    std::vector<SatHerSet> atoms;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        atoms.push_back(sat_her_closure(g, {static_cast<VertexId>(v)}));

    // Every saturated hereditary H is the join of the closures of its points.
    std::vector<SatHerSet> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
        std::vector<SatHerSet> next;
        for (const auto& h : frontier) {
            for (const auto& a : atoms) {
                std::vector<VertexId> u;
                std::set_union(h.vertices.begin(), h.vertices.end(), a.vertices.begin(), a.vertices.end(),
                               std::back_inserter(u));
                auto j = sat_her_closure(g, u);
                if (found.insert(j).second) next.push_back(std::move(j));
            }
        }
        frontier = std::move(next);
    }

    IdealLattice lat;
    lat.sets.assign(found.begin(), found.end());
    std::stable_sort(lat.sets.begin(), lat.sets.end(), [](const SatHerSet& a, const SatHerSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.vertices < b.vertices;
    });
    auto subset = [](const SatHerSet& a, const SatHerSet& b) {
        return a.size() < b.size() &&
               std::includes(b.vertices.begin(), b.vertices.end(), a.vertices.begin(), a.vertices.end());
    };
    const auto n = lat.sets.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!subset(lat.sets[i], lat.sets[j])) continue;
            bool cover = true;
            for (std::size_t m = 0; m < n && cover; ++m)
                if (subset(lat.sets[i], lat.sets[m]) && subset(lat.sets[m], lat.sets[j])) cover = false;
            if (cover) lat.hasse.emplace_back(i, j);
        }
    }
    return lat;
}

KGraph quotient(const KGraph& g, const SatHerSet& h) {
    if (!is_hereditary(g, h.vertices) || !is_saturated(g, h.vertices))
        throw PreconditionError("vertex set {" + vertex_list(g, h.vertices) + "} is not saturated hereditary");
    std::vector<VertexId> vmap(g.vertex_count(), -1);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (h.contains(static_cast<VertexId>(v))) continue;
        vmap[v] = static_cast<VertexId>(names.size());
        names.push_back(g.vertex_name(static_cast<VertexId>(v)));
    }
    std::vector<EdgeId> emap(g.edge_count(), -1);
    std::vector<Edge> edges;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Edge& x = g.edge(static_cast<EdgeId>(e));
        if (vmap[x.source] < 0 || vmap[x.range] < 0) continue;
        emap[e] = static_cast<EdgeId>(edges.size());
        edges.push_back(Edge{x.name, x.color, vmap[x.source], vmap[x.range]});
    }
    std::vector<Square> squares;
    for (const Square& s : g.squares()) {
        if (emap[s.first] < 0 || emap[s.second] < 0 || emap[s.rewritten_first] < 0 || emap[s.rewritten_second] < 0)
            continue;
        squares.push_back(Square{emap[s.first], emap[s.second], emap[s.rewritten_first], emap[s.rewritten_second]});
    }
    return KGraph(g.rank(), std::move(names), std::move(edges), std::move(squares));
}

SweepResult strong_aperiodicity_sweep(const KGraph& g, int depth) {
    SweepResult out;
    bool all_aperiodic = true;
    for (const auto& h : enumerate_sat_her(g).sets) {
        auto verdict = aperiodicity_check(quotient(g, h), depth);
        if (verdict.status == AperiodicityVerdict::Status::Periodic && !out.first_periodic)
            out.first_periodic = out.quotients.size();
        if (verdict.status != AperiodicityVerdict::Status::Aperiodic) all_aperiodic = false;
        out.quotients.push_back(QuotientVerdict{h, std::move(verdict)});
    }
    if (out.first_periodic)
        out.status = AperiodicityVerdict::Status::Periodic;
    else if (all_aperiodic)
        out.status = AperiodicityVerdict::Status::Aperiodic;
    return out;
}

std::string vertex_list(const KGraph& g, const std::vector<VertexId>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ",";
        out += g.vertex_name(vs[i]);
    }
    return out;
}

std::vector<VertexId> parse_vertex_list(const KGraph& g, std::string_view text) {
    std::vector<VertexId> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        auto item = text.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) out.push_back(g.vertex_id(item));
        pos = comma + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace kpinf
