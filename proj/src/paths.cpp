#include "kpinf/paths.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "kpinf/errors.hpp"

namespace kpinf {

namespace {

void check_vertex(const KGraph& g, VertexId v) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count())
        throw PreconditionError("unknown vertex index " + std::to_string(v));
}

// Color-ordered growth: all color-0 edges first, then color 1, ... Each
// canonical sequence is produced exactly once. `fits` decides whether one more
// edge of a color is allowed.
template <typename Fits>
void grow(const KGraph& g, VertexId range, int color, VertexId at, std::vector<EdgeId>& seq, Degree& d,
          const Fits& fits, std::vector<Path>& out) {
    if (color == g.rank()) {
        out.push_back(g.make_path(range, seq));
        return;
    }
    grow(g, range, color + 1, at, seq, d, fits, out);
    if (!fits(d, color)) return;
    for (EdgeId e : g.edges_into(at, color)) {
        seq.push_back(e);
        d[color] += 1;
        grow(g, range, color, g.edge(e).source, seq, d, fits, out);
        d[color] -= 1;
        seq.pop_back();
    }
}

bool in_boundary(const KGraph& g, const Path& p, const Degree& n) {
    for (int i = 0; i < g.rank(); ++i)
        if (p.degree()[i] < n[i] && g.has_edges_into(p.source(), i)) return false;
    return true;
}

}  // namespace

std::vector<Path> paths_below(const KGraph& g, VertexId v, const Degree& n) {
    check_vertex(g, v);
    std::vector<Path> out;
    std::vector<EdgeId> seq;
    Degree d(g.rank());
    grow(g, v, 0, v, seq, d, [&](const Degree& cur, int c) { return cur[c] < n[c]; }, out);
    std::sort(out.begin(), out.end());
    return out;
}

PathSet enumerate_paths(const KGraph& g, VertexId v, const Degree& n, PathMode mode) {
    check_vertex(g, v);
    if (n.rank() != static_cast<std::size_t>(g.rank()) || !n.is_nonnegative())
        throw PreconditionError("degree " + n.to_string() + " is not in N^" + std::to_string(g.rank()));
    PathSet set{v, n, mode, {}};
    for (Path& p : paths_below(g, v, n)) {
        const bool keep = mode == PathMode::Exact ? p.degree() == n : in_boundary(g, p, n);
        if (keep) set.paths.push_back(std::move(p));
    }
    return set;
}

std::vector<Path> paths_up_to(const KGraph& g, VertexId v, int max_total) {
    check_vertex(g, v);
    std::vector<Path> out;
    std::vector<EdgeId> seq;
    Degree d(g.rank());
    grow(g, v, 0, v, seq, d, [&](const Degree& cur, int) { return cur.total() < max_total; }, out);
    std::sort(out.begin(), out.end(), deglex_less);
    return out;
}

std::vector<Path> paths_with_source(const KGraph& g, VertexId w, int max_total) {
    check_vertex(g, w);
    std::vector<Path> out;
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
        for (Path& p : paths_up_to(g, v, max_total))
            if (p.source() == w) out.push_back(std::move(p));
    std::sort(out.begin(), out.end(), deglex_less);
    return out;
}

std::vector<Path> mce(const KGraph& g, const Path& mu, const Path& nu) {
    if (mu.range() != nu.range()) return {};
    const Degree target = join(mu.degree(), nu.degree());
    std::vector<Path> out;
    for (const Path& alpha : enumerate_paths(g, mu.source(), target - mu.degree(), PathMode::Exact).paths) {
        Path lambda = compose(g, mu, alpha);
        if (factorize(g, lambda, nu.degree()).first == nu) out.push_back(std::move(lambda));
    }
    std::sort(out.begin(), out.end());
    return out;
}

CycleTest is_generalized_cycle(const KGraph& g, const Path& mu, const Path& nu) {
    if (mu == nu) throw PreconditionError("a generalized cycle needs distinct paths");
    if (mu.source() != nu.source() || mu.range() != nu.range())
        throw PreconditionError("a generalized cycle needs paths with common range and source");
    CycleTest result;
    const Degree n0 = join(mu.degree(), nu.degree()) - mu.degree();
    for (const Path& tau : enumerate_paths(g, mu.source(), n0, PathMode::Boundary).paths)
        if (mce(g, compose(g, mu, tau), nu).empty()) result.failing.push_back(tau);
    result.holds = result.failing.empty();
    return result;
}

std::optional<Path> find_entrance(const KGraph& g, const Path& mu, const Path& nu, int depth) {
    if (!is_generalized_cycle(g, mu, nu).holds)
        throw PreconditionError("entrance search needs a generalized cycle");
    for (const Path& tau : paths_up_to(g, nu.source(), depth))
        if (mce(g, mu, compose(g, nu, tau)).empty()) return tau;
    return std::nullopt;
}

std::optional<GeneralizedCycle> find_gen_cycle_with_entrance(const KGraph& g, const std::vector<Path>& candidates,
                                                             int depth, const std::optional<Path>& anchor,
                                                             std::optional<GeneralizedCycle>* without_entrance) {
    // Group by (range, source) so the inner loop only sees admissible partners.
    std::map<std::pair<VertexId, VertexId>, std::vector<const Path*>> by_ends;
    for (const Path& p : candidates)
        if (!p.is_vertex()) by_ends[{p.range(), p.source()}].push_back(&p);
    for (const Path& mu : candidates) {
        if (mu.is_vertex()) continue;
        for (const Path* nu : by_ends[{mu.range(), mu.source()}]) {
            if (*nu == mu) continue;
            if (anchor && !has_prefix(g, *nu, *anchor)) continue;
            if (mce(g, mu, *nu).empty()) continue;  // Z(μ) ⊆ Z(ν) forces a common extension
            if (!is_generalized_cycle(g, mu, *nu).holds) continue;
            if (auto tau = find_entrance(g, mu, *nu, depth)) return GeneralizedCycle{mu, *nu, *tau};
            if (without_entrance && !*without_entrance) *without_entrance = GeneralizedCycle{mu, *nu, std::nullopt};
        }
    }
    return std::nullopt;
}

ReachSearch find_reaching_gen_cycle(const KGraph& g, VertexId v, int depth) {
    check_vertex(g, v);
    ReachSearch search;
    std::set<VertexId> tried;
    for (const Path& gamma : paths_up_to(g, v, depth)) {
        const VertexId w = gamma.source();
        if (!tried.insert(w).second) continue;
        const auto candidates = paths_with_source(g, w, depth);
        if (auto cycle = find_gen_cycle_with_entrance(g, candidates, depth, std::nullopt, &search.cycle_without_entrance)) {
            search.found = ReachingCycle{std::move(*cycle), gamma};
            return search;
        }
    }
    return search;
}

// ---------------------------------------------------------------------------
// Aperiodicity

std::string_view to_string(AperiodicityVerdict::Status status) {
    switch (status) {
        case AperiodicityVerdict::Status::Aperiodic: return "aperiodic";
        case AperiodicityVerdict::Status::Periodic: return "periodic";
        case AperiodicityVerdict::Status::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kStateCap = 200000;

// A pair (ρ1, ρ2) with common range and source whose degrees have disjoint
// support; αx = βx reduces to ρ1x = ρ2x after stripping the common prefix.
using PairState = std::pair<Path, Path>;

// Strips the common prefix of degree d(a)∧d(b). Empty when the prefixes differ.
std::optional<PairState> reduce(const KGraph& g, const Path& a, const Path& b) {
    const Degree c = meet(a.degree(), b.degree());
    auto [ha, ta] = factorize(g, a, c);
    auto [hb, tb] = factorize(g, b, c);
    if (ha != hb) return std::nullopt;
    return PairState{std::move(ta), std::move(tb)};
}

std::vector<Path> one_step_extensions(const KGraph& g, VertexId s) {
    return enumerate_paths(g, s, Degree::uniform(static_cast<std::size_t>(g.rank()), 1), PathMode::Boundary).paths;
}

std::optional<PairState> advance(const KGraph& g, const PairState& st, const Path& tau) {
    return reduce(g, compose(g, st.first, tau), compose(g, st.second, tau));
}

}  // namespace

bool separates(const KGraph& g, const Path& alpha, const Path& beta, const Path& y) {
    if (alpha.range() != beta.range()) return true;
    return !reduce(g, compose(g, alpha, y), compose(g, beta, y)).has_value();
}

bool never_separated(const KGraph& g, const Path& alpha, const Path& beta, std::size_t* states) {
    if (alpha == beta || alpha.source() != beta.source() || alpha.range() != beta.range()) return false;
    auto start = reduce(g, alpha, beta);
    if (!start) return false;
    std::set<PairState> seen{*start};
    std::deque<PairState> queue{*start};
    while (!queue.empty()) {
        PairState st = std::move(queue.front());
        queue.pop_front();
        for (const Path& tau : one_step_extensions(g, st.first.source())) {
            auto next = advance(g, st, tau);
            if (!next) return false;
            if (seen.insert(*next).second) {
                if (seen.size() > kStateCap) return false;
                queue.push_back(std::move(*next));
            }
        }
    }
    if (states) *states = seen.size();
    return true;
}

namespace {

enum class VertexOutcome { Aperiodic, Periodic, Unknown };

// Shortest extension (built from one-step boundary pieces) that separates the
// pair; empty when the reachable states close without separating it.
std::optional<Path> separating_extension(const KGraph& g, const PairState& start) {
    std::map<PairState, std::pair<const PairState*, Path>> parent;
    std::deque<const PairState*> queue;
    auto root = parent.emplace(start, std::pair<const PairState*, Path>{nullptr, g.vertex_path(start.first.source())});
    queue.push_back(&root.first->first);
    auto unwind = [&](const PairState* st, Path last) {
        std::vector<Path> steps{std::move(last)};
        for (const PairState* at = st; parent.at(*at).first; at = parent.at(*at).first)
            steps.push_back(parent.at(*at).second);
        Path out = g.vertex_path(start.first.source());
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) out = compose(g, out, *it);
        return out;
    };
    while (!queue.empty()) {
        const PairState* st = queue.front();
        queue.pop_front();
        for (const Path& tau : one_step_extensions(g, st->first.source())) {
            auto next = advance(g, *st, tau);
            if (!next) return unwind(st, tau);
            auto [it, inserted] = parent.emplace(std::move(*next), std::pair<const PairState*, Path>{st, tau});
            if (!inserted) continue;
            if (parent.size() > kStateCap) return std::nullopt;
            queue.push_back(&it->first);
        }
    }
    return std::nullopt;
}

struct VertexResult {
    VertexOutcome outcome = VertexOutcome::Unknown;
    std::optional<AperiodicEvidence> aperiodic;
    std::optional<PeriodicEvidence> periodic;
};

VertexResult check_vertex_aperiodicity(const KGraph& g, VertexId v, int depth) {
    VertexResult result;
    // Reduced pairs: common range, source v, degrees with disjoint support.
    const auto paths = paths_with_source(g, v, depth);
    std::vector<PairState> pairs;
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = 0; j < paths.size(); ++j) {
            if (i == j || paths[i].range() != paths[j].range()) continue;
            if (!meet(paths[i].degree(), paths[j].degree()).is_zero()) continue;
            if (paths[i].degree() == paths[j].degree()) continue;
            if (deglex_less(paths[j], paths[i])) continue;  // each unordered pair once, reported larger first
            pairs.emplace_back(paths[i], paths[j]);
        }

    if (pairs.empty()) {
        result.outcome = VertexOutcome::Aperiodic;
        result.aperiodic = AperiodicEvidence{v, g.vertex_path(v), 0};
        return result;
    }

    // Greedy pass: extend y until the first surviving pair is separated, carry
    // every other pair along, repeat. Separation is stable under extension.
    {
        Path y = g.vertex_path(v);
        std::vector<PairState> alive = pairs;
        bool stalled = false;
        while (!alive.empty() && !stalled) {
            auto step = separating_extension(g, alive.front());
            if (!step) {
                stalled = true;
                break;
            }
            y = compose(g, y, *step);
            std::vector<PairState> next;
            for (const auto& st : alive)
                if (auto moved = advance(g, st, *step)) next.push_back(std::move(*moved));
            alive = std::move(next);
        }
        if (!stalled) {
            result.outcome = VertexOutcome::Aperiodic;
            result.aperiodic = AperiodicEvidence{v, y, pairs.size()};
            return result;
        }
    }

    for (const auto& [a, b] : pairs) {
        std::size_t closed = 0;
        if (never_separated(g, a, b, &closed)) {
            result.outcome = VertexOutcome::Periodic;
            result.periodic = PeriodicEvidence{v, b, a, closed, true};
            return result;
        }
    }

    // Joint search for one truncated boundary path separating every pair. Each
    // alive entry remembers which original pair it descends from.
    using Alive = std::pair<std::size_t, PairState>;
    struct Node {
        VertexId at;
        std::vector<Alive> alive;
        auto operator<=>(const Node&) const = default;
    };
    std::vector<Node> nodes;
    std::map<Node, int> index;
    std::vector<std::pair<int, std::optional<Path>>> back{{-1, std::nullopt}};
    Node root{v, {}};
    for (std::size_t i = 0; i < pairs.size(); ++i) root.alive.emplace_back(i, pairs[i]);
    nodes.push_back(root);
    index[root] = 0;
    std::deque<int> queue{0};
    auto reconstruct = [&](int idx) {
        std::vector<Path> steps;
        while (back[idx].first >= 0) {
            steps.push_back(*back[idx].second);
            idx = back[idx].first;
        }
        Path y = g.vertex_path(v);
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) y = compose(g, y, *it);
        return y;
    };
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        const Node node = nodes[cur];
        for (const Path& tau : one_step_extensions(g, node.at)) {
            Node next{tau.source(), {}};
            for (const auto& [origin, st] : node.alive)
                if (auto moved = advance(g, st, tau)) next.alive.emplace_back(origin, std::move(*moved));
            if (index.count(next)) continue;
            const int id = static_cast<int>(nodes.size());
            nodes.push_back(next);
            index[next] = id;
            back.emplace_back(cur, tau);
            if (next.alive.empty()) {
                result.outcome = VertexOutcome::Aperiodic;
                result.aperiodic = AperiodicEvidence{v, reconstruct(id), pairs.size()};
                return result;
            }
            if (nodes.size() > kStateCap) return result;
            queue.push_back(id);
        }
    }
    // Closed without separating: every boundary path at v keeps some pair
    // unseparated forever. Report a pair surviving in the sparsest state.
    const Node* sparsest = &nodes.front();
    for (const Node& n : nodes)
        if (n.alive.size() < sparsest->alive.size()) sparsest = &n;
    const auto& [a, b] = pairs[sparsest->alive.front().first];
    result.outcome = VertexOutcome::Periodic;
    result.periodic = PeriodicEvidence{v, b, a, nodes.size(), false};
    return result;
}

}  // namespace

AperiodicityVerdict aperiodicity_check(const KGraph& g, int depth) {
    AperiodicityVerdict verdict;
    verdict.depth = depth;
    bool unknown = false;
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
        VertexResult r = check_vertex_aperiodicity(g, v, depth);
        switch (r.outcome) {
            case VertexOutcome::Periodic:
                verdict.status = AperiodicityVerdict::Status::Periodic;
                verdict.periodic = std::move(r.periodic);
                verdict.aperiodic.clear();
                return verdict;
            case VertexOutcome::Aperiodic:
                verdict.aperiodic.push_back(std::move(*r.aperiodic));
                break;
            case VertexOutcome::Unknown:
                unknown = true;
                verdict.undecided.push_back(v);
                break;
        }
    }
    verdict.status = unknown ? AperiodicityVerdict::Status::Unknown : AperiodicityVerdict::Status::Aperiodic;
    return verdict;
}

}  // namespace kpinf
