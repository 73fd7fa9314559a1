#include "kpinf/builders.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "kpinf/errors.hpp"

namespace kpinf {

namespace {

std::string letter(int i) { return std::string(1, static_cast<char>('a' + i)); }

std::string coords_name(const Degree& p) {
    std::string s;
    for (std::size_t i = 0; i < p.rank(); ++i) {
        if (i) s += "_";
        s += std::to_string(p[i]);
    }
    return s;
}

}  // namespace

KGraph rose(int n) {
    if (n < 1 || n > 26) throw PreconditionError("rose needs 1..26 loops");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back(Edge{letter(i), 0, 0, 0});
    return KGraph(1, {"v"}, std::move(edges), {});
}

KGraph torus() { return KGraph(2, {"v"}, {Edge{"e", 0, 0, 0}, Edge{"f", 1, 0, 0}}, {Square{0, 1, 1, 0}}); }

KGraph single_edge() { return KGraph(1, {"v", "w"}, {Edge{"e", 0, 1, 0}}, {}); }

KGraph omega(const Degree& m) {
    if (m.rank() == 0 || m.rank() > 26 || !m.is_nonnegative()) throw PreconditionError("bad omega shape");
    const int k = static_cast<int>(m.rank());
    const auto points = degrees_below(m);
    std::map<Degree, VertexId> index;
    std::vector<std::string> names;
    for (const auto& p : points) {
        index[p] = static_cast<VertexId>(names.size());
        names.push_back("v" + coords_name(p));
    }
    std::vector<Edge> edges;
    std::map<std::pair<Degree, int>, EdgeId> edge_at;
    for (const auto& p : points) {
        for (int i = 0; i < k; ++i) {
            const Degree s = p + Degree::unit(k, i);
            if (!s.leq(m)) continue;
            edge_at[{p, i}] = static_cast<EdgeId>(edges.size());
            edges.push_back(Edge{letter(i) + coords_name(p), i, index[s], index[p]});
        }
    }
    std::vector<Square> squares;
    for (const auto& p : points) {
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                const Degree pi = p + Degree::unit(k, i), pj = p + Degree::unit(k, j);
                if (!(pi + Degree::unit(k, j)).leq(m)) continue;
                squares.push_back(Square{edge_at.at({p, i}), edge_at.at({pi, j}), edge_at.at({p, j}),
                                         edge_at.at({pj, i})});
            }
        }
    }
    return KGraph(k, std::move(names), std::move(edges), std::move(squares));
}

KGraph product(const KGraph& a, const KGraph& b) {
    const int ka = a.rank();
    const auto nb = static_cast<VertexId>(b.vertex_count());
    auto vid = [&](VertexId u, VertexId w) { return u * nb + w; };
    std::vector<std::string> names;
    for (std::size_t u = 0; u < a.vertex_count(); ++u)
        for (std::size_t w = 0; w < b.vertex_count(); ++w)
            names.push_back(a.vertex_name(static_cast<VertexId>(u)) + "_" + b.vertex_name(static_cast<VertexId>(w)));
    std::vector<Edge> edges;
    std::map<std::pair<EdgeId, VertexId>, EdgeId> left, right;  // (e, w) and (f, u)
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        const Edge& x = a.edge(static_cast<EdgeId>(e));
        for (VertexId w = 0; w < nb; ++w) {
            left[{static_cast<EdgeId>(e), w}] = static_cast<EdgeId>(edges.size());
            edges.push_back(Edge{x.name + "_" + b.vertex_name(w), x.color, vid(x.source, w), vid(x.range, w)});
        }
    }
    for (std::size_t f = 0; f < b.edge_count(); ++f) {
        const Edge& y = b.edge(static_cast<EdgeId>(f));
        for (VertexId u = 0; u < static_cast<VertexId>(a.vertex_count()); ++u) {
            right[{static_cast<EdgeId>(f), u}] = static_cast<EdgeId>(edges.size());
            edges.push_back(Edge{a.vertex_name(u) + "_" + y.name, ka + y.color, vid(u, y.source), vid(u, y.range)});
        }
    }
    std::vector<Square> squares;
    for (const Square& s : a.squares())
        for (VertexId w = 0; w < nb; ++w)
            squares.push_back(Square{left[{s.first, w}], left[{s.second, w}], left[{s.rewritten_first, w}],
                                     left[{s.rewritten_second, w}]});
    for (const Square& s : b.squares())
        for (VertexId u = 0; u < static_cast<VertexId>(a.vertex_count()); ++u)
            squares.push_back(Square{right[{s.first, u}], right[{s.second, u}], right[{s.rewritten_first, u}],
                                     right[{s.rewritten_second, u}]});
    // (e, r(f)) (s(e), f) = (r(e), f) (e, s(f)).
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        const Edge& x = a.edge(static_cast<EdgeId>(e));
        for (std::size_t f = 0; f < b.edge_count(); ++f) {
            const Edge& y = b.edge(static_cast<EdgeId>(f));
            squares.push_back(Square{left[{static_cast<EdgeId>(e), y.range}], right[{static_cast<EdgeId>(f), x.source}],
                                     right[{static_cast<EdgeId>(f), x.range}], left[{static_cast<EdgeId>(e), y.source}]});
        }
    }
    return KGraph(ka + b.rank(), std::move(names), std::move(edges), std::move(squares));
}

KGraph one_graph(const std::vector<std::vector<int>>& adj) {
    const std::size_t n = adj.size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("u" + std::to_string(i));
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < n; ++r) {
        if (adj[r].size() != n) throw PreconditionError("adjacency matrix is not square");
        for (std::size_t s = 0; s < n; ++s)
            for (int c = 0; c < adj[r][s]; ++c)
                edges.push_back(Edge{"e" + std::to_string(r) + "_" + std::to_string(s) + "_" + std::to_string(c), 0,
                                     static_cast<VertexId>(s), static_cast<VertexId>(r)});
    }
    return KGraph(1, std::move(names), std::move(edges), {});
}

std::optional<KGraph> random_two_graph(std::uint64_t seed, int vertices, int max_edges) {
    std::mt19937_64 rng(seed);
    const auto n = static_cast<std::size_t>(vertices);
    using Matrix = std::vector<std::vector<int>>;
    Matrix a(n, std::vector<int>(n, 0));
    std::discrete_distribution<int> entry({4, 4, 2});
    for (auto& row : a)
        for (int& x : row) x = entry(rng);
    // B is a polynomial in A, so AB = BA and the square counts match.
    Matrix b = a;
    const int shape = std::uniform_int_distribution<int>(0, 2)(rng);
    if (shape >= 1)
        for (std::size_t i = 0; i < n; ++i) b[i][i] += 1;
    if (shape == 2) {
        Matrix sq(n, std::vector<int>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l) sq[i][j] += a[i][l] * a[l][j];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b[i][j] = std::min(sq[i][j] + (i == j ? 1 : 0), 2);
        // Truncation may break commutation; checked below through the counts.
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("u" + std::to_string(i));
    std::vector<Edge> edges;
    auto add = [&](const Matrix& m, int color, const std::string& tag) {
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s)
                for (int c = 0; c < m[r][s]; ++c)
                    edges.push_back(Edge{tag + std::to_string(r) + std::to_string(s) + "_" + std::to_string(c), color,
                                         static_cast<VertexId>(s), static_cast<VertexId>(r)});
    };
    add(a, 0, "a");
    add(b, 1, "b");
    if (static_cast<int>(edges.size()) > max_edges || edges.empty()) return std::nullopt;

    // Group composable pairs by (range, source): ef with color(e) = 1 < color(f) = 2, and f'e'.
    std::map<std::pair<VertexId, VertexId>, std::vector<std::pair<EdgeId, EdgeId>>> ef, fe;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = 0; j < edges.size(); ++j) {
            const Edge& x = edges[i];
            const Edge& y = edges[j];
            if (x.source != y.range) continue;
            const auto key = std::make_pair(x.range, y.source);
            if (x.color == 0 && y.color == 1) ef[key].emplace_back(static_cast<EdgeId>(i), static_cast<EdgeId>(j));
            if (x.color == 1 && y.color == 0) fe[key].emplace_back(static_cast<EdgeId>(i), static_cast<EdgeId>(j));
        }
    }
    std::vector<Square> squares;
    for (auto& [key, lhs] : ef) {
        auto& rhs = fe[key];
        if (rhs.size() != lhs.size()) return std::nullopt;
        std::shuffle(rhs.begin(), rhs.end(), rng);
        for (std::size_t i = 0; i < lhs.size(); ++i)
            squares.push_back(Square{lhs[i].first, lhs[i].second, rhs[i].first, rhs[i].second});
    }
    for (const auto& [key, rhs] : fe)
        if (!ef.count(key) && !rhs.empty()) return std::nullopt;
    KGraph g(2, std::move(names), std::move(edges), std::move(squares));
    if (!validate(g).ok()) return std::nullopt;
    return g;
}

}  // namespace kpinf
