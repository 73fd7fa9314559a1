#pragma once

// Definition-level reference implementations. Everything here is built from
// raw edge words and set comparisons; nothing calls enumerate_paths, mce,
// sat_her_closure or compose_bisections.

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "kpinf/kgraph.hpp"
#include "kpinf/steinberg.hpp"

namespace kpinf::testing {

/// vΛ^n: every composable edge word with the right color counts, canonicalized.
inline std::vector<Path> brute_exact(const KGraph& g, VertexId v, const Degree& n) {
    std::set<Path> out;
    std::vector<EdgeId> word;
    Degree left = n;
    auto dfs = [&](auto&& self, VertexId at) -> void {
        if (left.is_zero()) {
            out.insert(g.make_path(v, word));
            return;
        }
        for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
            const Edge& ed = g.edge(e);
            if (ed.range != at || left[ed.color] == 0) continue;
            --left[ed.color];
            word.push_back(e);
            self(self, ed.source);
            word.pop_back();
            ++left[ed.color];
        }
    };
    dfs(dfs, v);
    return {out.begin(), out.end()};
}

/// Memoized brute_exact.
class ExactCache {
public:
    explicit ExactCache(const KGraph& g) : g_(g) {}
    const std::vector<Path>& get(VertexId v, const Degree& n) {
        auto key = std::make_pair(v, n);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, brute_exact(g_, v, n)).first;
        return it->second;
    }

private:
    const KGraph& g_;
    std::map<std::pair<VertexId, Degree>, std::vector<Path>> cache_;
};

/// Every path with range v and degree <= n.
inline std::vector<Path> brute_below(const KGraph& g, VertexId v, const Degree& n) {
    std::vector<Path> out;
    for (const Degree& m : degrees_below(n)) {
        auto part = brute_exact(g, v, m);
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool receives_color(const KGraph& g, VertexId v, int color) {
    for (const Edge& e : g.edges())
        if (e.range == v && e.color == color) return true;
    return false;
}

/// vΛ^{≤n}: d(λ) <= n, and whenever d(λ)_i < n_i the source receives no color-i edge.
inline std::vector<Path> brute_boundary(const KGraph& g, VertexId v, const Degree& n) {
    std::vector<Path> out;
    for (const Path& p : brute_below(g, v, n)) {
        bool maximal = true;
        for (int i = 0; i < g.rank(); ++i)
            if (p.degree()[i] < n[i] && receives_color(g, p.source(), i)) maximal = false;
        if (maximal) out.push_back(p);
    }
    return out;
}

/// Memoized brute_boundary.
class BoundaryCache {
public:
    explicit BoundaryCache(const KGraph& g) : g_(g) {}
    const std::vector<Path>& get(VertexId v, const Degree& n) {
        auto key = std::make_pair(v, n);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, brute_boundary(g_, v, n)).first;
        return it->second;
    }

private:
    const KGraph& g_;
    std::map<std::pair<VertexId, Degree>, std::vector<Path>> cache_;
};

/// {μα} ∩ {νβ} at degree d(μ) ∨ d(ν).
inline std::vector<Path> brute_mce(const KGraph& g, ExactCache& cache, const Path& mu, const Path& nu) {
    if (mu.range() != nu.range()) return {};
    const Degree top = join(mu.degree(), nu.degree());
    std::set<Path> from_mu;
    for (const Path& a : cache.get(mu.source(), top - mu.degree())) from_mu.insert(compose(g, mu, a));
    std::vector<Path> out;
    for (const Path& b : cache.get(nu.source(), top - nu.degree())) {
        Path x = compose(g, nu, b);
        if (from_mu.count(x)) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Hereditary over every path of degree <= (2,...,2), saturated over every
/// nonzero n <= (2,...,2).
inline std::vector<std::vector<VertexId>> brute_sat_her(const KGraph& g) {
    const std::size_t nv = g.vertex_count();
    const Degree two = Degree::uniform(g.rank(), 2);
    std::vector<std::vector<Path>> below(nv);
    std::vector<std::vector<std::vector<Path>>> boundary(nv);
    for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v) {
        below[v] = brute_below(g, v, two);
        for (const Degree& n : degrees_below(two))
            if (!n.is_zero()) boundary[v].push_back(brute_boundary(g, v, n));
    }
    std::vector<std::vector<VertexId>> out;
    for (unsigned long mask = 0; mask < (1ul << nv); ++mask) {
        auto in = [&](VertexId v) { return (mask >> v) & 1ul; };
        bool ok = true;
        for (VertexId v = 0; ok && v < static_cast<VertexId>(nv); ++v) {
            if (in(v)) {
                for (const Path& p : below[v])
                    if (!in(p.source())) ok = false;
            } else {
                for (const auto& b : boundary[v])
                    if (std::all_of(b.begin(), b.end(), [&](const Path& p) { return in(p.source()) != 0; }))
                        ok = false;
            }
        }
        if (!ok) continue;
        std::vector<VertexId> s;
        for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v)
            if (in(v)) s.push_back(v);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// MCE(μτ, ν) ≠ ∅ for every τ ∈ s(μ)Λ of degree <= d(ν) + (1,...,1).
inline bool brute_generalized_cycle(const KGraph& g, const Path& mu, const Path& nu) {
    ExactCache cache(g);
    const Degree bound = nu.degree() + Degree::uniform(g.rank(), 1);
    for (const Path& tau : brute_below(g, mu.source(), bound))
        if (brute_mce(g, cache, compose(g, mu, tau), nu).empty()) return false;
    return true;
}

/// αx and βx agree up to their common degree for every x in `truncations`
/// (boundary truncations at s(α)).
inline bool brute_never_separated(const KGraph& g, const Path& alpha, const Path& beta,
                                  const std::vector<Path>& truncations) {
    for (const Path& x : truncations) {
        Path ax = compose(g, alpha, x);
        Path bx = compose(g, beta, x);
        const Degree m = meet(ax.degree(), bx.degree());
        if (factorize(g, ax, m).first != factorize(g, bx, m).first) return false;
    }
    return true;
}

/// Same, over s(α)Λ^{≤(N,...,N)}.
inline bool brute_never_separated(const KGraph& g, const Path& alpha, const Path& beta, int level) {
    return brute_never_separated(g, alpha, beta, brute_boundary(g, alpha.source(), Degree::uniform(g.rank(), level)));
}

// ---------------------------------------------------------------------------
// Truncated groupoid arrows. An arrow (x, n, y) is kept as the pair of
// truncated boundary paths (x, y); membership in Z(α∗β) asks for common tails.

inline bool arrow_in(const KGraph& g, const Path& x, const Path& y, const CylinderBisection& b) {
    if (!b.lambda.degree().leq(x.degree()) || !b.mu.degree().leq(y.degree())) return false;
    if (x.degree() - b.lambda.degree() != y.degree() - b.mu.degree()) return false;
    auto [xp, xt] = factorize(g, x, b.lambda.degree());
    auto [yp, yt] = factorize(g, y, b.mu.degree());
    return xp == b.lambda && yp == b.mu && xt == yt;
}

struct ProductCheck {
    bool ok = true;
    std::string problem;
};

/// Z(λ∗μ)·Z(ν∗ρ) versus the claimed cylinder list, pointwise at level N:
/// every product arrow lies in exactly one claimed cylinder, and every arrow
/// of a claimed cylinder factors through the product.
inline ProductCheck check_product_pointwise(const KGraph& g, const CylinderBisection& b, const CylinderBisection& c,
                                            const std::vector<CylinderBisection>& claimed, int level,
                                            BoundaryCache& boundary) {
    ProductCheck r;
    const Degree N = Degree::uniform(g.rank(), level);
    auto tail = [&](const Path& p, const Path& prefix) -> std::optional<Path> {
        if (!prefix.degree().leq(p.degree())) return std::nullopt;
        auto [h, t] = factorize(g, p, prefix.degree());
        if (h != prefix) return std::nullopt;
        return t;
    };
    // Middle points w = μx = νy.
    if (b.mu.range() == c.lambda.range()) {
        for (const Path& w : boundary.get(b.mu.range(), N)) {
            auto x = tail(w, b.mu);
            auto y = tail(w, c.lambda);
            if (!x || !y) continue;
            Path left = compose(g, b.lambda, *x);
            Path right = compose(g, c.mu, *y);
            int hits = 0;
            for (const auto& z : claimed)
                if (arrow_in(g, left, right, z)) ++hits;
            if (hits != 1) {
                r.ok = false;
                r.problem = "product arrow covered " + std::to_string(hits) + " times";
                return r;
            }
        }
    }
    for (const auto& z : claimed) {
        const Degree reach = N - meet(N, z.lambda.degree());
        for (const Path& t : boundary.get(z.lambda.source(), reach)) {
            Path left = compose(g, z.lambda, t);
            Path right = compose(g, z.mu, t);
            auto x = tail(left, b.lambda);
            if (!x) {
                r.ok = false;
                r.problem = "claimed arrow outside Z(lambda*mu)";
                return r;
            }
            Path w = compose(g, b.mu, *x);
            auto y = tail(w, c.lambda);
            if (!y || compose(g, c.mu, *y) != right) {
                r.ok = false;
                r.problem = "claimed arrow does not factor";
                return r;
            }
        }
    }
    return r;
}

}  // namespace kpinf::testing
