#pragma once

#include <cstdint>
#include <optional>

#include "kpinf/kgraph.hpp"

namespace kpinf {

/// One vertex `v` with n loops of color 1 named a, b, c, ...
KGraph rose(int n);
/// One vertex `v`, loops e (color 1) and f (color 2), square e f ~ f e.
KGraph torus();
/// Ω_{k,m}: vertices p ≤ m in N^k (named like `v1_0`), one edge of color i
/// from p + e_i to p (named by the color letter and p, like `a0_0`).
KGraph omega(const Degree& m);
/// One-edge 1-graph: edge `e` with range v and source w.
KGraph single_edge();
/// Cartesian product Λ1 × Λ2 of rank k1 + k2. Vertex (u, w) is named `u_w`;
/// edges are `e_w` and `u_f`.
KGraph product(const KGraph& a, const KGraph& b);
/// A 1-graph from an adjacency matrix: adj[r][s] edges with range r, source s.
KGraph one_graph(const std::vector<std::vector<int>>& adj);

/// A 2-graph on `vertices` vertices whose color-2 adjacency commutes with the
/// color-1 adjacency, with squares chosen by a seeded random bijection.
/// Returns nothing when the draw is not locally convex or exceeds `max_edges`.
std::optional<KGraph> random_two_graph(std::uint64_t seed, int vertices, int max_edges);

}  // namespace kpinf
