#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kpinf/degree.hpp"

namespace kpinf {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

/// A colored edge of the 1-skeleton. `color` is zero-based internally; the
/// text format and all user-facing output use 1..k.
struct Edge {
    std::string name;
    int color = 0;
    VertexId source = 0;
    VertexId range = 0;
};

/// A factorization square: first * second == rewritten_first * rewritten_second,
/// where color(first) < color(second) and the rewritten pair has the colors swapped.
struct Square {
    EdgeId first = 0;
    EdgeId second = 0;
    EdgeId rewritten_first = 0;
    EdgeId rewritten_second = 0;
};

class KGraph;

/// A morphism of the k-graph stored as its color-nondecreasing edge sequence.
/// Vertices are the paths of degree zero.
class Path {
public:
    VertexId range() const noexcept { return range_; }
    VertexId source() const noexcept { return source_; }
    const std::vector<EdgeId>& edges() const noexcept { return edges_; }
    const Degree& degree() const noexcept { return degree_; }
    bool is_vertex() const noexcept { return edges_.empty(); }

    friend bool operator==(const Path& a, const Path& b) {
        return a.range_ == b.range_ && a.source_ == b.source_ && a.edges_ == b.edges_;
    }
    /// Lexicographic on (range, canonical edge sequence, source).
    friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
        if (auto c = a.range_ <=> b.range_; c != 0) return c;
        if (auto c = a.edges_ <=> b.edges_; c != 0) return c;
        return a.source_ <=> b.source_;
    }

private:
    friend class KGraph;
    Path(VertexId range, VertexId source, std::vector<EdgeId> edges, Degree degree)
        : range_(range), source_(source), edges_(std::move(edges)), degree_(std::move(degree)) {}

    VertexId range_ = 0;
    VertexId source_ = 0;
    std::vector<EdgeId> edges_;
    Degree degree_;
};

/// Degree-lexicographic order: total degree, then degree vector, then path order.
bool deglex_less(const Path& a, const Path& b);

/// A finite k-graph presented by its colored 1-skeleton and factorization
/// squares. Immutable after construction; the constructor enforces
/// referential integrity and identifier uniqueness but not the factorization
/// axioms (see validate()).
class KGraph {
public:
    KGraph(int rank, std::vector<std::string> vertices, std::vector<Edge> edges,
           std::vector<Square> squares);

    int rank() const noexcept { return rank_; }
    std::size_t vertex_count() const noexcept { return vertex_names_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Square>& squares() const noexcept { return squares_; }

    std::optional<VertexId> find_vertex(std::string_view name) const;
    std::optional<EdgeId> find_edge(std::string_view name) const;
    /// Throws PreconditionError("unknown vertex ...") for names not in the graph.
    VertexId vertex_id(std::string_view name) const;

    /// Edges of the given color whose range is v (the set vΛ^{e_color}).
    const std::vector<EdgeId>& edges_into(VertexId v, int color) const {
        return into_[static_cast<std::size_t>(v) * rank_ + color];
    }
    bool has_edges_into(VertexId v, int color) const { return !edges_into(v, color).empty(); }
    /// True when no edge of any color has range v.
    bool receives_nothing(VertexId v) const;

    /// Rewrites a composable pair xy of distinct colors into the opposite
    /// color order using the declared squares. Empty when no square applies.
    std::optional<std::pair<EdgeId, EdgeId>> swap(EdgeId x, EdgeId y) const;

    Path vertex_path(VertexId v) const;
    Path edge_path(EdgeId e) const;
    /// Canonicalizes an arbitrary composable edge sequence starting at `range`.
    /// An empty sequence yields the vertex path at `range`.
    Path make_path(VertexId range, std::vector<EdgeId> sequence) const;

    /// Sorts `sequence` by `keys` (keys travel with edge colors through each
    /// square rewrite). Keys must be consistent within each color.
    void rewrite_sorted(std::vector<EdgeId>& sequence, std::vector<int>& keys) const;

    /// Serializes in the `kgraph v1` text format.
    std::string to_text() const;

private:
    int rank_;
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::vector<Square> squares_;
    std::map<std::string, VertexId, std::less<>> vertex_index_;
    std::map<std::string, EdgeId, std::less<>> edge_index_;
    std::vector<std::vector<EdgeId>> into_;
    std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> forward_;
    std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> backward_;
};

/// Parses the `kgraph v1` text format. Throws ParseError on syntax errors,
/// unknown references and duplicate identifiers.
KGraph load_kgraph(std::string_view text);
KGraph load_kgraph_file(const std::string& path);

struct Violation {
    enum class Kind { MissingSquare, NonBijectiveSquare, HexagonFailure, NotLocallyConvex, DanglingEdge };
    Kind kind;
    std::string detail;
    std::vector<std::string> items;
};

std::string_view to_string(Violation::Kind kind);

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
    std::size_t count(Violation::Kind kind) const;
};

/// Checks square completeness and bijectivity, the associativity condition for
/// three colors, and local convexity.
ValidationReport validate(const KGraph& g);

/// pq, defined when s(p) = r(q).
Path compose(const KGraph& g, const Path& p, const Path& q);
/// (p(0,m), p(m,d(p))) for 0 <= m <= d(p).
std::pair<Path, Path> factorize(const KGraph& g, const Path& p, const Degree& m);
/// The segment p(m, n) for 0 <= m <= n <= d(p).
Path segment(const KGraph& g, const Path& p, const Degree& m, const Degree& n);
/// True when p = prefix * tail for some tail.
bool has_prefix(const KGraph& g, const Path& p, const Path& prefix);

/// Dot-joined edge names (or the vertex name), the `pathref` syntax.
std::string path_name(const KGraph& g, const Path& p);
/// Parses `v` or `e1.e2...` (left factor first).
Path parse_path(const KGraph& g, std::string_view text);

}  // namespace kpinf
