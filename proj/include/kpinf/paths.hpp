#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kpinf/kgraph.hpp"

namespace kpinf {

enum class PathMode { Exact, Boundary };

/// A duplicate-free, sorted set of paths plus the query that produced it.
struct PathSet {
    VertexId vertex = 0;
    Degree bound;
    PathMode mode = PathMode::Exact;
    std::vector<Path> paths;

    std::size_t size() const noexcept { return paths.size(); }
    bool empty() const noexcept { return paths.empty(); }
};

/// vΛ^n (Exact) or vΛ^{≤n} (Boundary).
PathSet enumerate_paths(const KGraph& g, VertexId v, const Degree& n, PathMode mode);

/// Every path with range v and degree <= n.
std::vector<Path> paths_below(const KGraph& g, VertexId v, const Degree& n);
/// Every path with range v and total degree <= max_total, degree-lexicographically sorted.
std::vector<Path> paths_up_to(const KGraph& g, VertexId v, int max_total);
/// Every path with source w and total degree <= max_total, degree-lexicographically sorted.
std::vector<Path> paths_with_source(const KGraph& g, VertexId w, int max_total);

/// Minimal common extensions: all λ of degree d(μ)∨d(ν) with λ = μα = νβ.
std::vector<Path> mce(const KGraph& g, const Path& mu, const Path& nu);

struct GeneralizedCycle {
    Path mu;
    Path nu;
    std::optional<Path> entrance;
};

struct CycleTest {
    bool holds = false;
    /// Extensions τ ∈ s(μ)Λ^{≤n0} with MCE(μτ, ν) = ∅.
    std::vector<Path> failing;
};

/// Z(μ) ⊆ Z(ν) for distinct μ, ν with common range and source. Throws
/// PreconditionError when the endpoints differ or μ = ν.
CycleTest is_generalized_cycle(const KGraph& g, const Path& mu, const Path& nu);

/// Searches τ ∈ s(ν)Λ of total degree <= depth with MCE(μ, ντ) = ∅, in
/// degree-lexicographic order. Empty result means "not found up to depth".
std::optional<Path> find_entrance(const KGraph& g, const Path& mu, const Path& nu, int depth);

struct ReachingCycle {
    GeneralizedCycle cycle;  // entrance always set
    Path connector;          // γ ∈ vΛs(μ)
};

struct ReachSearch {
    std::optional<ReachingCycle> found;
    /// A generalized cycle (without entrance) met during the search, if any.
    std::optional<GeneralizedCycle> cycle_without_entrance;
};

/// Looks for a generalized cycle with an entrance whose common source reaches
/// v, every path involved of total degree <= depth. Cycles use non-vertex paths.
ReachSearch find_reaching_gen_cycle(const KGraph& g, VertexId v, int depth);

/// First generalized cycle (μ, ν) with an entrance among pairs of distinct
/// `candidates` (μ outer, ν inner, both in candidate order), optionally
/// requiring ν to extend `anchor`. A cycle lacking an entrance within `depth`
/// is reported through `without_entrance` when that pointer is non-null.
std::optional<GeneralizedCycle> find_gen_cycle_with_entrance(const KGraph& g, const std::vector<Path>& candidates,
                                                             int depth, const std::optional<Path>& anchor,
                                                             std::optional<GeneralizedCycle>* without_entrance);

// ---------------------------------------------------------------------------
// Aperiodicity

struct AperiodicEvidence {
    VertexId vertex;
    /// Truncated boundary path that separates every tested pair.
    Path separator;
    std::size_t pairs_tested;
};

struct PeriodicEvidence {
    VertexId vertex;
    Path alpha;
    Path beta;
    /// Number of closed extension states explored when proving αx = βx (single
    /// pair) or that no extension separates the tested pairs (joint search).
    std::size_t closed_states;
    /// True when alpha x = beta x was proved for every boundary path x at the vertex.
    bool single_pair;
};

struct AperiodicityVerdict {
    enum class Status { Aperiodic, Periodic, Unknown };
    Status status = Status::Unknown;
    std::vector<AperiodicEvidence> aperiodic;  // one per vertex when Aperiodic
    std::optional<PeriodicEvidence> periodic;
    std::vector<VertexId> undecided;
    int depth = 0;
};

std::string_view to_string(AperiodicityVerdict::Status status);

/// Three-valued semi-decision. Pairs α ≠ β ∈ Λv of total degree <= depth are
/// tested; a vertex is periodic when exhaustive extension closes without
/// separating them.
AperiodicityVerdict aperiodicity_check(const KGraph& g, int depth);

/// True when αx = βx for every boundary path x ∈ vΛ^{≤∞}; decided by
/// closing the finite set of extension states.
bool never_separated(const KGraph& g, const Path& alpha, const Path& beta, std::size_t* states = nullptr);

/// True when the truncated boundary path y already proves αy ≠ βy.
bool separates(const KGraph& g, const Path& alpha, const Path& beta, const Path& y);

}  // namespace kpinf
