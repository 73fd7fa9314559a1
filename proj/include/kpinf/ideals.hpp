#pragma once

#include <utility>
#include <vector>

#include "kpinf/kgraph.hpp"
#include "kpinf/paths.hpp"

namespace kpinf {

/// A saturated hereditary vertex set, stored as a sorted vertex list.
struct SatHerSet {
    std::vector<VertexId> vertices;

    bool contains(VertexId v) const;
    std::size_t size() const noexcept { return vertices.size(); }
    bool empty() const noexcept { return vertices.empty(); }
    friend bool operator==(const SatHerSet&, const SatHerSet&) = default;
    friend auto operator<=>(const SatHerSet&, const SatHerSet&) = default;
};

struct IdealLattice {
    /// Sorted by (size, vertices); element 0 is the empty set, the last one is Λ^0.
    std::vector<SatHerSet> sets;
    /// Covering relations (i, j): sets[i] ⊊ sets[j] with nothing strictly between.
    std::vector<std::pair<std::size_t, std::size_t>> hasse;
};

bool is_hereditary(const KGraph& g, const std::vector<VertexId>& s);
bool is_saturated(const KGraph& g, const std::vector<VertexId>& s);

/// Smallest saturated hereditary set containing `s`. Throws PreconditionError
/// for out-of-range vertex ids.
SatHerSet sat_her_closure(const KGraph& g, const std::vector<VertexId>& s);

IdealLattice enumerate_sat_her(const KGraph& g);

/// The k-graph Λ \ ΛH. Vertex and edge names are kept. Throws
/// PreconditionError unless H is saturated hereditary.
KGraph quotient(const KGraph& g, const SatHerSet& h);

/// Names of `vs`, comma separated.
std::string vertex_list(const KGraph& g, const std::vector<VertexId>& vs);
/// Parses "v1,v2,..." (empty string gives the empty set).
std::vector<VertexId> parse_vertex_list(const KGraph& g, std::string_view text);

struct QuotientVerdict {
    SatHerSet ideal;
    AperiodicityVerdict verdict;
};

struct SweepResult {
    /// Aperiodic only if every quotient is; Periodic if any quotient is.
    AperiodicityVerdict::Status status = AperiodicityVerdict::Status::Unknown;
    std::vector<QuotientVerdict> quotients;
    /// Index into `quotients` of the first periodic quotient, if any.
    std::optional<std::size_t> first_periodic;
};

/// aperiodicity_check on Λ \ ΛH for every saturated hereditary H (H = Λ^0
/// gives the empty graph, which is vacuously aperiodic).
SweepResult strong_aperiodicity_sweep(const KGraph& g, int depth);

}  // namespace kpinf
