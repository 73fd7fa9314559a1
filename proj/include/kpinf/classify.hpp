#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kpinf/ideals.hpp"
#include "kpinf/witness.hpp"

namespace kpinf {

struct VertexConditions {
    VertexId vertex = 0;
    /// vΛ ≠ {v}: some edge has range v.
    bool receives = false;
    /// v is reached from a cycle.
    bool reached_from_cycle = false;
    /// Closed edge walk at some u (edges listed range-first), when found.
    std::vector<EdgeId> cycle;
    /// Edge walk from v back to the cycle (γ ∈ vΛu), when found.
    std::vector<EdgeId> connector;
    /// Walk-length bound |Λ^0_{≥v}|^k used by the search.
    long long bound = 0;
};

/// vΛ ≠ {v}, computed from incoming edges.
bool receives_edges(const KGraph& g, VertexId v);
/// Backward walk search for a cycle reaching v, bounded by |Λ^0_{≥v}|^k.
VertexConditions cycle_condition(const KGraph& g, VertexId v);

struct ClassifyOptions {
    int depth = 6;
    Field field = Field::rationals();
    bool assume_aperiodic = false;
};

struct ClassificationReport {
    enum class Verdict { ProperlyPurelyInfinite, NotPurelyInfinite, Inconclusive };

    std::shared_ptr<const KGraph> graph;
    std::vector<VertexConditions> conditions;
    bool all_receive = false;
    bool all_reached = false;
    std::optional<SweepResult> sweep;
    bool aperiodicity_assumed = false;
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
    /// True when conditions hold, aperiodicity holds, but some certificate is missing.
    bool incoherent = false;
    std::vector<VertexProof> proofs;
    int depth = 0;
    std::string field;
};

std::string_view to_string(ClassificationReport::Verdict v);

/// Throws PreconditionError on graphs that do not validate or have no
/// vertices, and ConsistencyError when the two global conditions disagree.
ClassificationReport classify_pure_infiniteness(std::shared_ptr<const KGraph> g, const ClassifyOptions& opts);

nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const KGraph& g, const AperiodicityVerdict& v);
nlohmann::json to_json(const KGraph& g, const SweepResult& s);

}  // namespace kpinf
