#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kpinf/ideals.hpp"
#include "kpinf/kp_algebra.hpp"
#include "kpinf/paths.hpp"

namespace kpinf {

/// One construction step. `rule` is a stable tag such as "generalized-cycle"
/// or "corner-lift"; `inputs` maps names to element expressions.
struct DerivationStep {
    std::string rule;
    std::string detail;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<DerivationStep> children;
};

/// q ≤ p, q ≠ p, rs = p, sr = q.
struct InfiniteWitness {
    KPElement q;
    KPElement r;
    KPElement s;
};

/// A (2×1) · p · B (1×2) = p ⊕ p.
struct ProperlyInfiniteWitness {
    KPMatrix a;
    KPMatrix b;
};

class WitnessCertificate {
public:
    WitnessCertificate(KPElement target, InfiniteWitness w, DerivationStep derivation);
    WitnessCertificate(KPElement target, ProperlyInfiniteWitness w, DerivationStep derivation);

    const KPElement& target() const noexcept { return target_; }
    bool is_infinite() const noexcept { return std::holds_alternative<InfiniteWitness>(kind_); }
    bool is_properly_infinite() const noexcept { return !is_infinite(); }
    const InfiniteWitness& infinite() const { return std::get<InfiniteWitness>(kind_); }
    const ProperlyInfiniteWitness& properly_infinite() const { return std::get<ProperlyInfiniteWitness>(kind_); }
    const DerivationStep& derivation() const noexcept { return derivation_; }

    /// Re-checks every defining identity from scratch. Empty means valid;
    /// otherwise the first failing identity.
    std::optional<std::string> check() const;
    bool verify() const { return !check(); }

private:
    KPElement target_;
    std::variant<InfiniteWitness, ProperlyInfiniteWitness> kind_;
    DerivationStep derivation_;
};

nlohmann::json to_json(const WitnessCertificate& w);
nlohmann::json to_json(const DerivationStep& d);

/// For a generalized cycle (μ, ν) with entrance: p = s_ν s_ν*, q = s_μ s_μ*,
/// r = s_ν s_μ*, s = s_μ s_ν*. Throws PreconditionError when the cycle or its
/// entrance does not check out; VerificationError if the result fails.
WitnessCertificate witness_from_gen_cycle(std::shared_ptr<const KGraph> g, Field f, const GeneralizedCycle& c);

/// Moves an Infinite certificate for p to p' = yx, given xy = p.
WitnessCertificate transport_infinite(const WitnessCertificate& w, const KPElement& x, const KPElement& y);

/// Passes an Infinite certificate for s_w up to s_v along γ ∈ vΛw: first to
/// s_γ s_γ*, then to s_v through the corner s_γ s_γ* ≤ s_v.
WitnessCertificate lift_along(const WitnessCertificate& w, const Path& gamma);

/// Infinite certificate for s_v from a generalized cycle with entrance whose
/// common source is reached from v by γ.
WitnessCertificate witness_for_vertex(std::shared_ptr<const KGraph> g, Field f, const ReachingCycle& rc);

/// A ProperlyInfinite certificate for q = yx from one for p = xy:
/// A' = (y⊕y)·A·x, B' = y·B·(x⊕x).
WitnessCertificate transport_witness(const KPElement& p, const KPElement& q, const KPElement& x, const KPElement& y,
                                     const WitnessCertificate& w);

/// ProperlyInfinite certificate for p from orthogonal idempotents q1, q2 with
/// p = a_i q_i b_i. When q1 + q2 ≤ p fails, an explicit (c, d) with
/// x1 + x2 = c x1 d must be supplied (x_i = q_i b_i p a_i q_i).
WitnessCertificate orthogonal_witness(const KPElement& p, const KPElement& q1, const KPElement& q2,
                                      const KPElement& a1, const KPElement& b1, const KPElement& a2,
                                      const KPElement& b2,
                                      const std::optional<std::pair<KPElement, KPElement>>& cd = std::nullopt);

/// Infinite certificate extracted from a ProperlyInfinite one.
WitnessCertificate proper_to_infinite(const WitnessCertificate& w);

/// Certificate for s_λ s_λ* from a ProperlyInfinite certificate for s_{s(λ)},
/// transported with x = s_λ*, y = s_λ.
WitnessCertificate cylinder_properly_infinite(const Path& lambda, const WitnessCertificate& vertex_cert);

struct QuotientProof {
    SatHerSet ideal;
    std::shared_ptr<const KGraph> quotient;
    /// "orthogonal-cycles", "reaching-cycle" or "none".
    std::string route;
    /// Infinite certificate for the image of s_v in KP(Λ \ ΛH).
    std::optional<WitnessCertificate> infinite;
    /// Present when the route also proves the image of s_v properly infinite directly.
    std::optional<WitnessCertificate> properly_infinite;
    /// Some w with vΓw ≠ ∅ receives no edges: the corner at w is matricial.
    std::optional<VertexId> matricial_vertex;
    /// A generalized cycle met without entrance, reported when no route worked.
    std::optional<GeneralizedCycle> cycle_without_entrance;
};

struct VertexProof {
    enum class Status { ProperlyInfinite, Negative, Inconclusive, Refused };
    VertexId vertex = 0;
    Status status = Status::Inconclusive;
    std::vector<QuotientProof> quotients;
    std::string explanation;
    bool aperiodicity_assumed = false;
};

std::string_view to_string(VertexProof::Status s);

struct ProofOptions {
    int depth = 6;
    Field field = Field::rationals();
    /// Skip the strong-aperiodicity sweep and take the hypothesis as given.
    bool assume_aperiodic = false;
};

/// For every saturated hereditary H with v ∉ H, searches for an Infinite
/// certificate for the image of s_v in KP(Λ \ ΛH).
VertexProof prove_vertex_properly_infinite(std::shared_ptr<const KGraph> g, VertexId v, const ProofOptions& opts);

/// `g` is the graph the proof was run on (used to name ideal vertices).
nlohmann::json to_json(const KGraph& g, const VertexProof& p);

}  // namespace kpinf
