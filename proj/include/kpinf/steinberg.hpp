#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "kpinf/kp_algebra.hpp"
#include "kpinf/paths.hpp"

namespace kpinf {

/// The compact open bisection Z(λ ∗ μ) = {(λx, d(λ) − d(μ), μx)} of the
/// boundary-path groupoid; requires s(λ) = s(μ).
struct CylinderBisection {
    Path lambda;
    Path mu;

    Degree shift() const { return lambda.degree() - mu.degree(); }
    friend bool operator==(const CylinderBisection&, const CylinderBisection&) = default;
    friend std::strong_ordering operator<=>(const CylinderBisection&, const CylinderBisection&) = default;
};

/// Z(λ∗μ) · Z(ν∗ρ), as a list of pairwise disjoint cylinders.
std::vector<CylinderBisection> compose_bisections(const KGraph& g, const CylinderBisection& b,
                                                  const CylinderBisection& c);
/// Z(λ∗μ)^{-1} = Z(μ∗λ).
CylinderBisection invert(const CylinderBisection& b);

/// A finite combination of indicator functions 1_{Z(λ∗μ)}.
class SteinbergElement {
public:
    using TermMap = std::map<CylinderBisection, Scalar>;

    SteinbergElement(std::shared_ptr<const KGraph> g, Field f);
    static SteinbergElement indicator(std::shared_ptr<const KGraph> g, Field f, const CylinderBisection& b,
                                      const Scalar& c = 1);

    const KGraph& graph() const noexcept { return *graph_; }
    const std::shared_ptr<const KGraph>& graph_ptr() const noexcept { return graph_; }
    const Field& field() const noexcept { return field_; }
    const TermMap& terms() const noexcept { return terms_; }

    void add(const CylinderBisection& b, const Scalar& c);

    friend SteinbergElement operator+(const SteinbergElement& a, const SteinbergElement& b);
    friend SteinbergElement operator-(const SteinbergElement& a, const SteinbergElement& b);

private:
    std::shared_ptr<const KGraph> graph_;
    Field field_;
    TermMap terms_;
};

/// Refines every cylinder to range degree (N,...,N), N the largest coordinate
/// of any range degree present, so all supports become pairwise disjoint.
SteinbergElement refine(const SteinbergElement& f);
/// Refines to the given uniform level N (must be at least the element's own).
SteinbergElement refine_to(const SteinbergElement& f, int level);
bool equals(const SteinbergElement& a, const SteinbergElement& b);

/// Bilinear extension of compose_bisections.
SteinbergElement convolve(const SteinbergElement& a, const SteinbergElement& b);

/// s_λ s_{μ*} ↦ 1_{Z(λ∗μ)}.
SteinbergElement to_steinberg(const KPElement& a);
KPElement from_steinberg(const SteinbergElement& f);

struct ContractingBisection {
    /// B = Z(ν∗μ): r(B) = Z(ν), s(B) = Z(μ) ⊊ Z(ν).
    CylinderBisection bisection;
    /// τ with MCE(μ, ντ) = ∅, so Z(ντ) ⊆ Z(ν) \ Z(μ).
    Path entrance;
};

/// Searches for a bisection B with s(B) ⊊ r(B) ⊆ Z(κ) among paths of total
/// degree <= depth. Empty result means "not found up to depth".
std::optional<ContractingBisection> locally_contracting_on(const KGraph& g, const Path& kappa, int depth);

}  // namespace kpinf
