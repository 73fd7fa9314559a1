#include "kpinf/steinberg.hpp"

#include "kpinf/errors.hpp"

namespace kpinf {

std::vector<CylinderBisection> compose_bisections(const KGraph& g, const CylinderBisection& b,
                                                  const CylinderBisection& c) {
    // (λx, m, μx)(νy, n, ρy) is defined exactly when μx = νy, i.e. when the
    // boundary path μx begins with ν; its initial segment of degree d(μ)∨d(ν)
    // then determines the product cylinder.
    std::vector<CylinderBisection> out;
    if (b.mu.range() != c.lambda.range()) return out;
    const Degree level = join(b.mu.degree(), c.lambda.degree());
    const Degree rest = level - b.mu.degree();
    for (const Path& alpha : enumerate_paths(g, b.mu.source(), rest, PathMode::Boundary).paths) {
        if (alpha.degree() != rest) continue;
        const Path z = compose(g, b.mu, alpha);
        if (!has_prefix(g, z, c.lambda)) continue;
        const Path beta = factorize(g, z, c.lambda.degree()).second;
        out.push_back(CylinderBisection{compose(g, b.lambda, alpha), compose(g, c.mu, beta)});
    }
    return out;
}

CylinderBisection invert(const CylinderBisection& b) { return CylinderBisection{b.mu, b.lambda}; }

SteinbergElement::SteinbergElement(std::shared_ptr<const KGraph> g, Field f) : graph_(std::move(g)), field_(f) {
    if (!graph_) throw PreconditionError("null graph");
}

SteinbergElement SteinbergElement::indicator(std::shared_ptr<const KGraph> g, Field f, const CylinderBisection& b,
                                             const Scalar& c) {
    SteinbergElement e(std::move(g), f);
    e.add(b, c);
    return e;
}

void SteinbergElement::add(const CylinderBisection& b, const Scalar& c) {
    if (b.lambda.source() != b.mu.source()) throw PreconditionError("Z(λ∗μ) needs s(λ) = s(μ)");
    const Scalar x = field_.normalize(c);
    if (x == 0) return;
    auto [it, inserted] = terms_.try_emplace(b, x);
    if (inserted) return;
    it->second = field_.add(it->second, x);
    if (it->second == 0) terms_.erase(it);
}

namespace {

void require_same(const SteinbergElement& a, const SteinbergElement& b) {
    if (a.graph_ptr().get() != b.graph_ptr().get()) throw PreconditionError("elements belong to different graphs");
    if (!(a.field() == b.field())) throw PreconditionError("elements use different fields");
}

}  // namespace

SteinbergElement operator+(const SteinbergElement& a, const SteinbergElement& b) {
    require_same(a, b);
    SteinbergElement out = a;
    for (const auto& [c, x] : b.terms_) out.add(c, x);
    return out;
}

SteinbergElement operator-(const SteinbergElement& a, const SteinbergElement& b) {
    require_same(a, b);
    SteinbergElement out = a;
    for (const auto& [c, x] : b.terms_) out.add(c, a.field_.neg(x));
    return out;
}

SteinbergElement refine_to(const SteinbergElement& f, int level) {
    const KGraph& g = f.graph();
    const Degree top = Degree::uniform(g.rank(), level);
    SteinbergElement out(f.graph_ptr(), f.field());
    for (const auto& [c, x] : f.terms()) {
        if (!c.lambda.degree().leq(top)) throw PreconditionError("refinement level below a range degree");
        // Z(λ∗μ) is the disjoint union of Z(λτ ∗ μτ) over τ ∈ s(λ)Λ^{≤n}.
        for (const Path& tau : enumerate_paths(g, c.lambda.source(), top - c.lambda.degree(), PathMode::Boundary).paths)
            out.add(CylinderBisection{compose(g, c.lambda, tau), compose(g, c.mu, tau)}, x);
    }
    return out;
}

SteinbergElement refine(const SteinbergElement& f) {
    int level = 0;
    for (const auto& [c, x] : f.terms())
        for (int v : c.lambda.degree().coords()) level = std::max(level, v);
    return refine_to(f, level);
}

bool equals(const SteinbergElement& a, const SteinbergElement& b) { return refine(a - b).terms().empty(); }

SteinbergElement convolve(const SteinbergElement& a, const SteinbergElement& b) {
    require_same(a, b);
    SteinbergElement out(a.graph_ptr(), a.field());
    for (const auto& [c1, x] : a.terms())
        for (const auto& [c2, y] : b.terms())
            for (const auto& c : compose_bisections(a.graph(), c1, c2)) out.add(c, a.field().mul(x, y));
    return out;
}

SteinbergElement to_steinberg(const KPElement& a) {
    SteinbergElement out(a.graph_ptr(), a.field());
    for (const auto& [t, x] : a.terms()) out.add(CylinderBisection{t.lambda, t.mu}, x);
    return out;
}

KPElement from_steinberg(const SteinbergElement& f) {
    KPElement out(f.graph_ptr(), f.field());
    for (const auto& [c, x] : f.terms()) out.add_term(c.lambda, c.mu, x);
    return out;
}

std::optional<ContractingBisection> locally_contracting_on(const KGraph& g, const Path& kappa, int depth) {
    const auto candidates = paths_up_to(g, kappa.range(), depth);
    auto cycle = find_gen_cycle_with_entrance(g, candidates, depth, kappa, nullptr);
    if (!cycle) return std::nullopt;
    return ContractingBisection{CylinderBisection{cycle->nu, cycle->mu}, *cycle->entrance};
}

}  // namespace kpinf
