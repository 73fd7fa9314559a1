#include "kpinf/witness.hpp"

#include "kpinf/errors.hpp"
#include "kpinf/expression.hpp"

namespace kpinf {

namespace {

using nlohmann::json;

std::string ex(const KPElement& e) { return to_expression(e); }

json matrix_json(const KPMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ex(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

WitnessCertificate checked(WitnessCertificate w) {
    if (auto err = w.check())
        throw VerificationError("certificate for " + ex(w.target()) + " (" + w.derivation().rule +
                                ") failed: " + *err);
    return w;
}

KPElement vertex_elem(const KPElement& like, VertexId v) {
    return KPElement::vertex(like.graph_ptr(), like.field(), v);
}

}  // namespace

WitnessCertificate::WitnessCertificate(KPElement target, InfiniteWitness w, DerivationStep derivation)
    : target_(std::move(target)), kind_(std::move(w)), derivation_(std::move(derivation)) {}

WitnessCertificate::WitnessCertificate(KPElement target, ProperlyInfiniteWitness w, DerivationStep derivation)
    : target_(std::move(target)), kind_(std::move(w)), derivation_(std::move(derivation)) {}

std::optional<std::string> WitnessCertificate::check() const {
    const KPElement& p = target_;
    if (!is_idempotent(p)) return "target is not idempotent";
    if (p.is_zero()) return "target is zero";
    if (is_infinite()) {
        const auto& w = infinite();
        if (!equals(w.r * w.s, p)) return "rs != p";
        if (!equals(w.s * w.r, w.q)) return "sr != q";
        if (!subidempotent_verify(w.q, p)) return "q is not below p";
        if (equals(w.q, p)) return "q == p";
        return std::nullopt;
    }
    const auto& w = properly_infinite();
    if (w.a.rows() != 2 || w.a.cols() != 1) return "A is not 2x1";
    if (w.b.rows() != 1 || w.b.cols() != 2) return "B is not 1x2";
    const KPMatrix pm = KPMatrix::scalar(p);
    if (!equals(w.a * pm * w.b, direct_sum(pm, pm))) return "A p B != p (+) p";
    return std::nullopt;
}

json to_json(const DerivationStep& d) {
    json inputs = json::object();
    for (const auto& [k, v] : d.inputs) inputs[k] = v;
    json children = json::array();
    for (const auto& c : d.children) children.push_back(to_json(c));
    return json{{"rule", d.rule}, {"detail", d.detail}, {"inputs", inputs}, {"children", children}};
}

json to_json(const WitnessCertificate& w) {
    json j{{"target", ex(w.target())}};
    if (w.is_infinite()) {
        const auto& i = w.infinite();
        j["kind"] = "infinite";
        j["q"] = ex(i.q);
        j["r"] = ex(i.r);
        j["s"] = ex(i.s);
    } else {
        const auto& pi = w.properly_infinite();
        j["kind"] = "properly-infinite";
        j["A"] = matrix_json(pi.a);
        j["B"] = matrix_json(pi.b);
    }
    j["verified"] = w.verify();
    j["derivation"] = to_json(w.derivation());
    return j;
}

WitnessCertificate witness_from_gen_cycle(std::shared_ptr<const KGraph> g, Field f, const GeneralizedCycle& c) {
    if (!c.entrance) throw PreconditionError("generalized cycle has no entrance");
    const auto test = is_generalized_cycle(*g, c.mu, c.nu);
    if (!test.holds)
        throw PreconditionError("(" + path_name(*g, c.mu) + ", " + path_name(*g, c.nu) +
                                ") is not a generalized cycle");
    if (c.entrance->range() != c.nu.source() || !mce(*g, c.mu, compose(*g, c.nu, *c.entrance)).empty())
        throw PreconditionError(path_name(*g, *c.entrance) + " is not an entrance");
    const KPElement p = KPElement::term(g, f, c.nu, c.nu);
    InfiniteWitness w{KPElement::term(g, f, c.mu, c.mu), KPElement::term(g, f, c.nu, c.mu),
                      KPElement::term(g, f, c.mu, c.nu)};
    DerivationStep step{"generalized-cycle",
                        "Z(mu) is contained in Z(nu) and the entrance makes the containment strict",
                        {{"mu", path_name(*g, c.mu)},
                         {"nu", path_name(*g, c.nu)},
                         {"entrance", path_name(*g, *c.entrance)}},
                        {}};
    return checked(WitnessCertificate(p, std::move(w), std::move(step)));
}

WitnessCertificate transport_infinite(const WitnessCertificate& w, const KPElement& x, const KPElement& y) {
    if (!w.is_infinite()) throw PreconditionError("transport_infinite needs an infinite certificate");
    const KPElement& p = w.target();
    if (!equals(x * y, p)) throw PreconditionError("xy != p");
    const KPElement p2 = y * x;
    const auto& i = w.infinite();
    InfiniteWitness out{y * i.q * x, y * i.r * x, y * i.s * x};
    DerivationStep step{"equivalence-transport", "p = xy and p' = yx; q' = yqx, r' = yrx, s' = ysx",
                        {{"x", ex(x)}, {"y", ex(y)}}, {w.derivation()}};
    return checked(WitnessCertificate(normal_form(p2), std::move(out), std::move(step)));
}

WitnessCertificate lift_along(const WitnessCertificate& w, const Path& gamma) {
    const KPElement& like = w.target();
    const auto g = like.graph_ptr();
    const Field f = like.field();
    if (!equals(w.target(), vertex_elem(like, gamma.source())))
        throw PreconditionError("lift_along needs a certificate for s_" + g->vertex_name(gamma.source()));
    if (gamma.is_vertex()) return w;
    // s_w = s_γ* s_γ ~ s_γ s_γ* = e.
    const WitnessCertificate at_e = transport_infinite(w, KPElement::ghost(g, f, gamma), KPElement::path(g, f, gamma));
    const KPElement sv = vertex_elem(like, gamma.range());
    const KPElement e = KPElement::term(g, f, gamma, gamma);
    const KPElement rest = sv - e;
    const auto& i = at_e.infinite();
    InfiniteWitness out{rest + i.q, rest + i.r, rest + i.s};
    DerivationStep step{"corner-lift", "e <= s_v with e infinite; add s_v - e to q, r and s",
                        {{"gamma", path_name(*g, gamma)}, {"e", ex(e)}}, {at_e.derivation()}};
    return checked(WitnessCertificate(sv, std::move(out), std::move(step)));
}

WitnessCertificate witness_for_vertex(std::shared_ptr<const KGraph> g, Field f, const ReachingCycle& rc) {
    const WitnessCertificate base = witness_from_gen_cycle(g, f, rc.cycle);
    const Path& nu = rc.cycle.nu;
    // s_ν s_ν* = xy ~ yx = s_{s(ν)}.
    const WitnessCertificate at_w = transport_infinite(base, KPElement::path(g, f, nu), KPElement::ghost(g, f, nu));
    return lift_along(at_w, rc.connector);
}

WitnessCertificate transport_witness(const KPElement& p, const KPElement& q, const KPElement& x, const KPElement& y,
                                     const WitnessCertificate& w) {
    if (!w.is_properly_infinite()) throw PreconditionError("transport_witness needs a properly infinite certificate");
    if (!equals(w.target(), p)) throw PreconditionError("certificate is not for p");
    if (!equals(x * y, p)) throw PreconditionError("xy != p");
    if (!equals(y * x, q)) throw PreconditionError("yx != q");
    if (auto err = w.check()) throw PreconditionError("input certificate does not verify: " + *err);
    const auto& pi = w.properly_infinite();
    const KPMatrix X = KPMatrix::scalar(x);
    const KPMatrix Y = KPMatrix::scalar(y);
    ProperlyInfiniteWitness out{direct_sum(Y, Y) * pi.a * X, Y * pi.b * direct_sum(X, X)};
    DerivationStep step{"equivalence-transport", "p = xy, q = yx; A' = (y+y) A x, B' = y B (x+x)",
                        {{"x", ex(x)}, {"y", ex(y)}}, {w.derivation()}};
    return checked(WitnessCertificate(q, std::move(out), std::move(step)));
}

WitnessCertificate orthogonal_witness(const KPElement& p, const KPElement& q1, const KPElement& q2,
                                      const KPElement& a1, const KPElement& b1, const KPElement& a2,
                                      const KPElement& b2, const std::optional<std::pair<KPElement, KPElement>>& cd) {
    if (!is_idempotent(p)) throw PreconditionError("p is not idempotent");
    if (!is_idempotent(q1) || !is_idempotent(q2)) throw PreconditionError("q1, q2 must be idempotents");
    if (!(q1 * q2).is_zero() || !(q2 * q1).is_zero()) throw PreconditionError("q1 and q2 are not orthogonal");
    if (!equals(a1 * q1 * b1, p)) throw PreconditionError("p != a1 q1 b1");
    if (!equals(a2 * q2 * b2, p)) throw PreconditionError("p != a2 q2 b2");

    const KPElement r1 = normal_form(p * a1 * q1), s1 = normal_form(q1 * b1 * p);
    const KPElement r2 = normal_form(p * a2 * q2), s2 = normal_form(q2 * b2 * p);
    const KPElement x1 = normal_form(s1 * r1), x2 = normal_form(s2 * r2);
    const KPElement sum = x1 + x2;

    KPElement c = p.zero(), d = p.zero();
    std::string cd_origin;
    if (cd) {
        std::tie(c, d) = *cd;
        cd_origin = "supplied";
    } else if (subidempotent_verify(x1, p) && subidempotent_verify(x2, p)) {
        c = normal_form(sum * r1);
        d = normal_form(s1 * sum);
        cd_origin = "x1 + x2 <= p";
    } else {
        throw PreconditionError("x1 + x2 is not below p; supply c, d with x1 + x2 = c x1 d");
    }
    if (!equals(c * x1 * d, sum)) throw PreconditionError("x1 + x2 != c x1 d");

    auto equiv = [&](const std::string& name, const KPElement& r, const KPElement& s) {
        if (!equivalent_verify(p, name == "1" ? x1 : x2, r, s))
            throw VerificationError("p ~ x" + name + " does not verify");
        return DerivationStep{"equivalence", "p = r" + name + " s" + name + ", x" + name + " = s" + name + " r" + name,
                              {{"r" + name, ex(r)}, {"s" + name, ex(s)}}, {}};
    };
    DerivationStep e1 = equiv("1", r1, s1);
    DerivationStep e2 = equiv("2", r2, s2);
    DerivationStep sub{"subequivalence", "x1 + x2 = c x1 d (" + cd_origin + ")", {{"c", ex(c)}, {"d", ex(d)}}, {}};

    const KPMatrix R = KPMatrix::diagonal({r1, r2});
    const KPMatrix S = KPMatrix::diagonal({s1, s2});
    const KPMatrix A = R * KPMatrix::column({x1, x2}) * KPMatrix::scalar(c * s1);
    const KPMatrix B = KPMatrix::scalar(r1 * d) * KPMatrix::row({x1, x2}) * S;
    ProperlyInfiniteWitness out{A, B};
    for (std::size_t i = 0; i < 2; ++i) {
        out.a.at(i, 0) = normal_form(out.a.at(i, 0));
        out.b.at(0, i) = normal_form(out.b.at(0, i));
    }
    DerivationStep step{"orthogonal-idempotents",
                        "p (+) p ~ x1 (+) x2 ~ x1 + x2 <= c x1 d, x1 ~ p",
                        {{"q1", ex(q1)}, {"q2", ex(q2)}, {"x1", ex(x1)}, {"x2", ex(x2)}},
                        {std::move(e1), std::move(e2), std::move(sub)}};
    return checked(WitnessCertificate(p, std::move(out), std::move(step)));
}

WitnessCertificate proper_to_infinite(const WitnessCertificate& w) {
    if (!w.is_properly_infinite()) throw PreconditionError("proper_to_infinite needs a properly infinite certificate");
    const KPElement& p = w.target();
    const auto& pi = w.properly_infinite();
    const KPElement z1 = normal_form(p * pi.a.at(0, 0) * p);
    const KPElement y1 = normal_form(p * pi.b.at(0, 0) * p);
    InfiniteWitness out{normal_form(y1 * z1), z1, y1};
    DerivationStep step{"proper-to-infinite", "q = B1 A1 inside pRp, r = A1, s = B1",
                        {{"A1", ex(z1)}, {"B1", ex(y1)}}, {w.derivation()}};
    return checked(WitnessCertificate(p, std::move(out), std::move(step)));
}

WitnessCertificate cylinder_properly_infinite(const Path& lambda, const WitnessCertificate& vertex_cert) {
    const KPElement& like = vertex_cert.target();
    const auto g = like.graph_ptr();
    const Field f = like.field();
    const KPElement p = vertex_elem(like, lambda.source());
    if (lambda.is_vertex()) {
        if (auto err = vertex_cert.check()) throw PreconditionError("input certificate does not verify: " + *err);
        if (!equals(vertex_cert.target(), p)) throw PreconditionError("certificate is not for s_{s(lambda)}");
        return vertex_cert;
    }
    return transport_witness(p, KPElement::term(g, f, lambda, lambda), KPElement::ghost(g, f, lambda),
                             KPElement::path(g, f, lambda), vertex_cert);
}

// ---------------------------------------------------------------------------

std::string_view to_string(VertexProof::Status s) {
    switch (s) {
        case VertexProof::Status::ProperlyInfinite: return "properly-infinite";
        case VertexProof::Status::Negative: return "negative";
        case VertexProof::Status::Inconclusive: return "inconclusive";
        case VertexProof::Status::Refused: return "refused";
    }
    return "inconclusive";
}

namespace {

// Two closed paths at w with no common extension give orthogonal subprojections of s_w.
std::optional<std::pair<Path, Path>> orthogonal_cycles(const KGraph& g, VertexId w, int depth) {
    std::vector<Path> loops;
    for (Path& p : paths_up_to(g, w, depth))
        if (!p.is_vertex() && p.source() == w) loops.push_back(std::move(p));
    for (std::size_t i = 0; i < loops.size(); ++i)
        for (std::size_t j = i + 1; j < loops.size(); ++j)
            if (mce(g, loops[i], loops[j]).empty()) return std::make_pair(loops[i], loops[j]);
    return std::nullopt;
}

QuotientProof prove_in_quotient(std::shared_ptr<const KGraph> gamma_graph, VertexId v, const ProofOptions& opts) {
    const KGraph& q = *gamma_graph;
    const Field f = opts.field;
    QuotientProof out;
    out.quotient = gamma_graph;
    out.route = "none";

    std::vector<char> tried(q.vertex_count(), 0);
    for (const Path& gamma : paths_up_to(q, v, opts.depth)) {
        const VertexId w = gamma.source();
        if (tried[w]) continue;
        tried[w] = 1;
        auto pair = orthogonal_cycles(q, w, opts.depth);
        if (!pair) continue;
        const auto& [m1, m2] = *pair;
        const KPElement sw = KPElement::vertex(gamma_graph, f, w);
        const WitnessCertificate proper = orthogonal_witness(
            sw, KPElement::term(gamma_graph, f, m1, m1), KPElement::term(gamma_graph, f, m2, m2),
            KPElement::ghost(gamma_graph, f, m1), KPElement::path(gamma_graph, f, m1),
            KPElement::ghost(gamma_graph, f, m2), KPElement::path(gamma_graph, f, m2));
        out.route = "orthogonal-cycles";
        out.infinite = lift_along(proper_to_infinite(proper), gamma);
        if (gamma.is_vertex()) out.properly_infinite = proper;
        return out;
    }

    const ReachSearch reach = find_reaching_gen_cycle(q, v, opts.depth);
    if (reach.found) {
        out.route = "reaching-cycle";
        out.infinite = witness_for_vertex(gamma_graph, f, *reach.found);
        return out;
    }
    out.cycle_without_entrance = reach.cycle_without_entrance;

    // Reachable vertices that receive nothing: the ideal they generate is matricial.
    std::vector<char> seen(q.vertex_count(), 0);
    std::vector<VertexId> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        if (q.receives_nothing(u)) {
            out.matricial_vertex = u;
            break;
        }
        for (int c = 0; c < q.rank(); ++c)
            for (EdgeId e : q.edges_into(u, c))
                if (!seen[q.edge(e).source]) {
                    seen[q.edge(e).source] = 1;
                    stack.push_back(q.edge(e).source);
                }
    }
    return out;
}

}  // namespace

VertexProof prove_vertex_properly_infinite(std::shared_ptr<const KGraph> g, VertexId v, const ProofOptions& opts) {
    if (v < 0 || static_cast<std::size_t>(v) >= g->vertex_count())
        throw PreconditionError("unknown vertex index " + std::to_string(v));
    VertexProof out;
    out.vertex = v;
    out.aperiodicity_assumed = opts.assume_aperiodic;
    if (!opts.assume_aperiodic) {
        const SweepResult sweep = strong_aperiodicity_sweep(*g, opts.depth);
        if (sweep.status == AperiodicityVerdict::Status::Periodic) {
            const auto& qv = sweep.quotients[*sweep.first_periodic];
            out.status = VertexProof::Status::Refused;
            out.explanation = "quotient by {" + vertex_list(*g, qv.ideal.vertices) +
                              "} is periodic; the graph is not strongly aperiodic";
            return out;
        }
        if (sweep.status == AperiodicityVerdict::Status::Unknown) {
            out.status = VertexProof::Status::Inconclusive;
            out.explanation = "strong aperiodicity undecided at depth " + std::to_string(opts.depth);
            return out;
        }
    }

    bool all = true;
    bool negative = false;
    for (const auto& h : enumerate_sat_her(*g).sets) {
        if (h.contains(v)) continue;
        auto gamma_graph = std::make_shared<const KGraph>(quotient(*g, h));
        const VertexId image = gamma_graph->vertex_id(g->vertex_name(v));
        QuotientProof qp = prove_in_quotient(gamma_graph, image, opts);
        qp.ideal = h;
        if (!qp.infinite) all = false;
        if (qp.matricial_vertex) negative = true;
        out.quotients.push_back(std::move(qp));
    }
    if (all) {
        out.status = VertexProof::Status::ProperlyInfinite;
        out.explanation = "image of s_v is infinite in every quotient avoiding v";
    } else if (negative) {
        out.status = VertexProof::Status::Negative;
        out.explanation = "a quotient has a vertex below v that receives no edges";
    } else {
        out.status = VertexProof::Status::Inconclusive;
        out.explanation = "no certificate found up to depth " + std::to_string(opts.depth);
    }
    return out;
}

nlohmann::json to_json(const KGraph& g, const VertexProof& p) {
    json quotients = json::array();
    for (const auto& qp : p.quotients) {
        json j{{"ideal", json::array()}, {"route", qp.route}};
        const KGraph& q = *qp.quotient;
        for (VertexId u : qp.ideal.vertices) j["ideal"].push_back(g.vertex_name(u));
        j["infinite"] = qp.infinite ? to_json(*qp.infinite) : json(nullptr);
        j["properly_infinite"] = qp.properly_infinite ? to_json(*qp.properly_infinite) : json(nullptr);
        j["matricial_vertex"] = qp.matricial_vertex ? json(q.vertex_name(*qp.matricial_vertex)) : json(nullptr);
        if (qp.cycle_without_entrance)
            j["cycle_without_entrance"] = {path_name(q, qp.cycle_without_entrance->mu),
                                           path_name(q, qp.cycle_without_entrance->nu)};
        quotients.push_back(std::move(j));
    }
    return json{{"vertex", g.vertex_name(p.vertex)},
                {"status", to_string(p.status)},
                {"explanation", p.explanation},
                {"aperiodicity_assumed", p.aperiodicity_assumed},
                {"quotients", quotients}};
}

}  // namespace kpinf
