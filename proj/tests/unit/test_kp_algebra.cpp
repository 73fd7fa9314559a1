#include <doctest.h>

#include "../support/corpus.hpp"
#include "../support/random_elements.hpp"
#include "helpers.hpp"
#include "kpinf/errors.hpp"
#include "kpinf/expression.hpp"
#include "kpinf/kp_algebra.hpp"
#include "kpinf/paths.hpp"

using namespace kpinf;
using namespace kpinf::testing;

namespace {

struct E2 {
    std::shared_ptr<const KGraph> g = load_data("e2.kg");
    Field f = Field::rationals();
    KPElement v = KPElement::vertex(g, f, 0);
    KPElement a = KPElement::path(g, f, P(*g, "a"));
    KPElement b = KPElement::path(g, f, P(*g, "b"));
    KPElement as = KPElement::ghost(g, f, P(*g, "a"));
    KPElement bs = KPElement::ghost(g, f, P(*g, "b"));
};

KPElement kp4_sum(const std::shared_ptr<const KGraph>& g, const Field& f, VertexId v, const Degree& n) {
    KPElement s(g, f);
    for (const Path& l : enumerate_paths(*g, v, n, PathMode::Boundary).paths)
        s = s + KPElement::term(g, f, l, l);
    return s;
}

}  // namespace

TEST_CASE("KP1 to KP3 in E2") {
    E2 e;
    CHECK(equals(e.as * e.b, e.v.zero()));
    CHECK(equals(e.as * e.a, e.v));
    CHECK(equals(e.v * e.a, e.a));
    CHECK(equals(e.a * e.v, e.a));
    CHECK(equals(e.a * e.bs * (e.b * e.as), e.a * e.as));
    CHECK_FALSE(equals(e.a * e.bs, e.b * e.as));

    auto se = load_data("single_edge.kg");
    auto sv = KPElement::vertex(se, e.f, se->vertex_id("v"));
    auto sw = KPElement::vertex(se, e.f, se->vertex_id("w"));
    CHECK(equals(sv * sw, sv.zero()));
    CHECK(equals(sv * sv, sv));
}

TEST_CASE("KP4 and normal forms") {
    E2 e;
    auto diff = e.v - e.a * e.as - e.b * e.bs;
    CHECK(normal_form(diff).empty());
    CHECK(normal_form(e.v.zero()).empty());

    auto t2 = load_data("t2.kg");
    // s_v joined with a degree (1,1) term expands to the single boundary path ef.
    auto sv = KPElement::vertex(t2, e.f, 0);
    auto ef = KPElement::term(t2, e.f, P(*t2, "e.f"), P(*t2, "e.f"));
    auto nf = normal_form(sv + ef);
    REQUIRE(nf.terms().size() == 1);
    CHECK(nf.terms().begin()->first.lambda == P(*t2, "e.f"));
    CHECK(nf.terms().begin()->first.mu == P(*t2, "e.f"));
    CHECK(nf.terms().begin()->second == 2);
    CHECK(equals(sv, ef));

    for (const auto& entry : corpus()) {
        CAPTURE(entry.name);
        const KGraph& g = *entry.graph;
        for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
            for (const Degree& n : degrees_below(Degree::uniform(g.rank(), 2)))
                CHECK(equals(KPElement::vertex(entry.graph, e.f, v), kp4_sum(entry.graph, e.f, v, n)));
    }
}

TEST_CASE("errors on mixed operands") {
    E2 e;
    auto other = load_data("e2.kg");
    auto x = KPElement::vertex(other, e.f, 0);
    CHECK_THROWS_AS(e.v + x, PreconditionError);
    CHECK_THROWS_AS(e.v * KPElement::vertex(e.g, Field::prime(7), 0), PreconditionError);
    auto se = load_data("single_edge.kg");
    CHECK_THROWS_AS(KPElement::term(se, e.f, P(*se, "e"), P(*se, "v")), PreconditionError);
}

TEST_CASE("matrix units") {
    const Field f = Field::rationals();
    for (const auto& entry : corpus()) {
        const KGraph& g = *entry.graph;
        if (g.vertex_count() * g.edge_count() > 12 || g.rank() > 2) continue;
        CAPTURE(entry.name);
        std::vector<Path> all;
        for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
            auto ps = paths_below(g, v, Degree::uniform(g.rank(), 1));
            all.insert(all.end(), ps.begin(), ps.end());
        }
        for (const Path& mu : all)
            for (const Path& nu : all) {
                if (mu.degree() != nu.degree()) continue;
                const Path& lambda = mu;
                const Path& rho = nu;
                auto lhs = KPElement::term(entry.graph, f, lambda, mu) * KPElement::term(entry.graph, f, nu, rho);
                auto rhs = mu == nu ? KPElement::term(entry.graph, f, lambda, rho) : KPElement(entry.graph, f);
                CHECK(equals(lhs, rhs));
            }
    }
}

TEST_CASE("grading") {
    for (const auto& entry : corpus()) {
        CAPTURE(entry.name);
        TermSampler s(entry.graph, Field::rationals(), 2, 3);
        for (int i = 0; i < 50; ++i) {
            auto x = s.term();
            auto y = s.term();
            const Degree want = x.terms().begin()->first.grade() + y.terms().begin()->first.grade();
            const auto xy = x * y;
            for (const auto& [t, c] : xy.terms()) CHECK(t.grade() == want);
        }
    }
}

TEST_CASE("ring axioms on random elements") {
    for (const char* fname : {"Q", "F7"}) {
        const Field f = Field::parse(fname);
        for (const auto& entry : corpus()) {
            if (entry.graph->rank() > 2 && std::string(fname) == "F7") continue;
            CAPTURE(entry.name);
            CAPTURE(fname);
            TermSampler s(entry.graph, f, 2, 17);
            for (int i = 0; i < 8; ++i) {
                auto a = s.element(4), b = s.element(4), c = s.element(4);
                CHECK(equals((a * b) * c, a * (b * c)));
                CHECK(equals(a * (b + c), a * b + a * c));
                CHECK(equals((a + b) * c, a * c + b * c));
                CHECK(equals(a + b - b, a));
                CHECK(equals(a - a, a.zero()));
                auto u = local_unit({a, b});
                CHECK(equals(u * a, a));
                CHECK(equals(a * u, a));
            }
        }
    }
}

TEST_CASE("field arithmetic") {
    const Field p = Field::prime(7);
    CHECK(p.normalize(Scalar(-1)) == 6);
    CHECK(p.normalize(Scalar(1, 2)) == 4);
    CHECK(p.inv(Scalar(3)) == 5);
    CHECK_THROWS_AS(p.normalize(Scalar(1, 7)), PreconditionError);
    CHECK_THROWS_AS(Field::prime(8), PreconditionError);
    CHECK(Field::parse("Fp").characteristic() == 2147483647ul);
    CHECK(Field::parse("Q").is_rational());
    CHECK_THROWS_AS(Field::parse("R"), PreconditionError);

    // s_v = s_a s_a* + s_b s_b* also holds in characteristic 2.
    auto g = load_data("e2.kg");
    const Field f2 = Field::prime(2);
    auto v = KPElement::vertex(g, f2, 0);
    auto aa = KPElement::term(g, f2, P(*g, "a"), P(*g, "a"));
    auto bb = KPElement::term(g, f2, P(*g, "b"), P(*g, "b"));
    CHECK(equals(v + aa + bb, v.zero()));
    CHECK(equals(aa + aa, v.zero()));
}

TEST_CASE("precsim and equivalence") {
    E2 e;
    auto p = KPMatrix::scalar(e.v);
    CHECK(precsim_verify(p, p, p, p));

    auto z = e.v.zero();
    auto A = KPMatrix::from_rows({{e.as, z}, {e.bs, z}});
    auto B = KPMatrix::from_rows({{e.a, e.b}, {z, z}});
    auto target = direct_sum(KPMatrix::scalar(e.v), KPMatrix::scalar(e.v));
    CHECK(precsim_verify(target, KPMatrix::diagonal({e.v, z}), A, B));
    CHECK_THROWS_AS(precsim_verify(target, p, A, B), PreconditionError);

    auto q = e.a * e.as;
    CHECK(subidempotent_verify(q, e.v));
    CHECK_FALSE(equals(q, e.v));
    CHECK(is_idempotent(q));
    CHECK(equivalent_verify(e.v, q, e.as, e.a));
    CHECK_FALSE(equivalent_verify(e.v, q, e.a, e.as));

    auto col = KPMatrix::column({e.as, e.bs});
    auto row = KPMatrix::row({e.a, e.b});
    CHECK(equals(col * KPMatrix::scalar(e.v) * row, target));
    CHECK(equals(row * col, KPMatrix::scalar(e.v)));
}

TEST_CASE("expressions") {
    auto g = load_data("e2.kg");
    const Field f = Field::rationals();
    auto x = parse_expression(g, f, "1/2*(a + b) a^*");
    CHECK(to_expression(x) == "1/2*a a^* + 1/2*b a^*");
    CHECK(equals(parse_expression(g, f, to_expression(x)), x));
    CHECK(to_expression(parse_expression(g, f, "a^* b")) == "0");
    CHECK(to_expression(parse_expression(g, f, "0")) == "0");
    CHECK(equals(parse_expression(g, f, "v - a a^* - b b^*"), KPElement(g, f)));
    CHECK(equals(parse_expression(g, f, "-v + 2*v"), KPElement::vertex(g, f, 0)));
    CHECK(equals(parse_expression(g, f, "a.b a.b^*"), KPElement::term(g, f, P(*g, "a.b"), P(*g, "a.b"))));
    CHECK(to_expression(parse_expression(g, Field::prime(7), "-a")) == "-a");

    try {
        parse_expression(g, f, "a +\n (b");
        FAIL("expected ParseError");
    } catch (const ParseError& err) {
        CHECK(err.line() == 2);
    }
    CHECK_THROWS_AS(parse_expression(g, f, "a ^ b"), ParseError);
    CHECK_THROWS_AS(parse_expression(g, f, "(a b)^*"), ParseError);
    CHECK_THROWS_AS(parse_expression(g, f, "zz"), ParseError);
    CHECK_THROWS_AS(parse_expression(g, f, "1/0*a"), Error);

    TermSampler s(g, f, 3, 5);
    for (int i = 0; i < 50; ++i) {
        auto e = s.element(4);
        CHECK(equals(parse_expression(g, f, to_expression(e)), e));
    }
}
