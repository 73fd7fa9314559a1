#include <doctest.h>

#include <set>

#include "../support/corpus.hpp"
#include "../support/oracles.hpp"
#include "helpers.hpp"
#include "kpinf/errors.hpp"
#include "kpinf/paths.hpp"

using namespace kpinf;
using namespace kpinf::testing;

TEST_CASE("load E2 and T2") {
    auto e2 = load_data("e2.kg");
    CHECK(e2->rank() == 1);
    CHECK(e2->vertex_count() == 1);
    CHECK(e2->edge_count() == 2);

    auto t2 = load_data("t2.kg");
    auto e = *t2->find_edge("e");
    auto f = *t2->find_edge("f");
    auto sw = t2->swap(e, f);
    REQUIRE(sw);
    CHECK(sw->first == f);
    CHECK(sw->second == e);
    CHECK(validate(*t2).ok());
}

TEST_CASE("parse errors carry positions") {
    SUBCASE("unknown edge in square") {
        try {
            load_kgraph_file(data_file("bad_square.kg"));
            FAIL("expected ParseError");
        } catch (const ParseError& err) {
            CHECK(std::string(err.what()).find("unknown edge") != std::string::npos);
            CHECK(err.line() == 6);
            CHECK(err.column() == 10);
        }
    }
    SUBCASE("unknown vertex") {
        CHECK_THROWS_WITH_AS(load_kgraph("kgraph v1\nk: 1\nvertices: v\nedge a color=1 from=v to=x\n"),
                             doctest::Contains("unknown vertex"), ParseError);
    }
    SUBCASE("duplicate identifier") {
        CHECK_THROWS_WITH_AS(load_kgraph("kgraph v1\nk: 1\nvertices: v v\n"), doctest::Contains("duplicate"),
                             ParseError);
        CHECK_THROWS_AS(load_kgraph("kgraph v1\nk: 1\nvertices: v\nedge v color=1 from=v to=v\n"), ParseError);
    }
    SUBCASE("bad header and color") {
        CHECK_THROWS_AS(load_kgraph("kgraph v2\n"), ParseError);
        CHECK_THROWS_AS(load_kgraph("kgraph v1\nk: 1\nvertices: v\nedge a color=2 from=v to=v\n"), ParseError);
        CHECK_THROWS_AS(load_kgraph("kgraph v1\nk: 1\nvertices: v\nlink a\n"), ParseError);
    }
}

TEST_CASE("text round trip") {
    for (const auto& entry : corpus()) {
        CAPTURE(entry.name);
        KGraph back = load_kgraph(entry.graph->to_text());
        CHECK(back.to_text() == entry.graph->to_text());
    }
}

TEST_CASE("validate examples") {
    CHECK(validate(*load_data("t2.kg")).ok());

    auto missing = validate(*load_data("t2_missing.kg"));
    REQUIRE(missing.violations.size() == 1);
    CHECK(missing.violations[0].kind == Violation::Kind::MissingSquare);
    CHECK(missing.violations[0].items == std::vector<std::string>{"e", "f"});

    auto hex = load_data("hexagon_failure.kg");
    auto report = validate(*hex);
    CHECK(report.count(Violation::Kind::HexagonFailure) > 0);
    CHECK(report.count(Violation::Kind::MissingSquare) == 0);
    CHECK(report.count(Violation::Kind::NonBijectiveSquare) == 0);

    // Exhaustive rewriting of c b a into color order along both bubble orders.
    auto rewrite = [&](std::vector<EdgeId> w, const std::vector<int>& order) {
        for (int i : order) {
            auto sw = hex->swap(w[i], w[i + 1]);
            REQUIRE(sw);
            w[i] = sw->first;
            w[i + 1] = sw->second;
        }
        return w;
    };
    bool differs = false;
    for (const char* a : {"a1", "a2"})
        for (const char* b : {"b1", "b2"})
            for (const char* c : {"c1", "c2"}) {
                std::vector<EdgeId> w{*hex->find_edge(c), *hex->find_edge(b), *hex->find_edge(a)};
                if (rewrite(w, {0, 1, 0}) != rewrite(w, {1, 0, 1})) differs = true;
            }
    CHECK(differs);

    auto nlc = load_kgraph(
        "kgraph v1\nk: 2\nvertices: u v w\nedge e color=1 from=u to=v\nedge f color=2 from=w to=v\n");
    // Both e and f lead to a source that misses the other color.
    CHECK(validate(nlc).count(Violation::Kind::NotLocallyConvex) == 2);

    for (const auto& entry : corpus()) {
        CAPTURE(entry.name);
        CHECK(validate(*entry.graph).ok());
    }
}

TEST_CASE("compose and factorize examples") {
    auto e2 = load_data("e2.kg");
    auto t2 = load_data("t2.kg");

    Path ab = compose(*e2, P(*e2, "a"), P(*e2, "b"));
    CHECK(path_name(*e2, ab) == "a.b");
    CHECK(ab.degree() == Degree{2});
    CHECK(compose(*e2, P(*e2, "v"), ab) == ab);
    auto se = load_data("single_edge.kg");
    CHECK(compose(*se, P(*se, "v"), P(*se, "e")) == P(*se, "e"));
    CHECK_THROWS_AS(compose(*se, P(*se, "e"), P(*se, "e")), PreconditionError);

    Path fe = compose(*t2, P(*t2, "f"), P(*t2, "e"));
    CHECK(path_name(*t2, fe) == "e.f");
    CHECK(fe == P(*t2, "e.f"));

    auto [head, tail] = factorize(*t2, P(*t2, "e.f"), Degree{0, 1});
    CHECK(head == P(*t2, "f"));
    CHECK(tail == P(*t2, "e"));

    Path p = P(*t2, "e.e.f");
    CHECK(factorize(*t2, p, Degree{0, 0}).first == P(*t2, "v"));
    CHECK(factorize(*t2, p, Degree{0, 0}).second == p);
    CHECK(factorize(*t2, p, p.degree()).first == p);
    CHECK_THROWS_AS(factorize(*t2, p, Degree{3, 0}), PreconditionError);
}

TEST_CASE("factorize round trip and associativity on the corpus") {
    for (const auto& entry : corpus()) {
        const KGraph& g = *entry.graph;
        CAPTURE(entry.name);
        std::vector<Path> all;
        for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
            auto ps = paths_below(g, v, Degree::uniform(g.rank(), 2));
            all.insert(all.end(), ps.begin(), ps.end());
        }
        for (const Path& p : all)
            for (const Degree& m : degrees_below(p.degree())) {
                auto [h, t] = factorize(g, p, m);
                CHECK(h.degree() == m);
                CHECK(compose(g, h, t) == p);
            }
        std::vector<Path> small;
        for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
            auto ps = paths_below(g, v, Degree::uniform(g.rank(), 1));
            small.insert(small.end(), ps.begin(), ps.end());
        }
        for (const Path& a : small)
            for (const Path& b : small) {
                if (a.source() != b.range()) continue;
                Path ab = compose(g, a, b);
                for (const Path& c : small) {
                    if (b.source() != c.range()) continue;
                    CHECK(compose(g, ab, c) == compose(g, a, compose(g, b, c)));
                }
            }
    }
}

TEST_CASE("path enumeration examples") {
    auto e2 = load_data("e2.kg");
    auto exact = enumerate_paths(*e2, 0, Degree{2}, PathMode::Exact);
    REQUIRE(exact.size() == 4);
    std::set<std::string> names;
    for (const Path& p : exact.paths) names.insert(path_name(*e2, p));
    CHECK(names == std::set<std::string>{"a.a", "a.b", "b.a", "b.b"});

    auto om = load_data("omega11.kg");
    std::size_t morphisms = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(om->vertex_count()); ++v)
        for (const Degree& n : degrees_below(Degree{1, 1}))
            morphisms += enumerate_paths(*om, v, n, PathMode::Exact).size();
    CHECK(morphisms == 9);

    auto se = load_data("single_edge.kg");
    VertexId w = se->vertex_id("w");
    auto b = enumerate_paths(*se, w, Degree{1}, PathMode::Boundary);
    REQUIRE(b.size() == 1);
    CHECK(b.paths[0] == se->vertex_path(w));
}

TEST_CASE("enumeration matches the brute-force oracle") {
    for (const auto& entry : corpus()) {
        const KGraph& g = *entry.graph;
        CAPTURE(entry.name);
        for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
            for (const Degree& n : degrees_below(Degree::uniform(g.rank(), 2))) {
                CHECK(enumerate_paths(g, v, n, PathMode::Exact).paths == brute_exact(g, v, n));
                CHECK(enumerate_paths(g, v, n, PathMode::Boundary).paths == brute_boundary(g, v, n));
            }
    }
}

TEST_CASE("parse_path") {
    auto t2 = load_data("t2.kg");
    CHECK(P(*t2, "f.e") == P(*t2, "e.f"));
    CHECK(P(*t2, "v").is_vertex());
    CHECK_THROWS_AS(P(*t2, "e.x"), PreconditionError);
    CHECK_THROWS_AS(P(*t2, "e.v"), PreconditionError);
    auto se = load_data("single_edge.kg");
    CHECK_THROWS_AS(P(*se, "e.e"), PreconditionError);
}
