#include <doctest.h>

#include "../support/corpus.hpp"
#include "helpers.hpp"
#include "kpinf/classify.hpp"
#include "kpinf/errors.hpp"

using namespace kpinf;
using namespace kpinf::testing;

using Verdict = ClassificationReport::Verdict;

TEST_CASE("classification examples") {
    auto e2 = classify_pure_infiniteness(load_data("e2.kg"), {});
    CHECK(e2.verdict == Verdict::ProperlyPurelyInfinite);
    CHECK_FALSE(e2.incoherent);
    REQUIRE(e2.proofs.size() == 1);
    for (const auto& q : e2.proofs[0].quotients) {
        REQUIRE(q.infinite);
        CHECK(q.infinite->verify());
    }

    auto om = load_data("omega11.kg");
    auto ro = classify_pure_infiniteness(om, {});
    CHECK(ro.verdict == Verdict::NotPurelyInfinite);
    CHECK_FALSE(ro.all_receive);
    CHECK_FALSE(ro.conditions[om->vertex_id("v1_1")].receives);
    CHECK(ro.reason.find("v1_1") != std::string::npos);

    auto rt = classify_pure_infiniteness(load_data("t2.kg"), {});
    CHECK(rt.verdict == Verdict::Inconclusive);
    REQUIRE(rt.sweep);
    CHECK(rt.sweep->status == AperiodicityVerdict::Status::Periodic);
    CHECK(rt.reason.find("refused") != std::string::npos);

    auto j = to_json(rt);
    CHECK(j["verdict"] == "inconclusive");
    CHECK(j["aperiodicity"]["status"] == "periodic");
}

TEST_CASE("classification preconditions") {
    CHECK_THROWS_AS(classify_pure_infiniteness(load_data("t2_missing.kg"), {}), PreconditionError);
    CHECK_THROWS_AS(classify_pure_infiniteness(share(KGraph(1, {}, {}, {})), {}), PreconditionError);
}

TEST_CASE("the two graph conditions") {
    auto g = one_graph({{2, 1}, {0, 0}});
    CHECK(receives_edges(g, 0));
    CHECK_FALSE(receives_edges(g, 1));
    auto c0 = cycle_condition(g, 0);
    CHECK(c0.reached_from_cycle);
    CHECK_FALSE(c0.cycle.empty());
    CHECK_FALSE(cycle_condition(g, 1).reached_from_cycle);

    auto sink = one_graph({{0, 1}, {0, 2}});
    auto c = cycle_condition(sink, 0);
    REQUIRE(c.reached_from_cycle);
    REQUIRE(c.connector.size() == 1);
    CHECK(sink.edge(c.connector[0]).range == 0);
    CHECK(c.bound == 2);

    for (const auto& entry : corpus()) {
        CAPTURE(entry.name);
        const KGraph& gr = *entry.graph;
        bool all_receive = true, all_reached = true;
        for (VertexId v = 0; v < static_cast<VertexId>(gr.vertex_count()); ++v) {
            all_receive = all_receive && receives_edges(gr, v);
            auto cc = cycle_condition(gr, v);
            all_reached = all_reached && cc.reached_from_cycle;
            if (cc.reached_from_cycle) {
                // The reported walk is closed and the connector ends on it.
                REQUIRE_FALSE(cc.cycle.empty());
                CHECK(gr.edge(cc.cycle.front()).range == gr.edge(cc.cycle.back()).source);
                for (std::size_t i = 0; i + 1 < cc.cycle.size(); ++i)
                    CHECK(gr.edge(cc.cycle[i]).source == gr.edge(cc.cycle[i + 1]).range);
                if (!cc.connector.empty()) CHECK(gr.edge(cc.connector.front()).range == v);
            }
        }
        CHECK(all_receive == all_reached);
    }
}

TEST_CASE("corpus verdicts are coherent") {
    for (const auto& entry : corpus()) {
        if (entry.name == "E2xE2xE2" || entry.name.rfind("random2", 0) == 0) continue;
        CAPTURE(entry.name);
        auto r = classify_pure_infiniteness(entry.graph, {});
        CHECK_FALSE(r.incoherent);
        if (!r.all_receive) CHECK(r.verdict == Verdict::NotPurelyInfinite);
        if (r.verdict == Verdict::ProperlyPurelyInfinite)
            for (const auto& p : r.proofs) CHECK(p.status == VertexProof::Status::ProperlyInfinite);
    }
}
