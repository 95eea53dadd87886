#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "ztower/tower.hpp"

using namespace ztower;

TEST_CASE("voltage graph validation") {
    auto g = fixtures::dumbbell();
    auto v = fixtures::exact_voltages(3, {1, -1, 0, 0, 11, -11});
    std::vector<Ramification> unr(2);
    CHECK_NOTHROW(VoltageGraph(g, 3, v, unr));
    auto asym = fixtures::exact_voltages(3, {1, 1, 0, 0, 11, -11});
    CHECK_THROWS_AS(VoltageGraph(g, 3, asym, unr), Error);
    CHECK_THROWS_AS(VoltageGraph(g, 4, fixtures::exact_voltages(4, {1, -1, 0, 0, 11, -11}), unr),
                    Error);
    CHECK_THROWS_AS(VoltageGraph(g, 3, fixtures::exact_voltages(3, {1, -1}), unr), Error);
    SerreGraph split;
    split.add_vertex("a");
    split.add_vertex("b");
    CHECK_THROWS_AS(VoltageGraph(split, 3, {}, unr), Error);
}

TEST_CASE("level construction") {
    SUBCASE("example 1") {
        auto vg = fixtures::example1();
        auto x1 = build_level(vg, 1);
        CHECK(x1.graph.vertex_count() == 2);
        CHECK(x1.graph.undirected_edge_count() == 4);
        CHECK(validate(x1.graph).empty());
        std::vector<std::size_t> counts;
        for (unsigned n = 0; n <= 3; ++n)
            counts.push_back(build_level(vg, n).graph.vertex_count());
        CHECK(counts == std::vector<std::size_t>{1, 2, 4, 4});
    }
    SUBCASE("level 0 is the base") {
        for (const auto &vg : fixtures::reference_towers()) {
            auto x0 = build_level(vg, 0);
            CHECK(x0.graph.vertex_count() == vg.base().vertex_count());
            CHECK(x0.graph.undirected_edge_count() == vg.base().undirected_edge_count());
            for (EdgeId e = 0; e < vg.base().edge_count(); ++e) {
                CHECK(x0.graph.origin(e) == vg.base().origin(e));
                CHECK(x0.graph.terminus(e) == vg.base().terminus(e));
            }
        }
    }
    SUBCASE("example 2 branched") {
        auto x2 = build_level(fixtures::example2_branched(), 2);
        CHECK(x2.graph.vertex_count() == 12);
        CHECK(x2.graph.undirected_edge_count() == 27);
    }
    SUBCASE("closed-form counts") {
        for (const auto &vg : fixtures::reference_towers())
            for (unsigned n = 0; n <= 4; ++n) {
                auto x = build_level(vg, n);
                const auto p = vg.prime();
                std::size_t expect = 0;
                for (VertexId v = 0; v < vg.base().vertex_count(); ++v)
                    expect += static_cast<std::size_t>(power(p, vg.ramification(v).fiber_exponent(n)).get_ui());
                CHECK(x.graph.vertex_count() == expect);
                CHECK(x.graph.edge_count() == vg.base().edge_count() * x.modulus);
                CHECK(validate(x.graph).empty());
            }
    }
    SUBCASE("truncated voltages need n digits") {
        auto vg = fixtures::example2_unramified().truncated(2);
        CHECK_NOTHROW(build_level(vg, 2));
        CHECK_THROWS_AS(build_level(vg, 3), Error);
    }
}

TEST_CASE("projections and ramification indices") {
    auto vg = fixtures::example1();
    CHECK(expected_ramification_index(vg.ramification(0), 2, 1, 0) == 1);
    CHECK(expected_ramification_index(vg.ramification(0), 2, 2, 1) == 1);
    CHECK(expected_ramification_index(vg.ramification(0), 2, 3, 2) == 2);
    CHECK(expected_ramification_index(vg.ramification(0), 2, 3, 0) == 2);

    auto c10 = projection(vg, 1, 0);
    for (auto v : c10.vertex_map)
        CHECK(v == 0);
    for (auto m : c10.ramification_index)
        CHECK(m == 1);
    CHECK(verify_cover(projection(vg, 3, 2)).ok());
    for (auto m : projection(vg, 3, 2).ramification_index)
        CHECK(m == 2);

    SUBCASE("unramified towers have trivial indices") {
        auto c = projection(fixtures::example2_unramified(), 3, 2);
        for (auto m : c.ramification_index)
            CHECK(m == 1);
    }

    SUBCASE("total ramification") {
        auto g = fixtures::dumbbell();
        auto tvg = VoltageGraph::from_orientation(g, 3, fixtures::exact_voltages(3, {1, 0, 2}),
                                                  {Ramification::unramified(), Ramification::ramified(0)});
        for (unsigned n = 0; n <= 3; ++n)
            CHECK(build_level(tvg, n).fiber_size[1] == 1);
        for (unsigned n = 0; n < 3; ++n) {
            auto c = projection(tvg, n + 1, n);
            auto x = build_level(tvg, n + 1);
            CHECK(c.ramification_index[x.vertex_index(1, 0)] == 3);
            CHECK(verify_cover(c).ok());
        }
    }
}

TEST_CASE("cover verification") {
    for (const auto &vg : fixtures::reference_towers())
        for (unsigned n = 0; n < 4; ++n) {
            auto r = verify_cover(projection(vg, n + 1, n));
            CHECK(r.ok());
            CHECK(r.degree == vg.prime());
            CHECK(r.surjective);
        }

    auto x = std::make_shared<const LevelGraph>(build_level(fixtures::example2_branched(), 2));
    auto id = translation(x, 0);
    auto r = verify_cover(id);
    CHECK(r.ok());
    CHECK(r.degree == 1);

    SUBCASE("dropping a fiber breaks surjectivity") {
        auto vg = fixtures::example2_branched();
        auto c = projection(vg, 2, 1);
        // send everything over v2 in the target's first fiber vertex elsewhere
        const auto &tgt = *c.target;
        const VertexId victim = tgt.vertex_index(0, 1);
        for (auto &v : c.vertex_map)
            if (v == victim)
                v = tgt.vertex_index(0, 0);
        CHECK_FALSE(verify_cover(c).ok());
    }
    SUBCASE("wrong declared index is caught") {
        auto c = projection(fixtures::example1(), 3, 2);
        c.ramification_index[0] = 1;
        auto bad = verify_cover(c);
        CHECK_FALSE(bad.declared_indices_ok);
        CHECK_FALSE(bad.ok());
    }
}

TEST_CASE("projections compose") {
    for (const auto &vg : fixtures::reference_towers())
        for (unsigned n = 0; n + 2 <= 4; ++n) {
            auto outer = projection(vg, n + 1, n);
            auto inner = projection(vg, n + 2, n + 1);
            auto direct = projection(vg, n + 2, n);
            auto composed = compose(outer, inner);
            CHECK(composed.vertex_map == direct.vertex_map);
            CHECK(composed.edge_map == direct.edge_map);
            CHECK(composed.ramification_index == direct.ramification_index);
            for (VertexId w = 0; w < inner.vertex_map.size(); ++w)
                CHECK(composed.ramification_index[w] ==
                      inner.ramification_index[w] * outer.ramification_index[inner.vertex_map[w]]);
        }
}

TEST_CASE("connectedness criterion") {
    auto ex1 = connectedness_criterion(fixtures::example1());
    CHECK(ex1.generates());
    CHECK(connectedness_criterion(fixtures::example2_unramified()).generates());
    CHECK(connectedness_criterion(fixtures::example3()).generates());
    auto div = VoltageGraph::from_orientation(fixtures::dumbbell(), 3,
                                              fixtures::exact_voltages(3, {3, 0, -6}),
                                              {Ramification::unramified(), Ramification::unramified()});
    CHECK_FALSE(connectedness_criterion(div).generates());
    CHECK_FALSE(is_connected(build_level(div, 1).graph));

    SUBCASE("criterion implies connected levels") {
        std::mt19937_64 rng(21);
        int tested = 0;
        for (int i = 0; i < 60; ++i) {
            auto vg = fixtures::random_voltage_graph(rng, 3, 4, 6);
            if (!connectedness_criterion(vg).generates())
                continue;
            ++tested;
            for (unsigned n = 0; n <= 3; ++n)
                CHECK(is_connected(build_level(vg, n).graph));
        }
        CHECK(tested > 10);
    }
}

TEST_CASE("immersions") {
    for (const auto &vg : fixtures::reference_towers())
        for (unsigned n = 0; n <= 4; ++n) {
            auto r = verify_immersion(vg, n);
            CHECK(r.ok());
            CHECK(build_level(vg.unramified(), n).graph.edge_count() ==
                  build_level(vg, n).graph.edge_count());
        }
    auto unr = verify_immersion(fixtures::example2_unramified(), 3);
    CHECK(unr.source_vertices == unr.target_vertices);

    auto b1 = verify_immersion(fixtures::example2_branched(), 1);
    CHECK(b1.source_vertices == 6);
    CHECK(b1.target_vertices == 6);
    auto b2 = verify_immersion(fixtures::example2_branched(), 2);
    CHECK(b2.source_vertices == 18);
    CHECK(b2.target_vertices == 12);
    CHECK(b2.collapse[1] == 3);
}

TEST_CASE("the deck group acts freely on edges") {
    for (const auto &vg : fixtures::reference_towers()) {
        auto x = std::make_shared<const LevelGraph>(build_level(vg, 3));
        std::set<std::set<EdgeId>> orbits;
        for (EdgeId e = 0; e < x->graph.edge_count(); ++e) {
            std::set<EdgeId> orbit;
            for (std::uint64_t tau = 0; tau < x->modulus; ++tau)
                orbit.insert(translation(x, tau).edge_map[e]);
            CHECK(orbit.size() == x->modulus);
            orbits.insert(orbit);
        }
        CHECK(orbits.size() == vg.base().edge_count());
        for (std::uint64_t tau = 0; tau < x->modulus; ++tau)
            CHECK(verify_cover(translation(x, tau)).is_morphism);
    }
}
