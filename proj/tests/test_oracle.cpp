#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "ztower/oracle.hpp"
#include "ztower/picard.hpp"

using namespace ztower;

TEST_CASE("brute force on small families") {
    for (std::size_t n = 3; n <= 8; ++n)
        CHECK(oracle::brute_force_spanning_trees(fixtures::cycle(n)) == n);
    CHECK(oracle::brute_force_spanning_trees(fixtures::path(5)) == 1);
    CHECK(oracle::brute_force_spanning_trees(fixtures::dumbbell()) == 1);
    CHECK(oracle::brute_force_spanning_trees(fixtures::bouquet(4)) == 1);

    SerreGraph dbl;
    auto a = dbl.add_vertex("a");
    auto b = dbl.add_vertex("b");
    dbl.add_edge(a, b);
    dbl.add_edge(b, a);
    CHECK(oracle::brute_force_group_order(dbl) == 2);

    CHECK(oracle::brute_force_group_order(build_level(fixtures::example2_unramified(), 1).graph) == 75);
}

TEST_CASE("brute force limits") {
    CHECK_THROWS_AS(oracle::brute_force_spanning_trees(SerreGraph{}), Error);
    auto big = fixtures::bouquet(oracle::kMaxEdges + 1);
    try {
        oracle::brute_force_spanning_trees(big);
        FAIL("expected CapExceeded");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::CapExceeded);
    }
    SerreGraph split;
    split.add_vertex("a");
    split.add_vertex("b");
    CHECK(oracle::brute_force_spanning_trees(split) == 0);
}

TEST_CASE("oracle agrees with kappa on random multigraphs") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 150; ++i) {
        auto g = fixtures::random_connected_multigraph(rng, 6, oracle::kMaxEdges);
        auto brute = oracle::brute_force_spanning_trees(g);
        CHECK(brute == kappa(g));
        CHECK(brute == picard_group(g).order);
    }
}
