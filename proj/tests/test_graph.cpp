#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "ztower/graph.hpp"

using namespace ztower;
using fixtures::bouquet;
using fixtures::cycle;
using fixtures::dumbbell;

TEST_CASE("validate accepts the standard constructions") {
    auto b = bouquet(2);
    CHECK(b.vertex_count() == 1);
    CHECK(b.edge_count() == 4);
    CHECK(validate(b).empty());
    auto d = dumbbell();
    CHECK(d.edge_count() == 6);
    CHECK(validate(d).empty());
}

TEST_CASE("validate reports axiom violations") {
    SUBCASE("self-inverse edge") {
        SerreGraph g({"a"}, {DirectedEdge{0, 0, 0}});
        auto issues = validate(g);
        REQUIRE_FALSE(issues.empty());
        bool found = false;
        for (const auto &s : issues)
            found = found || s.find("ē = e") != std::string::npos;
        CHECK(found);
    }
    SUBCASE("inverse not an involution") {
        SerreGraph g({"a", "b"}, {DirectedEdge{0, 1, 1}, DirectedEdge{1, 0, 2},
                                  DirectedEdge{1, 0, 0}});
        CHECK_FALSE(validate(g).empty());
    }
    SUBCASE("o(ē) != t(e)") {
        SerreGraph g({"a", "b"}, {DirectedEdge{0, 1, 1}, DirectedEdge{0, 1, 0}});
        CHECK_FALSE(validate(g).empty());
    }
    SUBCASE("endpoint out of range") {
        SerreGraph g({"a"}, {DirectedEdge{0, 3, 1}, DirectedEdge{3, 0, 0}});
        CHECK_FALSE(validate(g).empty());
    }
}

TEST_CASE("valency counts loops twice") {
    auto d = dumbbell();
    CHECK(valency(d, 0) == 3);
    CHECK(valency(d, 1) == 3);
    CHECK(valency(bouquet(2), 0) == 4);
    SerreGraph iso;
    iso.add_vertex("lonely");
    CHECK(valency(iso, 0) == 0);
}

TEST_CASE("connectivity") {
    CHECK(is_connected(dumbbell()));
    SerreGraph two;
    auto a = two.add_vertex("a");
    auto b = two.add_vertex("b");
    two.add_edge(a, a);
    two.add_edge(b, b);
    CHECK_FALSE(is_connected(two));
    CHECK(components(two).size() == 2);
    CHECK_THROWS_AS(is_connected(SerreGraph{}), Error);
    try {
        is_connected(SerreGraph{});
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::EmptyGraph);
    }
}

TEST_CASE("spanning tree") {
    auto p = fixtures::path(5);
    CHECK(spanning_tree(p).edges == p.orientation());

    auto c = cycle(3); // representatives 0, 2, 4
    CHECK(spanning_tree(c).edges == std::vector<EdgeId>{0, 2});

    auto d = dumbbell(); // loops 0 and 4, bridge 2
    CHECK(spanning_tree(d).edges == std::vector<EdgeId>{2});

    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        auto g = fixtures::random_connected_multigraph(rng, 6, 10);
        auto t1 = spanning_tree(g);
        auto t2 = spanning_tree(g);
        CHECK(t1.edges == t2.edges);
        CHECK(t1.edges.size() == g.vertex_count() - 1);
        CHECK(t1.order.size() == g.vertex_count());
    }
}

TEST_CASE("fundamental cycle sums") {
    SUBCASE("loop is its own cycle") {
        auto g = bouquet(1);
        std::vector<long> w{7, -7};
        auto sums = fundamental_cycle_sums<long>(g, spanning_tree(g), w, 0);
        CHECK(sums == std::vector<long>{7});
    }
    SUBCASE("dumbbell voltages") {
        auto g = dumbbell();
        std::vector<long> w{1, -1, 0, 0, 11, -11};
        auto sums = fundamental_cycle_sums<long>(g, spanning_tree(g), w, 0);
        CHECK(sums == std::vector<long>{1, 11});
    }
    SUBCASE("zero weights") {
        auto g = cycle(5);
        std::vector<long> w(g.edge_count(), 0);
        for (long s : fundamental_cycle_sums<long>(g, spanning_tree(g), w, 0))
            CHECK(s == 0);
    }
    SUBCASE("size mismatch") {
        auto g = cycle(3);
        std::vector<long> w(2, 0);
        CHECK_THROWS_AS(fundamental_cycle_sums<long>(g, spanning_tree(g), w, 0), Error);
    }
    SUBCASE("scaling the weights scales the sums") {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<long> dist(-9, 9);
        for (int i = 0; i < 20; ++i) {
            auto g = fixtures::random_connected_multigraph(rng, 6, 12);
            std::vector<long> w(g.edge_count()), w3(g.edge_count());
            for (EdgeId e : g.orientation()) {
                w[e] = dist(rng);
                w[g.inverse(e)] = -w[e];
            }
            for (std::size_t e = 0; e < w.size(); ++e)
                w3[e] = 3 * w[e];
            auto tree = spanning_tree(g);
            auto s = fundamental_cycle_sums<long>(g, tree, w, 0);
            auto s3 = fundamental_cycle_sums<long>(g, tree, w3, 0);
            REQUIRE(s.size() == s3.size());
            for (std::size_t k = 0; k < s.size(); ++k)
                CHECK(s3[k] == 3 * s[k]);
        }
    }
}

TEST_CASE("laplacian") {
    auto single = laplacian_matrix(bouquet(1));
    CHECK(single.rows() == 1);
    CHECK(single(0, 0) == 0);

    Matrix<BigInt> two(2, 2, BigInt(0));
    two(0, 0) = 1;
    two(0, 1) = -1;
    two(1, 0) = -1;
    two(1, 1) = 1;
    CHECK(laplacian_matrix(fixtures::path(2)) == two);
    CHECK(laplacian_matrix(dumbbell()) == two);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        auto g = fixtures::random_connected_multigraph(rng, 6, 14);
        CHECK(validate(g).empty());
        auto l = laplacian_matrix(g);
        for (std::size_t r = 0; r < l.rows(); ++r) {
            BigInt row = 0, col = 0;
            for (std::size_t c = 0; c < l.cols(); ++c) {
                row += l(r, c);
                col += l(c, r);
            }
            CHECK(row == 0);
            CHECK(col == 0);
        }
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            std::size_t out = 0;
            for (const auto &e : g.edges())
                out += e.origin == v;
            CHECK(valency(g, v) == out);
        }
    }
}
