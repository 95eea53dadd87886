#pragma once

#include <random>
#include <string>
#include <vector>

#include "ztower/io.hpp"
#include "ztower/matrix.hpp"
#include "ztower/tower.hpp"

namespace fixtures {

using namespace ztower;

inline std::string data_path(const std::string &name) {
    return std::string(ZTOWER_DATA_DIR) + "/" + name;
}

inline VoltageGraph load(const std::string &name) {
    return io::to_voltage_graph(io::load_input(data_path(name)));
}

inline std::vector<PadicScalar> exact_voltages(unsigned p, std::initializer_list<long> values) {
    std::vector<PadicScalar> out;
    for (long v : values)
        out.push_back(PadicScalar::exact(p, v));
    return out;
}

inline SerreGraph bouquet(std::size_t loops) {
    SerreGraph g;
    auto v = g.add_vertex("v");
    for (std::size_t i = 0; i < loops; ++i)
        g.add_edge(v, v);
    return g;
}

// loop at v1, bridge v1 -> v2, loop at v2
inline SerreGraph dumbbell() {
    SerreGraph g;
    auto a = g.add_vertex("v1");
    auto b = g.add_vertex("v2");
    g.add_edge(a, a);
    g.add_edge(a, b);
    g.add_edge(b, b);
    return g;
}

inline SerreGraph cycle(std::size_t n) {
    SerreGraph g;
    for (std::size_t i = 0; i < n; ++i)
        g.add_vertex("c" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
        g.add_edge(i, (i + 1) % n);
    return g;
}

inline SerreGraph path(std::size_t n) {
    SerreGraph g;
    for (std::size_t i = 0; i < n; ++i)
        g.add_vertex("x" + std::to_string(i));
    for (std::size_t i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

inline VoltageGraph example1() {
    return VoltageGraph::from_orientation(bouquet(2), 2, exact_voltages(2, {3, 5}),
                                          {Ramification::ramified(2)});
}

inline VoltageGraph example2_unramified() {
    return VoltageGraph::from_orientation(dumbbell(), 3, exact_voltages(3, {1, 0, 11}),
                                          {Ramification::unramified(), Ramification::unramified()});
}

inline VoltageGraph example2_branched() {
    return VoltageGraph::from_orientation(dumbbell(), 3, exact_voltages(3, {1, 0, 11}),
                                          {Ramification::unramified(), Ramification::ramified(1)});
}

inline VoltageGraph example3() {
    SerreGraph g;
    auto a = g.add_vertex("v1");
    auto b = g.add_vertex("v2");
    for (int i = 0; i < 3; ++i)
        g.add_edge(a, a);
    for (int i = 0; i < 3; ++i)
        g.add_edge(a, b);
    g.add_edge(b, b);
    return VoltageGraph::from_orientation(std::move(g), 3,
                                          exact_voltages(3, {1, 1, 1, 0, 0, 0, 11}),
                                          {Ramification::unramified(), Ramification::ramified(1)});
}

inline std::vector<VoltageGraph> reference_towers() {
    return {example1(), example2_unramified(), example2_branched(), example3()};
}

// Connected multigraph with loops and parallel edges: a random tree first,
// then extra edges between arbitrary (possibly equal) endpoints.
inline SerreGraph random_connected_multigraph(std::mt19937_64 &rng, std::size_t max_vertices,
                                              std::size_t max_edges) {
    std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
    std::size_t n = nv(rng);
    SerreGraph g;
    for (std::size_t i = 0; i < n; ++i)
        g.add_vertex("r" + std::to_string(i));
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        if (rng() & 1)
            g.add_edge(parent(rng), i);
        else
            g.add_edge(i, parent(rng));
    }
    std::size_t lo = n - 1;
    std::uniform_int_distribution<std::size_t> extra(0, max_edges > lo ? max_edges - lo : 0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = extra(rng); k > 0; --k)
        g.add_edge(pick(rng), pick(rng));
    return g;
}

inline VoltageGraph random_voltage_graph(std::mt19937_64 &rng, unsigned p, std::size_t max_vertices,
                                         std::size_t max_edges) {
    auto g = random_connected_multigraph(rng, max_vertices, max_edges);
    std::uniform_int_distribution<long> volt(-20, 20);
    std::vector<PadicScalar> voltages;
    for (std::size_t i = 0; i < g.undirected_edge_count(); ++i)
        voltages.push_back(PadicScalar::exact(p, volt(rng)));
    std::vector<Ramification> ram;
    std::uniform_int_distribution<int> kind(0, 3);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        int r = kind(rng);
        ram.push_back(r < 2 ? Ramification::unramified() : Ramification::ramified(unsigned(r - 2)));
    }
    return VoltageGraph::from_orientation(std::move(g), p, voltages, std::move(ram));
}

// Independent kappa: Gaussian elimination over Q on the reduced Laplacian,
// with the Laplacian assembled here from the edge list rather than by the library.
inline BigInt rational_kappa(const SerreGraph &g) {
    const std::size_t n = g.vertex_count();
    if (n == 1)
        return 1;
    std::vector<std::vector<mpq_class>> m(n - 1, std::vector<mpq_class>(n - 1, 0));
    for (const auto &e : g.edges()) {
        if (e.origin == e.terminus)
            continue;
        // each directed edge adds 1 to the origin's degree and -1 towards the terminus
        if (e.origin > 0) {
            m[e.origin - 1][e.origin - 1] += 1;
            if (e.terminus > 0)
                m[e.origin - 1][e.terminus - 1] -= 1;
        }
    }
    mpq_class det = 1;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        std::size_t r = c;
        while (r + 1 < n && m[r][c] == 0)
            ++r;
        if (r + 1 == n)
            return 0;
        if (r != c) {
            std::swap(m[r], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i + 1 < n; ++i) {
            if (m[i][c] == 0)
                continue;
            mpq_class f = m[i][c] / m[c][c];
            for (std::size_t j = c; j + 1 < n; ++j)
                m[i][j] -= f * m[c][j];
        }
    }
    return BigInt(det.get_num());
}

} // namespace fixtures
