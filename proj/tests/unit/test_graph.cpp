#include <doctest.h>

#include <random>
#include <set>

#include "graphs.hpp"
#include "htak/errors.hpp"
#include "htak/graph.hpp"
#include "htak/tu_dataset.hpp"
#include "tempdir.hpp"

using namespace htak;
using namespace htak::testing;

namespace {

std::vector<std::int32_t> d(std::initializer_list<std::int32_t> v) { return v; }

void write_triangle(const TempDir& dir) {
    dir.write("T_A.txt", "1, 2\n2, 3\n1, 3\n");
    dir.write("T_graph_indicator.txt", "1\n1\n1\n");
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("construction drops self-loops and duplicates") {
    const std::vector<Edge> e{{0, 1}, {1, 0}, {1, 1}, {1, 2}, {0, 1}};
    Graph g(3, e);
    CHECK(g.edge_count() == 2);
    CHECK(g.dropped_self_loops() == 1);
    CHECK(g.dropped_duplicates() == 2);
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    const std::vector<Edge> bad{{0, 3}};
    CHECK_THROWS_AS(Graph(3, bad), ArgumentError);
}

TEST_CASE("adjacency is symmetric and sorted") {
    for (const auto& g : random_graphs(7, 30)) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            const auto nb = g.neighbors(v);
            CHECK(std::is_sorted(nb.begin(), nb.end()));
            CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
            for (Vertex u : nb) {
                CHECK(u != v);
                CHECK(g.has_edge(u, v));
            }
        }
    }
}

TEST_CASE("bfs on small graphs") {
    CHECK(bfs_distances(triangle(), 0).distances == d({0, 1, 1}));
    CHECK(bfs_distances(path(4), 0).distances == d({0, 1, 2, 3}));
    const std::vector<Edge> two{{0, 1}, {2, 3}};
    const auto row = bfs_distances(Graph(4, two), 0);
    CHECK(row.distances == d({0, 1, kUnreachable, kUnreachable}));
    CHECK_FALSE(row.reachable(2));
    CHECK(row.eccentricity() == 1);
    CHECK_THROWS_AS((void)bfs_distances(triangle(), 3), ArgumentError);
}

TEST_CASE("bfs matches Floyd-Warshall and the metric axioms") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        // sparse graphs so that some are disconnected
        const Graph g = random_graph(rng, 3 + trial % 10, 0.15 + 0.01 * trial);
        const auto oracle = floyd_warshall(g);
        const std::size_t n = g.vertex_count();
        std::vector<std::vector<std::int32_t>> dist(n);
        for (Vertex s = 0; s < n; ++s) dist[s] = bfs_distances(g, s).distances;
        CHECK(dist == oracle);
        for (Vertex u = 0; u < n; ++u) {
            CHECK(dist[u][u] == 0);
            for (Vertex v = 0; v < n; ++v) {
                CHECK(dist[u][v] == dist[v][u]);
                if (dist[u][v] > 0) {
                    bool has_parent = false;
                    for (Vertex w : g.neighbors(v)) has_parent = has_parent || dist[u][w] == dist[u][v] - 1;
                    CHECK(has_parent);
                }
                for (Vertex w = 0; w < n; ++w) {
                    if (dist[u][v] >= 0 && dist[v][w] >= 0) CHECK(dist[u][w] <= dist[u][v] + dist[v][w]);
                }
            }
        }
    }
}

TEST_CASE("global_k") {
    const std::vector<Graph> tp{triangle(), path(4)};
    CHECK(compute_global_k(tp) == 3);
    const std::vector<Graph> t{triangle()};
    CHECK(compute_global_k(t) == 1);
    CHECK(compute_global_k(tp, 2) == 2);
    CHECK(compute_global_k(tp, 10) == 3);
    CHECK_THROWS_AS((void)compute_global_k(tp, 0), ArgumentError);

    const std::vector<Graph> edgeless{Graph(3, {}), Graph(1, {})};
    try {
        (void)compute_global_k(edgeless);
        FAIL("expected an error");
    } catch (const ArgumentError& e) {
        CHECK(std::string(e.what()).find("no finite eccentricity") != std::string::npos);
    }
    CHECK_THROWS_AS((void)compute_global_k(std::vector<Graph>{}), ArgumentError);

    std::mt19937_64 rng(5);
    const auto graphs = random_graphs(3, 25);
    std::int32_t oracle = 0;
    for (const auto& g : graphs)
        for (const auto& row : floyd_warshall(g))
            for (auto x : row) oracle = std::max(oracle, x);
    CHECK(compute_global_k(graphs) == oracle);
    CHECK(compute_global_k(graphs) >= 1);
}

TEST_CASE("collection rewrites ids") {
    std::vector<Graph> gs{path(3), triangle()};
    gs[0].set_id(9);
    GraphCollection c("c", gs);
    CHECK(c[0].id() == 0);
    CHECK(c[1].id() == 1);
    CHECK(c.global_k() == 2);
}

TEST_CASE("induced and permuted") {
    const Graph p4 = path(4);
    const std::vector<Vertex> members{2, 1, 3};
    const Graph sub = p4.induced(members);
    CHECK(sub.vertex_count() == 3);
    CHECK(sub.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
    const std::vector<Vertex> perm{3, 2, 1, 0};
    CHECK(p4.permuted(perm) == p4);
}

TEST_CASE("load triangle and P4") {
    TempDir dir;
    write_triangle(dir);
    const auto c = load_tu_dataset(dir.path(), "T");
    REQUIRE(c.size() == 1);
    CHECK(c[0].vertex_count() == 3);
    CHECK(c[0].edge_count() == 3);
    CHECK(c.global_k() == 1);
    CHECK_FALSE(c.has_labels());

    dir.write("P_A.txt", "1,2\n2,3\n3,4\n4,3\n");
    dir.write("P_graph_indicator.txt", "1\n1\n1\n1\n");
    dir.write("P_graph_labels.txt", "-1\n");
    const auto p = load_tu_dataset(dir.path(), "P");
    CHECK(p.global_k() == 3);
    CHECK(p[0].edge_count() == 3);
    CHECK(p[0].label() == -1);
}

TEST_CASE("loader reports self-loops and duplicates") {
    TempDir dir;
    dir.write("S_A.txt", "1, 2\n2, 1\n1, 2\n2, 2\n");
    dir.write("S_graph_indicator.txt", "1\n1\n");
    const auto c = load_tu_dataset(dir.path(), "S");
    CHECK(c[0].edge_count() == 1);
    CHECK(c.load_stats().self_loops_dropped == 1);
    CHECK(c.load_stats().duplicate_edges_dropped == 1);
}

TEST_CASE("loader errors") {
    TempDir dir;
    SUBCASE("missing file names the file") {
        dir.write("M_A.txt", "1, 2\n");
        try {
            (void)load_tu_dataset(dir.path(), "M");
            FAIL("expected an error");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("M_graph_indicator.txt") != std::string::npos);
        }
    }
    SUBCASE("missing directory") { CHECK_THROWS_AS((void)load_tu_dataset(dir.path() / "nope", "X"), InputError); }
    SUBCASE("non-integer token carries the line number") {
        dir.write("B_A.txt", "1, 2\n2, x\n");
        dir.write("B_graph_indicator.txt", "1\n1\n");
        try {
            (void)load_tu_dataset(dir.path(), "B");
            FAIL("expected an error");
        } catch (const FormatError& e) {
            CHECK(std::string(e.what()).find("B_A.txt:2") != std::string::npos);
        }
    }
    SUBCASE("node absent from indicator") {
        dir.write("N_A.txt", "1, 2\n2, 4\n");
        dir.write("N_graph_indicator.txt", "1\n1\n1\n");
        try {
            (void)load_tu_dataset(dir.path(), "N");
            FAIL("expected an error");
        } catch (const FormatError& e) {
            CHECK(std::string(e.what()).find("N_A.txt:2") != std::string::npos);
        }
    }
    SUBCASE("label count mismatch") {
        write_triangle(dir);
        dir.write("T_graph_labels.txt", "1\n0\n");
        CHECK_THROWS_AS((void)load_tu_dataset(dir.path(), "T"), FormatError);
    }
}

TEST_CASE("TU round trip") {
    const auto graphs = random_graphs(21, 15);
    GraphCollection c("R", graphs);
    TempDir dir;
    write_tu_dataset(c, dir.path(), "R");
    const auto back = load_tu_dataset(dir.path(), "R");
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        // trailing isolated vertices survive via the indicator file
        CHECK(back[i] == c[i]);
    }
    CHECK(back.global_k() == c.global_k());
}

TEST_CASE("MUTAG statistics") {
    const auto c = load_tu_dataset(HTAK_DATA_DIR "/MUTAG", "MUTAG");
    CHECK(c.size() == 188);
    std::set<int> classes;
    std::size_t max_vertices = 0;
    std::int32_t oracle_k = 0;
    for (const auto& g : c.graphs()) {
        REQUIRE(g.label().has_value());
        classes.insert(*g.label());
        max_vertices = std::max(max_vertices, g.vertex_count());
        for (const auto& row : floyd_warshall(g))
            for (auto x : row) oracle_k = std::max(oracle_k, x);
    }
    CHECK(classes.size() == 2);
    CHECK(max_vertices == 28);
    CHECK(c.global_k() == oracle_k);
}

}
