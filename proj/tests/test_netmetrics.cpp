#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "enscale/graph.hpp"
#include "enscale/netmetrics.hpp"
#include "oracles.hpp"

using namespace enscale;
using namespace enscale::net;
using oracle::rel_close;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(ENSCALE_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Graph complete_graph(int n) {
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.insert({i, j});
    return Graph(n, edges);
}

Graph ring_lattice(int n, int k) {
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int d = 1; d <= k / 2; ++d) {
            const int j = (i + d) % n;
            edges.insert({std::min(i, j), std::max(i, j)});
        }
    return Graph(n, edges);
}

}  // namespace

TEST_CASE("ingest: triangle text") {
    const auto result = ingest_edge_list("0 1\n1 2\n2 0");
    CHECK(result.graph.node_count() == 3);
    CHECK(result.graph.edge_count() == 3);
    CHECK(result.stats.self_loops_dropped == 0);
    CHECK(result.stats.duplicate_edges_dropped == 0);
}

TEST_CASE("ingest: dedup rules") {
    const auto result = ingest_edge_list("a b\nb a\na a");
    CHECK(result.graph.node_count() == 2);
    CHECK(result.graph.edge_count() == 1);
    CHECK(result.stats.self_loops_dropped == 1);
    CHECK(result.stats.duplicate_edges_dropped == 1);
}

TEST_CASE("ingest: labels keep first-appearance order") {
    const auto result = ingest_edge_list("x y\ny z\n");
    REQUIRE(result.labels.size() == 3);
    CHECK(result.labels[0] == "x");
    CHECK(result.labels[1] == "y");
    CHECK(result.labels[2] == "z");
    CHECK(result.graph.adjacent(0, 1));
    CHECK(result.graph.adjacent(1, 2));
    CHECK_FALSE(result.graph.adjacent(0, 2));
}

TEST_CASE("ingest: comments, blank lines and CRLF") {
    const auto result = ingest_edge_list("# header\r\n\r\n  # indented comment\n0 1\r\n\n1 2\n");
    CHECK(result.graph.node_count() == 3);
    CHECK(result.graph.edge_count() == 2);
}

TEST_CASE("ingest: cycle fixture has twenty nodes and edges") {
    const auto result = ingest_edge_list(read_fixture("cycle_20.edges"));
    CHECK(result.graph.node_count() == 20);
    CHECK(result.graph.edge_count() == 20);
}

TEST_CASE("ingest: malformed line reports its number") {
    try {
        ingest_edge_list("0 1\n1 2 3\n");
        FAIL("expected parse error");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::parse);
        CHECK(std::string(err.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("ingest: empty documents are rejected") {
    for (const char* text : {"", "\n\n", "# only comments\n"}) {
        try {
            ingest_edge_list(text);
            FAIL("expected empty-graph error");
        } catch (const Error& err) {
            CHECK(err.code() == Errc::empty_graph);
        }
    }
}

TEST_CASE("path length: fixtures") {
    CHECK(path_length(complete_graph(5)) == 1.0);
    const auto p3 = ingest_edge_list("0 1\n1 2").graph;
    CHECK(path_length(p3) == 4.0 / 3.0);
}

TEST_CASE("path length: errors") {
    const auto split = ingest_edge_list("0 1\n2 3").graph;
    try {
        path_length(split);
        FAIL("expected disconnected error");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::disconnected);
    }
    const Graph lonely(1, {});
    CHECK_THROWS_AS(path_length(lonely), Error);
}

TEST_CASE("path length matches the all-pairs oracle on 100 random graphs") {
    std::mt19937_64 rng(20260810);
    std::uniform_int_distribution<int> n_dist(2, 50);
    std::uniform_int_distribution<int> extra_dist(0, 40);
    for (int i = 0; i < 100; ++i) {
        const int n = n_dist(rng);
        const Graph g = oracle::random_connected_graph(rng, n, extra_dist(rng));
        std::uint64_t expected = 0;
        REQUIRE(oracle::fw_pair_sum(g, expected));
        const std::uint64_t ordered = net::detail::ordered_pair_distance_sum(g, 1);
        REQUIRE(ordered == 2 * expected);  // integer sums identical
        const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
        REQUIRE(path_length(g) == static_cast<double>(expected) / pairs);
    }
}

TEST_CASE("path length: parallel execution is exact and deterministic") {
    const Graph g = ring_lattice(400, 4);
    const auto serial = net::detail::ordered_pair_distance_sum(g, 1);
    CHECK(net::detail::ordered_pair_distance_sum(g, 2) == serial);
    CHECK(net::detail::ordered_pair_distance_sum(g, 5) == serial);
    CHECK(net::detail::ordered_pair_distance_sum(g, 8) == serial);
}

TEST_CASE("clustering: fixtures") {
    const auto triangle = ingest_edge_list(read_fixture("triangle.edges")).graph;
    CHECK(clustering_coefficient(triangle) == 1.0);

    const auto star = ingest_edge_list(read_fixture("star_k14.edges")).graph;
    CHECK(clustering_coefficient(star) == 0.0);

    const auto lattice = ingest_edge_list(read_fixture("ring_lattice_20_4.edges")).graph;
    CHECK(lattice.node_count() == 20);
    CHECK(lattice.edge_count() == 40);
    // closed form 3(k-2)/(4(k-1)) at k = 4
    CHECK(clustering_coefficient(lattice) == 0.5);

    const auto p3 = ingest_edge_list("0 1\n1 2").graph;
    CHECK(clustering_coefficient(p3) == 0.0);  // only the middle node is eligible

    const Graph single_edge = ingest_edge_list("0 1").graph;
    CHECK(clustering_coefficient(single_edge) == 0.0);  // no eligible node at all
}

TEST_CASE("clustering matches brute-force triangle counting") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> n_dist(3, 40);
    std::uniform_int_distribution<int> extra_dist(0, 60);
    for (int i = 0; i < 50; ++i) {
        const Graph g = oracle::random_connected_graph(rng, n_dist(rng), extra_dist(rng));
        const double mine = clustering_coefficient(g);
        REQUIRE(mine >= 0.0);
        REQUIRE(mine <= 1.0);
        REQUIRE(rel_close(mine, oracle::brute_clustering(g), 1e-12));
    }
}

TEST_CASE("clustering is 1 exactly when every eligible neighborhood is complete") {
    for (int n = 3; n <= 6; ++n) CHECK(clustering_coefficient(complete_graph(n)) == 1.0);
    // two triangles sharing one node: every neighborhood still complete
    const auto bowtie = ingest_edge_list("0 1\n1 2\n2 0\n2 3\n3 4\n4 2").graph;
    CHECK(clustering_coefficient(bowtie) < 1.0);  // the shared node sees 4 neighbors, 2 links
}

TEST_CASE("adding an edge never increases path length") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> n_dist(4, 30);
    for (int i = 0; i < 30; ++i) {
        const int n = n_dist(rng);
        const Graph g = oracle::random_connected_graph(rng, n, 5);
        // collect absent edges
        std::vector<std::pair<int, int>> absent;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (!g.adjacent(a, b)) absent.push_back({a, b});
        if (absent.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, absent.size() - 1);
        const auto edge = absent[pick(rng)];

        std::set<std::pair<int, int>> edges;
        for (int v = 0; v < n; ++v)
            for (int u : g.neighbors(v))
                if (u > v) edges.insert({v, u});
        edges.insert(edge);
        const Graph denser(n, edges);
        REQUIRE(path_length(denser) <= path_length(g));
    }
}

TEST_CASE("network entropy: complete graph is an explicit error") {
    const auto triangle = ingest_edge_list(read_fixture("triangle.edges")).graph;
    try {
        network_entropy(triangle);
        FAIL("expected entropy-undefined error");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::entropy_undefined);
    }
}

TEST_CASE("network entropy: ring lattice report is self-consistent") {
    const auto lattice = ingest_edge_list(read_fixture("ring_lattice_20_4.edges")).graph;
    const auto report = network_entropy(lattice);
    CHECK(report.n == 20.0);
    CHECK(report.clustering == 0.5);
    CHECK(report.path_length > 1.0);
    CHECK(rel_close(report.entropy,
                    report.clustering * std::log(report.n) / std::log(report.path_length), 1e-12));
    CHECK(rel_close(report.e_gap, report.path_length - std::numbers::e, 1e-12));
}

TEST_CASE("network entropy is invariant under relabeling") {
    // same ring lattice, scrambled labels and line order
    const auto base = ingest_edge_list(read_fixture("ring_lattice_20_4.edges"));
    std::vector<std::string> names;
    for (int i = 0; i < 20; ++i) names.push_back("node_" + std::to_string((i * 7 + 3) % 20));
    std::vector<std::string> lines;
    for (int v = 0; v < 20; ++v)
        for (int u : base.graph.neighbors(v))
            if (u > v) lines.push_back(names[v] + " " + names[u]);
    std::mt19937_64 rng(99);
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string text;
    for (const auto& line : lines) text += line + "\n";

    const auto relabeled = ingest_edge_list(text);
    const auto a = network_entropy(base.graph);
    const auto b = network_entropy(relabeled.graph);
    CHECK(a.n == b.n);
    CHECK(a.path_length == b.path_length);
    CHECK(a.clustering == b.clustering);
    CHECK(a.entropy == b.entropy);
}

TEST_CASE("largest component mode") {
    // C5 plus a disjoint triangle: largest component is the 5-cycle
    const auto g = ingest_edge_list("0 1\n1 2\n2 3\n3 4\n4 0\nx y\ny z\nz x").graph;
    CHECK_THROWS_AS(network_entropy(g), Error);

    const auto report = network_entropy(g, /*use_largest_component=*/true);
    CHECK(report.n == 5.0);
    CHECK(report.path_length == 1.5);
    CHECK(report.clustering == 0.0);
    CHECK(report.entropy == 0.0);

    const Graph comp = largest_component(g);
    CHECK(comp.node_count() == 5);
    CHECK(comp.edge_count() == 5);
}

TEST_CASE("network entropy: direct entry") {
    const double e = std::numbers::e;
    const auto synthetic = network_entropy_direct(e, 1.0, std::exp(3.0));
    CHECK(oracle::abs_close(synthetic.entropy, 3.0, 1e-12));

    const auto elegans = network_entropy_direct(2.65, 0.28, 282.0);
    CHECK(oracle::abs_close(elegans.e_gap, -0.06828182845904524, 1e-14));

    const auto brain = network_entropy_direct(2.49, 0.53, 90.0);
    CHECK(oracle::abs_close(brain.e_gap, 2.49 - std::numbers::e, 1e-14));

    const auto lexicon = network_entropy_direct(2.67, 0.437, 478773.0);
    CHECK(rel_close(lexicon.entropy, 0.437 * std::log(478773.0) / std::log(2.67), 1e-12));

    CHECK_THROWS_AS(network_entropy_direct(1.0, 0.5, 100.0), Error);
    CHECK_THROWS_AS(network_entropy_direct(2.0, 1.5, 100.0), Error);
    CHECK_THROWS_AS(network_entropy_direct(2.0, 0.5, 0.0), Error);
}

TEST_CASE("mean free path survival") {
    CHECK(mean_free_path_survival(0.0, 3.7) == 1.0);
    CHECK(rel_close(mean_free_path_survival(2.0, 2.0), 0.36787944117144233, 1e-15));
    CHECK(rel_close(mean_free_path_survival(3.0, 1.0), 0.049787068367863944, 1e-12));
    CHECK_THROWS_AS(mean_free_path_survival(-1.0, 1.0), Error);
    CHECK_THROWS_AS(mean_free_path_survival(1.0, 0.0), Error);
}

TEST_CASE("mean free path survival: strictly decreasing and memoryless") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dist(0.01, 10.0);
    double previous = 1.0;
    for (int i = 1; i <= 50; ++i) {
        const double p = mean_free_path_survival(0.2 * i, 1.7);
        REQUIRE(p < previous);
        previous = p;
    }
    for (int i = 0; i < 100; ++i) {
        const double x = dist(rng);
        const double y = dist(rng);
        const double l = dist(rng);
        REQUIRE(rel_close(mean_free_path_survival(x + y, l),
                          mean_free_path_survival(x, l) * mean_free_path_survival(y, l), 1e-12));
    }
}
