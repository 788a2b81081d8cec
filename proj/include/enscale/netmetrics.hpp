#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <thread>
#include <vector>

#include "enscale/errors.hpp"
#include "enscale/graph.hpp"

// Measurable network quantities: characteristic path length, clustering
// coefficient, the network entropy H = C * log_L(n), and the mean-free-path
// survival probability.

namespace enscale::net {

namespace detail {

/// Sum of BFS distances from `source` to every other node. Returns the
/// number of nodes reached (including the source) through `reached`.
inline std::uint64_t bfs_distance_sum(const Graph& g, int source, int& reached,
                                      std::vector<int>& dist, std::vector<int>& queue) {
    const int n = g.node_count();
    dist.assign(static_cast<std::size_t>(n), -1);
    queue.clear();
    queue.push_back(source);
    dist[static_cast<std::size_t>(source)] = 0;

    std::uint64_t sum = 0;
    reached = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        const int du = dist[static_cast<std::size_t>(u)];
        for (int v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] >= 0) continue;
            dist[static_cast<std::size_t>(v)] = du + 1;
            sum += static_cast<std::uint64_t>(du) + 1;
            ++reached;
            queue.push_back(v);
        }
    }
    return sum;
}

/// Sum of shortest-path distances over all ordered pairs, i.e. twice the
/// unordered-pair sum. Sources are split across `threads` workers; each
/// partial sum is an exact integer, so the total does not depend on the
/// execution order. Throws if the graph is disconnected.
inline std::uint64_t ordered_pair_distance_sum(const Graph& g, unsigned threads) {
    const int n = g.node_count();
    if (threads < 1) threads = 1;
    if (threads > static_cast<unsigned>(n)) threads = static_cast<unsigned>(n);

    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<unsigned char> connected(threads, 1);  // not vector<bool>: workers write concurrently

    const auto worker = [&](unsigned t) {
        std::vector<int> dist, queue;
        std::uint64_t sum = 0;
        for (int source = static_cast<int>(t); source < n; source += static_cast<int>(threads)) {
            int reached = 0;
            sum += bfs_distance_sum(g, source, reached, dist, queue);
            if (reached != n) {
                connected[t] = 0;
                return;
            }
        }
        partial[t] = sum;
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::uint64_t total = 0;
    for (unsigned t = 0; t < threads; ++t) {
        if (!connected[t])
            throw Error(Errc::disconnected, "graph is not connected; path length undefined",
                        "edges");
        total += partial[t];
    }
    return total;
}

inline unsigned default_thread_count(int node_count) {
    if (node_count < 128) return 1;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (hw > 8 ? 8 : hw);
}

}  // namespace detail

/// Mean shortest-path distance over all unordered pairs of distinct nodes.
/// Distances are exact BFS integers; only the final division is floating.
inline double path_length(const Graph& g) {
    const int n = g.node_count();
    if (n < 2)
        throw Error(Errc::degenerate_graph, "path length needs at least two nodes", "edges");
    const std::uint64_t ordered = detail::ordered_pair_distance_sum(
        g, detail::default_thread_count(n));
    const std::uint64_t pairs =
        static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
    return static_cast<double>(ordered / 2) / static_cast<double>(pairs);
}

/// Node-averaged fraction of a node's neighbor pairs that are themselves
/// connected. Nodes of degree < 2 have no defined ratio and are excluded
/// from the average (they are not counted as zero); returns 0 when no node
/// has degree >= 2.
inline double clustering_coefficient(const Graph& g) {
    const int n = g.node_count();
    double sum = 0.0;
    int eligible = 0;
    for (int v = 0; v < n; ++v) {
        const auto& nv = g.neighbors(v);
        const int d = static_cast<int>(nv.size());
        if (d < 2) continue;
        std::uint64_t links = 0;  // edges among neighbors of v
        for (std::size_t i = 0; i < nv.size(); ++i)
            for (std::size_t j = i + 1; j < nv.size(); ++j)
                if (g.adjacent(nv[i], nv[j])) ++links;
        sum += static_cast<double>(links) /
               (static_cast<double>(d) * static_cast<double>(d - 1) / 2.0);
        ++eligible;
    }
    return eligible == 0 ? 0.0 : sum / static_cast<double>(eligible);
}

/// Subgraph induced by the largest connected component, ids remapped to
/// dense 0..m-1 preserving the original relative order. Ties on size keep
/// the component discovered first.
inline Graph largest_component(const Graph& g) {
    const int n = g.node_count();
    std::vector<int> component(static_cast<std::size_t>(n), -1);
    int best = -1;
    int best_size = 0;
    int count = 0;

    std::vector<int> queue;
    for (int start = 0; start < n; ++start) {
        if (component[static_cast<std::size_t>(start)] >= 0) continue;
        const int id = count++;
        int size = 0;
        queue.clear();
        queue.push_back(start);
        component[static_cast<std::size_t>(start)] = id;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            ++size;
            for (int v : g.neighbors(queue[head])) {
                if (component[static_cast<std::size_t>(v)] >= 0) continue;
                component[static_cast<std::size_t>(v)] = id;
                queue.push_back(v);
            }
        }
        if (size > best_size) {
            best_size = size;
            best = id;
        }
    }

    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v)
        if (component[static_cast<std::size_t>(v)] == best) remap[static_cast<std::size_t>(v)] = next++;

    std::set<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) {
        if (remap[static_cast<std::size_t>(v)] < 0) continue;
        for (int u : g.neighbors(v))
            if (u > v && remap[static_cast<std::size_t>(u)] >= 0)
                edges.insert({remap[static_cast<std::size_t>(v)], remap[static_cast<std::size_t>(u)]});
    }
    return Graph(next, edges);
}

struct NetworkReport {
    double n = 0.0;            // node count (real: direct entry may supply e.g. e^3)
    double path_length = 0.0;  // L
    double clustering = 0.0;   // C
    double entropy = 0.0;      // H = C * ln(n) / ln(L)
    double e_gap = 0.0;        // L - e
};

/// Report from explicitly supplied scalars, for reproducing published
/// measurements without the underlying dataset.
inline NetworkReport network_entropy_direct(double L, double C, double n) {
    enscale::detail::require(std::isfinite(n) && n >= 1.0, Errc::parameter_domain,
                             "node count n must be finite and >= 1", "n");
    enscale::detail::require(std::isfinite(C) && C >= 0.0 && C <= 1.0, Errc::parameter_domain,
                             "clustering coefficient C must lie in [0, 1]", "C");
    enscale::detail::require(std::isfinite(L) && L >= 1.0, Errc::parameter_domain,
                             "path length L must be finite and >= 1", "L");
    if (L <= 1.0)
        throw Error(Errc::entropy_undefined,
                    "network entropy is undefined for path length <= 1 (log base must exceed 1)",
                    "L");

    NetworkReport report;
    report.n = n;
    report.path_length = L;
    report.clustering = C;
    report.entropy = C * std::log(n) / std::log(L);
    report.e_gap = L - std::numbers::e;
    return report;
}

/// Full report measured from a graph. With `use_largest_component` the
/// metrics are taken over the largest connected component; otherwise a
/// disconnected input is an error.
inline NetworkReport network_entropy(const Graph& g, bool use_largest_component = false) {
    const Graph* target = &g;
    Graph component;
    if (use_largest_component) {
        component = largest_component(g);
        target = &component;
    }
    const double L = path_length(*target);
    if (L <= 1.0)
        throw Error(Errc::entropy_undefined,
                    "network entropy is undefined for path length <= 1 (log base must exceed 1)",
                    "edges");
    const double C = clustering_coefficient(*target);
    NetworkReport report;
    report.n = static_cast<double>(target->node_count());
    report.path_length = L;
    report.clustering = C;
    report.entropy = C * std::log(report.n) / std::log(L);
    report.e_gap = L - std::numbers::e;
    return report;
}

/// Probability that energy travels at least distance x before the next
/// interaction, e^(-x/l) for mean free path l.
inline double mean_free_path_survival(double x, double l) {
    enscale::detail::require(std::isfinite(x) && x >= 0.0, Errc::parameter_domain,
                             "distance x must be finite and >= 0", "x");
    enscale::detail::require(std::isfinite(l) && l > 0.0, Errc::parameter_domain,
                             "mean free path l must be finite and > 0", "l");
    return std::exp(-x / l);
}

}  // namespace enscale::net
