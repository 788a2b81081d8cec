#pragma once

// Test-only oracles, deliberately written along different computation paths
// than the library: term-by-term sums instead of closed forms, Floyd-Warshall
// instead of BFS, adjacency-matrix triangle counting instead of sorted-list
// intersection, and textbook normal-equation least squares.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "enscale/graph.hpp"

namespace oracle {

inline bool rel_close(double actual, double expected, double tol) {
    const double scale = std::max(std::fabs(actual), std::fabs(expected));
    if (scale == 0.0) return true;
    return std::fabs(actual - expected) <= tol * scale;
}

inline bool abs_close(double actual, double expected, double tol) {
    return std::fabs(actual - expected) <= tol;
}

/// Term-by-term evaluation of eps*e^((h-1)eps) + eps*e^((h-2)eps) + ... + eps.
inline double brute_geometric_sum(double epsilon, int h) {
    double sum = 0.0;
    for (int j = 1; j <= h; ++j) sum += epsilon * std::exp(static_cast<double>(h - j) * epsilon);
    return sum;
}

inline double brute_mean_energy(double epsilon, int h) {
    return brute_geometric_sum(epsilon, h) / std::exp(static_cast<double>(h) * epsilon);
}

inline constexpr int kUnreachable = 1 << 28;

/// All-pairs shortest paths by Floyd-Warshall over an int distance matrix.
inline std::vector<std::vector<int>> floyd_warshall(const enscale::net::Graph& g) {
    const int n = g.node_count();
    std::vector<std::vector<int>> dist(static_cast<std::size_t>(n),
                                       std::vector<int>(static_cast<std::size_t>(n), kUnreachable));
    for (int v = 0; v < n; ++v) {
        dist[v][v] = 0;
        for (int u : g.neighbors(v)) dist[v][u] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
    return dist;
}

/// Sum of distances over unordered pairs; false if any pair is unreachable.
inline bool fw_pair_sum(const enscale::net::Graph& g, std::uint64_t& sum_out) {
    const auto dist = floyd_warshall(g);
    const int n = g.node_count();
    std::uint64_t sum = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (dist[i][j] >= kUnreachable) return false;
            sum += static_cast<std::uint64_t>(dist[i][j]);
        }
    sum_out = sum;
    return true;
}

/// Clustering by dense-matrix triangle counting, averaging over nodes of
/// degree >= 2.
inline double brute_clustering(const enscale::net::Graph& g) {
    const int n = g.node_count();
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                       std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int v = 0; v < n; ++v)
        for (int u : g.neighbors(v)) adj[v][u] = 1;

    double total = 0.0;
    int eligible = 0;
    for (int v = 0; v < n; ++v) {
        const auto& nv = g.neighbors(v);
        if (nv.size() < 2) continue;
        int pairs = 0;
        int linked = 0;
        for (std::size_t i = 0; i < nv.size(); ++i)
            for (std::size_t j = i + 1; j < nv.size(); ++j) {
                ++pairs;
                if (adj[nv[i]][nv[j]]) ++linked;
            }
        total += static_cast<double>(linked) / static_cast<double>(pairs);
        ++eligible;
    }
    return eligible == 0 ? 0.0 : total / static_cast<double>(eligible);
}

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Normal-equation least squares (n*Sxy - Sx*Sy) / (n*Sxx - Sx^2).
inline OlsFit ols(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    OlsFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

/// Random connected simple graph: a random spanning tree (each node attaches
/// to a uniformly chosen earlier node) plus `extra_edges` random non-edges.
inline enscale::net::Graph random_connected_graph(std::mt19937_64& rng, int n, int extra_edges) {
    std::set<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        const int u = pick(rng);
        edges.insert({std::min(u, v), std::max(u, v)});
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int tries = 0; tries < extra_edges * 8 && extra_edges > 0; ++tries) {
        const int a = pick(rng);
        const int b = pick(rng);
        if (a == b) continue;
        if (edges.insert({std::min(a, b), std::max(a, b)}).second && --extra_edges == 0) break;
    }
    return enscale::net::Graph(n, edges);
}

}  // namespace oracle
