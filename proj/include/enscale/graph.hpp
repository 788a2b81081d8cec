#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "enscale/errors.hpp"

namespace enscale::net {

/// Undirected simple graph over dense node ids 0..n-1. Immutable once built;
/// adjacency lists are sorted and duplicate-free.
class Graph {
public:
    Graph() = default;

    /// Builds from an edge set. Self-loops and duplicates must already have
    /// been removed; ids must lie in [0, node_count).
    Graph(int node_count, const std::set<std::pair<int, int>>& edges)
        : adj_(static_cast<std::size_t>(node_count)), edge_count_(edges.size()) {
        for (const auto& [a, b] : edges) {
            adj_[static_cast<std::size_t>(a)].push_back(b);
            adj_[static_cast<std::size_t>(b)].push_back(a);
        }
        for (auto& neighbors : adj_) std::sort(neighbors.begin(), neighbors.end());
    }

    int node_count() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    bool adjacent(int a, int b) const {
        const auto& na = adj_[static_cast<std::size_t>(a)];
        return std::binary_search(na.begin(), na.end(), b);
    }

private:
    std::vector<std::vector<int>> adj_;
    std::size_t edge_count_ = 0;
};

struct IngestStats {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_dropped = 0;
};

struct IngestResult {
    Graph graph;
    std::vector<std::string> labels;  // dense id -> original label
    IngestStats stats;
};

/// Parses a line-oriented edge-list document: two whitespace-separated node
/// labels per line, lines whose first non-blank character is '#' are
/// comments, blank lines are skipped. Labels are remapped to dense ids in
/// first-appearance order. Self-loops and repeated edges are dropped and
/// counted, never kept.
inline IngestResult ingest_edge_list(std::string_view text) {
    IngestResult result;
    std::unordered_map<std::string, int> id_of;
    std::set<std::pair<int, int>> edges;

    const auto intern = [&](std::string_view label) {
        auto [it, inserted] = id_of.try_emplace(std::string(label),
                                                static_cast<int>(result.labels.size()));
        if (inserted) result.labels.emplace_back(label);
        return it->second;
    };

    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_number;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            const std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            if (i > start) tokens.push_back(line.substr(start, i - start));
        }

        if (tokens.empty()) continue;                 // blank line
        if (tokens.front().front() == '#') continue;  // comment line

        if (tokens.size() != 2)
            throw Error(Errc::parse,
                        "line " + std::to_string(line_number) + ": expected two node labels, got " +
                            std::to_string(tokens.size()),
                        "edges");

        const int a = intern(tokens[0]);
        const int b = intern(tokens[1]);
        if (a == b) {
            ++result.stats.self_loops_dropped;
            continue;
        }
        const auto edge = std::minmax(a, b);
        if (!edges.insert({edge.first, edge.second}).second)
            ++result.stats.duplicate_edges_dropped;
    }

    if (edges.empty())
        throw Error(Errc::empty_graph, "edge-list document contains no edges", "edges");

    result.graph = Graph(static_cast<int>(result.labels.size()), edges);
    return result;
}

}  // namespace enscale::net
