#include "htak/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "htak/errors.hpp"

namespace htak {

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges, std::optional<int> label, std::size_t id)
    : id_(id), adjacency_(vertex_count), label_(label) {
    std::vector<Edge> normalized;
    normalized.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count) {
            throw ArgumentError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                ") references a vertex outside [0, " + std::to_string(vertex_count) + ")");
        }
        if (u == v) {
            ++dropped_self_loops_;
            continue;
        }
        normalized.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(normalized.begin(), normalized.end());
    const auto unique_end = std::unique(normalized.begin(), normalized.end());
    dropped_duplicates_ = static_cast<std::size_t>(normalized.end() - unique_end);
    normalized.erase(unique_end, normalized.end());

    for (auto [u, v] : normalized) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
    edge_count_ = normalized.size();
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    const auto& row = adjacency_.at(u);
    return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < adjacency_.size(); ++u) {
        for (Vertex v : adjacency_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

Graph Graph::induced(std::span<const Vertex> members) const {
    std::vector<std::size_t> position(vertex_count(), vertex_count());
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] >= vertex_count()) throw ArgumentError("induced: member outside the graph");
        if (position[members[i]] != vertex_count()) throw ArgumentError("induced: repeated member");
        position[members[i]] = i;
    }
    std::vector<Edge> kept;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (Vertex v : adjacency_[members[i]]) {
            const std::size_t j = position[v];
            if (j != vertex_count() && i < j) kept.emplace_back(i, j);
        }
    }
    return Graph(members.size(), kept, label_, id_);
}

Graph Graph::permuted(std::span<const Vertex> perm) const {
    if (perm.size() != vertex_count()) throw ArgumentError("permuted: permutation size mismatch");
    std::vector<bool> seen(perm.size(), false);
    for (Vertex p : perm) {
        if (p >= perm.size() || seen[p]) throw ArgumentError("permuted: not a permutation");
        seen[p] = true;
    }
    std::vector<Edge> relabeled;
    relabeled.reserve(edge_count_);
    for (auto [u, v] : edges()) relabeled.emplace_back(perm[u], perm[v]);
    return Graph(vertex_count(), relabeled, label_, id_);
}

std::int32_t DistanceRow::eccentricity() const {
    std::int32_t best = 0;
    for (auto d : distances) best = std::max(best, d);
    return best;
}

DistanceRow bfs_distances(const Graph& graph, Vertex source) {
    if (source >= graph.vertex_count()) {
        throw ArgumentError("bfs source " + std::to_string(source) + " outside [0, " +
                            std::to_string(graph.vertex_count()) + ")");
    }
    DistanceRow row{source, std::vector<std::int32_t>(graph.vertex_count(), kUnreachable)};
    std::deque<Vertex> frontier{source};
    row.distances[source] = 0;
    while (!frontier.empty()) {
        const Vertex u = frontier.front();
        frontier.pop_front();
        for (Vertex v : graph.neighbors(u)) {
            if (row.distances[v] == kUnreachable) {
                row.distances[v] = row.distances[u] + 1;
                frontier.push_back(v);
            }
        }
    }
    return row;
}

std::int32_t max_finite_distance(const Graph& graph) {
    std::int32_t best = 0;
    for (Vertex v = 0; v < graph.vertex_count(); ++v) best = std::max(best, bfs_distances(graph, v).eccentricity());
    return best;
}

std::int32_t compute_global_k(std::span<const Graph> graphs, std::optional<std::int32_t> cap) {
    if (graphs.empty()) throw ArgumentError("compute_global_k: empty collection");
    if (cap && *cap < 1) throw ArgumentError("compute_global_k: cap must be at least 1");
    std::int32_t best = 0;
    for (const auto& g : graphs) best = std::max(best, max_finite_distance(g));
    if (best == 0) throw ArgumentError("no finite eccentricity: every graph is edgeless");
    return cap ? std::min(best, *cap) : best;
}

std::int32_t compute_global_k(const GraphCollection& collection, std::optional<std::int32_t> cap) {
    return compute_global_k(collection.graphs(), cap);
}

GraphCollection::GraphCollection(std::string name, std::vector<Graph> graphs, LoadStats stats)
    : name_(std::move(name)), graphs_(std::move(graphs)), stats_(stats) {
    for (std::size_t i = 0; i < graphs_.size(); ++i) graphs_[i].set_id(i);
    global_k_ = compute_global_k(graphs_);
}

bool GraphCollection::has_labels() const {
    return !graphs_.empty() &&
           std::all_of(graphs_.begin(), graphs_.end(), [](const Graph& g) { return g.label().has_value(); });
}

}  // namespace htak
