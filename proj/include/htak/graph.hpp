#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace htak {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph with sorted adjacency lists and an optional class label.
///
/// Construction normalizes the edge list: self-loops and repeated edges are
/// dropped, and the number of each is kept so loaders can report them.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t vertex_count, std::span<const Edge> edges, std::optional<int> label = std::nullopt,
          std::size_t id = 0);

    [[nodiscard]] std::size_t id() const noexcept { return id_; }
    void set_id(std::size_t id) noexcept { id_ = id; }

    [[nodiscard]] std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }
    [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
    [[nodiscard]] std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
    [[nodiscard]] bool has_edge(Vertex u, Vertex v) const;

    [[nodiscard]] const std::optional<int>& label() const noexcept { return label_; }
    void set_label(std::optional<int> label) noexcept { label_ = label; }

    /// Each undirected edge once, as (u, v) with u < v, in lexicographic order.
    [[nodiscard]] std::vector<Edge> edges() const;

    [[nodiscard]] std::size_t dropped_self_loops() const noexcept { return dropped_self_loops_; }
    [[nodiscard]] std::size_t dropped_duplicates() const noexcept { return dropped_duplicates_; }

    /// Vertex-induced subgraph on `members` (any order, no repeats); vertex
    /// members[i] becomes vertex i of the result.
    [[nodiscard]] Graph induced(std::span<const Vertex> members) const;

    /// Relabels vertices: vertex v of this graph becomes perm[v].
    [[nodiscard]] Graph permuted(std::span<const Vertex> perm) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.adjacency_ == b.adjacency_ && a.label_ == b.label_;
    }

private:
    std::size_t id_ = 0;
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
    std::optional<int> label_;
    std::size_t dropped_self_loops_ = 0;
    std::size_t dropped_duplicates_ = 0;
};

/// Hop distance with an explicit unreachable marker.
inline constexpr std::int32_t kUnreachable = -1;

struct DistanceRow {
    Vertex source = 0;
    std::vector<std::int32_t> distances;

    [[nodiscard]] bool reachable(Vertex v) const { return distances.at(v) != kUnreachable; }
    /// Largest finite distance from the source (0 for an isolated source).
    [[nodiscard]] std::int32_t eccentricity() const;
};

/// Breadth-first hop distances from `source`. Throws ArgumentError when
/// the source is out of range.
[[nodiscard]] DistanceRow bfs_distances(const Graph& graph, Vertex source);

/// Largest finite shortest-path distance between any two vertices of `graph`.
[[nodiscard]] std::int32_t max_finite_distance(const Graph& graph);

struct LoadStats {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_dropped = 0;
};

/// An ordered set of graphs sharing one maximum expansion depth K.
///
/// Graph ids are rewritten to 0..T-1 in list order and global_k is always
/// computed from the graphs (see compute_global_k).
class GraphCollection {
public:
    GraphCollection(std::string name, std::vector<Graph> graphs, LoadStats stats = {});

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::span<const Graph> graphs() const noexcept { return graphs_; }
    [[nodiscard]] const Graph& operator[](std::size_t i) const { return graphs_.at(i); }
    [[nodiscard]] std::size_t size() const noexcept { return graphs_.size(); }
    [[nodiscard]] bool empty() const noexcept { return graphs_.empty(); }
    [[nodiscard]] std::int32_t global_k() const noexcept { return global_k_; }
    [[nodiscard]] const LoadStats& load_stats() const noexcept { return stats_; }
    [[nodiscard]] bool has_labels() const;

private:
    std::string name_;
    std::vector<Graph> graphs_;
    LoadStats stats_;
    std::int32_t global_k_ = 0;
};

/// Maximum finite BFS distance over every graph, optionally clamped to
/// `cap`. Throws ArgumentError on an empty list or when no graph has an edge.
[[nodiscard]] std::int32_t compute_global_k(std::span<const Graph> graphs,
                                            std::optional<std::int32_t> cap = std::nullopt);
[[nodiscard]] std::int32_t compute_global_k(const GraphCollection& collection,
                                            std::optional<std::int32_t> cap = std::nullopt);

}  // namespace htak
