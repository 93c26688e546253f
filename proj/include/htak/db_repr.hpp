#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "htak/graph.hpp"

namespace htak {

/// Vertex-induced subgraph on every vertex within `radius` hops of `root`.
/// Vertices keep their relative order (ascending original index).
/// Throws ArgumentError for radius < 1 or an out-of-range root.
[[nodiscard]] Graph expansion_subgraph(const Graph& graph, Vertex root, std::int32_t radius);

/// Shannon entropy (nats) of the stationary distribution of a random walk,
/// p(v) = deg(v) / sum of degrees. An edgeless graph has entropy 0.
[[nodiscard]] double steady_state_entropy(const Graph& graph);

/// Same entropy from a bare degree sequence. The sum runs over the sorted
/// degrees, so the value depends only on the degree multiset and is
/// bit-identical under any vertex relabeling.
[[nodiscard]] double degree_entropy(std::span<const std::size_t> degrees);

/// Depth-based representation of every vertex of one graph.
///
/// Cell (i, k) for 1 <= k <= depth_count() holds the entropy of the k-layer
/// expansion subgraph rooted at vertex i. A cell is valid only when some
/// vertex sits exactly k hops from i; validity is therefore a prefix
/// 1..ecc(i) of each row.
class DbTable {
public:
    DbTable() = default;
    DbTable(std::size_t graph_id, std::size_t vertex_count, std::int32_t depth_count);

    [[nodiscard]] std::size_t graph_id() const noexcept { return graph_id_; }
    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertex_count_; }
    [[nodiscard]] std::int32_t depth_count() const noexcept { return depth_count_; }

    [[nodiscard]] bool valid(Vertex v, std::int32_t depth) const { return valid_[index(v, depth)] != 0; }
    /// Entropy at a valid cell. Reading an invalid cell is a logic error.
    [[nodiscard]] double entropy(Vertex v, std::int32_t depth) const;
    /// First `depth` entropies of a vertex: its depth-dimensional embedding.
    /// Only meaningful when valid(v, depth).
    [[nodiscard]] std::span<const double> prefix(Vertex v, std::int32_t depth) const;

    /// Number of vertices valid at `depth`.
    [[nodiscard]] std::size_t valid_count(std::int32_t depth) const;

    void set(Vertex v, std::int32_t depth, double entropy);

    /// Same shape, same validity mask and bitwise-equal valid cells. The
    /// graph id is not compared.
    friend bool operator==(const DbTable& a, const DbTable& b);

private:
    [[nodiscard]] std::size_t index(Vertex v, std::int32_t depth) const;

    std::size_t graph_id_ = 0;
    std::size_t vertex_count_ = 0;
    std::int32_t depth_count_ = 0;
    std::vector<double> entropies_;
    std::vector<std::uint8_t> valid_;
};

/// Builds the table for depths 1..max_depth with one BFS per vertex.
[[nodiscard]] DbTable db_table(const Graph& graph, std::int32_t max_depth);

/// db_table for every graph of a collection, in collection order.
[[nodiscard]] std::vector<DbTable> db_tables(const GraphCollection& collection, std::int32_t max_depth,
                                             std::size_t threads = 0);

}  // namespace htak
