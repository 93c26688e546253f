#include "htak/db_repr.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "htak/errors.hpp"
#include "htak/parallel.hpp"

namespace htak {

Graph expansion_subgraph(const Graph& graph, Vertex root, std::int32_t radius) {
    if (radius < 1) throw ArgumentError("expansion_subgraph: radius must be >= 1, got " + std::to_string(radius));
    const auto row = bfs_distances(graph, root);
    std::vector<Vertex> members;
    for (Vertex v = 0; v < graph.vertex_count(); ++v) {
        if (row.reachable(v) && row.distances[v] <= radius) members.push_back(v);
    }
    return graph.induced(members);
}

double degree_entropy(std::span<const std::size_t> degrees) {
    std::vector<std::size_t> sorted(degrees.begin(), degrees.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t total = 0;
    for (auto d : sorted) total += d;
    if (total == 0) return 0.0;
    const double denom = static_cast<double>(total);
    double h = 0.0;
    for (auto d : sorted) {
        if (d == 0) continue;
        const double p = static_cast<double>(d) / denom;
        h -= p * std::log(p);
    }
    return h;
}

double steady_state_entropy(const Graph& graph) {
    std::vector<std::size_t> degrees(graph.vertex_count());
    for (Vertex v = 0; v < graph.vertex_count(); ++v) degrees[v] = graph.degree(v);
    return degree_entropy(degrees);
}

DbTable::DbTable(std::size_t graph_id, std::size_t vertex_count, std::int32_t depth_count)
    : graph_id_(graph_id),
      vertex_count_(vertex_count),
      depth_count_(depth_count),
      entropies_(vertex_count * static_cast<std::size_t>(std::max(depth_count, 0)),
                 std::numeric_limits<double>::quiet_NaN()),
      valid_(entropies_.size(), 0) {
    if (depth_count < 1) throw ArgumentError("DbTable: depth count must be >= 1");
}

std::size_t DbTable::index(Vertex v, std::int32_t depth) const {
    if (v >= vertex_count_ || depth < 1 || depth > depth_count_) {
        throw ArgumentError("DbTable: cell (" + std::to_string(v) + ", " + std::to_string(depth) + ") out of range");
    }
    return v * static_cast<std::size_t>(depth_count_) + static_cast<std::size_t>(depth - 1);
}

double DbTable::entropy(Vertex v, std::int32_t depth) const {
    const auto i = index(v, depth);
    assert(valid_[i] && "reading an invalid DbTable cell");
    return entropies_[i];
}

std::span<const double> DbTable::prefix(Vertex v, std::int32_t depth) const {
    const auto i = index(v, depth);
    assert(valid_[i] && "prefix of an invalid DbTable cell");
    return std::span<const double>(entropies_).subspan(i - static_cast<std::size_t>(depth - 1),
                                                       static_cast<std::size_t>(depth));
}

std::size_t DbTable::valid_count(std::int32_t depth) const {
    std::size_t n = 0;
    for (Vertex v = 0; v < vertex_count_; ++v) n += valid(v, depth) ? 1 : 0;
    return n;
}

void DbTable::set(Vertex v, std::int32_t depth, double entropy) {
    const auto i = index(v, depth);
    entropies_[i] = entropy;
    valid_[i] = 1;
}

bool operator==(const DbTable& a, const DbTable& b) {
    if (a.vertex_count_ != b.vertex_count_ || a.depth_count_ != b.depth_count_ || a.valid_ != b.valid_) return false;
    for (std::size_t i = 0; i < a.valid_.size(); ++i) {
        if (a.valid_[i] && std::bit_cast<std::uint64_t>(a.entropies_[i]) != std::bit_cast<std::uint64_t>(b.entropies_[i]))
            return false;
    }
    return true;
}

DbTable db_table(const Graph& graph, std::int32_t max_depth) {
    DbTable table(graph.id(), graph.vertex_count(), max_depth);
    const std::size_t n = graph.vertex_count();
    std::vector<std::size_t> inner_degree(n);
    std::vector<std::size_t> member_degrees;
    std::vector<std::vector<Vertex>> shells;

    for (Vertex root = 0; root < n; ++root) {
        const auto row = bfs_distances(graph, root);
        const std::int32_t ecc = row.eccentricity();
        const std::int32_t last = std::min(ecc, max_depth);
        shells.assign(static_cast<std::size_t>(last) + 1, {});
        for (Vertex v = 0; v < n; ++v) {
            if (row.reachable(v) && row.distances[v] <= last) shells[static_cast<std::size_t>(row.distances[v])].push_back(v);
        }

        // Grow the expansion subgraph one shell at a time; inner_degree[v]
        // is v's degree inside the current layer set.
        std::fill(inner_degree.begin(), inner_degree.end(), 0);
        std::size_t member_count = 1;
        for (std::int32_t depth = 1; depth <= last; ++depth) {
            for (Vertex v : shells[static_cast<std::size_t>(depth)]) {
                for (Vertex u : graph.neighbors(v)) {
                    const auto du = row.distances[u];
                    if (du == depth) {
                        ++inner_degree[v];  // u's side is counted when u is processed
                    } else if (du == depth - 1) {
                        ++inner_degree[v];
                        ++inner_degree[u];
                    }
                }
            }
            member_count += shells[static_cast<std::size_t>(depth)].size();
            member_degrees.clear();
            member_degrees.reserve(member_count);
            for (std::int32_t d = 0; d <= depth; ++d) {
                for (Vertex v : shells[static_cast<std::size_t>(d)]) member_degrees.push_back(inner_degree[v]);
            }
            table.set(root, depth, degree_entropy(member_degrees));
        }
    }
    return table;
}

std::vector<DbTable> db_tables(const GraphCollection& collection, std::int32_t max_depth, std::size_t threads) {
    std::vector<DbTable> tables(collection.size());
    parallel_for(
        collection.size(), [&](std::size_t g) { tables[g] = db_table(collection[g], max_depth); }, threads);
    return tables;
}

}  // namespace htak
