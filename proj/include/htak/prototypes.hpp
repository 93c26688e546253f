#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "htak/db_repr.hpp"

namespace htak {

/// Which vertex a level-0 point came from.
struct VertexRef {
    std::size_t graph_id = 0;
    Vertex vertex = 0;
    friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

/// Dense row-major set of equal-length real vectors.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dim) : dim_(dim) {}
    PointSet(std::size_t dim, std::vector<double> coords);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    [[nodiscard]] bool empty() const noexcept { return coords_.empty(); }
    [[nodiscard]] std::span<const double> operator[](std::size_t i) const {
        return std::span<const double>(coords_).subspan(i * dim_, dim_);
    }
    [[nodiscard]] const std::vector<double>& coords() const noexcept { return coords_; }
    /// Provenance; filled only for level-0 sets.
    [[nodiscard]] const std::vector<VertexRef>& origin() const noexcept { return origin_; }

    void push_back(std::span<const double> point);
    void push_back(std::span<const double> point, VertexRef from);

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
    std::vector<VertexRef> origin_;
};

/// Level-0 points at `depth`: the depth-prefix of every vertex valid at
/// that depth, across all tables. Points are sorted lexicographically by
/// coordinates (ties by origin), so the set does not depend on vertex or
/// graph order up to identical coordinates.
[[nodiscard]] PointSet level0_points(std::span<const DbTable> tables, std::int32_t depth);

struct KmeansOptions {
    std::size_t max_iter = 100;
    double relative_tolerance = 1e-9;
    std::size_t threads = 0;
};

struct KmeansResult {
    PointSet centroids;
    std::vector<std::size_t> assignment;
    /// Sum of squared distances from each point to its assigned centroid.
    double objective = 0.0;
    std::size_t iterations = 0;
    /// Objective after the seeding step and after every Lloyd iteration.
    std::vector<double> objective_trace;
};

/// Lloyd's algorithm from k-means++ seeding driven by `seed`.
///
/// Stops after max_iter iterations, when the assignment stops changing, or
/// when the relative objective decrease falls below the tolerance. A
/// cluster left empty is re-seeded at the point farthest from its own
/// centroid. Assignment ties go to the lowest centroid index.
/// Throws ArgumentError when kappa is 0 or exceeds the point count.
[[nodiscard]] KmeansResult kmeans(const PointSet& points, std::size_t kappa, std::uint64_t seed,
                                  const KmeansOptions& options = {});

/// Objective of an explicit assignment against explicit centroids.
[[nodiscard]] double kmeans_objective(const PointSet& points, const PointSet& centroids,
                                      std::span<const std::size_t> assignment);

/// max(1, round-half-up(ratio * previous)).
[[nodiscard]] std::size_t next_level_size(std::size_t previous, double ratio);

/// Stable per-(seed, depth, level) seed.
[[nodiscard]] std::uint64_t level_seed(std::uint64_t seed, std::int32_t depth, std::size_t level);

/// H levels of k-means centroids for one depth; level h (1-based) is fit to
/// level h-1, with level 0 the raw vertex embeddings.
struct PrototypeHierarchy {
    std::int32_t depth = 0;
    double ratio = 0.2;
    std::uint64_t seed = 0;
    std::vector<PointSet> levels;  // levels[h - 1] holds level h

    [[nodiscard]] std::size_t level_count() const noexcept { return levels.size(); }
    [[nodiscard]] const PointSet& level(std::size_t h) const { return levels.at(h - 1); }
};

/// Throws ArgumentError for an empty level0, H < 1, or ratio outside (0, 1).
[[nodiscard]] PrototypeHierarchy build_hierarchy(const PointSet& level0, std::size_t levels, double ratio,
                                                 std::uint64_t seed, std::int32_t depth = 0,
                                                 const KmeansOptions& options = {});

/// Hash of every centroid coordinate and level size; two runs that produce
/// identical hierarchies produce identical fingerprints.
[[nodiscard]] std::uint64_t fingerprint(std::span<const PrototypeHierarchy> hierarchies);

}  // namespace htak
