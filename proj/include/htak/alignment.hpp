#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "htak/db_repr.hpp"
#include "htak/prototypes.hpp"

namespace htak {

/// A (level h, depth k) slot of the prototype family; both are 1-based.
struct LevelKey {
    std::size_t level = 0;
    std::int32_t depth = 0;
    friend bool operator==(const LevelKey&, const LevelKey&) = default;
};

/// Euclidean distances from each vertex embedding to each level-h prototype.
/// Rows of vertices without a depth-k embedding are excluded and hold no data.
struct AffinityMatrix {
    std::size_t graph_id = 0;
    LevelKey key;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;        // rows x cols, row-major
    std::vector<std::uint8_t> excluded;  // per row

    [[nodiscard]] double at(std::size_t row, std::size_t col) const { return values.at(row * cols + col); }
    [[nodiscard]] bool is_excluded(std::size_t row) const { return excluded.at(row) != 0; }
};

/// Throws ArgumentError when the hierarchy depth exceeds the table or h is
/// outside 1..H.
[[nodiscard]] AffinityMatrix affinity(const DbTable& db, const PrototypeHierarchy& hierarchy, std::size_t level);

inline constexpr std::int64_t kExcluded = -1;

/// Nearest prototype per vertex, or kExcluded.
struct AssignmentVector {
    std::size_t graph_id = 0;
    LevelKey key;
    std::size_t prototype_count = 0;
    std::vector<std::int64_t> assigned;

    friend bool operator==(const AssignmentVector&, const AssignmentVector&) = default;
};

/// Row-wise argmin with the lowest prototype index winning ties.
[[nodiscard]] AssignmentVector assign(const AffinityMatrix& aff);

/// Assignments of one graph for every level 1..H of every depth 1..K.
/// hierarchies[k - 1] must be the depth-k hierarchy.
[[nodiscard]] std::vector<AssignmentVector> assign_graph(const DbTable& db,
                                                         std::span<const PrototypeHierarchy> hierarchies);

/// Per-graph histograms for every (h, k): how many vertices align to each prototype.
class FeatureBank {
public:
    FeatureBank() = default;
    FeatureBank(std::size_t graph_id, std::size_t level_count, std::int32_t depth_count, std::uint64_t fingerprint);

    [[nodiscard]] std::size_t graph_id() const noexcept { return graph_id_; }
    [[nodiscard]] std::size_t level_count() const noexcept { return level_count_; }
    [[nodiscard]] std::int32_t depth_count() const noexcept { return depth_count_; }
    [[nodiscard]] std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    [[nodiscard]] std::span<const std::int64_t> counts(LevelKey key) const { return counts_.at(slot(key)); }
    [[nodiscard]] std::vector<std::int64_t>& counts_mut(LevelKey key) { return counts_.at(slot(key)); }

    friend bool operator==(const FeatureBank& a, const FeatureBank& b) {
        return a.level_count_ == b.level_count_ && a.depth_count_ == b.depth_count_ &&
               a.fingerprint_ == b.fingerprint_ && a.counts_ == b.counts_;
    }

private:
    [[nodiscard]] std::size_t slot(LevelKey key) const;

    std::size_t graph_id_ = 0;
    std::size_t level_count_ = 0;
    std::int32_t depth_count_ = 0;
    std::uint64_t fingerprint_ = 0;
    std::vector<std::vector<std::int64_t>> counts_;
};

/// Histograms from one graph's assignments; every (h, k) in 1..H x 1..K
/// must be covered exactly once. Throws ArgumentError otherwise.
[[nodiscard]] FeatureBank feature_bank(std::span<const AssignmentVector> assignments, std::uint64_t fingerprint = 0);

/// Dense 0/1 matrix; test and diagnostic use only.
struct BinaryMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> values;

    [[nodiscard]] bool at(std::size_t r, std::size_t c) const { return values.at(r * cols + c) != 0; }
    [[nodiscard]] std::int64_t sum() const;
};

/// Entry (i, j) is 1 when vertex i of a and vertex j of b are both valid and
/// share a prototype. Throws ArgumentError when the level keys differ.
[[nodiscard]] BinaryMatrix correspondence_matrix(const AssignmentVector& a, const AssignmentVector& b);

}  // namespace htak
