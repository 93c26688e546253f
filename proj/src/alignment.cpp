#include "htak/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "htak/errors.hpp"

namespace htak {

AffinityMatrix affinity(const DbTable& db, const PrototypeHierarchy& hierarchy, std::size_t level) {
    const std::int32_t depth = hierarchy.depth;
    if (depth < 1 || depth > db.depth_count()) {
        throw ArgumentError("affinity: hierarchy depth " + std::to_string(depth) + " does not fit a table with " +
                            std::to_string(db.depth_count()) + " columns");
    }
    if (level < 1 || level > hierarchy.level_count()) {
        throw ArgumentError("affinity: level " + std::to_string(level) + " outside 1.." +
                            std::to_string(hierarchy.level_count()));
    }
    const PointSet& prototypes = hierarchy.level(level);
    if (prototypes.dim() != static_cast<std::size_t>(depth)) throw ArgumentError("affinity: prototype dimension mismatch");

    AffinityMatrix aff;
    aff.graph_id = db.graph_id();
    aff.key = {level, depth};
    aff.rows = db.vertex_count();
    aff.cols = prototypes.size();
    aff.values.assign(aff.rows * aff.cols, 0.0);
    aff.excluded.assign(aff.rows, 0);
    for (Vertex v = 0; v < aff.rows; ++v) {
        if (!db.valid(v, depth)) {
            aff.excluded[v] = 1;
            continue;
        }
        const auto embedding = db.prefix(v, depth);
        for (std::size_t n = 0; n < aff.cols; ++n) {
            const auto proto = prototypes[n];
            double s = 0.0;
            for (std::size_t d = 0; d < embedding.size(); ++d) {
                const double diff = embedding[d] - proto[d];
                s += diff * diff;
            }
            aff.values[v * aff.cols + n] = std::sqrt(s);
        }
    }
    return aff;
}

AssignmentVector assign(const AffinityMatrix& aff) {
    AssignmentVector out{aff.graph_id, aff.key, aff.cols, std::vector<std::int64_t>(aff.rows, kExcluded)};
    if (aff.cols == 0) return out;
    for (std::size_t r = 0; r < aff.rows; ++r) {
        if (aff.is_excluded(r)) continue;
        std::size_t best = 0;
        for (std::size_t c = 1; c < aff.cols; ++c) {
            if (aff.at(r, c) < aff.at(r, best)) best = c;
        }
        out.assigned[r] = static_cast<std::int64_t>(best);
    }
    return out;
}

std::vector<AssignmentVector> assign_graph(const DbTable& db, std::span<const PrototypeHierarchy> hierarchies) {
    std::vector<AssignmentVector> out;
    for (std::size_t k = 0; k < hierarchies.size(); ++k) {
        const auto& hierarchy = hierarchies[k];
        if (hierarchy.depth != static_cast<std::int32_t>(k + 1)) {
            throw ArgumentError("assign_graph: hierarchies must be ordered by depth 1..K");
        }
        for (std::size_t h = 1; h <= hierarchy.level_count(); ++h) out.push_back(assign(affinity(db, hierarchy, h)));
    }
    return out;
}

FeatureBank::FeatureBank(std::size_t graph_id, std::size_t level_count, std::int32_t depth_count,
                         std::uint64_t fingerprint)
    : graph_id_(graph_id),
      level_count_(level_count),
      depth_count_(depth_count),
      fingerprint_(fingerprint),
      counts_(level_count * static_cast<std::size_t>(std::max(depth_count, 0))) {}

std::size_t FeatureBank::slot(LevelKey key) const {
    if (key.level < 1 || key.level > level_count_ || key.depth < 1 || key.depth > depth_count_) {
        throw ArgumentError("FeatureBank: level (" + std::to_string(key.level) + ", " + std::to_string(key.depth) +
                            ") out of range");
    }
    return static_cast<std::size_t>(key.depth - 1) * level_count_ + (key.level - 1);
}

FeatureBank feature_bank(std::span<const AssignmentVector> assignments, std::uint64_t fingerprint) {
    if (assignments.empty()) throw ArgumentError("feature_bank: no assignments");
    std::size_t levels = 0;
    std::int32_t depths = 0;
    for (const auto& a : assignments) {
        if (a.graph_id != assignments.front().graph_id) throw ArgumentError("feature_bank: assignments of different graphs");
        levels = std::max(levels, a.key.level);
        depths = std::max(depths, a.key.depth);
    }
    if (assignments.size() != levels * static_cast<std::size_t>(depths)) {
        throw ArgumentError("feature_bank: assignments do not cover every (h, k) exactly once");
    }
    FeatureBank bank(assignments.front().graph_id, levels, depths, fingerprint);
    std::vector<std::uint8_t> seen(assignments.size(), 0);
    for (const auto& a : assignments) {
        auto& counts = bank.counts_mut(a.key);
        const std::size_t slot = static_cast<std::size_t>(a.key.depth - 1) * levels + (a.key.level - 1);
        if (seen[slot]++) throw ArgumentError("feature_bank: level assigned twice");
        counts.assign(a.prototype_count, 0);
        for (auto n : a.assigned) {
            if (n == kExcluded) continue;
            ++counts.at(static_cast<std::size_t>(n));
        }
    }
    return bank;
}

std::int64_t BinaryMatrix::sum() const {
    std::int64_t s = 0;
    for (auto v : values) s += v;
    return s;
}

BinaryMatrix correspondence_matrix(const AssignmentVector& a, const AssignmentVector& b) {
    if (!(a.key == b.key) || a.prototype_count != b.prototype_count) {
        throw ArgumentError("correspondence_matrix: assignments belong to different prototype levels");
    }
    BinaryMatrix m{a.assigned.size(), b.assigned.size(), std::vector<std::uint8_t>(a.assigned.size() * b.assigned.size(), 0)};
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (a.assigned[i] == kExcluded) continue;
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (a.assigned[i] == b.assigned[j]) m.values[i * m.cols + j] = 1;
        }
    }
    return m;
}

}  // namespace htak
