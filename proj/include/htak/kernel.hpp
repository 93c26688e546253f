#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "htak/alignment.hpp"
#include "htak/graph.hpp"

namespace htak {

/// Kernel value from count vectors: sum over levels h <= max_level and all
/// depths of the dot products of the (h, k) histograms. Exact integer arithmetic.
/// Throws ArgumentError when the banks come from different hierarchies.
[[nodiscard]] std::int64_t htak_pair_fast(const FeatureBank& p, const FeatureBank& q,
                                          std::optional<std::size_t> max_level = std::nullopt);

/// Reference evaluation that materializes every correspondence matrix and
/// counts aligned vertex pairs. Quadratic in graph size; for testing.
[[nodiscard]] std::int64_t htak_pair_direct(std::span<const AssignmentVector> p, std::span<const AssignmentVector> q,
                                            std::optional<std::size_t> max_level = std::nullopt);

enum class GramMode { single, sweep };

[[nodiscard]] std::string to_string(GramMode mode);
[[nodiscard]] GramMode parse_gram_mode(const std::string& text);

struct GramMeta {
    std::string dataset;
    std::size_t levels = 0;  // H used for the summation
    std::int32_t depth_count = 0;
    std::int32_t global_k = 0;
    double ratio = 0.0;
    std::uint64_t seed = 0;
    GramMode mode = GramMode::single;
};

/// Symmetric T x T matrix of exact kernel values.
class GramMatrix {
public:
    GramMatrix() = default;
    GramMatrix(std::size_t size, GramMeta meta);

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] std::int64_t at(std::size_t p, std::size_t q) const { return values_.at(p * size_ + q); }
    void set(std::size_t p, std::size_t q, std::int64_t value);
    [[nodiscard]] const GramMeta& meta() const noexcept { return meta_; }
    [[nodiscard]] const std::vector<std::int64_t>& values() const noexcept { return values_; }

    /// Entries as doubles, optionally cosine-normalized
    /// k(p,q) / sqrt(k(p,p) k(q,q)) with 0 where a diagonal entry is 0.
    [[nodiscard]] std::vector<double> to_real(bool normalize = false) const;

private:
    std::size_t size_ = 0;
    std::vector<std::int64_t> values_;
    GramMeta meta_;
};

/// Gram matrix from per-graph feature banks, summing levels 1..max_level.
[[nodiscard]] GramMatrix gram_from_banks(std::span<const FeatureBank> banks, std::size_t max_level, GramMeta meta,
                                         std::size_t threads = 0);

struct HtakParams {
    std::size_t levels = 5;
    double ratio = 0.2;
    std::uint64_t seed = 42;
    std::optional<std::int32_t> max_k;
    std::size_t threads = 0;
    std::size_t max_iter = 100;
};

/// Every intermediate of one kernel computation over a collection.
struct HtakModel {
    std::string dataset;
    HtakParams params;
    std::int32_t global_k = 0;
    std::int32_t depth_count = 0;  // K actually used (global_k, possibly capped)
    std::vector<DbTable> tables;
    std::vector<PrototypeHierarchy> hierarchies;  // hierarchies[k - 1]
    std::uint64_t hierarchy_fingerprint = 0;
    std::vector<std::vector<AssignmentVector>> assignments;  // per graph
    std::vector<FeatureBank> banks;                           // per graph
};

/// Called after each pipeline stage with its name and wall time in seconds.
using StageObserver = std::function<void(const std::string& stage, double seconds)>;

/// Runs embeddings, hierarchies, alignment and histograms. Throws
/// ArgumentError on an empty collection or invalid parameters.
[[nodiscard]] HtakModel fit_model(const GraphCollection& collection, const HtakParams& params,
                                  const StageObserver& observer = {});

/// One Gram per requested H: just params.levels in single mode, 1..levels in
/// sweep mode. Hierarchies are shared across the sweep.
[[nodiscard]] std::vector<GramMatrix> gram_matrices(const HtakModel& model, GramMode mode);

/// Convenience: fit_model followed by gram_matrices.
[[nodiscard]] std::vector<GramMatrix> gram_matrix(const GraphCollection& collection, const HtakParams& params,
                                                  GramMode mode);

}  // namespace htak
