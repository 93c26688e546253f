#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "htak/kernel.hpp"

namespace htak {

/// Shortest decimal text that reads back to exactly `value`.
[[nodiscard]] std::string format_real(double value);

/// Header row of 1-based graph serials, then one comma-separated row per
/// graph. Unnormalized entries are written as integers.
void write_gram_csv(const GramMatrix& gram, const std::filesystem::path& path, bool normalize = false);

/// LIBSVM precomputed-kernel rows: `<label> 0:<serial> 1:<K(i,1)> ... T:<K(i,T)>`
/// with 1-based serials. Graphs without a label are written with label 0.
void write_svm_precomputed(const GramMatrix& gram, std::span<const std::optional<int>> labels,
                           const std::filesystem::path& path, bool normalize = false);

/// Square real matrix read back from a Gram CSV.
struct DenseMatrix {
    std::size_t size = 0;
    std::vector<double> values;

    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values.at(i * size + j); }
};

[[nodiscard]] DenseMatrix to_dense(const GramMatrix& gram, bool normalize = false);

/// Throws InputError when unreadable and FormatError when rows are ragged,
/// non-numeric, or not square.
[[nodiscard]] DenseMatrix read_gram_csv(const std::filesystem::path& path);

/// One integer label per line (TU graph_labels layout).
[[nodiscard]] std::vector<int> read_labels(const std::filesystem::path& path);

/// `vertex,k,entropy,valid` rows for one table; vertices are 0-based and
/// invalid cells carry `nan`.
void write_db_csv(const DbTable& table, const std::filesystem::path& path);

/// `level,centroid_index,c1,...,ck` rows for one level of one hierarchy.
void write_prototype_csv(const PrototypeHierarchy& hierarchy, std::size_t level, const std::filesystem::path& path);

/// Long-format histograms `graph,k,h,prototype,count`, nonzero counts only.
void write_feature_csv(std::span<const FeatureBank> banks, const std::filesystem::path& path);

/// One line per graph: 0-based fold index.
void write_folds(std::span<const std::size_t> folds, const std::filesystem::path& path);

}  // namespace htak
