#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "htak/export.hpp"

namespace htak {

inline constexpr double kPsdTolerance = 1e-8;

struct PsdReport {
    std::size_t size = 0;
    bool symmetric = true;
    std::size_t asymmetric_pairs = 0;
    double min_eigenvalue = 0.0;
    double max_diagonal = 0.0;
    std::size_t cauchy_schwarz_violations = 0;

    /// min eigenvalue >= -tolerance * max(max diagonal, 0).
    [[nodiscard]] bool psd(double tolerance = kPsdTolerance) const;
    [[nodiscard]] bool ok(double tolerance = kPsdTolerance) const { return symmetric && psd(tolerance); }
};

/// Symmetry (exact), smallest eigenvalue of the symmetric part, and count of
/// pairs with K(p,q)^2 > K(p,p) K(q,q).
[[nodiscard]] PsdReport check_gram(const DenseMatrix& gram);

/// Stratified assignment of items to `folds` folds. Within each class the
/// items are shuffled with `seed` and dealt round-robin.
/// Throws ArgumentError when folds < 2 or folds exceeds the smallest class.
[[nodiscard]] std::vector<std::size_t> stratified_folds(std::span<const int> labels, std::size_t folds,
                                                        std::uint64_t seed);

struct CvResult {
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  // sample standard deviation across folds
    std::vector<double> fold_accuracy;
    std::vector<std::size_t> folds;
};

/// 1-nearest-neighbour cross-validation in the kernel-induced distance
/// d(p,q)^2 = K(p,p) + K(q,q) - 2 K(p,q); ties go to the lowest index.
[[nodiscard]] CvResult knn_cv(const DenseMatrix& gram, std::span<const int> labels, std::size_t folds,
                              std::uint64_t seed);

}  // namespace htak
