#include "htak/evaluation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "htak/errors.hpp"

namespace htak {

bool PsdReport::psd(double tolerance) const {
    return min_eigenvalue >= -tolerance * std::max(max_diagonal, 0.0);
}

PsdReport check_gram(const DenseMatrix& gram) {
    const std::size_t n = gram.size;
    PsdReport report;
    report.size = n;
    if (n == 0) return report;

    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    report.max_diagonal = gram.at(0, 0);
    for (std::size_t i = 0; i < n; ++i) {
        report.max_diagonal = std::max(report.max_diagonal, gram.at(i, i));
        for (std::size_t j = 0; j < n; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = gram.at(i, j);
            if (j > i) {
                if (gram.at(i, j) != gram.at(j, i)) ++report.asymmetric_pairs;
                const double lhs = gram.at(i, j) * gram.at(i, j);
                const double rhs = gram.at(i, i) * gram.at(j, j);
                if (lhs > rhs * (1.0 + 1e-12)) ++report.cauchy_schwarz_violations;
            }
        }
    }
    report.symmetric = report.asymmetric_pairs == 0;
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
    return report;
}

std::vector<std::size_t> stratified_folds(std::span<const int> labels, std::size_t folds, std::uint64_t seed) {
    if (folds < 2) throw ArgumentError("fold count must be at least 2");
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
    if (by_class.empty()) throw ArgumentError("no labels");
    std::size_t smallest = labels.size();
    for (const auto& [label, members] : by_class) smallest = std::min(smallest, members.size());
    if (folds > smallest) {
        throw ArgumentError("fold count " + std::to_string(folds) + " exceeds the smallest class size " +
                            std::to_string(smallest));
    }

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> assignment(labels.size(), 0);
    std::size_t offset = 0;
    for (auto& [label, members] : by_class) {
        for (std::size_t i = members.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng() % i);
            std::swap(members[i - 1], members[j]);
        }
        for (std::size_t pos = 0; pos < members.size(); ++pos) assignment[members[pos]] = (offset + pos) % folds;
        offset += members.size();
    }
    return assignment;
}

CvResult knn_cv(const DenseMatrix& gram, std::span<const int> labels, std::size_t folds, std::uint64_t seed) {
    if (labels.size() != gram.size) {
        throw ArgumentError("label count " + std::to_string(labels.size()) + " differs from Gram size " +
                            std::to_string(gram.size));
    }
    CvResult result;
    result.folds = stratified_folds(labels, folds, seed);
    const std::size_t n = gram.size;
    for (std::size_t f = 0; f < folds; ++f) {
        std::size_t correct = 0;
        std::size_t tested = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (result.folds[i] != f) continue;
            ++tested;
            std::size_t best = n;
            double best_d = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (result.folds[j] == f) continue;
                const double d = gram.at(i, i) + gram.at(j, j) - 2.0 * gram.at(i, j);
                if (best == n || d < best_d) {
                    best = j;
                    best_d = d;
                }
            }
            if (best != n && labels[best] == labels[i]) ++correct;
        }
        result.fold_accuracy.push_back(tested ? static_cast<double>(correct) / static_cast<double>(tested) : 0.0);
    }
    double sum = 0.0;
    for (double a : result.fold_accuracy) sum += a;
    result.mean_accuracy = sum / static_cast<double>(folds);
    double sq = 0.0;
    for (double a : result.fold_accuracy) sq += (a - result.mean_accuracy) * (a - result.mean_accuracy);
    result.std_accuracy = std::sqrt(sq / static_cast<double>(folds - 1));
    return result;
}

}  // namespace htak
