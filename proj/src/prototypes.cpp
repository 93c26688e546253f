#include "htak/prototypes.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <tuple>

#include "htak/errors.hpp"
#include "htak/parallel.hpp"

namespace htak {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

/// Uniform double in [0, 1) from the top 53 bits; unlike
/// std::uniform_real_distribution this is identical on every standard library.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::size_t nearest(std::span<const double> point, const PointSet& centroids) {
    std::size_t best = 0;
    double best_d = squared_distance(point, centroids[0]);
    for (std::size_t c = 1; c < centroids.size(); ++c) {
        const double d = squared_distance(point, centroids[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

std::vector<std::size_t> assign_all(const PointSet& points, const PointSet& centroids, std::size_t threads) {
    std::vector<std::size_t> out(points.size());
    parallel_for(
        points.size(), [&](std::size_t i) { out[i] = nearest(points[i], centroids); }, threads);
    return out;
}

PointSet seed_plus_plus(const PointSet& points, std::size_t kappa, std::mt19937_64& rng, std::size_t threads) {
    const std::size_t n = points.size();
    PointSet centers(points.dim());
    auto pick_uniform = [&] { return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n))); };

    std::size_t first = pick_uniform();
    centers.push_back(points[first]);
    std::vector<double> nearest_sq(n);
    parallel_for(
        n, [&](std::size_t i) { nearest_sq[i] = squared_distance(points[i], points[first]); }, threads);

    while (centers.size() < kappa) {
        double total = 0.0;
        for (double d : nearest_sq) total += d;
        std::size_t chosen = n;
        if (total > 0.0) {
            const double target = uniform01(rng) * total;
            double running = 0.0;
            std::size_t last_positive = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (nearest_sq[i] <= 0.0) continue;
                last_positive = i;
                running += nearest_sq[i];
                if (running > target) {
                    chosen = i;
                    break;
                }
            }
            if (chosen == n) chosen = last_positive;
        } else {
            // Every point coincides with a chosen center.
            chosen = pick_uniform();
        }
        centers.push_back(points[chosen]);
        const auto added = centers[centers.size() - 1];
        parallel_for(
            n, [&](std::size_t i) { nearest_sq[i] = std::min(nearest_sq[i], squared_distance(points[i], added)); },
            threads);
    }
    return centers;
}

/// Cluster means in point order; clusters without members keep their
/// previous centroid. Returns the indices of the empty clusters.
std::vector<std::size_t> update_means(const PointSet& points, std::span<const std::size_t> assignment,
                                      std::vector<double>& centroid_coords, std::size_t kappa) {
    const std::size_t dim = points.dim();
    std::vector<double> sums(kappa * dim, 0.0);
    std::vector<std::size_t> counts(kappa, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points[i];
        double* s = sums.data() + assignment[i] * dim;
        for (std::size_t d = 0; d < dim; ++d) s[d] += p[d];
        ++counts[assignment[i]];
    }
    std::vector<std::size_t> empty;
    for (std::size_t c = 0; c < kappa; ++c) {
        if (counts[c] == 0) {
            empty.push_back(c);
            continue;
        }
        for (std::size_t d = 0; d < dim; ++d) {
            centroid_coords[c * dim + d] = sums[c * dim + d] / static_cast<double>(counts[c]);
        }
    }
    return empty;
}

}  // namespace

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw ArgumentError("PointSet: dimension must be positive");
    if (coords_.size() % dim_ != 0) throw ArgumentError("PointSet: coordinate count is not a multiple of dim");
}

void PointSet::push_back(std::span<const double> point) {
    if (point.size() != dim_) throw ArgumentError("PointSet: point has the wrong dimension");
    if (!origin_.empty()) throw ArgumentError("PointSet: mixing points with and without provenance");
    coords_.insert(coords_.end(), point.begin(), point.end());
}

void PointSet::push_back(std::span<const double> point, VertexRef from) {
    if (point.size() != dim_) throw ArgumentError("PointSet: point has the wrong dimension");
    if (origin_.size() != size()) throw ArgumentError("PointSet: mixing points with and without provenance");
    coords_.insert(coords_.end(), point.begin(), point.end());
    origin_.push_back(from);
}

PointSet level0_points(std::span<const DbTable> tables, std::int32_t depth) {
    if (depth < 1) throw ArgumentError("level0_points: depth must be >= 1");
    struct Entry {
        std::span<const double> coords;
        VertexRef origin;
    };
    std::vector<Entry> entries;
    for (const auto& table : tables) {
        if (depth > table.depth_count()) throw ArgumentError("level0_points: depth exceeds DbTable columns");
        for (Vertex v = 0; v < table.vertex_count(); ++v) {
            if (table.valid(v, depth)) entries.push_back({table.prefix(v, depth), {table.graph_id(), v}});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (!std::equal(a.coords.begin(), a.coords.end(), b.coords.begin())) {
            return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
        }
        return std::tie(a.origin.graph_id, a.origin.vertex) < std::tie(b.origin.graph_id, b.origin.vertex);
    });
    PointSet out(static_cast<std::size_t>(depth));
    for (const auto& e : entries) out.push_back(e.coords, e.origin);
    return out;
}

double kmeans_objective(const PointSet& points, const PointSet& centroids, std::span<const std::size_t> assignment) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) total += squared_distance(points[i], centroids[assignment[i]]);
    return total;
}

KmeansResult kmeans(const PointSet& points, std::size_t kappa, std::uint64_t seed, const KmeansOptions& options) {
    if (kappa == 0) throw ArgumentError("kmeans: kappa must be positive");
    if (points.empty()) throw ArgumentError("kmeans: no points");
    if (kappa > points.size()) {
        throw ArgumentError("kmeans: kappa " + std::to_string(kappa) + " exceeds point count " +
                            std::to_string(points.size()));
    }
    const std::size_t dim = points.dim();
    std::mt19937_64 rng(seed);

    KmeansResult result;
    PointSet centroids = seed_plus_plus(points, kappa, rng, options.threads);
    std::vector<std::size_t> assignment = assign_all(points, centroids, options.threads);
    double objective = kmeans_objective(points, centroids, assignment);
    result.objective_trace.push_back(objective);

    std::vector<double> coords = centroids.coords();
    bool changed = false;
    while (result.iterations < options.max_iter) {
        const auto empty = update_means(points, assignment, coords, kappa);
        if (!empty.empty()) {
            // Farthest points from their own (updated) centroid, distinct,
            // largest distance first and lowest index on ties.
            std::vector<double> spread(points.size());
            for (std::size_t i = 0; i < points.size(); ++i) {
                spread[i] = squared_distance(points[i], std::span<const double>(coords).subspan(assignment[i] * dim, dim));
            }
            std::vector<std::size_t> order(points.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            const std::size_t take = std::min(empty.size(), order.size());
            std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                              [&](std::size_t a, std::size_t b) {
                                  return spread[a] != spread[b] ? spread[a] > spread[b] : a < b;
                              });
            for (std::size_t e = 0; e < take; ++e) {
                const auto p = points[order[e]];
                std::copy(p.begin(), p.end(), coords.begin() + static_cast<std::ptrdiff_t>(empty[e] * dim));
            }
        }
        centroids = PointSet(dim, coords);
        auto next = assign_all(points, centroids, options.threads);
        const double next_objective = kmeans_objective(points, centroids, next);
        ++result.iterations;
        assert(next_objective <= objective + 1e-12 * std::max(1.0, objective) && "k-means objective increased");
        result.objective_trace.push_back(next_objective);

        changed = next != assignment;
        assignment = std::move(next);
        const double decrease = objective > 0.0 ? (objective - next_objective) / objective : 0.0;
        objective = next_objective;
        if (!changed || decrease < options.relative_tolerance) break;
    }

    if (changed) {
        // Leave every non-empty centroid at the mean of its final cluster.
        update_means(points, assignment, coords, kappa);
        centroids = PointSet(dim, coords);
        const double polished = kmeans_objective(points, centroids, assignment);
        assert(polished <= objective + 1e-12 * std::max(1.0, objective) && "k-means objective increased");
        objective = polished;
        result.objective_trace.push_back(objective);
    }

    result.centroids = std::move(centroids);
    result.assignment = std::move(assignment);
    result.objective = objective;
    return result;
}

std::size_t next_level_size(std::size_t previous, double ratio) {
    const auto rounded = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(previous) + 0.5));
    return std::max<std::size_t>(1, rounded);
}

std::uint64_t level_seed(std::uint64_t seed, std::int32_t depth, std::size_t level) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ static_cast<std::uint64_t>(depth));
    return splitmix64(s ^ (static_cast<std::uint64_t>(level) << 32));
}

PrototypeHierarchy build_hierarchy(const PointSet& level0, std::size_t levels, double ratio, std::uint64_t seed,
                                   std::int32_t depth, const KmeansOptions& options) {
    if (level0.empty()) throw ArgumentError("build_hierarchy: level-0 point set is empty");
    if (levels < 1) throw ArgumentError("build_hierarchy: need at least one level");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ArgumentError("build_hierarchy: ratio must lie in (0, 1)");

    PrototypeHierarchy hierarchy{depth, ratio, seed, {}};
    hierarchy.levels.reserve(levels);
    const PointSet* previous = &level0;
    for (std::size_t h = 1; h <= levels; ++h) {
        const std::size_t kappa = next_level_size(previous->size(), ratio);
        auto fit = kmeans(*previous, kappa, level_seed(seed, depth, h), options);
        hierarchy.levels.push_back(std::move(fit.centroids));
        previous = &hierarchy.levels.back();
    }
    return hierarchy;
}

std::uint64_t fingerprint(std::span<const PrototypeHierarchy> hierarchies) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t value) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (value >> (8 * byte)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(hierarchies.size());
    for (const auto& hierarchy : hierarchies) {
        mix(static_cast<std::uint64_t>(hierarchy.depth));
        mix(hierarchy.levels.size());
        for (const auto& level : hierarchy.levels) {
            mix(level.size());
            for (double c : level.coords()) mix(std::bit_cast<std::uint64_t>(c));
        }
    }
    return h;
}

}  // namespace htak
