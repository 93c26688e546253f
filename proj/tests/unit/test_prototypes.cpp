#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "graphs.hpp"
#include "htak/errors.hpp"
#include "htak/prototypes.hpp"
#include "partition_oracle.hpp"

using namespace htak;
using namespace htak::testing;

namespace {

PointSet random_points(std::uint64_t seed, std::size_t n, std::size_t dim) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    PointSet p(dim);
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& c : x) c = u(rng);
        p.push_back(x);
    }
    return p;
}

void check_bounding_box(const PointSet& input, const PointSet& centroids) {
    for (std::size_t d = 0; d < input.dim(); ++d) {
        double lo = input[0][d], hi = input[0][d];
        for (std::size_t i = 0; i < input.size(); ++i) {
            lo = std::min(lo, input[i][d]);
            hi = std::max(hi, input[i][d]);
        }
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            CHECK(centroids[c][d] >= lo - 1e-12);
            CHECK(centroids[c][d] <= hi + 1e-12);
        }
    }
}

}  // namespace

TEST_SUITE("prototypes") {

TEST_CASE("kmeans on identical points") {
    PointSet p(2, {1.5, -2.0, 1.5, -2.0, 1.5, -2.0, 1.5, -2.0});
    const auto r = kmeans(p, 1, 7);
    CHECK(r.objective == 0.0);
    CHECK(r.centroids[0][0] == 1.5);
    CHECK(r.centroids[0][1] == -2.0);
}

TEST_CASE("kmeans on two separated pairs") {
    PointSet p(2, {0, 0, 0, 1, 10, 0, 10, 1});
    CHECK(best_two_partition(p) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto r = kmeans(p, 2, seed);
        CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
        std::vector<std::pair<double, double>> c{{r.centroids[0][0], r.centroids[0][1]},
                                                 {r.centroids[1][0], r.centroids[1][1]}};
        std::sort(c.begin(), c.end());
        CHECK(c[0] == std::pair{0.0, 0.5});
        CHECK(c[1] == std::pair{10.0, 0.5});
    }
}

TEST_CASE("kappa equal to point count gives zero objective") {
    const auto p = random_points(3, 9, 3);
    const auto r = kmeans(p, 9, 1);
    CHECK(r.objective == 0.0);
    std::vector<std::size_t> seen = r.assignment;
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == i);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t d = 0; d < 3; ++d) CHECK(r.centroids[r.assignment[i]][d] == p[i][d]);
}

TEST_CASE("kmeans argument errors") {
    const auto p = random_points(4, 5, 2);
    CHECK_THROWS_AS((void)kmeans(p, 0, 1), ArgumentError);
    CHECK_THROWS_AS((void)kmeans(p, 6, 1), ArgumentError);
    CHECK_THROWS_AS((void)kmeans(PointSet(2), 1, 1), ArgumentError);
}

TEST_CASE("kmeans result invariants") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = random_points(100 + seed, 40 + seed, 1 + seed % 4);
        const std::size_t kappa = 1 + seed % 7;
        const auto r = kmeans(p, kappa, seed);
        REQUIRE(r.assignment.size() == p.size());
        for (auto a : r.assignment) CHECK(a < kappa);
        CHECK(r.objective == kmeans_objective(p, r.centroids, r.assignment));
        for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
            CHECK(r.objective_trace[i] <= r.objective_trace[i - 1] * (1.0 + 1e-12));
        // each point sits at its nearest centroid, lowest index on ties
        for (std::size_t i = 0; i < p.size(); ++i) {
            std::size_t best = 0;
            double best_d = 0.0;
            for (std::size_t c = 0; c < kappa; ++c) {
                double dd = 0.0;
                for (std::size_t d = 0; d < p.dim(); ++d) dd += (p[i][d] - r.centroids[c][d]) * (p[i][d] - r.centroids[c][d]);
                if (c == 0 || dd < best_d) {
                    best = c;
                    best_d = dd;
                }
            }
            CHECK(r.assignment[i] == best);
        }
        check_bounding_box(p, r.centroids);
    }
}

TEST_CASE("kmeans is deterministic and thread-count independent") {
    const auto p = random_points(55, 500, 3);
    KmeansOptions one;
    one.threads = 1;
    KmeansOptions four;
    four.threads = 4;
    const auto a = kmeans(p, 12, 99, one);
    const auto b = kmeans(p, 12, 99, four);
    const auto c = kmeans(p, 12, 99, one);
    CHECK(a.centroids == b.centroids);
    CHECK(a.centroids == c.centroids);
    CHECK(a.assignment == b.assignment);
}

TEST_CASE("kmeans against the exhaustive two-partition optimum") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto p = random_points(200 + seed, 12, 2);
        const double oracle = best_two_partition(p);
        const auto r = kmeans(p, 2, seed);
        CHECK(r.objective >= oracle * (1.0 - 1e-12));
    }
}

TEST_CASE("level sizes") {
    CHECK(next_level_size(100, 0.2) == 20);
    CHECK(next_level_size(20, 0.2) == 4);
    CHECK(next_level_size(4, 0.2) == 1);
    CHECK(next_level_size(1, 0.2) == 1);
    CHECK(next_level_size(5, 0.5) == 3);
    CHECK(next_level_size(2, 0.1) == 1);

    const auto p = random_points(8, 100, 2);
    const auto h = build_hierarchy(p, 5, 0.2, 42);
    REQUIRE(h.level_count() == 5);
    const std::vector<std::size_t> expected{20, 4, 1, 1, 1};
    for (std::size_t l = 1; l <= 5; ++l) {
        CHECK(h.level(l).size() == expected[l - 1]);
        check_bounding_box(l == 1 ? p : h.level(l - 1), h.level(l));
    }
}

TEST_CASE("hierarchy over a single point") {
    PointSet p(2, {3.0, 4.0});
    const auto h = build_hierarchy(p, 3, 0.2, 1);
    for (std::size_t l = 1; l <= 3; ++l) {
        REQUIRE(h.level(l).size() == 1);
        CHECK(h.level(l)[0][0] == 3.0);
        CHECK(h.level(l)[0][1] == 4.0);
    }
}

TEST_CASE("ten collinear points") {
    PointSet p(1);
    for (int i = 0; i < 10; ++i) {
        const double x = i;
        p.push_back(std::span<const double>(&x, 1));
    }
    // optimum splits 0..4 | 5..9: 2 * (4+1+0+1+4) = 20
    const double oracle = best_two_partition(p);
    CHECK(oracle == doctest::Approx(20.0).epsilon(1e-12));
    // a single seed may stop at a Lloyd fixed point; the best restart finds the optimum
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto h = build_hierarchy(p, 1, 0.2, seed);
        REQUIRE(h.level(1).size() == 2);
        std::vector<std::size_t> assignment;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double d0 = std::abs(p[i][0] - h.level(1)[0][0]);
            const double d1 = std::abs(p[i][0] - h.level(1)[1][0]);
            assignment.push_back(d1 < d0 ? 1 : 0);
        }
        const double objective = kmeans_objective(p, h.level(1), assignment);
        CHECK(objective >= oracle * (1.0 - 1e-12));
        best = std::min(best, objective);
    }
    CHECK(best == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("hierarchy argument errors") {
    const auto p = random_points(9, 10, 2);
    CHECK_THROWS_AS((void)build_hierarchy(PointSet(2), 2, 0.2, 1), ArgumentError);
    CHECK_THROWS_AS((void)build_hierarchy(p, 0, 0.2, 1), ArgumentError);
    CHECK_THROWS_AS((void)build_hierarchy(p, 2, 0.0, 1), ArgumentError);
    CHECK_THROWS_AS((void)build_hierarchy(p, 2, 1.0, 1), ArgumentError);
}

TEST_CASE("hierarchy determinism and fingerprint") {
    const auto p = random_points(10, 300, 2);
    const auto a = build_hierarchy(p, 4, 0.2, 5, 2);
    const auto b = build_hierarchy(p, 4, 0.2, 5, 2);
    CHECK(a.levels == b.levels);
    const std::vector<PrototypeHierarchy> va{a}, vb{b};
    CHECK(fingerprint(va) == fingerprint(vb));
    const std::vector<PrototypeHierarchy> vc{build_hierarchy(p, 4, 0.2, 6, 2)};
    CHECK(fingerprint(va) != fingerprint(vc));
    CHECK(level_seed(5, 1, 1) != level_seed(5, 1, 2));
    CHECK(level_seed(5, 1, 1) != level_seed(5, 2, 1));
}

TEST_CASE("level-0 points") {
    const GraphCollection c("c", {path(4), triangle()});
    const auto tables = db_tables(c, 3);
    const auto k1 = level0_points(tables, 1);
    CHECK(k1.size() == 7);
    CHECK(k1.dim() == 1);
    CHECK(k1.origin().size() == 7);
    const auto k2 = level0_points(tables, 2);
    CHECK(k2.size() == 4);  // P4 vertices only
    for (const auto& o : k2.origin()) CHECK(o.graph_id == 0);
    const auto k3 = level0_points(tables, 3);
    CHECK(k3.size() == 2);  // P4 endpoints
    for (std::size_t i = 0; i < k2.size(); ++i) {
        const auto& o = k2.origin()[i];
        CHECK(k2[i][0] == tables[0].entropy(o.vertex, 1));
        CHECK(k2[i][1] == tables[0].entropy(o.vertex, 2));
    }
    for (std::size_t i = 1; i < k1.size(); ++i) CHECK(k1[i - 1][0] <= k1[i][0]);
}

}
