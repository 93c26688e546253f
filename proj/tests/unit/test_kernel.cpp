#include <doctest.h>

#include <random>

#include "graphs.hpp"
#include "htak/errors.hpp"
#include "htak/evaluation.hpp"
#include "htak/kernel.hpp"

using namespace htak;
using namespace htak::testing;

namespace {

FeatureBank bank(std::size_t levels, std::int32_t depths, std::uint64_t fp = 0) {
    FeatureBank b(0, levels, depths, fp);
    for (std::int32_t k = 1; k <= depths; ++k)
        for (std::size_t h = 1; h <= levels; ++h) b.counts_mut({h, k}).assign(2, 0);
    return b;
}

std::vector<AssignmentVector> single_vertex(std::size_t levels, std::int32_t depths, std::int64_t proto) {
    std::vector<AssignmentVector> out;
    for (std::int32_t k = 1; k <= depths; ++k)
        for (std::size_t h = 1; h <= levels; ++h) out.push_back({0, {h, k}, 3, {proto}});
    return out;
}

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("pair values from counts") {
    auto p = bank(2, 2);
    auto q = bank(2, 2);
    p.counts_mut({1, 2}) = {2, 1};
    q.counts_mut({1, 2}) = {0, 3};
    CHECK(htak_pair_fast(p, q) == 3);
    CHECK(htak_pair_fast(p, p) == 5);

    p.counts_mut({2, 1}) = {4, 0};
    CHECK(htak_pair_fast(p, p) == 21);
    CHECK(htak_pair_fast(p, p, 1) == 5);

    const auto empty = bank(2, 2);
    CHECK(htak_pair_fast(empty, p) == 0);

    CHECK_THROWS_AS((void)htak_pair_fast(bank(2, 2, 1), bank(2, 2, 2)), ArgumentError);
    CHECK_THROWS_AS((void)htak_pair_fast(bank(2, 2), bank(3, 2)), ArgumentError);
    CHECK_THROWS_AS((void)htak_pair_fast(bank(2, 2), bank(2, 1)), ArgumentError);
}

TEST_CASE("direct evaluation") {
    const auto a = single_vertex(3, 4, 1);
    CHECK(htak_pair_direct(a, a) == 12);
    CHECK(htak_pair_direct(a, single_vertex(3, 4, 2)) == 0);
    CHECK(htak_pair_direct(a, a, 2) == 8);
    CHECK(htak_pair_fast(feature_bank(a), feature_bank(a)) == 12);
}

TEST_CASE("fast and direct agree on random graphs") {
    GraphCollection c("r", random_graphs(61, 30));
    const auto model = fit_model(c, HtakParams{});
    for (std::size_t p = 0; p < c.size(); ++p)
        for (std::size_t q = 0; q < c.size(); ++q) {
            CHECK(htak_pair_fast(model.banks[p], model.banks[q]) ==
                  htak_pair_direct(model.assignments[p], model.assignments[q]));
            CHECK(htak_pair_fast(model.banks[p], model.banks[q], 2) ==
                  htak_pair_direct(model.assignments[p], model.assignments[q], 2));
        }
}

TEST_CASE("isomorphic graphs") {
    std::mt19937_64 rng(67);
    const auto base = random_graphs(71, 6);
    std::vector<Graph> graphs = base;
    graphs.push_back(base[0].permuted(random_permutation(rng, base[0].vertex_count())));
    GraphCollection c("iso", graphs);
    for (auto mode : {GramMode::single, GramMode::sweep}) {
        for (const auto& g : gram_matrix(c, HtakParams{}, mode)) {
            const std::size_t last = c.size() - 1;
            CHECK(g.at(0, last) == g.at(0, 0));
            CHECK(g.at(last, last) == g.at(0, 0));
        }
    }
}

TEST_CASE("single graph") {
    GraphCollection c("one", {cycle(6)});
    const auto g = gram_matrix(c, HtakParams{}, GramMode::single);
    REQUIRE(g.size() == 1);
    CHECK(g[0].size() == 1);
    CHECK(g[0].at(0, 0) > 0);
}

TEST_CASE("gram properties") {
    GraphCollection c("r", random_graphs(73, 40));
    HtakParams params;
    const auto model = fit_model(c, params);
    const auto grams = gram_matrices(model, GramMode::sweep);
    REQUIRE(grams.size() == 5);
    for (std::size_t h = 0; h < grams.size(); ++h) {
        const auto& g = grams[h];
        CHECK(g.meta().levels == h + 1);
        CHECK(g.meta().mode == GramMode::sweep);
        const auto report = check_gram(to_dense(g));
        CHECK(report.ok());
        CHECK(report.cauchy_schwarz_violations == 0);
        for (std::size_t p = 0; p < g.size(); ++p) {
            const auto n = static_cast<std::int64_t>(c[p].vertex_count());
            CHECK(g.at(p, p) >= 0);
            CHECK(g.at(p, p) <= static_cast<std::int64_t>(h + 1) * model.depth_count * n * n);
            for (std::size_t q = 0; q < g.size(); ++q) {
                CHECK(g.at(p, q) == g.at(q, p));
                if (h > 0) CHECK(g.at(p, q) >= grams[h - 1].at(p, q));
            }
        }
    }
    const auto single = gram_matrices(model, GramMode::single);
    REQUIRE(single.size() == 1);
    CHECK(single[0].values() == grams[4].values());
}

TEST_CASE("gram is thread-count independent") {
    GraphCollection c("r", random_graphs(79, 40));
    HtakParams one;
    one.threads = 1;
    HtakParams four;
    four.threads = 4;
    CHECK(gram_matrix(c, one, GramMode::single)[0].values() == gram_matrix(c, four, GramMode::single)[0].values());
}

TEST_CASE("normalization") {
    GramMatrix g(2, {});
    g.set(0, 0, 4);
    g.set(1, 1, 0);
    g.set(0, 1, 0);
    const auto r = g.to_real(true);
    CHECK(r[0] == 1.0);
    CHECK(r[3] == 0.0);
    CHECK(r[1] == 0.0);
}

TEST_CASE("parameter checks and mode names") {
    GraphCollection c("r", random_graphs(83, 5));
    HtakParams bad;
    bad.levels = 0;
    CHECK_THROWS_AS((void)fit_model(c, bad), ArgumentError);
    bad = {};
    bad.ratio = 1.5;
    CHECK_THROWS_AS((void)fit_model(c, bad), ArgumentError);
    CHECK(parse_gram_mode("sweep") == GramMode::sweep);
    CHECK(parse_gram_mode("single-H") == GramMode::single);
    CHECK(to_string(GramMode::single) == "single-H");
    CHECK_THROWS_AS((void)parse_gram_mode("both"), ArgumentError);
}

}
