#include "htak/kernel.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "htak/errors.hpp"
#include "htak/parallel.hpp"

namespace htak {

namespace {

std::size_t level_limit(std::size_t available, std::optional<std::size_t> max_level) {
    if (!max_level) return available;
    if (*max_level < 1 || *max_level > available) {
        throw ArgumentError("max_level " + std::to_string(*max_level) + " outside 1.." + std::to_string(available));
    }
    return *max_level;
}

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    if (a.size() != b.size()) throw ArgumentError("feature vectors differ in length");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::int64_t htak_pair_fast(const FeatureBank& p, const FeatureBank& q, std::optional<std::size_t> max_level) {
    if (p.fingerprint() != q.fingerprint() || p.level_count() != q.level_count() || p.depth_count() != q.depth_count()) {
        throw ArgumentError("htak_pair_fast: feature banks were built against different prototype hierarchies");
    }
    const std::size_t levels = level_limit(p.level_count(), max_level);
    std::int64_t total = 0;
    for (std::int32_t k = 1; k <= p.depth_count(); ++k) {
        for (std::size_t h = 1; h <= levels; ++h) total += dot(p.counts({h, k}), q.counts({h, k}));
    }
    return total;
}

std::int64_t htak_pair_direct(std::span<const AssignmentVector> p, std::span<const AssignmentVector> q,
                              std::optional<std::size_t> max_level) {
    if (p.size() != q.size()) throw ArgumentError("htak_pair_direct: assignment families differ in size");
    std::size_t available = 0;
    for (const auto& a : p) available = std::max(available, a.key.level);
    const std::size_t levels = level_limit(available, max_level);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].key.level > levels) continue;
        total += correspondence_matrix(p[i], q[i]).sum();
    }
    return total;
}

std::string to_string(GramMode mode) { return mode == GramMode::single ? "single-H" : "sweep"; }

GramMode parse_gram_mode(const std::string& text) {
    if (text == "single-H" || text == "single") return GramMode::single;
    if (text == "sweep") return GramMode::sweep;
    throw ArgumentError("unknown mode '" + text + "' (expected single-H or sweep)");
}

GramMatrix::GramMatrix(std::size_t size, GramMeta meta)
    : size_(size), values_(size * size, 0), meta_(std::move(meta)) {}

void GramMatrix::set(std::size_t p, std::size_t q, std::int64_t value) {
    values_.at(p * size_ + q) = value;
    values_.at(q * size_ + p) = value;
}

std::vector<double> GramMatrix::to_real(bool normalize) const {
    std::vector<double> out(values_.size());
    for (std::size_t p = 0; p < size_; ++p) {
        for (std::size_t q = 0; q < size_; ++q) {
            const double v = static_cast<double>(at(p, q));
            if (!normalize) {
                out[p * size_ + q] = v;
                continue;
            }
            const double denom = std::sqrt(static_cast<double>(at(p, p)) * static_cast<double>(at(q, q)));
            out[p * size_ + q] = denom > 0.0 ? v / denom : 0.0;
        }
    }
    return out;
}

GramMatrix gram_from_banks(std::span<const FeatureBank> banks, std::size_t max_level, GramMeta meta,
                           std::size_t threads) {
    if (banks.empty()) throw ArgumentError("gram: empty collection");
    meta.levels = max_level;
    GramMatrix gram(banks.size(), std::move(meta));
    std::vector<std::vector<std::int64_t>> rows(banks.size());
    parallel_for(
        banks.size(),
        [&](std::size_t p) {
            rows[p].resize(banks.size() - p);
            for (std::size_t q = p; q < banks.size(); ++q) rows[p][q - p] = htak_pair_fast(banks[p], banks[q], max_level);
        },
        threads);
    for (std::size_t p = 0; p < banks.size(); ++p) {
        for (std::size_t q = p; q < banks.size(); ++q) gram.set(p, q, rows[p][q - p]);
    }
    return gram;
}

HtakModel fit_model(const GraphCollection& collection, const HtakParams& params, const StageObserver& observer) {
    if (collection.empty()) throw ArgumentError("gram: empty collection");
    if (params.levels < 1) throw ArgumentError("H must be at least 1");
    if (!(params.ratio > 0.0 && params.ratio < 1.0)) throw ArgumentError("ratio must lie in (0, 1)");

    using Clock = std::chrono::steady_clock;
    auto stage_start = Clock::now();
    auto finish_stage = [&](const char* name) {
        const auto now = Clock::now();
        if (observer) observer(name, std::chrono::duration<double>(now - stage_start).count());
        stage_start = now;
    };

    HtakModel model;
    model.dataset = collection.name();
    model.params = params;
    model.global_k = collection.global_k();
    model.depth_count = compute_global_k(collection, params.max_k);

    model.tables = db_tables(collection, model.depth_count, params.threads);
    finish_stage("db-repr");

    const KmeansOptions options{params.max_iter, 1e-9, params.threads};
    model.hierarchies.resize(static_cast<std::size_t>(model.depth_count));
    for (std::int32_t k = 1; k <= model.depth_count; ++k) {
        const auto level0 = level0_points(model.tables, k);
        model.hierarchies[static_cast<std::size_t>(k - 1)] =
            build_hierarchy(level0, params.levels, params.ratio, params.seed, k, options);
    }
    model.hierarchy_fingerprint = fingerprint(model.hierarchies);
    finish_stage("prototypes");

    model.assignments.resize(collection.size());
    model.banks.resize(collection.size());
    parallel_for(
        collection.size(),
        [&](std::size_t g) {
            model.assignments[g] = assign_graph(model.tables[g], model.hierarchies);
            model.banks[g] = feature_bank(model.assignments[g], model.hierarchy_fingerprint);
        },
        params.threads);
    finish_stage("alignment");
    return model;
}

std::vector<GramMatrix> gram_matrices(const HtakModel& model, GramMode mode) {
    GramMeta meta{model.dataset,      model.params.levels, model.depth_count, model.global_k,
                  model.params.ratio, model.params.seed,   mode};
    std::vector<GramMatrix> out;
    if (mode == GramMode::single) {
        out.push_back(gram_from_banks(model.banks, model.params.levels, meta, model.params.threads));
    } else {
        for (std::size_t h = 1; h <= model.params.levels; ++h) {
            out.push_back(gram_from_banks(model.banks, h, meta, model.params.threads));
        }
    }
    return out;
}

std::vector<GramMatrix> gram_matrix(const GraphCollection& collection, const HtakParams& params, GramMode mode) {
    return gram_matrices(fit_model(collection, params), mode);
}

}  // namespace htak
