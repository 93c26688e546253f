// Command-line front end: dataset ingestion, kernel computation, exports
// and Gram verification.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "htak/errors.hpp"
#include "htak/evaluation.hpp"
#include "htak/export.hpp"
#include "htak/kernel.hpp"
#include "htak/parallel.hpp"
#include "htak/tu_dataset.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct DatasetArgs {
    std::string directory;
    std::string prefix;

    [[nodiscard]] std::string resolved_prefix() const {
        return prefix.empty() ? fs::path(directory).lexically_normal().filename().string() : prefix;
    }
};

struct RunConfig {
    DatasetArgs dataset;
    std::size_t levels = 5;
    double ratio = 0.2;
    std::uint64_t seed = 42;
    std::optional<std::int32_t> max_k;
    std::string mode = "single-H";
    std::string out_dir = "out";
    std::vector<std::string> formats{"csv"};
    std::optional<std::size_t> threads;
    bool normalize = false;
    bool dump_features = false;
};

/// Name of the pipeline stage currently running, for error reports.
std::string g_stage = "startup";

void log_stage(const std::string& stage, double seconds) {
    std::cerr << "[htak] stage=" << stage << " seconds=" << seconds << '\n';
}

void add_dataset_options(CLI::App* cmd, DatasetArgs& args) {
    cmd->add_option("--dataset", args.directory, "Directory holding the TU-format files")->required();
    cmd->add_option("--prefix", args.prefix, "File prefix (defaults to the directory name)");
}

void add_model_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--H", config.levels, "Number of prototype levels")->check(CLI::Range(1, 16));
    cmd->add_option("--ratio", config.ratio, "Level size ratio N_h / N_{h-1}")->check([](const std::string& text) {
        try {
            const double r = std::stod(text);
            return (r > 0.0 && r < 1.0) ? std::string{} : std::string("ratio must lie in (0, 1)");
        } catch (const std::exception&) {
            return std::string("ratio must be a number");
        }
    });
    cmd->add_option("--seed", config.seed, "Random seed for k-means seeding");
    cmd->add_option("--max-k", config.max_k, "Cap on the maximum expansion depth K")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", config.threads, "Worker threads (also HTAK_THREADS)")->check(CLI::PositiveNumber);
}

htak::GraphCollection load(const DatasetArgs& args) {
    g_stage = "load";
    const auto start = std::chrono::steady_clock::now();
    auto collection = htak::load_tu_dataset(args.directory, args.resolved_prefix());
    log_stage("load", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return collection;
}

htak::HtakParams params_of(const RunConfig& config) {
    htak::HtakParams params;
    params.levels = config.levels;
    params.ratio = config.ratio;
    params.seed = config.seed;
    params.max_k = config.max_k;
    params.threads = config.threads.value_or(0);
    return params;
}

std::string hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

int run_compute(const RunConfig& config) {
    const auto mode = htak::parse_gram_mode(config.mode);
    for (const auto& f : config.formats) {
        if (f != "csv" && f != "svm-precomputed" && f != "json-meta") {
            throw htak::ArgumentError("unknown export format '" + f + "'");
        }
    }
    const auto collection = load(config.dataset);
    const std::string prefix = config.dataset.resolved_prefix();

    std::map<std::string, double> timings;
    auto observer = [&](const std::string& stage, double seconds) {
        timings[stage] = seconds;
        log_stage(stage, seconds);
    };
    g_stage = "model";
    const auto model = htak::fit_model(collection, params_of(config), observer);

    g_stage = "kernel";
    auto start = std::chrono::steady_clock::now();
    const auto grams = htak::gram_matrices(model, mode);
    observer("kernel", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

    g_stage = "export";
    start = std::chrono::steady_clock::now();
    const fs::path out_dir = config.out_dir;
    fs::create_directories(out_dir);
    std::vector<std::optional<int>> labels;
    for (const auto& g : collection.graphs()) labels.push_back(g.label());
    auto wants = [&](const std::string& f) {
        return std::find(config.formats.begin(), config.formats.end(), f) != config.formats.end();
    };

    json files = json::array();
    for (const auto& gram : grams) {
        const std::string stem = prefix + "_H" + std::to_string(gram.meta().levels);
        if (wants("csv")) {
            htak::write_gram_csv(gram, out_dir / (stem + ".csv"), config.normalize);
            files.push_back(stem + ".csv");
        }
        if (wants("svm-precomputed")) {
            htak::write_svm_precomputed(gram, labels, out_dir / (stem + ".svm"), config.normalize);
            files.push_back(stem + ".svm");
        }
    }
    if (config.dump_features) {
        htak::write_feature_csv(model.banks, out_dir / (prefix + "_features.csv"));
        files.push_back(prefix + "_features.csv");
    }
    observer("export", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

    // The sidecar is always written; "json-meta" is accepted for symmetry.
    json level_sizes = json::object();
    for (const auto& hierarchy : model.hierarchies) {
        json sizes = json::array();
        for (const auto& level : hierarchy.levels) sizes.push_back(level.size());
        level_sizes[std::to_string(hierarchy.depth)] = sizes;
    }
    json meta = {
        {"dataset", collection.name()},
        {"dataset_dir", config.dataset.directory},
        {"graphs", collection.size()},
        {"H", config.levels},
        {"K", model.depth_count},
        {"global_k", model.global_k},
        {"max_k", config.max_k ? json(*config.max_k) : json(nullptr)},
        {"ratio", config.ratio},
        {"seed", config.seed},
        {"mode", htak::to_string(mode)},
        {"normalized", config.normalize},
        {"formats", config.formats},
        {"files", files},
        {"hierarchy_fingerprint", hex(model.hierarchy_fingerprint)},
        {"level_sizes", level_sizes},
        {"self_loops_dropped", collection.load_stats().self_loops_dropped},
        {"duplicate_edges_dropped", collection.load_stats().duplicate_edges_dropped},
        {"timings", timings},
    };
    std::ofstream(out_dir / (prefix + ".meta.json")) << meta.dump(2) << '\n';
    std::cout << "wrote " << files.size() << " artifact(s) and " << prefix << ".meta.json to " << out_dir.string()
              << '\n';
    return 0;
}

int run_verify(const std::string& gram_path) {
    g_stage = "verify";
    const auto gram = htak::read_gram_csv(gram_path);
    const auto report = htak::check_gram(gram);
    std::cout << "size: " << report.size << '\n'
              << "symmetric: " << (report.symmetric ? "yes" : "no") << " (" << report.asymmetric_pairs
              << " asymmetric pairs)\n"
              << "min eigenvalue: " << htak::format_real(report.min_eigenvalue) << '\n'
              << "max diagonal: " << htak::format_real(report.max_diagonal) << '\n'
              << "PSD tolerance: -" << htak::kPsdTolerance << " * max diagonal\n"
              << "PSD: " << (report.psd() ? "pass" : "FAIL") << '\n'
              << "Cauchy-Schwarz violations: " << report.cauchy_schwarz_violations << '\n';
    return report.ok() ? 0 : 1;
}

int run_knn(const std::string& gram_path, const std::string& labels_path, const DatasetArgs& dataset,
            std::size_t folds, std::uint64_t seed, const std::string& folds_out) {
    std::vector<int> labels;
    if (!labels_path.empty()) {
        g_stage = "labels";
        labels = htak::read_labels(labels_path);
    } else if (!dataset.directory.empty()) {
        const auto collection = load(dataset);
        if (!collection.has_labels()) throw htak::InputError("dataset has no graph labels");
        for (const auto& g : collection.graphs()) labels.push_back(*g.label());
    } else {
        throw htak::ArgumentError("knn-cv needs --labels or --dataset");
    }
    g_stage = "knn-cv";
    const auto gram = htak::read_gram_csv(gram_path);
    const auto result = htak::knn_cv(gram, labels, folds, seed);
    if (!folds_out.empty()) htak::write_folds(result.folds, folds_out);
    std::cout << "folds: " << folds << '\n';
    for (std::size_t f = 0; f < result.fold_accuracy.size(); ++f) {
        std::cout << "fold " << f << ": " << htak::format_real(result.fold_accuracy[f]) << '\n';
    }
    char line[128];
    std::snprintf(line, sizeof line, "1-NN accuracy: %.4f +- %.4f\n", result.mean_accuracy, result.std_accuracy);
    std::cout << line;
    return 0;
}

int run_dump_db(const RunConfig& config, std::optional<std::size_t> graph) {
    const auto collection = load(config.dataset);
    g_stage = "db-repr";
    const auto depth = htak::compute_global_k(collection, config.max_k);
    const fs::path out_dir = config.out_dir;
    std::size_t written = 0;
    for (std::size_t g = 0; g < collection.size(); ++g) {
        if (graph && *graph != g + 1) continue;
        htak::write_db_csv(htak::db_table(collection[g], depth), out_dir / ("db_" + std::to_string(g + 1) + ".csv"));
        ++written;
    }
    if (graph && written == 0) throw htak::ArgumentError("graph " + std::to_string(*graph) + " not in dataset");
    std::cout << "wrote " << written << " DB table(s) to " << out_dir.string() << '\n';
    return 0;
}

int run_dump_prototypes(const RunConfig& config) {
    const auto collection = load(config.dataset);
    g_stage = "model";
    const auto model = htak::fit_model(collection, params_of(config), log_stage);
    g_stage = "export";
    const fs::path out_dir = config.out_dir;
    for (const auto& hierarchy : model.hierarchies) {
        for (std::size_t h = 1; h <= hierarchy.level_count(); ++h) {
            htak::write_prototype_csv(hierarchy, h,
                                      out_dir / ("prototypes_k" + std::to_string(hierarchy.depth) + "_h" +
                                                 std::to_string(h) + ".csv"));
        }
    }
    std::cout << "wrote prototypes for K=" << model.depth_count << ", H=" << config.levels << " to "
              << out_dir.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph kernel from vertices aligned to k-means prototype levels"};
    app.require_subcommand(1);

    RunConfig compute;
    auto* compute_cmd = app.add_subcommand("compute", "Compute Gram matrices for a TU dataset");
    add_dataset_options(compute_cmd, compute.dataset);
    add_model_options(compute_cmd, compute);
    compute_cmd->add_option("--mode", compute.mode, "single-H or sweep (one Gram per H = 1..H)")
        ->check(CLI::IsMember({"single-H", "single", "sweep"}));
    compute_cmd->add_option("--out", compute.out_dir, "Output directory");
    compute_cmd->add_option("--format", compute.formats, "Export formats: csv, svm-precomputed, json-meta")
        ->delimiter(',');
    compute_cmd->add_flag("--normalize", compute.normalize, "Export k(p,q)/sqrt(k(p,p)k(q,q))");
    compute_cmd->add_flag("--dump-features", compute.dump_features, "Also write per-graph feature histograms");

    std::string verify_path;
    auto* verify_cmd = app.add_subcommand("verify", "Check symmetry and positive semidefiniteness of a Gram CSV");
    verify_cmd->add_option("gram", verify_path, "Gram CSV file")->required();

    std::string knn_gram;
    std::string knn_labels;
    std::string knn_folds_out;
    DatasetArgs knn_dataset;
    std::size_t knn_folds = 10;
    std::uint64_t knn_seed = 42;
    auto* knn_cmd = app.add_subcommand("knn-cv", "1-nearest-neighbour cross-validation on a Gram CSV");
    knn_cmd->add_option("--gram", knn_gram, "Gram CSV file")->required();
    knn_cmd->add_option("--labels", knn_labels, "Labels file, one integer per line");
    knn_cmd->add_option("--dataset", knn_dataset.directory, "Take labels from this TU dataset");
    knn_cmd->add_option("--prefix", knn_dataset.prefix, "TU file prefix");
    knn_cmd->add_option("--folds", knn_folds, "Fold count")->check(CLI::Range(2, 1000000));
    knn_cmd->add_option("--seed", knn_seed, "Fold shuffling seed");
    knn_cmd->add_option("--folds-out", knn_folds_out, "Write the fold index of every graph here");

    RunConfig dump_db;
    std::optional<std::size_t> dump_graph;
    auto* dump_db_cmd = app.add_subcommand("dump-db", "Write per-graph depth-based tables as CSV");
    add_dataset_options(dump_db_cmd, dump_db.dataset);
    dump_db_cmd->add_option("--max-k", dump_db.max_k, "Cap on K")->check(CLI::PositiveNumber);
    dump_db_cmd->add_option("--graph", dump_graph, "Only this 1-based graph")->check(CLI::PositiveNumber);
    dump_db_cmd->add_option("--out", dump_db.out_dir, "Output directory");

    RunConfig dump_protos;
    auto* dump_protos_cmd = app.add_subcommand("dump-prototypes", "Write prototype hierarchies as CSV");
    add_dataset_options(dump_protos_cmd, dump_protos.dataset);
    add_model_options(dump_protos_cmd, dump_protos);
    dump_protos_cmd->add_option("--out", dump_protos.out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto* cfg : {&compute, &dump_protos}) {
            if (cfg->threads) htak::set_default_thread_count(*cfg->threads);
        }
        if (*compute_cmd) return run_compute(compute);
        if (*verify_cmd) return run_verify(verify_path);
        if (*knn_cmd) return run_knn(knn_gram, knn_labels, knn_dataset, knn_folds, knn_seed, knn_folds_out);
        if (*dump_db_cmd) return run_dump_db(dump_db, dump_graph);
        if (*dump_protos_cmd) return run_dump_prototypes(dump_protos);
    } catch (const std::exception& e) {
        std::cerr << "error [" << g_stage << "]: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
