#include "htak/export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "htak/errors.hpp"

namespace htak {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    return out;
}

std::string cell(const GramMatrix& gram, const std::vector<double>& normalized, std::size_t p, std::size_t q,
                 bool normalize) {
    return normalize ? format_real(normalized[p * gram.size() + q]) : std::to_string(gram.at(p, q));
}

}  // namespace

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

void write_gram_csv(const GramMatrix& gram, const fs::path& path, bool normalize) {
    auto out = open_output(path);
    const auto normalized = normalize ? gram.to_real(true) : std::vector<double>{};
    for (std::size_t q = 0; q < gram.size(); ++q) out << (q ? "," : "") << (q + 1);
    out << '\n';
    for (std::size_t p = 0; p < gram.size(); ++p) {
        for (std::size_t q = 0; q < gram.size(); ++q) out << (q ? "," : "") << cell(gram, normalized, p, q, normalize);
        out << '\n';
    }
}

void write_svm_precomputed(const GramMatrix& gram, std::span<const std::optional<int>> labels, const fs::path& path,
                           bool normalize) {
    if (labels.size() != gram.size()) throw ArgumentError("svm export: label count differs from Gram size");
    auto out = open_output(path);
    const auto normalized = normalize ? gram.to_real(true) : std::vector<double>{};
    for (std::size_t p = 0; p < gram.size(); ++p) {
        out << labels[p].value_or(0) << " 0:" << (p + 1);
        for (std::size_t q = 0; q < gram.size(); ++q) out << ' ' << (q + 1) << ':' << cell(gram, normalized, p, q, normalize);
        out << '\n';
    }
}

DenseMatrix to_dense(const GramMatrix& gram, bool normalize) { return {gram.size(), gram.to_real(normalize)}; }

DenseMatrix read_gram_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open Gram file " + path.string());
    std::string line;
    std::size_t line_number = 0;
    std::vector<std::vector<double>> rows;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            const auto first = field.find_first_not_of(' ');
            const auto last = field.find_last_not_of(' ');
            if (first == std::string::npos) {
                throw FormatError(path.filename().string() + ":" + std::to_string(line_number) + ": empty field");
            }
            const std::string token = field.substr(first, last - first + 1);
            double value = 0.0;
            auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || end != token.data() + token.size()) {
                throw FormatError(path.filename().string() + ":" + std::to_string(line_number) +
                                  ": not a number: '" + token + "'");
            }
            row.push_back(value);
        }
        rows.push_back(std::move(row));
    }
    if (!header_seen) throw FormatError(path.filename().string() + ": empty file");
    DenseMatrix m{rows.size(), {}};
    m.values.reserve(rows.size() * rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) {
            throw FormatError(path.filename().string() + ": row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows[i].size()) + " values, expected " + std::to_string(rows.size()));
        }
        m.values.insert(m.values.end(), rows[i].begin(), rows[i].end());
    }
    return m;
}

std::vector<int> read_labels(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open labels file " + path.string());
    std::vector<int> labels;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        int value = 0;
        auto [end, ec] = std::from_chars(line.data() + first, line.data() + last + 1, value);
        if (ec != std::errc{} || end != line.data() + last + 1) {
            throw FormatError(path.filename().string() + ":" + std::to_string(line_number) + ": not an integer label");
        }
        labels.push_back(value);
    }
    return labels;
}

void write_db_csv(const DbTable& table, const fs::path& path) {
    auto out = open_output(path);
    out << "vertex,k,entropy,valid\n";
    for (Vertex v = 0; v < table.vertex_count(); ++v) {
        for (std::int32_t k = 1; k <= table.depth_count(); ++k) {
            const bool valid = table.valid(v, k);
            out << v << ',' << k << ',' << (valid ? format_real(table.entropy(v, k)) : "nan") << ',' << (valid ? 1 : 0)
                << '\n';
        }
    }
}

void write_prototype_csv(const PrototypeHierarchy& hierarchy, std::size_t level, const fs::path& path) {
    auto out = open_output(path);
    const auto& centroids = hierarchy.level(level);
    out << "level,centroid_index";
    for (std::size_t d = 1; d <= centroids.dim(); ++d) out << ",c" << d;
    out << '\n';
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        out << level << ',' << c;
        for (double x : centroids[c]) out << ',' << format_real(x);
        out << '\n';
    }
}

void write_feature_csv(std::span<const FeatureBank> banks, const fs::path& path) {
    auto out = open_output(path);
    out << "graph,k,h,prototype,count\n";
    for (const auto& bank : banks) {
        for (std::int32_t k = 1; k <= bank.depth_count(); ++k) {
            for (std::size_t h = 1; h <= bank.level_count(); ++h) {
                const auto counts = bank.counts({h, k});
                for (std::size_t n = 0; n < counts.size(); ++n) {
                    if (counts[n] != 0) out << bank.graph_id() << ',' << k << ',' << h << ',' << n << ',' << counts[n] << '\n';
                }
            }
        }
    }
}

void write_folds(std::span<const std::size_t> folds, const fs::path& path) {
    auto out = open_output(path);
    for (auto f : folds) out << f << '\n';
}

}  // namespace htak
