#include "htak/tu_dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <vector>

#include "htak/errors.hpp"

namespace htak {

namespace fs = std::filesystem;

namespace {

struct Line {
    std::size_t number;
    std::string text;
};

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return in;
}

/// Non-blank lines with their 1-based line numbers.
std::vector<Line> read_lines(const fs::path& path) {
    auto in = open_input(path);
    std::vector<Line> lines;
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.push_back({number, std::move(text)});
    }
    return lines;
}

[[noreturn]] void fail(const fs::path& path, std::size_t line, const std::string& what) {
    throw FormatError(path.filename().string() + ":" + std::to_string(line) + ": " + what);
}

/// Parses every integer token on a line; separators are commas and blanks.
std::vector<long long> parse_integers(const fs::path& path, const Line& line) {
    std::vector<long long> values;
    const char* p = line.text.data();
    const char* end = p + line.text.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == '\t' || *p == '\r' || *p == ',')) ++p;
        if (p == end) break;
        long long value = 0;
        auto [next, ec] = std::from_chars(p, end, value);
        const bool token_ends = next == end || *next == ' ' || *next == '\t' || *next == '\r' || *next == ',';
        if (ec != std::errc{} || !token_ends) fail(path, line.number, "non-integer token in '" + line.text + "'");
        values.push_back(value);
        p = next;
    }
    return values;
}

long long single_integer(const fs::path& path, const Line& line) {
    const auto values = parse_integers(path, line);
    if (values.size() != 1) fail(path, line.number, "expected exactly one integer");
    return values.front();
}

}  // namespace

GraphCollection load_tu_dataset(const fs::path& directory, const std::string& prefix) {
    if (!fs::is_directory(directory)) throw InputError("dataset directory not found: " + directory.string());
    const fs::path edges_path = directory / (prefix + "_A.txt");
    const fs::path indicator_path = directory / (prefix + "_graph_indicator.txt");
    const fs::path labels_path = directory / (prefix + "_graph_labels.txt");
    if (!fs::exists(edges_path)) throw InputError("missing edge file: " + edges_path.string());
    if (!fs::exists(indicator_path)) throw InputError("missing graph indicator file: " + indicator_path.string());

    // node (0-based global) -> (graph, local vertex)
    std::vector<std::size_t> node_graph;
    std::vector<std::size_t> node_local;
    std::vector<std::size_t> graph_sizes;
    for (const auto& line : read_lines(indicator_path)) {
        const long long g = single_integer(indicator_path, line);
        if (g < 1) fail(indicator_path, line.number, "graph id must be >= 1");
        const auto graph = static_cast<std::size_t>(g - 1);
        if (graph >= graph_sizes.size()) graph_sizes.resize(graph + 1, 0);
        node_graph.push_back(graph);
        node_local.push_back(graph_sizes[graph]++);
    }
    if (graph_sizes.empty()) throw FormatError(indicator_path.filename().string() + ": no nodes");

    std::vector<std::vector<Edge>> graph_edges(graph_sizes.size());
    for (const auto& line : read_lines(edges_path)) {
        const auto values = parse_integers(edges_path, line);
        if (values.size() != 2) fail(edges_path, line.number, "expected an edge 'i, j'");
        for (long long node : values) {
            if (node < 1 || static_cast<std::size_t>(node) > node_graph.size()) {
                fail(edges_path, line.number,
                     "node " + std::to_string(node) + " is not listed in " + indicator_path.filename().string());
            }
        }
        const auto u = static_cast<std::size_t>(values[0] - 1);
        const auto v = static_cast<std::size_t>(values[1] - 1);
        if (node_graph[u] != node_graph[v]) fail(edges_path, line.number, "edge joins nodes of different graphs");
        graph_edges[node_graph[u]].emplace_back(node_local[u], node_local[v]);
    }

    std::vector<std::optional<int>> labels(graph_sizes.size());
    if (fs::exists(labels_path)) {
        const auto lines = read_lines(labels_path);
        if (lines.size() != graph_sizes.size()) {
            throw FormatError(labels_path.filename().string() + ": expected " + std::to_string(graph_sizes.size()) +
                              " labels, found " + std::to_string(lines.size()));
        }
        for (std::size_t i = 0; i < lines.size(); ++i) {
            labels[i] = static_cast<int>(single_integer(labels_path, lines[i]));
        }
    }

    std::vector<Graph> graphs;
    graphs.reserve(graph_sizes.size());
    LoadStats stats;
    for (std::size_t g = 0; g < graph_sizes.size(); ++g) {
        // Each undirected edge may appear once per direction; repeats of the
        // same ordered pair are the duplicates worth reporting.
        std::vector<Edge> ordered = graph_edges[g];
        std::sort(ordered.begin(), ordered.end());
        const auto unique_end = std::unique(ordered.begin(), ordered.end());
        stats.duplicate_edges_dropped += static_cast<std::size_t>(ordered.end() - unique_end);
        graphs.emplace_back(graph_sizes[g], graph_edges[g], labels[g], g);
        stats.self_loops_dropped += graphs.back().dropped_self_loops();
    }
    return GraphCollection(prefix, std::move(graphs), stats);
}

void write_tu_dataset(const GraphCollection& collection, const fs::path& directory, const std::string& prefix) {
    fs::create_directories(directory);
    std::ofstream edges(directory / (prefix + "_A.txt"));
    std::ofstream indicator(directory / (prefix + "_graph_indicator.txt"));
    if (!edges || !indicator) throw InputError("cannot write dataset into " + directory.string());

    std::size_t offset = 0;
    for (const auto& g : collection.graphs()) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) indicator << (g.id() + 1) << '\n';
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            for (Vertex v : g.neighbors(u)) edges << (offset + u + 1) << ", " << (offset + v + 1) << '\n';
        }
        offset += g.vertex_count();
    }
    if (collection.has_labels()) {
        std::ofstream labels(directory / (prefix + "_graph_labels.txt"));
        for (const auto& g : collection.graphs()) labels << *g.label() << '\n';
    }
}

}  // namespace htak
