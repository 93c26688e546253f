#pragma once

#include <filesystem>
#include <string>

#include "htak/graph.hpp"

namespace htak {

/// Reads a TU-Dortmund benchmark dataset: `<prefix>_A.txt`,
/// `<prefix>_graph_indicator.txt` and, when present, `<prefix>_graph_labels.txt`.
/// Node and edge label files are ignored. Vertex indices are rebased to 0
/// within each graph in indicator order.
///
/// Throws InputError for a missing mandatory file and FormatError (with
/// file name and line number) for malformed content.
[[nodiscard]] GraphCollection load_tu_dataset(const std::filesystem::path& directory, const std::string& prefix);

/// Writes `collection` in the same format (both edge directions listed,
/// graph labels only when every graph has one).
void write_tu_dataset(const GraphCollection& collection, const std::filesystem::path& directory,
                      const std::string& prefix);

}  // namespace htak
