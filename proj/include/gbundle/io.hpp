#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gbundle/bundle.hpp"
#include "gbundle/graph.hpp"

namespace gbundle {

// Graph text format:
//   n <count>
//   e <u> <v>            one line per undirected edge
//   label <v> <string>   optional; the rest of the line is the label
// Blank lines and lines starting with '#' are ignored.
std::string format_graph(const Graph& g);
// Throws Error(kParse) with the line number on malformed input.
Graph parse_graph(std::string_view text);

// Connection text format:
//   base <graph file>
//   fiber <graph file>
//   phi <x> <y> <image of 0> <image of 1> ...
// Graph paths are relative to the connection file. Edges without a phi line
// carry the identity.
std::string format_connection(const Connection& c, const std::string& base_ref,
                              const std::string& fiber_ref);
Connection parse_connection(std::string_view text,
                            const std::filesystem::path& directory);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

Graph load_graph(const std::filesystem::path& path);
Connection load_connection(const std::filesystem::path& path);

// Node ids are vertex indices; labels are quoted. Edges listed u < v in
// sorted order.
std::string to_dot(const Graph& g, std::string_view name = "G");

// 64-bit FNV-1a, hex encoded.
std::string digest(std::string_view bytes);

}  // namespace gbundle
