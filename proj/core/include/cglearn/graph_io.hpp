#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cglearn/graph.hpp"

namespace cglearn {

/// Text graph format:
///
///     # comment
///     p <vertex-count>
///     <u> -> <v>        directed edge
///     <u> -- <v>        undirected edge
///
/// Exactly one `p` header line, before any edge. `#` starts a comment
/// anywhere on a line. Endpoints are 0-based vertex ids, or labels when a
/// labels table is supplied. Duplicate and conflicting edges are rejected
/// with the offending line number.
MixedGraph parse_graph(std::istream& in, const std::vector<std::string>* labels = nullptr);
MixedGraph parse_graph(const std::string& text, const std::vector<std::string>* labels = nullptr);
MixedGraph load_graph(const std::string& path, const std::vector<std::string>* labels = nullptr);

std::string format_graph(const MixedGraph& g, const std::vector<std::string>* labels = nullptr);
void save_graph(const std::string& path, const MixedGraph& g,
                const std::vector<std::string>* labels = nullptr);

/// Labels file: one label per line (line i names vertex i), `#` comments.
std::vector<std::string> parse_labels(std::istream& in);
std::vector<std::string> load_labels(const std::string& path);

/// Pattern sidecar: the complex arrows and ambiguity marks that accompany a
/// pattern graph file.
///
///     arrow <u> <v>         labeled complex arrow u -> v
///     ambiguous <u> <v>     ambiguous undirected edge
struct PatternSidecar {
    std::vector<EdgePair> arrows;
    std::vector<EdgePair> ambiguous;
};

PatternSidecar parse_pattern_sidecar(std::istream& in, std::size_t vertex_count,
                                     const std::vector<std::string>* labels = nullptr);
std::string format_pattern_sidecar(const PatternSidecar& sidecar,
                                   const std::vector<std::string>* labels = nullptr);

/// Vertex rendering shared by the writers: label when available, else the id.
std::string vertex_name(VertexId v, const std::vector<std::string>* labels);

}  // namespace cglearn
