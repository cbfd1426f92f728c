#pragma once

#include <exlab/graph.hpp>

#include <filesystem>
#include <iosfwd>

namespace exlab {

// Edge-list text format. First non-comment line: "n". Every further
// non-comment line: "u v" (graphs), "u v c" (colourings). Bipartite files
// have a second header line "n1 n2" and use global indices, right vertex b
// written as n1 + b. '#' starts a comment that runs to end of line.

Graph parse_graph(std::istream & in);
void format_graph(const Graph & g, std::ostream & out);
Graph read_graph(const std::filesystem::path & path);
void write_graph(const Graph & g, const std::filesystem::path & path);

BipartiteGraph parse_bipartite(std::istream & in);
void format_bipartite(const BipartiteGraph & g, std::ostream & out);
BipartiteGraph read_bipartite(const std::filesystem::path & path);
void write_bipartite(const BipartiteGraph & g, const std::filesystem::path & path);

/// Colour count is max colour + 1 (1 for an edgeless graph).
EdgeColoring parse_coloring(std::istream & in);
void format_coloring(const EdgeColoring & c, std::ostream & out);
EdgeColoring read_coloring(const std::filesystem::path & path);
void write_coloring(const EdgeColoring & c, const std::filesystem::path & path);

} // namespace exlab
