#pragma once

#include <exlab/graph.hpp>
#include <exlab/rng.hpp>

#include <utility>
#include <vector>

namespace exlab {

Graph complete_graph(int n);
BipartiteGraph complete_bipartite(int left, int right);

/// Complete multipartite graph. Vertices are numbered part by part.
Graph complete_kpartite(std::span<const int> sizes);

/// Complete k-partite k-graph with the given part sizes (k = sizes.size()),
/// vertices numbered part by part.
KUniformHypergraph complete_kpartite_hypergraph(std::span<const int> sizes);

/// d-dimensional cube Q_d: vertices are d-bit labels, adjacent when the
/// labels differ in exactly one bit. Rejects d > 20.
Graph hypercube(int d);

/// Lines through the N x N grid {0..N-1}^2 as a tripartite graph.
/// Part V0 holds the 2N-1 anti-diagonals x+y = s (vertex s, s = 0..2N-2),
/// V1 the N vertical lines x = i (vertex 2N-1+i), V2 the N horizontal lines
/// y = j (vertex 3N-1+j). Two lines are adjacent iff they meet in a grid
/// point; `point_of_edge` gives that point for every edge index.
struct GridLines {
    int side = 0;
    Graph graph;
    std::vector<std::pair<int, int>> point_of_edge;

    int v0_size() const { return 2 * side - 1; }
    int diagonal_vertex(int s) const { return s; }
    int vertical_vertex(int x) const { return 2 * side - 1 + x; }
    int horizontal_vertex(int y) const { return 3 * side - 1 + y; }
};
/// Rejects N^2 > 10^8.
GridLines grid_lines(int side);

/// Erdos-Renyi G(n, p).
Graph random_graph(int n, double p, RngStream & rng);
BipartiteGraph random_bipartite(int left, int right, double p, RngStream & rng);

struct Bipartition {
    BipartiteGraph graph;
    std::vector<int> left;  // original vertex of each left index
    std::vector<int> right; // original vertex of each right index
    double cross_density = 0.0;
    double graph_density = 0.0;
    int attempts = 0;
};

/// Random equitable split whose cross density is at least the density of G
/// (such a split exists by averaging). Retries up to `retry_cap` times and
/// throws SearchFailure with the best density seen otherwise.
Bipartition random_equitable_bipartition(const Graph & g, RngStream & rng, int retry_cap = 1000);

} // namespace exlab
