#pragma once

#include <exlab/bitset.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace exlab {

/// Unordered vertex pair, stored with the lesser endpoint first.
struct Edge {
    int u = 0;
    int v = 0;
    friend auto operator<=>(const Edge &, const Edge &) = default;
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Simple undirected graph on vertices 0..n-1. Immutable after construction.
class Graph {
public:
    Graph() = default;

    /// Validates (no loops, no duplicates, endpoints < n), canonicalises
    /// every edge to u < v and sorts the edge list. Throws ValidationError.
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::span<const Edge> edges() const { return edges_; }
    const Edge & edge(std::size_t i) const { return edges_[i]; }

    std::span<const int> neighbors(int v) const
    {
        return {adj_.data() + offsets_[static_cast<std::size_t>(v)],
                adj_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
    }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    int max_degree() const;

    bool has_edge(int a, int b) const;
    /// Position of {a,b} in edges(), if present.
    std::optional<std::size_t> edge_index(int a, int b) const;

    /// m / C(n,2); zero when n < 2.
    double density() const;

    /// Adjacency rows as bitsets; only built for n <= dense_row_limit.
    static constexpr int dense_row_limit = 8192;
    bool has_rows() const { return !rows_.empty() || n_ == 0; }
    const Bitset & row(int v) const { return rows_[static_cast<std::size_t>(v)]; }

    /// Subgraph keeping exactly the listed edge indices.
    Graph edge_subgraph(std::span<const std::size_t> keep) const;
    /// Induced subgraph on `vertices`, relabelled 0..k-1 in the given order.
    Graph induced(std::span<const int> vertices) const;
    Graph complement() const;

    friend bool operator==(const Graph & a, const Graph & b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<int> adj_;
    std::vector<std::size_t> adj_edge_;
    std::vector<Bitset> rows_;
};

/// Bipartite graph with left part 0..left-1 and right part 0..right-1.
/// Edges are (left, right) pairs; the two index spaces are separate.
class BipartiteGraph {
public:
    struct Pair {
        int left = 0;
        int right = 0;
        friend auto operator<=>(const Pair &, const Pair &) = default;
    };

    BipartiteGraph() = default;
    BipartiteGraph(int left, int right, std::vector<Pair> edges);

    int left_size() const { return left_; }
    int right_size() const { return right_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::span<const Pair> edges() const { return edges_; }

    bool has_edge(int a, int b) const { return left_rows_[static_cast<std::size_t>(a)].test(static_cast<std::size_t>(b)); }
    /// Right-side neighbours of left vertex a.
    const Bitset & left_row(int a) const { return left_rows_[static_cast<std::size_t>(a)]; }
    /// Left-side neighbours of right vertex b.
    const Bitset & right_row(int b) const { return right_rows_[static_cast<std::size_t>(b)]; }
    int left_degree(int a) const { return static_cast<int>(left_row(a).count()); }
    int right_degree(int b) const { return static_cast<int>(right_row(b).count()); }

    /// edges / (left * right); zero for an empty side.
    double density() const;

    /// Sub-bipartite graph on the listed vertices, relabelled in order.
    BipartiteGraph induced(std::span<const int> left, std::span<const int> right) const;
    /// Same graph with the sides exchanged.
    BipartiteGraph transposed() const;
    /// Left vertex a -> a, right vertex b -> left_size() + b.
    Graph to_graph() const;

    friend bool operator==(const BipartiteGraph & a, const BipartiteGraph & b)
    {
        return a.left_ == b.left_ && a.right_ == b.right_ && a.edges_ == b.edges_;
    }

private:
    int left_ = 0;
    int right_ = 0;
    std::vector<Pair> edges_;
    std::vector<Bitset> left_rows_;
    std::vector<Bitset> right_rows_;
};

/// k-uniform hypergraph; every edge is a sorted k-subset of 0..n-1.
class KUniformHypergraph {
public:
    KUniformHypergraph() = default;
    KUniformHypergraph(int n, int k, std::vector<std::vector<int>> edges);

    int vertex_count() const { return n_; }
    int uniformity() const { return k_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::vector<int>> & edges() const { return edges_; }
    bool has_edge(std::span<const int> sorted_vertices) const;

    KUniformHypergraph edge_subgraph(std::span<const std::size_t> keep) const;

    friend bool operator==(const KUniformHypergraph &, const KUniformHypergraph &) = default;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<std::vector<int>> edges_;
};

/// Total colour assignment on the edges of a graph; colours[i] belongs to
/// graph.edge(i).
class EdgeColoring {
public:
    EdgeColoring() = default;
    EdgeColoring(Graph graph, std::vector<int> colors, int color_count);

    const Graph & graph() const { return graph_; }
    int color_count() const { return r_; }
    std::span<const int> colors() const { return colors_; }
    int color(std::size_t edge_index) const { return colors_[edge_index]; }
    /// Colour of {a,b}; throws std::out_of_range when it is not an edge.
    int color_of(int a, int b) const;

    friend bool operator==(const EdgeColoring &, const EdgeColoring &) = default;

private:
    Graph graph_;
    std::vector<int> colors_;
    int r_ = 1;
};

} // namespace exlab
