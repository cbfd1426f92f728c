#include <exlab/errors.hpp>
#include <exlab/graph.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace exlab {

namespace {

std::string edge_str(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

} // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges))
{
    if (n < 0)
        throw ValidationError("negative vertex count");
    for (auto & e : edges_) {
        if (e.u == e.v)
            throw ValidationError("loop at vertex " + std::to_string(e.u));
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw ValidationError("edge " + edge_str(e.u, e.v) + " has endpoint outside 0.." + std::to_string(n - 1));
        e = make_edge(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
        throw ValidationError("duplicate edge " + edge_str(dup->u, dup->v));

    std::vector<std::size_t> deg(static_cast<std::size_t>(n) + 1, 0);
    for (const auto & e : edges_) {
        ++deg[static_cast<std::size_t>(e.u)];
        ++deg[static_cast<std::size_t>(e.v)];
    }
    offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v)
        offsets_[static_cast<std::size_t>(v) + 1] = offsets_[static_cast<std::size_t>(v)] + deg[static_cast<std::size_t>(v)];
    adj_.resize(offsets_.back());
    adj_edge_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // edges are sorted by (u, v), so each list ends up sorted once both
    // directions are inserted in two passes
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto & e = edges_[i];
        auto pos = fill[static_cast<std::size_t>(e.v)]++;
        adj_[pos] = e.u;
        adj_edge_[pos] = i;
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto & e = edges_[i];
        auto pos = fill[static_cast<std::size_t>(e.u)]++;
        adj_[pos] = e.v;
        adj_edge_[pos] = i;
    }

    if (n <= dense_row_limit) {
        rows_.assign(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
        for (const auto & e : edges_) {
            rows_[static_cast<std::size_t>(e.u)].set(static_cast<std::size_t>(e.v));
            rows_[static_cast<std::size_t>(e.v)].set(static_cast<std::size_t>(e.u));
        }
    }
}

int Graph::max_degree() const
{
    int best = 0;
    for (int v = 0; v < n_; ++v)
        best = std::max(best, degree(v));
    return best;
}

std::optional<std::size_t> Graph::edge_index(int a, int b) const
{
    if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b)
        return std::nullopt;
    auto nb = neighbors(a);
    auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it == nb.end() || *it != b)
        return std::nullopt;
    return adj_edge_[offsets_[static_cast<std::size_t>(a)] + static_cast<std::size_t>(it - nb.begin())];
}

bool Graph::has_edge(int a, int b) const
{
    if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b)
        return false;
    if (!rows_.empty())
        return rows_[static_cast<std::size_t>(a)].test(static_cast<std::size_t>(b));
    return edge_index(a, b).has_value();
}

double Graph::density() const
{
    if (n_ < 2)
        return 0.0;
    return static_cast<double>(edges_.size()) / (static_cast<double>(n_) * (n_ - 1) / 2.0);
}

Graph Graph::edge_subgraph(std::span<const std::size_t> keep) const
{
    std::vector<Edge> kept;
    kept.reserve(keep.size());
    for (auto i : keep)
        kept.push_back(edges_.at(i));
    return Graph(n_, std::move(kept));
}

Graph Graph::induced(std::span<const int> vertices) const
{
    std::vector<int> index(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        auto v = vertices[i];
        if (v < 0 || v >= n_ || index[static_cast<std::size_t>(v)] != -1)
            throw std::invalid_argument("Graph::induced: bad or repeated vertex");
        index[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    std::vector<Edge> kept;
    for (const auto & e : edges_) {
        int a = index[static_cast<std::size_t>(e.u)];
        int b = index[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0)
            kept.push_back(make_edge(a, b));
    }
    return Graph(static_cast<int>(vertices.size()), std::move(kept));
}

Graph Graph::complement() const
{
    std::vector<Edge> out;
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (!has_edge(a, b))
                out.push_back({a, b});
    return Graph(n_, std::move(out));
}

BipartiteGraph::BipartiteGraph(int left, int right, std::vector<Pair> edges)
    : left_(left), right_(right), edges_(std::move(edges))
{
    if (left < 0 || right < 0)
        throw ValidationError("negative part size");
    for (const auto & p : edges_)
        if (p.left < 0 || p.left >= left || p.right < 0 || p.right >= right)
            throw ValidationError("bipartite edge " + edge_str(p.left, p.right) + " outside its parts");
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
        throw ValidationError("duplicate bipartite edge " + edge_str(dup->left, dup->right));
    left_rows_.assign(static_cast<std::size_t>(left), Bitset(static_cast<std::size_t>(right)));
    right_rows_.assign(static_cast<std::size_t>(right), Bitset(static_cast<std::size_t>(left)));
    for (const auto & p : edges_) {
        left_rows_[static_cast<std::size_t>(p.left)].set(static_cast<std::size_t>(p.right));
        right_rows_[static_cast<std::size_t>(p.right)].set(static_cast<std::size_t>(p.left));
    }
}

double BipartiteGraph::density() const
{
    if (left_ == 0 || right_ == 0)
        return 0.0;
    return static_cast<double>(edges_.size()) / (static_cast<double>(left_) * right_);
}

BipartiteGraph BipartiteGraph::induced(std::span<const int> left, std::span<const int> right) const
{
    std::vector<Pair> out;
    for (std::size_t i = 0; i < left.size(); ++i) {
        const auto & row = left_row(left[i]);
        for (std::size_t j = 0; j < right.size(); ++j)
            if (row.test(static_cast<std::size_t>(right[j])))
                out.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
    return BipartiteGraph(static_cast<int>(left.size()), static_cast<int>(right.size()), std::move(out));
}

BipartiteGraph BipartiteGraph::transposed() const
{
    std::vector<Pair> out;
    out.reserve(edges_.size());
    for (const auto & p : edges_)
        out.push_back({p.right, p.left});
    return BipartiteGraph(right_, left_, std::move(out));
}

Graph BipartiteGraph::to_graph() const
{
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const auto & p : edges_)
        out.push_back({p.left, left_ + p.right});
    return Graph(left_ + right_, std::move(out));
}

KUniformHypergraph::KUniformHypergraph(int n, int k, std::vector<std::vector<int>> edges)
    : n_(n), k_(k), edges_(std::move(edges))
{
    if (k < 1)
        throw ValidationError("uniformity must be >= 1");
    for (auto & e : edges_) {
        if (static_cast<int>(e.size()) != k)
            throw ValidationError("hyperedge of size " + std::to_string(e.size()) + " in a " + std::to_string(k) + "-graph");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw ValidationError("hyperedge with a repeated vertex");
        if (e.front() < 0 || e.back() >= n)
            throw ValidationError("hyperedge vertex outside 0.." + std::to_string(n - 1));
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw ValidationError("duplicate hyperedge");
}

bool KUniformHypergraph::has_edge(std::span<const int> sorted_vertices) const
{
    std::vector<int> key(sorted_vertices.begin(), sorted_vertices.end());
    return std::binary_search(edges_.begin(), edges_.end(), key);
}

KUniformHypergraph KUniformHypergraph::edge_subgraph(std::span<const std::size_t> keep) const
{
    std::vector<std::vector<int>> kept;
    kept.reserve(keep.size());
    for (auto i : keep)
        kept.push_back(edges_.at(i));
    return KUniformHypergraph(n_, k_, std::move(kept));
}

EdgeColoring::EdgeColoring(Graph graph, std::vector<int> colors, int color_count)
    : graph_(std::move(graph)), colors_(std::move(colors)), r_(color_count)
{
    if (color_count < 1)
        throw ValidationError("colour count must be >= 1");
    if (colors_.size() != graph_.edge_count())
        throw ValidationError("colouring is not total: " + std::to_string(colors_.size()) + " colours for "
                              + std::to_string(graph_.edge_count()) + " edges");
    for (auto c : colors_)
        if (c < 0 || c >= color_count)
            throw ValidationError("colour " + std::to_string(c) + " outside 0.." + std::to_string(color_count - 1));
}

int EdgeColoring::color_of(int a, int b) const
{
    auto idx = graph_.edge_index(a, b);
    if (!idx)
        throw std::out_of_range("EdgeColoring::color_of: " + edge_str(a, b) + " is not an edge");
    return colors_[*idx];
}

} // namespace exlab
