#include <exlab/errors.hpp>
#include <exlab/generators.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace exlab {

Graph complete_graph(int n)
{
    if (n < 1)
        throw std::invalid_argument("complete_graph: n must be >= 1");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            edges.push_back({a, b});
    return Graph(n, std::move(edges));
}

BipartiteGraph complete_bipartite(int left, int right)
{
    if (left < 1 || right < 1)
        throw std::invalid_argument("complete_bipartite: part sizes must be >= 1");
    std::vector<BipartiteGraph::Pair> edges;
    edges.reserve(static_cast<std::size_t>(left) * static_cast<std::size_t>(right));
    for (int a = 0; a < left; ++a)
        for (int b = 0; b < right; ++b)
            edges.push_back({a, b});
    return BipartiteGraph(left, right, std::move(edges));
}

Graph complete_kpartite(std::span<const int> sizes)
{
    std::vector<int> part;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1)
            throw std::invalid_argument("complete_kpartite: part sizes must be >= 1");
        part.insert(part.end(), static_cast<std::size_t>(sizes[i]), static_cast<int>(i));
    }
    int n = static_cast<int>(part.size());
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (part[static_cast<std::size_t>(a)] != part[static_cast<std::size_t>(b)])
                edges.push_back({a, b});
    return Graph(n, std::move(edges));
}

KUniformHypergraph complete_kpartite_hypergraph(std::span<const int> sizes)
{
    if (sizes.empty())
        throw std::invalid_argument("complete_kpartite_hypergraph: no parts");
    std::vector<int> offset(sizes.size() + 1, 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1)
            throw std::invalid_argument("complete_kpartite_hypergraph: part sizes must be >= 1");
        offset[i + 1] = offset[i] + sizes[i];
    }
    std::vector<std::vector<int>> edges;
    std::vector<int> pick(sizes.size(), 0);
    while (true) {
        std::vector<int> e(sizes.size());
        for (std::size_t i = 0; i < sizes.size(); ++i)
            e[i] = offset[i] + pick[i];
        edges.push_back(std::move(e));
        std::size_t i = sizes.size();
        while (i > 0) {
            --i;
            if (++pick[i] < sizes[i])
                break;
            pick[i] = 0;
            if (i == 0)
                return KUniformHypergraph(offset.back(), static_cast<int>(sizes.size()), std::move(edges));
        }
    }
}

Graph hypercube(int d)
{
    if (d < 1)
        throw std::invalid_argument("hypercube: d must be >= 1");
    if (d > 20)
        throw ResourceGuard("hypercube: d = " + std::to_string(d) + " exceeds the d <= 20 envelope");
    int n = 1 << d;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(d) * static_cast<std::size_t>(n / 2));
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < d; ++i) {
            int w = v ^ (1 << i);
            if (v < w)
                edges.push_back({v, w});
        }
    return Graph(n, std::move(edges));
}

GridLines grid_lines(int side)
{
    if (side < 1)
        throw std::invalid_argument("grid_lines: N must be >= 1");
    if (static_cast<long long>(side) * side > 100'000'000LL)
        throw ResourceGuard("grid_lines: N^2 exceeds 10^8");
    GridLines out;
    out.side = side;
    int n = 4 * side - 1;
    std::vector<Edge> edges;
    std::vector<std::pair<Edge, std::pair<int, int>>> labelled;
    for (int x = 0; x < side; ++x)
        for (int y = 0; y < side; ++y) {
            labelled.push_back({make_edge(out.vertical_vertex(x), out.horizontal_vertex(y)), {x, y}});
            labelled.push_back({make_edge(out.diagonal_vertex(x + y), out.vertical_vertex(x)), {x, y}});
            labelled.push_back({make_edge(out.diagonal_vertex(x + y), out.horizontal_vertex(y)), {x, y}});
        }
    for (const auto & [e, p] : labelled)
        edges.push_back(e);
    out.graph = Graph(n, std::move(edges));
    out.point_of_edge.assign(out.graph.edge_count(), {0, 0});
    for (const auto & [e, p] : labelled)
        out.point_of_edge[*out.graph.edge_index(e.u, e.v)] = p;
    return out;
}

Graph random_graph(int n, double p, RngStream & rng)
{
    if (n < 0 || p < 0.0 || p > 1.0)
        throw std::invalid_argument("random_graph: need n >= 0 and p in [0,1]");
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.bernoulli(p))
                edges.push_back({a, b});
    return Graph(n, std::move(edges));
}

BipartiteGraph random_bipartite(int left, int right, double p, RngStream & rng)
{
    if (left < 0 || right < 0 || p < 0.0 || p > 1.0)
        throw std::invalid_argument("random_bipartite: need sizes >= 0 and p in [0,1]");
    std::vector<BipartiteGraph::Pair> edges;
    for (int a = 0; a < left; ++a)
        for (int b = 0; b < right; ++b)
            if (rng.bernoulli(p))
                edges.push_back({a, b});
    return BipartiteGraph(left, right, std::move(edges));
}

Bipartition random_equitable_bipartition(const Graph & g, RngStream & rng, int retry_cap)
{
    int n = g.vertex_count();
    if (n < 2)
        throw std::invalid_argument("random_equitable_bipartition: need at least 2 vertices");
    const double target = g.density();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::vector<int> side(static_cast<std::size_t>(n));
    double best = -1.0;
    for (int attempt = 1; attempt <= retry_cap; ++attempt) {
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        int left = n / 2;
        for (int i = 0; i < n; ++i)
            side[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i < left ? 0 : 1;
        std::size_t cross = 0;
        for (const auto & e : g.edges())
            cross += side[static_cast<std::size_t>(e.u)] != side[static_cast<std::size_t>(e.v)];
        double density = static_cast<double>(cross) / (static_cast<double>(left) * (n - left));
        best = std::max(best, density);
        if (density >= target) {
            Bipartition out;
            out.left.assign(order.begin(), order.begin() + left);
            out.right.assign(order.begin() + left, order.end());
            std::sort(out.left.begin(), out.left.end());
            std::sort(out.right.begin(), out.right.end());
            std::vector<int> index(static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < out.left.size(); ++i)
                index[static_cast<std::size_t>(out.left[i])] = static_cast<int>(i);
            for (std::size_t i = 0; i < out.right.size(); ++i)
                index[static_cast<std::size_t>(out.right[i])] = static_cast<int>(i);
            std::vector<BipartiteGraph::Pair> pairs;
            pairs.reserve(cross);
            for (const auto & e : g.edges()) {
                auto su = side[static_cast<std::size_t>(e.u)];
                if (su == side[static_cast<std::size_t>(e.v)])
                    continue;
                int a = su == 0 ? e.u : e.v;
                int b = su == 0 ? e.v : e.u;
                pairs.push_back({index[static_cast<std::size_t>(a)], index[static_cast<std::size_t>(b)]});
            }
            out.graph = BipartiteGraph(left, n - left, std::move(pairs));
            out.cross_density = density;
            out.graph_density = target;
            out.attempts = attempt;
            return out;
        }
    }
    throw SearchFailure("random_equitable_bipartition", "retry cap exhausted",
                        {{"retry_cap", retry_cap}, {"best_cross_density", best}, {"target_density", target}});
}

} // namespace exlab
