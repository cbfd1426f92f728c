#include <exlab/bitset.hpp>
#include <exlab/errors.hpp>
#include <exlab/rsgraph.hpp>

#include <algorithm>
#include <bit>
#include <queue>
#include <set>
#include <stdexcept>

namespace exlab::rsgraph {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

/// b^e, or a value above `cap` on overflow.
std::uint64_t capped_pow(std::uint64_t b, int e, std::uint64_t cap)
{
    std::uint64_t out = 1;
    for (int i = 0; i < e; ++i) {
        if (out > cap / b)
            return cap + 1;
        out *= b;
    }
    return out;
}

} // namespace

// ------------------------------------------------------------ 3-AP-free sets

ApFreeSet behrend_set(int n)
{
    if (n < 1)
        throw std::invalid_argument("behrend_set: N must be positive");
    if (n > 10'000'000)
        throw ResourceGuard("behrend_set: N above 10^7");
    ApFreeSet best;
    best.n = n;
    best.elements = {1};
    best.d = 1;
    best.j = 1;
    const auto cap = static_cast<std::uint64_t>(2 * static_cast<std::int64_t>(n) - 1);
    std::uint64_t best_size = 1;
    for (int j = 1; capped_pow(3, j, cap) <= cap; ++j) {
        for (int d = 2; d <= 64 && capped_pow(static_cast<std::uint64_t>(2 * d - 1), j, cap) <= cap; ++d) {
            std::uint64_t size = 0;
            long shell = -1;
            if (d == 2) {
                size = std::uint64_t{1} << j;
            }
            else {
                // vectors per squared norm, one coordinate at a time
                std::vector<std::uint64_t> count{1};
                for (int c = 0; c < j; ++c) {
                    std::vector<std::uint64_t> next(count.size() + sz((d - 1) * (d - 1)), 0);
                    for (std::size_t k = 0; k < count.size(); ++k)
                        if (count[k])
                            for (int a = 0; a < d; ++a)
                                next[k + sz(a * a)] += count[k];
                    count = std::move(next);
                }
                for (std::size_t k = 0; k < count.size(); ++k)
                    if (count[k] > size) {
                        size = count[k];
                        shell = static_cast<long>(k);
                    }
            }
            if (size > best_size) {
                best_size = size;
                best.d = d;
                best.j = j;
                best.shell = shell;
            }
        }
    }
    if (best.d >= 2) {
        const int d = best.d, j = best.j;
        const std::int64_t base = 2 * d - 1;
        std::vector<int> digits(sz(j), 0);
        best.elements.clear();
        for (;;) {
            std::int64_t value = 0, norm = 0;
            for (int c = j - 1; c >= 0; --c) {
                value = value * base + digits[sz(c)];
                norm += static_cast<std::int64_t>(digits[sz(c)]) * digits[sz(c)];
            }
            if (best.shell < 0 || norm == best.shell)
                best.elements.push_back(static_cast<int>(value + 1));
            int c = 0;
            while (c < j && ++digits[sz(c)] == d)
                digits[sz(c++)] = 0;
            if (c == j)
                break;
        }
        std::sort(best.elements.begin(), best.elements.end());
    }
    if (best.elements.size() <= 100'000) {
        if (auto ap = find_three_ap(best.elements))
            throw std::logic_error("behrend_set: output contains a 3-AP");
    }
    return best;
}

std::optional<std::array<int, 3>> find_three_ap(std::span<const int> sorted)
{
    if (sorted.empty())
        return std::nullopt;
    int top = sorted.back();
    std::vector<char> in(sz(top) + 1, 0);
    for (int v : sorted)
        in[sz(v)] = 1;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t k = i + 1; k < sorted.size(); ++k) {
            int s = sorted[i] + sorted[k];
            if (s % 2 == 0 && in[sz(s / 2)])
                return std::array<int, 3>{sorted[i], s / 2, sorted[k]};
        }
    return std::nullopt;
}

std::optional<std::array<int, 3>> sample_three_ap(std::span<const int> sorted, RngStream & rng, std::uint64_t samples)
{
    if (sorted.size() < 2)
        return std::nullopt;
    std::vector<char> in(sz(sorted.back()) + 1, 0);
    for (int v : sorted)
        in[sz(v)] = 1;
    for (std::uint64_t i = 0; i < samples; ++i) {
        int x = sorted[rng.uniform(sorted.size())];
        int z = sorted[rng.uniform(sorted.size())];
        if (x != z && (x + z) % 2 == 0 && in[sz((x + z) / 2)])
            return std::array<int, 3>{std::min(x, z), (x + z) / 2, std::max(x, z)};
    }
    return std::nullopt;
}

int max_ap_free_size(int n)
{
    if (n < 0 || n > 40)
        throw ResourceGuard("max_ap_free_size: n must lie in 0..40");
    // r[len] for every prefix length; an interval's value only depends on its length
    std::vector<int> r(sz(n) + 1, 0);
    for (int len = 1; len <= n; ++len) {
        int best = r[sz(len - 1)];
        // elements are 0..len-1; adding x forbids 2x - y for every chosen y < x
        auto rec = [&](auto && self, int x, std::uint64_t chosen, std::uint64_t banned, int size) -> void {
            if (size > best)
                best = size;
            if (x >= len || size + r[sz(len - x)] <= best)
                return;
            if (!(banned >> x & 1)) {
                std::uint64_t nb = banned;
                for (std::uint64_t c = chosen; c; c &= c - 1) {
                    int y = std::countr_zero(c);
                    int z = 2 * x - y;
                    if (z < len)
                        nb |= std::uint64_t{1} << z;
                }
                self(self, x + 1, chosen | std::uint64_t{1} << x, nb, size + 1);
            }
            self(self, x + 1, chosen, banned, size);
        };
        // the first element can be taken to be 0
        rec(rec, 1, 1, 0, 1);
        r[sz(len)] = best;
    }
    return r[sz(n)];
}

// ------------------------------------------------------------ RS graphs

RsCheck verify_rs(const RsDecomposition & d)
{
    auto fail = [](std::string why, int m = -1) { return RsCheck{false, std::move(why), m}; };
    const Graph & g = d.graph;
    const int size = d.matching_size();
    std::vector<char> used(g.edge_count(), 0);
    std::size_t covered = 0;
    std::vector<int> touched(sz(g.vertex_count()), -1);
    for (std::size_t i = 0; i < d.matchings.size(); ++i) {
        const auto & m = d.matchings[i];
        auto mi = static_cast<int>(i);
        if (static_cast<int>(m.size()) != size)
            return fail("matching sizes differ", mi);
        for (const auto & e : m) {
            auto idx = g.edge_index(e.u, e.v);
            if (!idx)
                return fail("matching edge not in the graph", mi);
            if (used[*idx])
                return fail("matchings share an edge", mi);
            used[*idx] = 1;
            ++covered;
            for (int v : {e.u, e.v}) {
                if (touched[sz(v)] == mi)
                    return fail("not a matching at vertex " + std::to_string(v), mi);
                touched[sz(v)] = mi;
            }
        }
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = a + 1; b < m.size(); ++b) {
                const auto & e = m[a];
                const auto & f = m[b];
                if (g.has_edge(e.u, f.u) || g.has_edge(e.u, f.v) || g.has_edge(e.v, f.u) || g.has_edge(e.v, f.v))
                    return fail("matching is not induced", mi);
            }
    }
    if (d.spanning && covered != g.edge_count())
        return fail("matchings do not cover the graph");
    return {};
}

RsDecomposition rs_from_set(std::span<const int> b, int m)
{
    if (m < 1)
        throw std::invalid_argument("rs_from_set: m must be positive");
    std::vector<int> set(b.begin(), b.end());
    std::sort(set.begin(), set.end());
    if (set.empty() || set.front() < 1 || set.back() > m || std::adjacent_find(set.begin(), set.end()) != set.end())
        throw std::invalid_argument("rs_from_set: B must be a non-empty subset of 1..m");
    if (find_three_ap(set))
        throw std::invalid_argument("rs_from_set: B contains a 3-term progression");
    RsDecomposition out;
    out.left_size = 2 * m;
    std::vector<Edge> edges;
    for (int x = 1; x <= m; ++x) {
        std::vector<Edge> match;
        for (int v : set) {
            auto e = make_edge(x + v - 1, 2 * m + x + 2 * v - 1);
            match.push_back(e);
            edges.push_back(e);
        }
        out.matchings.push_back(std::move(match));
    }
    out.graph = Graph(5 * m, std::move(edges));
    out.info = {{"construction", "difference"}, {"m", m}, {"B", set.size()}};
    auto check = verify_rs(out);
    if (!check.pass)
        throw std::logic_error("rs_from_set: " + check.reason);
    return out;
}

RsDecomposition rs_from_behrend(int n, std::optional<int> chunk)
{
    if (n < 15)
        throw std::invalid_argument("rs_from_behrend: N must be at least 15");
    const int m = n / 5;
    auto b = behrend_set(m);
    auto out = rs_from_set(b.elements, m);
    out.info["N"] = n;
    out.info["behrend"] = {{"d", b.d}, {"j", b.j}, {"shell", b.shell}, {"size", b.elements.size()}};
    if (chunk)
        out = split_matchings(out, *chunk);
    return out;
}

RsDecomposition split_matchings(const RsDecomposition & d, int chunk)
{
    if (chunk < 1 || chunk > d.matching_size())
        throw std::invalid_argument("split_matchings: chunk must lie in 1..matching size");
    RsDecomposition out;
    out.left_size = d.left_size;
    out.spanning = d.spanning;
    out.info = d.info;
    std::vector<Edge> kept;
    std::size_t dropped = 0;
    for (const auto & m : d.matchings) {
        std::size_t pieces = m.size() / sz(chunk);
        for (std::size_t p = 0; p < pieces; ++p) {
            std::vector<Edge> piece(m.begin() + static_cast<std::ptrdiff_t>(p * sz(chunk)),
                                    m.begin() + static_cast<std::ptrdiff_t>((p + 1) * sz(chunk)));
            kept.insert(kept.end(), piece.begin(), piece.end());
            out.matchings.push_back(std::move(piece));
        }
        dropped += m.size() - pieces * sz(chunk);
    }
    if (!d.spanning) {
        // keep edges outside the matchings as they were
        std::set<Edge> in_matchings;
        for (const auto & m : d.matchings)
            in_matchings.insert(m.begin(), m.end());
        for (const auto & e : d.graph.edges())
            if (!in_matchings.count(e))
                kept.push_back(e);
    }
    out.graph = Graph(d.graph.vertex_count(), std::move(kept));
    out.info["chunk"] = {{"size", chunk}, {"dropped_edges", dropped}, {"matchings", out.matchings.size()}};
    auto check = verify_rs(out);
    if (!check.pass)
        throw std::logic_error("split_matchings: " + check.reason);
    return out;
}

RsDecomposition bipartite_double(const RsDecomposition & d)
{
    const int n = d.graph.vertex_count();
    RsDecomposition out;
    out.left_size = n;
    out.spanning = d.spanning;
    std::vector<Edge> edges;
    for (const auto & e : d.graph.edges()) {
        edges.push_back(make_edge(e.u, n + e.v));
        edges.push_back(make_edge(e.v, n + e.u));
    }
    for (const auto & m : d.matchings) {
        std::vector<Edge> dm;
        for (const auto & e : m) {
            dm.push_back(make_edge(e.u, n + e.v));
            dm.push_back(make_edge(e.v, n + e.u));
        }
        out.matchings.push_back(std::move(dm));
    }
    out.graph = Graph(2 * n, std::move(edges));
    out.info = {{"doubled_from", d.info}};
    auto check = verify_rs(out);
    if (!check.pass)
        throw std::logic_error("bipartite_double: " + check.reason);
    return out;
}

// ------------------------------------------------------------ induced matchings

namespace {

MatchingSearch search_matching(const Graph & g, const std::vector<char> & allowed, int size,
                               std::uint64_t node_budget, std::span<const std::size_t> order)
{
    MatchingSearch out;
    if (size <= 0) {
        out.matching = std::vector<Edge>{};
        return out;
    }
    std::vector<Edge> cand;
    for (std::size_t i : order)
        if (allowed[i])
            cand.push_back(g.edge(i));
    const std::size_t m = cand.size();
    std::vector<Bitset> compat(m, Bitset(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            const auto & e = cand[a];
            const auto & f = cand[b];
            bool disjoint = e.u != f.u && e.u != f.v && e.v != f.u && e.v != f.v;
            if (disjoint && !g.has_edge(e.u, f.u) && !g.has_edge(e.u, f.v) && !g.has_edge(e.v, f.u) &&
                !g.has_edge(e.v, f.v)) {
                compat[a].set(b);
                compat[b].set(a);
            }
        }
    std::vector<std::size_t> chosen;
    bool aborted = false;
    auto rec = [&](auto && self, const Bitset & pool, int depth) -> bool {
        if (depth == size)
            return true;
        if (depth + static_cast<int>(pool.count()) < size)
            return false;
        for (std::size_t e = pool.find_first(); e < m; e = pool.find_next(e + 1)) {
            if (++out.nodes > node_budget) {
                aborted = true;
                return false;
            }
            Bitset next = pool;
            next &= compat[e];
            for (std::size_t f = next.find_first(); f <= e && f < m; f = next.find_next(f + 1))
                next.reset(f);
            chosen.push_back(e);
            if (self(self, next, depth + 1))
                return true;
            chosen.pop_back();
            if (aborted)
                return false;
        }
        return false;
    };
    Bitset all(m);
    all.set_all();
    if (rec(rec, all, 0)) {
        std::vector<Edge> found;
        for (auto e : chosen)
            found.push_back(cand[e]);
        out.matching = std::move(found);
    }
    out.exhaustive = !aborted;
    return out;
}

std::vector<std::size_t> identity_order(std::size_t m)
{
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i)
        order[i] = i;
    return order;
}

} // namespace

MatchingSearch find_induced_matching(const Graph & g, const std::vector<char> & allowed, int size,
                                     std::uint64_t node_budget)
{
    return search_matching(g, allowed, size, node_budget, identity_order(g.edge_count()));
}

bool has_induced_matching(const Graph & g, const std::vector<char> & allowed, int size)
{
    const int n = g.vertex_count();
    if (n > 64)
        throw ResourceGuard("has_induced_matching: at most 64 vertices");
    if (size <= 0)
        return true;
    std::vector<std::uint64_t> adj(sz(n), 0);
    for (auto e : g.edges()) {
        adj[sz(e.u)] |= std::uint64_t{1} << e.v;
        adj[sz(e.v)] |= std::uint64_t{1} << e.u;
    }
    // chosen: endpoints so far; near: chosen plus their neighbours
    auto rec = [&](auto && self, int v, std::uint64_t chosen, std::uint64_t near, int count) -> bool {
        if (count == size)
            return true;
        if (v >= n || count + (n - v) / 2 < size)
            return false;
        if (!(near >> v & 1)) {
            for (int w : g.neighbors(v)) {
                if (w <= v || (near >> w & 1) || !allowed[*g.edge_index(v, w)])
                    continue;
                std::uint64_t bits = (std::uint64_t{1} << v) | (std::uint64_t{1} << w);
                if (self(self, v + 1, chosen | bits, near | bits | adj[sz(v)] | adj[sz(w)], count + 1))
                    return true;
            }
        }
        return self(self, v + 1, chosen, near, count);
    };
    return rec(rec, 0, 0, 0, 0);
}

namespace {

GreedyResult greedy_once(const Graph & g, int n, int t, std::uint64_t node_budget,
                         std::span<const std::size_t> order)
{
    GreedyResult out;
    std::vector<char> allowed(g.edge_count(), 1);
    std::vector<std::vector<Edge>> picked;
    bool exhaustive = true;
    while (static_cast<int>(picked.size()) < t) {
        auto search = search_matching(g, allowed, n, node_budget > out.nodes ? node_budget - out.nodes : 0, order);
        out.nodes += search.nodes;
        if (!search.matching) {
            exhaustive = search.exhaustive;
            break;
        }
        for (const auto & e : *search.matching)
            allowed[*g.edge_index(e.u, e.v)] = 0;
        picked.push_back(std::move(*search.matching));
    }
    std::vector<Edge> edges;
    for (const auto & m : picked)
        edges.insert(edges.end(), m.begin(), m.end());
    out.extracted.graph = Graph(g.vertex_count(), edges);
    out.extracted.matchings = picked;
    out.extracted.info = {{"n", n}, {"t", t}, {"picked", picked.size()}};
    if (static_cast<int>(picked.size()) >= t) {
        out.verdict = Verdict::rs_subgraph;
        return out;
    }
    std::vector<int> red_degree(sz(g.vertex_count()), 0);
    for (const auto & e : edges) {
        ++red_degree[sz(e.u)];
        ++red_degree[sz(e.v)];
    }
    out.red_max_degree = red_degree.empty() ? 0 : *std::max_element(red_degree.begin(), red_degree.end());
    if (!exhaustive) {
        out.verdict = Verdict::unknown;
        return out;
    }
    out.coloring.assign(g.edge_count(), 1);
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        if (!allowed[i])
            out.coloring[i] = 0;
    out.verdict = Verdict::falsified;
    auto check = verify_falsifying(g, out.coloring, t, n);
    if (!check.pass)
        throw std::logic_error("greedy_decompose: colouring failed re-verification: " + check.reason);
    return out;
}

} // namespace

GreedyResult greedy_decompose(const Graph & g, int n, int t, std::uint64_t node_budget, int restarts)
{
    if (g.vertex_count() > 40)
        throw ResourceGuard("greedy_decompose: exact search envelope is 40 vertices");
    if (n < 1 || t < 1)
        throw std::invalid_argument("greedy_decompose: n and t must be positive");
    // every run ends in a valid outcome; reorderings only give the extraction more chances
    auto order = identity_order(g.edge_count());
    RngStream rng(0x5eed);
    GreedyResult best;
    std::uint64_t nodes = 0;
    for (int run = 0; run <= restarts; ++run) {
        if (run > 0)
            rng.shuffle(order);
        auto res = greedy_once(g, n, t, node_budget > nodes ? node_budget - nodes : 0, order);
        nodes += res.nodes;
        res.nodes = nodes;
        res.extracted.info["run"] = run;
        bool better = run == 0 || res.verdict == Verdict::rs_subgraph ||
                      (best.verdict == Verdict::unknown && res.verdict == Verdict::falsified);
        if (better)
            best = std::move(res);
        best.nodes = nodes;
        if (best.verdict == Verdict::rs_subgraph)
            break;
    }
    return best;
}

ColoringCheck verify_falsifying(const Graph & g, std::span<const int> coloring, int t, int n)
{
    if (coloring.size() != g.edge_count())
        return {false, "colouring length differs from the edge count"};
    std::vector<int> red(sz(g.vertex_count()), 0);
    std::vector<char> blue(g.edge_count(), 0);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        if (coloring[i] == 0) {
            ++red[sz(g.edge(i).u)];
            ++red[sz(g.edge(i).v)];
        }
        else
            blue[i] = 1;
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (red[sz(v)] >= t)
            return {false, "red degree " + std::to_string(red[sz(v)]) + " at vertex " + std::to_string(v)};
    if (has_induced_matching(g, blue, n))
        return {false, "blue edges contain an induced matching of size n"};
    return {};
}

// ------------------------------------------------------------ arrowing

namespace {

/// Independent set of size k inside `pool`.
bool independent(const std::vector<std::uint64_t> & adj, std::uint64_t pool, int k)
{
    if (k <= 0)
        return true;
    if (std::popcount(pool) < k)
        return false;
    int u = std::countr_zero(pool);
    std::uint64_t bit = std::uint64_t{1} << u;
    return independent(adj, pool & ~adj[sz(u)] & ~bit, k - 1) || independent(adj, pool & ~bit, k);
}

bool matching_in(const std::vector<std::uint32_t> & compat, std::uint32_t pool, int k)
{
    if (k <= 0)
        return true;
    if (std::popcount(pool) < k)
        return false;
    int e = std::countr_zero(pool);
    std::uint32_t bit = std::uint32_t{1} << e;
    return matching_in(compat, pool & compat[sz(e)] & ~bit, k - 1) || matching_in(compat, pool & ~bit, k);
}

bool is_bipartite(const Graph & g)
{
    std::vector<int> side(sz(g.vertex_count()), -1);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (side[sz(s)] >= 0)
            continue;
        side[sz(s)] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : g.neighbors(v)) {
                if (side[sz(w)] < 0) {
                    side[sz(w)] = 1 - side[sz(v)];
                    q.push(w);
                }
                else if (side[sz(w)] == side[sz(v)])
                    return false;
            }
        }
    }
    return true;
}

} // namespace

bool has_monochromatic_target(const Graph & g, std::span<const int> coloring, int t, int n)
{
    // red induced star: t red neighbours, pairwise non-adjacent in G
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> leaves;
        for (int w : g.neighbors(v))
            if (coloring[*g.edge_index(v, w)] == 0)
                leaves.push_back(w);
        auto rec = [&](auto && self, std::size_t from, std::vector<int> & pick) -> bool {
            if (static_cast<int>(pick.size()) == t)
                return true;
            for (std::size_t i = from; i < leaves.size(); ++i) {
                if (std::any_of(pick.begin(), pick.end(), [&](int p) { return g.has_edge(p, leaves[i]); }))
                    continue;
                pick.push_back(leaves[i]);
                if (self(self, i + 1, pick))
                    return true;
                pick.pop_back();
            }
            return false;
        };
        std::vector<int> pick;
        if (static_cast<int>(leaves.size()) >= t && rec(rec, 0, pick))
            return true;
    }
    std::vector<char> blue(g.edge_count(), 0);
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        blue[i] = coloring[i] != 0;
    return has_induced_matching(g, blue, n);
}

ArrowInstance arrow_check(const Graph & g, int t, int n, ArrowMode mode, const RsDecomposition * d)
{
    if (t < 1 || n < 1)
        throw std::invalid_argument("arrow_check: t and n must be positive");
    ArrowInstance out;
    const int nv = g.vertex_count();
    const std::size_t m = g.edge_count();
    out.params = {{"t", t}, {"n", n}, {"vertices", nv}, {"edges", m}};
    if (mode == ArrowMode::exhaustive) {
        if (m > 24)
            throw ResourceGuard("arrow_check: exhaustive mode allows at most 24 edges");
        if (nv > 64)
            throw ResourceGuard("arrow_check: exhaustive mode allows at most 64 vertices");
        std::vector<std::uint64_t> adj(sz(nv), 0);
        for (auto e : g.edges()) {
            adj[sz(e.u)] |= std::uint64_t{1} << e.v;
            adj[sz(e.v)] |= std::uint64_t{1} << e.u;
        }
        std::vector<std::uint32_t> compat(m, 0);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                const auto & e = g.edge(a);
                const auto & f = g.edge(b);
                std::uint64_t ef = (std::uint64_t{1} << f.u) | (std::uint64_t{1} << f.v);
                std::uint64_t ee = (std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v);
                if (a != b && !(ee & ef) && !((adj[sz(e.u)] | adj[sz(e.v)]) & ef))
                    compat[a] |= std::uint32_t{1} << b;
            }
        const std::uint64_t total = std::uint64_t{1} << m;
        const std::uint32_t full = m == 32 ? ~0u : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
        std::vector<std::uint64_t> red_adj(sz(nv));
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            // bit set: red
            std::fill(red_adj.begin(), red_adj.end(), 0);
            for (std::size_t i = 0; i < m; ++i)
                if (mask >> i & 1) {
                    const auto & e = g.edge(i);
                    red_adj[sz(e.u)] |= std::uint64_t{1} << e.v;
                    red_adj[sz(e.v)] |= std::uint64_t{1} << e.u;
                }
            bool star = false;
            for (int v = 0; v < nv && !star; ++v)
                star = std::popcount(red_adj[sz(v)]) >= t && independent(adj, red_adj[sz(v)], t);
            if (star)
                continue;
            if (matching_in(compat, ~static_cast<std::uint32_t>(mask) & full, n))
                continue;
            out.verdict = ArrowVerdict::falsified;
            out.coloring.resize(m);
            for (std::size_t i = 0; i < m; ++i)
                out.coloring[i] = (mask >> i & 1) ? 0 : 1;
            if (has_monochromatic_target(g, out.coloring, t, n))
                throw std::logic_error("arrow_check: falsifying colouring failed re-verification");
            out.params["colorings_scanned"] = mask + 1;
            return out;
        }
        out.verdict = ArrowVerdict::arrows;
        out.params["colorings_scanned"] = total;
        return out;
    }

    if (d == nullptr)
        throw std::invalid_argument("arrow_check: theorem mode needs an RS decomposition");
    std::vector<std::string> failed;
    if (!is_bipartite(g))
        failed.push_back("graph is not bipartite");
    auto check = verify_rs(*d);
    if (!check.pass)
        failed.push_back("decomposition invalid: " + check.reason);
    if (!d->spanning)
        failed.push_back("decomposition is not spanning");
    bool same = d->graph.vertex_count() == nv && d->graph.edge_count() == m;
    for (std::size_t i = 0; same && i < m; ++i)
        same = g.has_edge(d->graph.edge(i).u, d->graph.edge(i).v);
    if (!same)
        failed.push_back("decomposition is of a different graph");
    const auto s = static_cast<std::int64_t>(d->matching_size());
    const auto count = static_cast<std::int64_t>(d->matching_count());
    // blue half: some matching keeps s/2 >= n blue edges; red half: average red degree >= t
    if (s < 2 * static_cast<std::int64_t>(n))
        failed.push_back("matching size below 2n");
    if (count * s < static_cast<std::int64_t>(t) * nv)
        failed.push_back("too few edges for a red star of size t");
    out.params["matching_size"] = s;
    out.params["matching_count"] = count;
    out.params["c"] = static_cast<double>(s) / n;
    out.params["average_degree"] = nv == 0 ? 0.0 : 2.0 * static_cast<double>(count * s) / nv;
    out.params["failed_hypotheses"] = failed;
    out.verdict = failed.empty() ? ArrowVerdict::arrows : ArrowVerdict::unknown;
    return out;
}

nlohmann::json to_json(const RsDecomposition & d)
{
    nlohmann::json ms = nlohmann::json::array();
    for (const auto & m : d.matchings) {
        nlohmann::json one = nlohmann::json::array();
        for (const auto & e : m)
            one.push_back({e.u, e.v});
        ms.push_back(std::move(one));
    }
    return {{"vertices", d.graph.vertex_count()},
            {"edges", d.graph.edge_count()},
            {"matching_size", d.matching_size()},
            {"matching_count", d.matching_count()},
            {"spanning", d.spanning},
            {"left_size", d.left_size},
            {"info", d.info},
            {"matchings", ms}};
}

} // namespace exlab::rsgraph
