#include <exlab/errors.hpp>
#include <exlab/lll_embed.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace exlab::embed {

DownClosedHypergraph::DownClosedHypergraph(int n, int k, Bitset top) : n_(n), k_(k)
{
    if (n < 0 || k < 1 || k > n)
        throw std::invalid_argument("DownClosedHypergraph: need 1 <= k <= N");
    binom_.emplace(n, k);
    std::uint64_t total = (*binom_)(n, k);
    if (top.size() != total)
        throw std::invalid_argument("DownClosedHypergraph: top bitset has the wrong length");
    top_count_ = top.count();
    levels_.resize(static_cast<std::size_t>(k) + 1);
    levels_[static_cast<std::size_t>(k)] = std::move(top);
    // close downwards one level at a time
    for (int l = k - 1; l >= 1; --l) {
        Bitset level(static_cast<std::size_t>((*binom_)(n, l)));
        const auto & above = levels_[static_cast<std::size_t>(l) + 1];
        std::vector<int> sub(static_cast<std::size_t>(l));
        above.for_each([&](std::size_t rank) {
            auto s = binom_->unrank(rank, l + 1);
            for (int skip = 0; skip <= l; ++skip) {
                for (int i = 0, j = 0; i <= l; ++i)
                    if (i != skip)
                        sub[static_cast<std::size_t>(j++)] = s[static_cast<std::size_t>(i)];
                level.set(binom_->rank(sub));
            }
        });
        levels_[static_cast<std::size_t>(l)] = std::move(level);
    }
    levels_[0] = Bitset(1);
    if (top_count_ > 0)
        levels_[0].set(0);
}

double DownClosedHypergraph::top_density() const
{
    auto total = static_cast<double>((*binom_)(n_, k_));
    return total == 0 ? 1.0 : static_cast<double>(top_count_) / total;
}

bool DownClosedHypergraph::member(std::span<const int> sorted) const
{
    auto l = static_cast<int>(sorted.size());
    if (l > k_)
        return false;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] < 0 || sorted[i] >= n_ || (i > 0 && sorted[i] <= sorted[i - 1]))
            throw std::invalid_argument("member: expected a sorted subset of distinct vertices");
    return levels_[static_cast<std::size_t>(l)].test(l == 0 ? 0 : binom_->rank(sorted));
}

std::uint64_t DownClosedHypergraph::nonmember_count(int level) const
{
    if (level < 0 || level > k_)
        throw std::invalid_argument("nonmember_count: level out of range");
    const auto & bits = levels_[static_cast<std::size_t>(level)];
    return bits.size() - bits.count();
}

DownClosedHypergraph random_dense_dch(int n, int k, double delta, RngStream & rng)
{
    if (!(delta >= 0.0 && delta < 1.0))
        throw std::invalid_argument("random_dense_dch: delta must lie in [0,1)");
    if (k < 1 || k > n)
        throw std::invalid_argument("random_dense_dch: need 1 <= k <= N");
    double total = binomial(n, k);
    if (total > 1e8)
        throw ResourceGuard("random_dense_dch: C(N,k) exceeds 10^8");
    auto c = static_cast<int>(total);
    Bitset top(static_cast<std::size_t>(c));
    top.set_all();
    auto remove = static_cast<int>(std::floor(delta * total));
    for (int rank : rng.sample(c, remove))
        top.reset(static_cast<std::size_t>(rank));
    return DownClosedHypergraph(n, k, std::move(top));
}

int TargetHypergraph::max_degree() const
{
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (const auto & e : edges)
        for (int v : e)
            ++deg[static_cast<std::size_t>(v)];
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

int TargetHypergraph::max_edge_size() const
{
    std::size_t best = 0;
    for (const auto & e : edges)
        best = std::max(best, e.size());
    return static_cast<int>(best);
}

TargetHypergraph cube_neighbourhood_hypergraph(int d)
{
    auto q = hypercube(d);
    TargetHypergraph h;
    h.n = q.vertex_count();
    for (int v = 0; v < h.n; ++v) {
        auto nb = q.neighbors(v);
        h.edges.emplace_back(nb.begin(), nb.end());
    }
    return h;
}

bool verify_embedding(const TargetHypergraph & h, const DownClosedHypergraph & g, std::span<const int> map)
{
    if (static_cast<int>(map.size()) != h.n)
        return false;
    std::vector<int> seen(map.begin(), map.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        return false;
    if (!seen.empty() && (seen.front() < 0 || seen.back() >= g.vertex_count()))
        return false;
    std::vector<int> img;
    for (const auto & e : h.edges) {
        img.clear();
        for (int v : e)
            img.push_back(map[static_cast<std::size_t>(v)]);
        std::sort(img.begin(), img.end());
        if (!g.member(img))
            return false;
    }
    return true;
}

EmbeddingResult resample_embed(const TargetHypergraph & h, const DownClosedHypergraph & g, RngStream & rng, int round_cap)
{
    const int n = h.n;
    const int big_n = g.vertex_count();
    const int k = g.uniformity();
    for (const auto & e : h.edges) {
        if (e.empty() || static_cast<int>(e.size()) > k)
            throw std::invalid_argument("resample_embed: target edge sizes must lie in [1, k]");
        for (int v : e)
            if (v < 0 || v >= n)
                throw std::invalid_argument("resample_embed: target edge has a vertex outside 0..n-1");
    }
    if (n > big_n)
        throw SearchFailure("resample_embed", "target has more vertices than the host",
                            {{"n", n}, {"N", big_n}});

    EmbeddingResult out;
    const int delta_h = std::max(1, h.max_degree());
    out.delta = g.missing_fraction();
    out.delta_bound = 1.0 / (4.0 * k * delta_h) * std::pow(2.0, -8.0 * k * n / big_n);
    out.in_regime = big_n >= 16 * n && out.delta <= out.delta_bound;
    if (big_n < 16 * n)
        out.warnings.push_back("N < 16n: outside the lemma's regime");
    if (out.delta > out.delta_bound)
        out.warnings.push_back("missing fraction above the lemma's bound");

    std::vector<int> f(static_cast<std::size_t>(n));
    for (auto & x : f)
        x = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(big_n)));

    std::vector<int> img;
    auto edge_bad = [&](const std::vector<int> & e) {
        img.clear();
        for (int v : e)
            img.push_back(f[static_cast<std::size_t>(v)]);
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end())
            return false; // not distinct: that is an A event
        return !g.member(img);
    };
    // lowest-index violated event: pairs first, then edges
    auto first_violation = [&](std::vector<int> & vars) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (f[static_cast<std::size_t>(u)] == f[static_cast<std::size_t>(v)]) {
                    vars = {u, v};
                    return true;
                }
        for (const auto & e : h.edges)
            if (edge_bad(e)) {
                vars = e;
                return true;
            }
        return false;
    };

    std::vector<int> vars;
    while (first_violation(vars)) {
        if (out.rounds >= round_cap) {
            nlohmann::json pending = nlohmann::json::array();
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (f[static_cast<std::size_t>(u)] == f[static_cast<std::size_t>(v)])
                        pending.push_back({{"event", "A"}, {"u", u}, {"v", v}});
            for (std::size_t i = 0; i < h.edges.size(); ++i)
                if (edge_bad(h.edges[i]))
                    pending.push_back({{"event", "B"}, {"edge", i}});
            throw SearchFailure("resample_embed", "round cap exhausted",
                                {{"round_cap", round_cap}, {"violated", pending}});
        }
        for (int v : vars)
            f[static_cast<std::size_t>(v)] = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(big_n)));
        ++out.rounds;
    }
    out.map = f;
    if (!verify_embedding(h, g, out.map))
        throw std::logic_error("resample_embed: result failed re-verification");
    return out;
}

DrcResult drc_subset(const BipartiteGraph & b, const DrcParams & p, RngStream & rng, int retry_cap)
{
    const int n1 = b.left_size();
    const int n2 = b.right_size();
    if (p.k < 1 || p.n < 1 || !(p.eps > 0.0 && p.eps <= 1.0) || !(p.b > 0.0))
        throw std::invalid_argument("drc_subset: need k, n >= 1, eps in (0,1], b > 0");
    if (n1 < 1 || n2 < 1)
        throw std::invalid_argument("drc_subset: empty side");
    if (b.density() + 1e-12 < p.eps)
        throw std::invalid_argument("drc_subset: density below eps");
    DrcResult out;
    const double big_n = std::min(n1, n2);
    const double need = std::pow(p.eps, -p.k) * std::max(p.b * p.n, 4.0 * p.k);
    out.precondition_met = big_n >= need;
    if (p.enforce_precondition && !out.precondition_met)
        throw std::invalid_argument("drc_subset: N = " + std::to_string(static_cast<int>(big_n)) +
                                    " is below eps^{-k} max(bn, 4k) = " + std::to_string(need));
    out.size_floor = std::pow(2.0, -1.0 / p.k) * std::pow(p.eps, p.k) * n1;
    const double bad_factor = std::pow(2.0, p.k + 1) * std::pow(p.b, -p.k);

    DrcResult best;
    bool have_best = false;
    for (int attempt = 1; attempt <= retry_cap; ++attempt) {
        Bitset common(static_cast<std::size_t>(n1));
        common.set_all();
        for (int i = 0; i < p.k; ++i)
            common &= b.right_row(static_cast<int>(rng.uniform(static_cast<std::uint64_t>(n2))));
        DrcResult cur = out;
        cur.u = common.to_vector();
        cur.attempts = attempt;
        if (static_cast<double>(cur.u.size()) < out.size_floor) {
            if (!have_best || cur.u.size() > best.u.size()) {
                best = cur;
                have_best = true;
            }
            continue;
        }
        if (binomial(static_cast<double>(cur.u.size()), p.k) > 2e7)
            throw ResourceGuard("drc_subset: too many k-subsets of U to count");
        cur.ksets = binomial_u64(static_cast<int>(cur.u.size()), p.k);
        cur.bad_ceiling = bad_factor * static_cast<double>(cur.ksets);
        std::vector<Bitset> stack;
        // count k-subsets of U with fewer than n common neighbours
        auto rec = [&](auto && self, std::size_t from, int depth) -> void {
            for (std::size_t i = from; i < cur.u.size(); ++i) {
                Bitset c = depth == 0 ? b.left_row(cur.u[i]) : stack.back();
                if (depth > 0)
                    c &= b.left_row(cur.u[i]);
                if (depth + 1 == p.k) {
                    cur.bad += c.count() < static_cast<std::size_t>(p.n);
                    continue;
                }
                if (c.count() < static_cast<std::size_t>(p.n)) {
                    // every extension is bad as well
                    cur.bad += binomial_u64(static_cast<int>(cur.u.size() - i - 1), p.k - depth - 1);
                    continue;
                }
                stack.push_back(std::move(c));
                self(self, i + 1, depth + 1);
                stack.pop_back();
            }
        };
        rec(rec, 0, 0);
        if (static_cast<double>(cur.bad) < cur.bad_ceiling)
            return cur;
        if (!have_best || cur.u.size() > best.u.size()) {
            best = cur;
            have_best = true;
        }
    }
    throw SearchFailure("drc_subset", "retry cap exhausted",
                        {{"retry_cap", retry_cap},
                         {"best_size", best.u.size()},
                         {"size_floor", out.size_floor},
                         {"best_bad", best.bad},
                         {"best_bad_ceiling", best.bad_ceiling}});
}

AuxPair build_aux_pair(const Graph & h, std::span<const int> v1, std::span<const int> v2, const Graph & g,
                       std::span<const int> u, int n)
{
    AuxPair out;
    std::vector<int> index(static_cast<std::size_t>(h.vertex_count()), -1);
    for (std::size_t i = 0; i < v1.size(); ++i)
        index[static_cast<std::size_t>(v1[i])] = static_cast<int>(i);
    out.target.n = static_cast<int>(v1.size());
    out.target_vertices.assign(v1.begin(), v1.end());
    int k = 1;
    std::set<std::vector<int>> seen;
    for (int w : v2) {
        std::vector<int> t;
        for (int x : h.neighbors(w)) {
            if (index[static_cast<std::size_t>(x)] < 0)
                throw ValidationError("build_aux_pair: V_2 vertex adjacent to a vertex outside V_1");
            t.push_back(index[static_cast<std::size_t>(x)]);
        }
        if (t.empty())
            continue;
        std::sort(t.begin(), t.end());
        k = std::max(k, static_cast<int>(t.size()));
        if (seen.insert(t).second)
            out.target.edges.push_back(std::move(t));
    }
    out.target_max_degree = out.target.max_degree();

    const int nu = static_cast<int>(u.size());
    out.host_vertices.assign(u.begin(), u.end());
    if (nu < k)
        throw SearchFailure("build_aux_pair", "U is smaller than the edge size k", {{"U", nu}, {"k", k}});
    if (binomial(nu, k) > 1e7)
        throw ResourceGuard("build_aux_pair: C(|U|, k) exceeds 10^7");
    if (!g.has_rows())
        throw ResourceGuard("build_aux_pair: host graph too large for adjacency rows");
    BinomialTable binom(nu, k);
    Bitset top(static_cast<std::size_t>(binom(nu, k)));
    std::vector<Bitset> stack;
    std::vector<int> chosen;
    auto rec = [&](auto && self, int from, int depth) -> void {
        for (int i = from; i < nu; ++i) {
            Bitset c = depth == 0 ? g.row(u[static_cast<std::size_t>(i)]) : stack.back();
            if (depth > 0)
                c &= g.row(u[static_cast<std::size_t>(i)]);
            if (c.count() < static_cast<std::size_t>(n))
                continue;
            chosen.push_back(i);
            if (depth + 1 == k)
                top.set(binom.rank(chosen));
            else {
                stack.push_back(std::move(c));
                self(self, i + 1, depth + 1);
                stack.pop_back();
            }
            chosen.pop_back();
        }
    };
    rec(rec, 0, 0);
    out.host = DownClosedHypergraph(nu, k, std::move(top));
    return out;
}

Sides bipartite_sides(const Graph & h)
{
    const int n = h.vertex_count();
    std::vector<int> side(static_cast<std::size_t>(n), -1);
    for (int s = 0; s < n; ++s) {
        if (side[static_cast<std::size_t>(s)] >= 0)
            continue;
        side[static_cast<std::size_t>(s)] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : h.neighbors(v)) {
                if (side[static_cast<std::size_t>(w)] < 0) {
                    side[static_cast<std::size_t>(w)] = 1 - side[static_cast<std::size_t>(v)];
                    q.push(w);
                }
                else if (side[static_cast<std::size_t>(w)] == side[static_cast<std::size_t>(v)])
                    throw ValidationError("H is not bipartite");
            }
        }
    }
    int max0 = 0, max1 = 0;
    for (int v = 0; v < n; ++v)
        (side[static_cast<std::size_t>(v)] == 0 ? max0 : max1) = std::max(side[static_cast<std::size_t>(v)] == 0 ? max0 : max1, h.degree(v));
    int v2_side = max1 <= max0 ? 1 : 0;
    Sides out;
    for (int v = 0; v < n; ++v)
        (side[static_cast<std::size_t>(v)] == v2_side ? out.v2 : out.v1).push_back(v);
    out.k = v2_side == 1 ? max1 : max0;
    out.delta = v2_side == 1 ? max0 : max1;
    return out;
}

bool verify_monochromatic_copy(const EdgeColoring & coloring, const Graph & h, std::span<const int> map, int color)
{
    const int big_n = coloring.graph().vertex_count();
    if (static_cast<int>(map.size()) != h.vertex_count())
        return false;
    std::vector<int> seen(map.begin(), map.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        return false;
    if (!seen.empty() && (seen.front() < 0 || seen.back() >= big_n))
        return false;
    for (auto e : h.edges()) {
        auto idx = coloring.graph().edge_index(map[static_cast<std::size_t>(e.u)], map[static_cast<std::size_t>(e.v)]);
        if (!idx || coloring.color(*idx) != color)
            return false;
    }
    return true;
}

EdgeColoring random_two_coloring(int n, RngStream & rng)
{
    Graph g = complete_graph(n);
    std::vector<int> colors(g.edge_count());
    for (auto & c : colors)
        c = rng.bernoulli(0.5) ? 1 : 0;
    return EdgeColoring(std::move(g), std::move(colors), 2);
}

RamseyCopy bip_ramsey_pipeline(const EdgeColoring & coloring, const Graph & h, RngStream & rng)
{
    const Graph & kn = coloring.graph();
    const int big_n = kn.vertex_count();
    if (coloring.color_count() > 2)
        throw std::invalid_argument("bip_ramsey_pipeline: expected a 2-colouring");
    if (kn.edge_count() != static_cast<std::size_t>(big_n) * static_cast<std::size_t>(big_n - 1) / 2)
        throw std::invalid_argument("bip_ramsey_pipeline: colouring must be of a complete graph");
    const int n = h.vertex_count();
    if (n > big_n)
        throw SearchFailure("pipeline", "H has more vertices than K_N", {{"n", n}, {"N", big_n}});

    RamseyCopy out;
    std::size_t ones = 0;
    for (int c : coloring.colors())
        ones += c == 1;
    out.color = ones * 2 > kn.edge_count() ? 1 : 0;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < kn.edge_count(); ++i)
        if (coloring.color(i) == out.color)
            keep.push_back(i);
    Graph mono = kn.edge_subgraph(keep);

    auto sides = bipartite_sides(h);
    out.k = sides.k;
    out.delta = sides.delta;
    out.map.assign(static_cast<std::size_t>(n), -1);

    if (h.edge_count() > 0) {
        auto part = random_equitable_bipartition(mono, rng);
        const BipartiteGraph & b = part.graph;
        out.eps = part.cross_density;
        const int k = sides.k;
        const double side_n = std::min(b.left_size(), b.right_size());
        out.b = std::min(16.0 * std::pow(static_cast<double>(sides.delta), 1.0 / k), side_n * std::pow(out.eps, k) / n);
        DrcParams params{out.eps, k, out.b, n, false};
        out.drc = drc_subset(b, params, rng);
        if (!out.drc.precondition_met)
            out.warnings.push_back("dependent random choice run below N >= eps^{-k} max(bn, 4k)");

        auto aux = build_aux_pair(h, sides.v1, sides.v2, b.to_graph(), out.drc.u, n);
        out.embedding = resample_embed(aux.target, aux.host, rng);
        for (const auto & w : out.embedding.warnings)
            out.warnings.push_back("embedding: " + w);
        // V_1 images, as left indices of the bipartition
        std::vector<int> left_of(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < aux.target_vertices.size(); ++i) {
            int left = out.drc.u[static_cast<std::size_t>(out.embedding.map[i])];
            left_of[static_cast<std::size_t>(aux.target_vertices[i])] = left;
            out.map[static_cast<std::size_t>(aux.target_vertices[i])] = part.left[static_cast<std::size_t>(left)];
        }
        // V_2: smallest unused common neighbour of the images
        Bitset used_right(static_cast<std::size_t>(b.right_size()));
        for (int w : sides.v2) {
            auto nb = h.neighbors(w);
            if (nb.empty())
                continue;
            Bitset c = b.left_row(left_of[static_cast<std::size_t>(nb[0])]);
            for (std::size_t i = 1; i < nb.size(); ++i)
                c &= b.left_row(left_of[static_cast<std::size_t>(nb[i])]);
            c.subtract(used_right);
            auto pick = c.find_first();
            if (pick >= c.size())
                throw SearchFailure("placement", "no free common neighbour for a V_2 vertex", {{"vertex", w}});
            used_right.set(pick);
            out.map[static_cast<std::size_t>(w)] = part.right[pick];
        }
    }
    // isolated vertices go anywhere unused
    Bitset used(static_cast<std::size_t>(big_n));
    for (int x : out.map)
        if (x >= 0)
            used.set(static_cast<std::size_t>(x));
    for (auto & x : out.map)
        if (x < 0) {
            std::size_t free = 0;
            while (used.test(free))
                ++free;
            x = static_cast<int>(free);
            used.set(free);
        }
    if (!verify_monochromatic_copy(coloring, h, out.map, out.color))
        throw std::logic_error("bip_ramsey_pipeline: copy failed re-verification");
    return out;
}

} // namespace exlab::embed
