#include <exlab/bipfree.hpp>
#include <exlab/combinatorics.hpp>
#include <exlab/errors.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace exlab::bipfree {

namespace {

constexpr double count_limit = 1e9;

double factorial(int k)
{
    double r = 1;
    for (int i = 2; i <= k; ++i)
        r *= i;
    return r;
}

/// a^x >= b^y for non-negative integers, exactly when it fits in 128 bits.
bool pow_ge(std::uint64_t a, int x, std::uint64_t b, int y)
{
    using u128 = unsigned __int128;
    constexpr u128 cap = static_cast<u128>(1) << 120;
    auto power = [&](std::uint64_t base, int e, bool & over) {
        u128 r = 1;
        for (int i = 0; i < e; ++i) {
            if (base != 0 && r > cap / base) {
                over = true;
                return r;
            }
            r *= base;
        }
        return r;
    };
    bool over_a = false, over_b = false;
    u128 pa = power(a, x, over_a);
    u128 pb = power(b, y, over_b);
    if (!over_a && !over_b)
        return pa >= pb;
    return x * std::log(static_cast<long double>(a)) >= y * std::log(static_cast<long double>(b));
}

std::size_t smallest_meeting(std::uint64_t scale, int x, std::uint64_t m, int y)
{
    // smallest F with (scale * F)^x >= m^y
    long double guess = std::pow(static_cast<long double>(m), static_cast<long double>(y) / x) / scale;
    auto f = static_cast<std::uint64_t>(std::max<long double>(0, std::floor(guess) - 2));
    while (!pow_ge(scale * f, x, m, y))
        ++f;
    return f;
}

void check_count_guard(double estimate, const std::string & what)
{
    if (estimate > count_limit)
        throw ResourceGuard("count_pattern: " + what + " = " + std::to_string(estimate) + " exceeds 10^9");
}

std::size_t exact_root(std::size_t m, int e)
{
    auto a = static_cast<std::size_t>(std::llround(std::pow(static_cast<long double>(m), 1.0L / e)));
    for (std::size_t c = a > 0 ? a - 1 : 0; c <= a + 1; ++c) {
        std::size_t p = 1;
        bool over = false;
        for (int i = 0; i < e && !over; ++i) {
            if (c != 0 && p > m / c)
                over = true;
            p *= c;
        }
        if (!over && p == m)
            return c;
    }
    return 0;
}

/// Labelled part systems extending an r-matching: edge 0 fixes the part
/// labels, every further edge picks a bijection onto the parts.
template <typename Emit>
void for_each_part_system(const KUniformHypergraph & g, const std::vector<const std::vector<int> *> & matching, Emit && emit)
{
    const int k = g.uniformity();
    const int r = static_cast<int>(matching.size());
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        parts[static_cast<std::size_t>(i)].push_back((*matching[0])[static_cast<std::size_t>(i)]);
    std::vector<int> perm(static_cast<std::size_t>(k));
    auto rec = [&](auto && self, int j) -> void {
        if (j == r) {
            // every transversal must be an edge
            std::vector<int> pick(static_cast<std::size_t>(k), 0);
            std::vector<int> e(static_cast<std::size_t>(k));
            while (true) {
                for (int i = 0; i < k; ++i)
                    e[static_cast<std::size_t>(i)] = parts[static_cast<std::size_t>(i)][static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
                std::vector<int> sorted = e;
                std::sort(sorted.begin(), sorted.end());
                if (!g.has_edge(sorted))
                    return;
                int i = k - 1;
                while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == r)
                    pick[static_cast<std::size_t>(i--)] = 0;
                if (i < 0)
                    break;
            }
            emit(parts);
            return;
        }
        std::iota(perm.begin(), perm.end(), 0);
        do {
            for (int i = 0; i < k; ++i)
                parts[static_cast<std::size_t>(i)].push_back((*matching[static_cast<std::size_t>(j)])[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
            self(self, j + 1);
            for (int i = 0; i < k; ++i)
                parts[static_cast<std::size_t>(i)].pop_back();
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    rec(rec, 1);
}

/// r-matchings of g in lexicographic order of edge indices.
template <typename F>
void for_each_matching(const KUniformHypergraph & g, int r, F && f)
{
    const auto & edges = g.edges();
    std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<const std::vector<int> *> pick;
    auto rec = [&](auto && self, std::size_t from) -> void {
        if (static_cast<int>(pick.size()) == r) {
            f(pick);
            return;
        }
        for (std::size_t i = from; i < edges.size(); ++i) {
            const auto & e = edges[i];
            if (std::any_of(e.begin(), e.end(), [&](int v) { return used[static_cast<std::size_t>(v)]; }))
                continue;
            for (int v : e)
                used[static_cast<std::size_t>(v)] = 1;
            pick.push_back(&e);
            self(self, i + 1);
            pick.pop_back();
            for (int v : e)
                used[static_cast<std::size_t>(v)] = 0;
        }
    };
    rec(rec, 0);
}

std::vector<std::vector<int>> canonical_copy(std::vector<std::vector<int>> parts)
{
    for (auto & p : parts)
        std::sort(p.begin(), p.end());
    std::sort(parts.begin(), parts.end());
    return parts;
}

} // namespace

std::uint64_t count_krr(const Graph & g, int r)
{
    if (r < 1)
        throw std::invalid_argument("count_pattern: r must be >= 1");
    check_count_guard(std::pow(2.0, r) * binomial(static_cast<double>(g.edge_count()), r), "2^r C(m,r)");
    if (!g.has_rows())
        throw ResourceGuard("count_pattern: graph too large for adjacency rows");
    const int n = g.vertex_count();
    std::uint64_t total = 0;
    std::vector<Bitset> common;
    auto rec = [&](auto && self, int from, int depth) -> void {
        for (int v = from; v < n; ++v) {
            Bitset next = depth == 0 ? g.row(v) : common.back();
            if (depth > 0)
                next &= g.row(v);
            std::size_t c = next.count();
            if (c < static_cast<std::size_t>(r))
                continue;
            if (depth + 1 == r) {
                total += binomial_u64(static_cast<int>(c), r);
                continue;
            }
            common.push_back(std::move(next));
            self(self, v + 1, depth + 1);
            common.pop_back();
        }
    };
    rec(rec, 0, 0);
    return total / 2;
}

std::uint64_t count_kpartite_pattern(const KUniformHypergraph & g, int r)
{
    if (r < 1)
        throw std::invalid_argument("count_pattern: r must be >= 1");
    const int k = g.uniformity();
    check_count_guard(std::pow(factorial(k), r) * binomial(static_cast<double>(g.edge_count()), r), "(k!)^r C(m,r)");
    std::uint64_t systems = 0;
    for_each_matching(g, r, [&](const std::vector<const std::vector<int> *> & m) {
        for_each_part_system(g, m, [&](const auto &) { ++systems; });
    });
    // each copy holds (r!)^{k-1} perfect matchings, each extended once to it
    std::uint64_t per_copy = 1;
    for (int i = 0; i < k - 1; ++i)
        per_copy *= static_cast<std::uint64_t>(factorial(r));
    return systems / per_copy;
}

std::size_t krr_floor(std::size_t m, int r) { return smallest_meeting(4, r + 1, m, r); }

std::size_t kpartite_floor(std::size_t m, int k, int r)
{
    int q = 0;
    for (int i = 0, p = 1; i < k; ++i, p *= r)
        q += p;
    return smallest_meeting(2 * static_cast<std::uint64_t>(factorial(k)), q, m, q - 1);
}

ExtractionResult extract_free(const Graph & g, int r, RngStream & rng, int retry_cap)
{
    const std::size_t m = g.edge_count();
    if (r < 2)
        throw std::invalid_argument("extract_free: r must be >= 2");
    if (m < 2)
        throw std::invalid_argument("extract_free: need at least 2 edges");
    ExtractionResult out;
    out.target_size = krr_floor(m, r);
    out.p = 0.5 * std::pow(static_cast<double>(m), -1.0 / (r + 1));
    if (count_krr(g, r) == 0) {
        out.graph = g;
        out.edges = m;
        out.short_circuit = true;
        return out;
    }
    std::size_t best = 0;
    for (int round = 0; round < retry_cap; ++round) {
        RngStream s = rng.derive(static_cast<std::uint64_t>(round));
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < m; ++i)
            if (s.bernoulli(out.p))
                keep.push_back(i);
        if (keep.size() < out.target_size)
            continue;
        Graph sample = g.edge_subgraph(keep);
        std::vector<char> alive(sample.edge_count(), 1);
        std::size_t remaining = sample.edge_count();
        for_each_krr(sample, r, [&](const KrrCopy & c) {
            std::size_t smallest = SIZE_MAX;
            bool intact = true;
            for (int a : c.a)
                for (int b : c.b) {
                    auto idx = *sample.edge_index(a, b);
                    intact = intact && alive[idx];
                    smallest = std::min(smallest, idx); // edge order is lexicographic
                }
            if (intact) {
                alive[smallest] = 0;
                --remaining;
            }
            return remaining >= out.target_size;
        });
        best = std::max(best, remaining);
        if (remaining < out.target_size)
            continue;
        std::vector<std::size_t> left;
        for (std::size_t i = 0; i < alive.size(); ++i)
            if (alive[i])
                left.push_back(i);
        out.graph = sample.edge_subgraph(left);
        out.edges = out.graph.edge_count();
        out.trials_used = round + 1;
        if (count_krr(out.graph, r) != 0)
            throw std::logic_error("extract_free: output still contains the pattern");
        return out;
    }
    throw SearchFailure("extract_free", "retry cap exhausted",
                        {{"retry_cap", retry_cap}, {"best_edges", best}, {"target", out.target_size}});
}

ExtractionResult extract_free(const KUniformHypergraph & g, int r, RngStream & rng, int retry_cap)
{
    const std::size_t m = g.edge_count();
    const int k = g.uniformity();
    if (r < 2 || k < 2)
        throw std::invalid_argument("extract_free: need r >= 2 and k >= 2");
    if (m < 2)
        throw std::invalid_argument("extract_free: need at least 2 edges");
    int q = 0;
    for (int i = 0, p = 1; i < k; ++i, p *= r)
        q += p;
    ExtractionResult out;
    out.target_size = kpartite_floor(m, k, r);
    out.p = std::pow(static_cast<double>(m), -1.0 / q) / factorial(k);
    if (count_kpartite_pattern(g, r) == 0) {
        out.hypergraph = g;
        out.edges = m;
        out.short_circuit = true;
        return out;
    }
    std::size_t best = 0;
    for (int round = 0; round < retry_cap; ++round) {
        RngStream s = rng.derive(static_cast<std::uint64_t>(round));
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < m; ++i)
            if (s.bernoulli(out.p))
                keep.push_back(i);
        if (keep.size() < out.target_size)
            continue;
        auto sample = g.edge_subgraph(keep);
        const auto & edges = sample.edges();
        std::vector<char> alive(edges.size(), 1);
        std::size_t remaining = edges.size();
        std::set<std::vector<std::vector<int>>> seen;
        auto edge_pos = [&](const std::vector<int> & e) {
            return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
        };
        for_each_matching(sample, r, [&](const std::vector<const std::vector<int> *> & mt) {
            for_each_part_system(sample, mt, [&](const std::vector<std::vector<int>> & parts) {
                auto key = canonical_copy(parts);
                if (!seen.insert(key).second)
                    return;
                // all transversals of the copy; the smallest is deleted
                std::size_t smallest = SIZE_MAX;
                bool intact = true;
                std::vector<int> pick(static_cast<std::size_t>(k), 0), e(static_cast<std::size_t>(k));
                while (true) {
                    for (int i = 0; i < k; ++i)
                        e[static_cast<std::size_t>(i)] = key[static_cast<std::size_t>(i)][static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
                    auto sorted = e;
                    std::sort(sorted.begin(), sorted.end());
                    auto idx = edge_pos(sorted);
                    intact = intact && alive[idx];
                    smallest = std::min(smallest, idx);
                    int i = k - 1;
                    while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == r)
                        pick[static_cast<std::size_t>(i--)] = 0;
                    if (i < 0)
                        break;
                }
                if (intact) {
                    alive[smallest] = 0;
                    --remaining;
                }
            });
        });
        best = std::max(best, remaining);
        if (remaining < out.target_size)
            continue;
        std::vector<std::size_t> left;
        for (std::size_t i = 0; i < alive.size(); ++i)
            if (alive[i])
                left.push_back(i);
        out.hypergraph = sample.edge_subgraph(left);
        out.edges = out.hypergraph.edge_count();
        out.trials_used = round + 1;
        if (count_kpartite_pattern(out.hypergraph, r) != 0)
            throw std::logic_error("extract_free: output still contains the pattern");
        return out;
    }
    throw SearchFailure("extract_free", "retry cap exhausted",
                        {{"retry_cap", retry_cap}, {"best_edges", best}, {"target", out.target_size}});
}

std::size_t TightInstance::bound() const
{
    // m^{r/(r+1)} = |V| exactly
    return static_cast<std::size_t>(s) * static_cast<std::size_t>(graph.right_size());
}

TightInstance tight_instance(int r, int s, std::size_t m)
{
    if (r < 2 || s < r)
        throw std::invalid_argument("tight_instance: need 2 <= r <= s");
    std::size_t a = exact_root(m, r + 1);
    if (a == 0)
        throw std::invalid_argument("tight_instance: m = " + std::to_string(m) + " is not a perfect " +
                                    std::to_string(r + 1) + "-th power");
    std::size_t v = 1;
    for (int i = 0; i < r; ++i)
        v *= a;
    if (v > 1'000'000)
        throw ResourceGuard("tight_instance: part V too large");
    TightInstance t;
    std::vector<BipartiteGraph::Pair> edges;
    for (int u = 0; u < static_cast<int>(a); ++u)
        for (int w = 0; w < static_cast<int>(v); ++w)
            edges.push_back({u, w});
    t.graph = BipartiteGraph(static_cast<int>(a), static_cast<int>(v), std::move(edges));
    t.r = r;
    t.s = s;
    t.m = m;
    return t;
}

KUniformHypergraph tight_kpartite_instance(int k, int r, std::size_t m)
{
    if (k < 2 || r < 2)
        throw std::invalid_argument("tight_kpartite_instance: need k, r >= 2");
    int q = 0;
    for (int i = 0, p = 1; i < k; ++i, p *= r)
        q += p;
    std::size_t b = exact_root(m, q);
    if (b == 0)
        throw std::invalid_argument("tight_kpartite_instance: m is not a perfect q-th power, q = " + std::to_string(q));
    if (m > 10'000'000)
        throw ResourceGuard("tight_kpartite_instance: too many edges");
    std::vector<int> sizes;
    for (int i = 0, p = 1; i < k; ++i, p *= r) {
        std::size_t sz = 1;
        for (int j = 0; j < p; ++j)
            sz *= b;
        sizes.push_back(static_cast<int>(sz));
    }
    std::vector<int> offset(static_cast<std::size_t>(k) + 1, 0);
    for (int i = 0; i < k; ++i)
        offset[static_cast<std::size_t>(i) + 1] = offset[static_cast<std::size_t>(i)] + sizes[static_cast<std::size_t>(i)];
    std::vector<std::vector<int>> edges;
    std::vector<int> pick(static_cast<std::size_t>(k), 0);
    while (true) {
        std::vector<int> e(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            e[static_cast<std::size_t>(i)] = offset[static_cast<std::size_t>(i)] + pick[static_cast<std::size_t>(i)];
        edges.push_back(std::move(e));
        int i = k - 1;
        while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == sizes[static_cast<std::size_t>(i)])
            pick[static_cast<std::size_t>(i--)] = 0;
        if (i < 0)
            break;
    }
    return KUniformHypergraph(offset.back(), k, std::move(edges));
}

bool is_krs_free(const BipartiteGraph & g, int r, int s)
{
    // r left vertices with >= s common neighbours, or s left with >= r
    auto side_free = [&](int a, int b) {
        return for_each_subset(g.left_size(), a, [&](std::span<const int> set) {
            Bitset common = g.left_row(set[0]);
            for (std::size_t i = 1; i < set.size(); ++i)
                common &= g.left_row(set[i]);
            return common.count() < static_cast<std::size_t>(b);
        });
    };
    return side_free(r, s) && side_free(s, r);
}

namespace {

struct ZSearch {
    int u = 0;                                  // smaller side size
    int nv = 0;                                 // larger side size
    int r = 0, s = 0;
    std::vector<std::uint32_t> host;            // host neighbourhood mask per v
    std::vector<int> same_as_prev;              // v-1 has the same host mask
    std::vector<std::uint32_t> rsets, ssets;    // masks of r- and s-subsets of U
    std::vector<int> rcount, scount;
    std::vector<std::vector<std::uint32_t>> options; // subsets of host[v], largest first
    std::vector<std::vector<int>> dp;           // dp[v][cap] = max edges from v.. under pair capacity
    int cap_total = 0;
    int used_cap = 0;
    std::vector<std::uint32_t> choice, best_choice;
    std::size_t best = 0;
    std::uint64_t nodes = 0, budget = 0;
    bool aborted = false;
    std::size_t upper_open = 0;

    static int bin(int n, int k) { return static_cast<int>(binomial_u64(n, k)); }

    void run(int v, std::size_t cur)
    {
        if (v == nv) {
            if (cur > best) {
                best = cur;
                best_choice = choice;
            }
            return;
        }
        std::size_t bound = cur + static_cast<std::size_t>(dp[static_cast<std::size_t>(v)][static_cast<std::size_t>(cap_total - used_cap)]);
        if (bound <= best)
            return;
        if (aborted || ++nodes > budget) {
            aborted = true;
            upper_open = std::max(upper_open, bound);
            return;
        }
        for (auto mask : options[static_cast<std::size_t>(v)]) {
            if (same_as_prev[static_cast<std::size_t>(v)] && mask > choice[static_cast<std::size_t>(v) - 1])
                continue;
            // add and check both orientations
            bool ok = true;
            std::size_t ri = 0, si = 0;
            for (; ri < rsets.size(); ++ri)
                if ((rsets[ri] & mask) == rsets[ri] && ++rcount[ri] >= s)
                    ok = false;
            for (; si < ssets.size(); ++si)
                if ((ssets[si] & mask) == ssets[si] && ++scount[si] >= r)
                    ok = false;
            int c = bin(std::popcount(mask), r);
            if (ok) {
                used_cap += c;
                choice[static_cast<std::size_t>(v)] = mask;
                run(v + 1, cur + static_cast<std::size_t>(std::popcount(mask)));
                used_cap -= c;
            }
            for (std::size_t i = 0; i < rsets.size(); ++i)
                if ((rsets[i] & mask) == rsets[i])
                    --rcount[i];
            for (std::size_t i = 0; i < ssets.size(); ++i)
                if ((ssets[i] & mask) == ssets[i])
                    --scount[i];
        }
    }
};

} // namespace

ZarankiewiczResult zarankiewicz_oracle(const BipartiteGraph & host_in, int r, int s, std::uint64_t node_budget)
{
    if (r < 1 || s < r)
        throw std::invalid_argument("zarankiewicz_oracle: need 1 <= r <= s");
    bool flip = host_in.left_size() > host_in.right_size();
    BipartiteGraph host = flip ? host_in.transposed() : host_in;
    if (host.left_size() > 5 || host.right_size() > 20)
        throw ResourceGuard("zarankiewicz_oracle: exact search needs parts of at most 5 and 20 vertices");
    ZSearch z;
    z.u = host.left_size();
    z.nv = host.right_size();
    z.r = r;
    z.s = s;
    z.budget = node_budget;
    // order V so equal host neighbourhoods are adjacent
    std::vector<int> order(static_cast<std::size_t>(z.nv));
    std::iota(order.begin(), order.end(), 0);
    auto mask_of = [&](int v) {
        std::uint32_t m = 0;
        host.right_row(v).for_each([&](std::size_t a) { m |= 1u << a; });
        return m;
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return mask_of(a) > mask_of(b); });
    for (std::size_t i = 0; i < order.size(); ++i) {
        z.host.push_back(mask_of(order[i]));
        z.same_as_prev.push_back(i > 0 && z.host[i] == z.host[i - 1]);
    }
    for_each_subset(z.u, r, [&](std::span<const int> set) {
        std::uint32_t m = 0;
        for (int a : set)
            m |= 1u << a;
        z.rsets.push_back(m);
    });
    if (s <= z.u)
        for_each_subset(z.u, s, [&](std::span<const int> set) {
            std::uint32_t m = 0;
            for (int a : set)
                m |= 1u << a;
            z.ssets.push_back(m);
        });
    z.rcount.assign(z.rsets.size(), 0);
    z.scount.assign(z.ssets.size(), 0);
    for (auto h : z.host) {
        std::vector<std::uint32_t> opts;
        for (std::uint32_t sub = h;; sub = (sub - 1) & h) {
            opts.push_back(sub);
            if (sub == 0)
                break;
        }
        std::stable_sort(opts.begin(), opts.end(), [](std::uint32_t a, std::uint32_t b) {
            return std::popcount(a) != std::popcount(b) ? std::popcount(a) > std::popcount(b) : a > b;
        });
        z.options.push_back(std::move(opts));
    }
    // KST pair counting: every r-subset of U lies in at most s-1 chosen
    // neighbourhoods, so Sum_v C(d_v, r) <= (s-1) C(|U|, r)
    z.cap_total = (s - 1) * ZSearch::bin(z.u, r);
    z.dp.assign(static_cast<std::size_t>(z.nv) + 1, std::vector<int>(static_cast<std::size_t>(z.cap_total) + 1, 0));
    for (int v = z.nv - 1; v >= 0; --v)
        for (int c = 0; c <= z.cap_total; ++c) {
            int best = 0;
            for (int d = 0; d <= std::popcount(z.host[static_cast<std::size_t>(v)]); ++d) {
                int cost = ZSearch::bin(d, r);
                if (cost <= c)
                    best = std::max(best, d + z.dp[static_cast<std::size_t>(v) + 1][static_cast<std::size_t>(c - cost)]);
            }
            z.dp[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] = best;
        }
    z.choice.assign(static_cast<std::size_t>(z.nv), 0);
    z.best_choice.assign(static_cast<std::size_t>(z.nv), 0);
    z.run(0, 0);

    ZarankiewiczResult out;
    out.lower = z.best;
    out.upper = z.aborted ? std::max(z.best, z.upper_open) : z.best;
    out.nodes = z.nodes;
    std::vector<BipartiteGraph::Pair> edges;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int a = 0; a < z.u; ++a)
            if (z.best_choice[i] >> a & 1u)
                edges.push_back({a, order[i]});
    BipartiteGraph w(z.u, z.nv, std::move(edges));
    out.witness = flip ? w.transposed() : w;
    return out;
}

KpartiteCheck kpartite_count_check(const KUniformHypergraph & g, std::span<const int> part_sizes, int r)
{
    const int k = g.uniformity();
    if (static_cast<int>(part_sizes.size()) != k)
        throw std::invalid_argument("kpartite_count_check: need one part size per layer");
    std::vector<int> offset(static_cast<std::size_t>(k) + 1, 0);
    for (int i = 0; i < k; ++i)
        offset[static_cast<std::size_t>(i) + 1] = offset[static_cast<std::size_t>(i)] + part_sizes[static_cast<std::size_t>(i)];
    if (offset.back() != g.vertex_count())
        throw std::invalid_argument("kpartite_count_check: part sizes do not add up to n");
    for (const auto & e : g.edges())
        for (int i = 0; i < k; ++i)
            if (e[static_cast<std::size_t>(i)] < offset[static_cast<std::size_t>(i)] || e[static_cast<std::size_t>(i)] >= offset[static_cast<std::size_t>(i) + 1])
                throw ValidationError("kpartite_count_check: edge is not a transversal of the parts");

    KpartiteCheck out;
    out.exact = count_kpartite_pattern(g, r);

    double rest = 1;
    for (int i = 1; i < k; ++i)
        rest *= part_sizes[static_cast<std::size_t>(i)];
    out.a = static_cast<double>(g.edge_count()) / rest;
    out.bound = extended_binomial(out.a - k + 1, r);
    for (int i = 0; i < k - 1; ++i)
        out.bound *= binomial(part_sizes[static_cast<std::size_t>(i)], r);

    // Sum over S (r vertices in each of U_1..U_{k-1}) of C(d(S), r)
    std::vector<std::vector<int>> chosen(static_cast<std::size_t>(k - 1));
    auto rec = [&](auto && self, int layer) -> void {
        if (layer == k - 1) {
            std::uint64_t d = 0;
            std::vector<int> pick(static_cast<std::size_t>(k - 1), 0), e(static_cast<std::size_t>(k));
            for (int x = offset[static_cast<std::size_t>(k) - 1]; x < offset[static_cast<std::size_t>(k)]; ++x) {
                std::fill(pick.begin(), pick.end(), 0);
                bool all = true;
                while (all) {
                    for (int i = 0; i < k - 1; ++i)
                        e[static_cast<std::size_t>(i)] = chosen[static_cast<std::size_t>(i)][static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
                    e[static_cast<std::size_t>(k) - 1] = x;
                    all = g.has_edge(e);
                    int i = k - 2;
                    while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == r)
                        pick[static_cast<std::size_t>(i--)] = 0;
                    if (i < 0)
                        break;
                }
                d += all;
            }
            out.formula_count += binomial_u64(static_cast<int>(d), r);
            return;
        }
        std::vector<int> layer_vertices(static_cast<std::size_t>(part_sizes[static_cast<std::size_t>(layer)]));
        std::iota(layer_vertices.begin(), layer_vertices.end(), offset[static_cast<std::size_t>(layer)]);
        for_each_subset_of(layer_vertices, r, [&](std::span<const int> s) {
            chosen[static_cast<std::size_t>(layer)].assign(s.begin(), s.end());
            self(self, layer + 1);
        });
    };
    rec(rec, 0);
    out.pass = static_cast<double>(out.exact) + 1e-9 >= out.bound;
    return out;
}

} // namespace exlab::bipfree
