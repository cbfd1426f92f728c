#pragma once

#include <exlab/graph.hpp>
#include <exlab/rng.hpp>

#include <cstdint>
#include <vector>

namespace exlab::bipfree {

/// Copies of K_{r,r}: Sum over r-sets A of C(|N(A)|, r), halved. Rejects
/// graphs for which the 2^r C(m,r) bound exceeds 10^9.
std::uint64_t count_krr(const Graph & g, int r);

/// Copies of the complete k-partite k-graph with parts of size r, by
/// enumerating r-matchings and extending each to labelled part systems.
/// Rejects when (k!)^r C(m,r) exceeds 10^9.
std::uint64_t count_kpartite_pattern(const KUniformHypergraph & g, int r);

/// One copy of K_{r,r}: the two sides, each sorted, min(a) < min(b).
struct KrrCopy {
    std::vector<int> a;
    std::vector<int> b;
};

/// Calls f(copy) for every copy in a fixed order (A lexicographic, then B).
/// f may return false to stop.
template <typename F>
void for_each_krr(const Graph & g, int r, F && f);

struct ExtractionResult {
    Graph graph;                     // graph case
    KUniformHypergraph hypergraph;   // k-graph case
    std::size_t edges = 0;
    std::size_t target_size = 0;     // the guaranteed floor
    int trials_used = 0;
    bool short_circuit = false;
    double p = 0.0;
};

/// Smallest integer F with F >= m^{r/(r+1)} / 4.
std::size_t krr_floor(std::size_t m, int r);
/// Smallest integer F with F >= m^{(q-1)/q} / (2 k!), q = (r^k - 1)/(r - 1).
std::size_t kpartite_floor(std::size_t m, int k, int r);

/// Sample each edge with p = m^{-1/(r+1)}/2, delete the lexicographically
/// smallest edge of every copy still intact, retry with fresh streams until
/// the floor is met. Throws SearchFailure after retry_cap rounds.
ExtractionResult extract_free(const Graph & g, int r, RngStream & rng, int retry_cap = 1000);
/// k-graph version with p = m^{-1/q}/k!.
ExtractionResult extract_free(const KUniformHypergraph & g, int r, RngStream & rng, int retry_cap = 1000);

struct TightInstance {
    BipartiteGraph graph; // left side U, right side V
    int r = 0;
    int s = 0;
    std::size_t m = 0;
    /// s * m^{r/(r+1)}
    std::size_t bound() const;
};

/// Complete bipartite K_{a, a^r} with m = a^{r+1}. Throws unless m is a
/// perfect (r+1)-th power and 2 <= r <= s.
TightInstance tight_instance(int r, int s, std::size_t m);

/// Complete k-partite k-graph with |U_i| = b^{r^{i-1}}, m = b^q.
KUniformHypergraph tight_kpartite_instance(int k, int r, std::size_t m);

struct ZarankiewiczResult {
    std::size_t lower = 0;
    std::size_t upper = 0;
    std::uint64_t nodes = 0;
    BipartiteGraph witness;
    bool exact() const { return lower == upper; }
};

/// Largest K_{r,s}-free subgraph (either orientation) of a bipartite host
/// whose smaller side has at most 5 vertices and larger side at most 20.
ZarankiewiczResult zarankiewicz_oracle(const BipartiteGraph & host, int r, int s, std::uint64_t node_budget = 200'000'000);

/// True when the bipartite graph contains no K_{r,s} in either orientation.
bool is_krs_free(const BipartiteGraph & g, int r, int s);

struct KpartiteCheck {
    std::uint64_t exact = 0;          // generic pattern count
    std::uint64_t formula_count = 0;  // Sum_S C(d(S), r) over the given parts
    double a = 0.0;
    double bound = 0.0;
    bool pass = false;
};

/// Lower bound C(a-k+1, r) prod_{i<k} C(|U_i|, r) (extended binomial)
/// against the exact count. Vertices are numbered part by part.
KpartiteCheck kpartite_count_check(const KUniformHypergraph & g, std::span<const int> part_sizes, int r);

} // namespace exlab::bipfree

#include <exlab/combinatorics.hpp>

namespace exlab::bipfree {

template <typename F>
void for_each_krr(const Graph & g, int r, F && f)
{
    const int n = g.vertex_count();
    if (r < 1 || n < 2 * r)
        return;
    std::vector<int> a;
    std::vector<Bitset> common;
    bool stop = false;
    // grow A in increasing order keeping the common neighbourhood
    auto grow = [&](auto && self, int from) -> void {
        if (stop)
            return;
        if (static_cast<int>(a.size()) == r) {
            std::vector<int> cand;
            common.back().for_each([&](std::size_t v) {
                if (static_cast<int>(v) > a.front())
                    cand.push_back(static_cast<int>(v));
            });
            for_each_subset_of(cand, r, [&](std::span<const int> b) {
                if (!f(KrrCopy{a, std::vector<int>(b.begin(), b.end())}))
                    stop = true;
                return !stop;
            });
            return;
        }
        for (int v = from; v < n && !stop; ++v) {
            Bitset next = a.empty() ? g.row(v) : common.back();
            if (!a.empty())
                next &= g.row(v);
            if (next.count() < static_cast<std::size_t>(r))
                continue;
            a.push_back(v);
            common.push_back(std::move(next));
            self(self, v + 1);
            a.pop_back();
            common.pop_back();
        }
    };
    grow(grow, 0);
}

} // namespace exlab::bipfree
