#pragma once

#include <exlab/bitset.hpp>
#include <exlab/combinatorics.hpp>
#include <exlab/generators.hpp>
#include <exlab/graph.hpp>
#include <exlab/rng.hpp>

#include <optional>
#include <string>
#include <vector>

namespace exlab::embed {

/// Down-closed hypergraph given by its top level: a set of k-subsets of
/// 0..N-1. An l-set (l <= k) is a member iff some top edge contains it.
/// Levels are stored as bitsets over colex ranks.
class DownClosedHypergraph {
public:
    DownClosedHypergraph() = default;
    /// `top` is indexed by colex rank of the k-subsets.
    DownClosedHypergraph(int n, int k, Bitset top);

    int vertex_count() const { return n_; }
    int uniformity() const { return k_; }
    std::uint64_t top_count() const { return top_count_; }
    double top_density() const;
    /// Fraction of k-sets missing from the top level.
    double missing_fraction() const { return 1.0 - top_density(); }

    /// Sorted subset of size <= k.
    bool member(std::span<const int> sorted) const;
    /// Number of l-subsets that are not members.
    std::uint64_t nonmember_count(int level) const;

private:
    int n_ = 0;
    int k_ = 0;
    std::uint64_t top_count_ = 0;
    std::optional<BinomialTable> binom_;
    std::vector<Bitset> levels_; // levels_[l] for l = 0..k
};

/// All k-subsets minus floor(delta * C(N,k)) uniformly chosen ones.
DownClosedHypergraph random_dense_dch(int n, int k, double delta, RngStream & rng);

/// Hypergraph to embed: edges of size 1..k on vertices 0..n-1.
struct TargetHypergraph {
    int n = 0;
    std::vector<std::vector<int>> edges; // each sorted
    int max_degree() const;
    int max_edge_size() const;
};

/// The 2^d vertices of Q_d with the neighbourhood N(v) of every vertex as an edge.
TargetHypergraph cube_neighbourhood_hypergraph(int d);

struct EmbeddingResult {
    std::vector<int> map;   // target vertex -> host vertex
    int rounds = 0;         // resampling steps
    bool in_regime = false; // N >= 16n and delta within the lemma's bound
    double delta = 0.0;     // measured missing fraction of the host
    double delta_bound = 0.0;
    std::vector<std::string> warnings;
};

/// Injective and every edge maps onto a member.
bool verify_embedding(const TargetHypergraph & h, const DownClosedHypergraph & g, std::span<const int> map);

/// Uniform random map, then repeatedly resample the variables of the
/// lowest-index violated event: A_uv (f(u) = f(v)), pairs in lexicographic
/// order, before B_e (f(e) distinct but not a member), edges in order.
/// Throws SearchFailure when n > N or after round_cap resamplings.
EmbeddingResult resample_embed(const TargetHypergraph & h, const DownClosedHypergraph & g, RngStream & rng,
                               int round_cap = 10000);

struct DrcParams {
    double eps = 0.5;
    int k = 2;
    double b = 2.0;
    int n = 1;
    /// Reject inputs below N >= eps^{-k} max(bn, 4k) before sampling.
    bool enforce_precondition = true;
};

struct DrcResult {
    std::vector<int> u;          // left vertices
    std::uint64_t bad = 0;       // k-subsets of U with fewer than n common neighbours
    std::uint64_t ksets = 0;     // C(|U|, k)
    double size_floor = 0.0;     // 2^{-1/k} eps^k N
    double bad_ceiling = 0.0;    // 2^{k+1} b^{-k} C(|U|, k)
    int attempts = 0;
    bool precondition_met = false;
};

/// Dependent random choice: U = common neighbourhood (in V_1) of k
/// uniformly random vertices of V_2, drawn with repetition, retried until
/// |U| and the bad k-set count both verify by direct counting.
DrcResult drc_subset(const BipartiteGraph & b, const DrcParams & params, RngStream & rng, int retry_cap = 1000);

struct AuxPair {
    TargetHypergraph target;            // over the V_1 side of H
    std::vector<int> target_vertices;   // H vertex of each target vertex
    DownClosedHypergraph host;          // over U
    std::vector<int> host_vertices;     // G vertex of each host vertex
    int target_max_degree = 0;
};

/// Target: distinct non-empty V_2 neighbourhoods, as subsets of V_1.
/// Host: k-subsets of U with at least n common neighbours in G, closed
/// downwards. k is the largest V_2 degree of H.
AuxPair build_aux_pair(const Graph & h, std::span<const int> v1, std::span<const int> v2, const Graph & g,
                       std::span<const int> u, int n);

/// Two-colouring of V(H) with the side of smaller maximum degree as V_2.
/// Throws ValidationError when H is not bipartite.
struct Sides {
    std::vector<int> v1;
    std::vector<int> v2;
    int delta = 0; // max degree on V_1
    int k = 0;     // max degree on V_2
};
Sides bipartite_sides(const Graph & h);

struct RamseyCopy {
    int color = 0;
    std::vector<int> map; // H vertex -> K_N vertex
    double eps = 0.0;
    double b = 0.0;
    int k = 0;
    int delta = 0;
    DrcResult drc;
    EmbeddingResult embedding;
    std::vector<std::string> warnings;
};

/// Majority colour, equitable bipartition, dependent random choice,
/// auxiliary hypergraphs, resampling embedding, then greedy placement of
/// V_2 into common neighbourhoods. The copy is verified edge by edge.
RamseyCopy bip_ramsey_pipeline(const EdgeColoring & coloring, const Graph & h, RngStream & rng);

/// Every edge of H maps to an edge of the given colour, injectively.
bool verify_monochromatic_copy(const EdgeColoring & coloring, const Graph & h, std::span<const int> map, int color);

/// Uniformly random 2-colouring of K_N.
EdgeColoring random_two_coloring(int n, RngStream & rng);

} // namespace exlab::embed
