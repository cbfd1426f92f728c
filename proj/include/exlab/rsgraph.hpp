#pragma once

#include <exlab/graph.hpp>
#include <exlab/rng.hpp>

#include <json.hpp>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace exlab::rsgraph {

// ------------------------------------------------------------ 3-AP-free sets

struct ApFreeSet {
    int n = 0;                 // range bound: elements lie in 1..n
    std::vector<int> elements; // sorted
    int d = 0, j = 0;          // digit count and dimension of the construction
    long shell = -1;           // squared norm used; -1 for the union of all shells
};

/// Sphere-layer construction: vectors in {0..d-1}^j on one Euclidean shell,
/// read in base 2d-1 and shifted by one. (d, j) is searched over d <= 64 with
/// (2d-1)^j <= 2N - 1 for the largest output. For d = 2 every shell is used.
ApFreeSet behrend_set(int n);

/// Quadratic scan; returns a violating (x, y, z) with x + z = 2y if any.
std::optional<std::array<int, 3>> find_three_ap(std::span<const int> sorted);

/// Random pairs (x, z) only; for sets too large for the full scan.
std::optional<std::array<int, 3>> sample_three_ap(std::span<const int> sorted, RngStream & rng, std::uint64_t samples);

/// Size of the largest 3-AP-free subset of 1..n. Exhaustive; n <= 40.
int max_ap_free_size(int n);

// ------------------------------------------------------------ RS graphs

struct RsDecomposition {
    Graph graph;
    std::vector<std::vector<Edge>> matchings;
    bool spanning = true;
    int left_size = -1; // bipartite graphs: vertices 0..left_size-1 form one side
    nlohmann::json info;

    int matching_size() const { return matchings.empty() ? 0 : static_cast<int>(matchings.front().size()); }
    int matching_count() const { return static_cast<int>(matchings.size()); }
};

struct RsCheck {
    bool pass = true;
    std::string reason;
    int matching = -1;
};

/// Edge-disjoint, equal-sized induced matchings of the graph; spanning
/// decompositions must also cover every edge.
RsCheck verify_rs(const RsDecomposition & d);

/// Left values 1..2m, right values 1..3m; matching M_x = {(x+b, x+2b) : b in B}
/// for x = 1..m. B must be 3-AP-free inside 1..m.
RsDecomposition rs_from_set(std::span<const int> b, int m);

/// rs_from_set(behrend_set(N/5), N/5), optionally cut into matchings of
/// `chunk` edges (leftover edges of each matching are removed from the graph).
RsDecomposition rs_from_behrend(int n, std::optional<int> chunk = std::nullopt);

/// Cut each matching into pieces of `chunk` edges, dropping remainders.
RsDecomposition split_matchings(const RsDecomposition & d, int chunk);

/// Two copies of V; uv becomes (u, n+v) and (v, n+u).
RsDecomposition bipartite_double(const RsDecomposition & d);

// ------------------------------------------------------------ induced matchings

struct MatchingSearch {
    std::optional<std::vector<Edge>> matching;
    bool exhaustive = true;
    std::uint64_t nodes = 0;
};

/// Induced matching of G with `size` edges, all of them in `allowed`
/// (edge indices of G). Exact branch and bound.
MatchingSearch find_induced_matching(const Graph & g, const std::vector<char> & allowed, int size,
                                     std::uint64_t node_budget = 100'000'000);

/// Independent check by vertex-by-vertex search.
bool has_induced_matching(const Graph & g, const std::vector<char> & allowed, int size);

enum class Verdict { rs_subgraph, falsified, unknown };

struct GreedyResult {
    Verdict verdict = Verdict::unknown;
    RsDecomposition extracted; // the matchings picked out, on the subgraph they span
    std::vector<int> coloring; // per edge of G: 0 red, 1 blue (falsified only)
    int red_max_degree = 0;
    std::uint64_t nodes = 0;
};

/// Pick out edge-disjoint induced matchings of size n until t are found or
/// none is left. Otherwise colour the picked edges red and the rest blue.
/// When a run stops short of t, it is repeated with the edges in a shuffled
/// order up to `restarts` times. Requires |V| <= 40.
GreedyResult greedy_decompose(const Graph & g, int n, int t, std::uint64_t node_budget = 100'000'000,
                              int restarts = 2000);

struct ColoringCheck {
    bool pass = true;
    std::string reason;
};

/// Red max degree < t and no blue induced matching of size n.
ColoringCheck verify_falsifying(const Graph & g, std::span<const int> coloring, int t, int n);

// ------------------------------------------------------------ arrowing

enum class ArrowMode { exhaustive, theorem };

enum class ArrowVerdict { arrows, falsified, unknown };

struct ArrowInstance {
    ArrowVerdict verdict = ArrowVerdict::unknown;
    std::vector<int> coloring; // falsifying colouring (0 red, 1 blue)
    nlohmann::json params;
};

/// G ->ind (K_{1,t}, M_n). Exhaustive mode scans all colourings (|E| <= 24).
/// Theorem mode checks the hypotheses of the bipartite RS criterion on `d`.
ArrowInstance arrow_check(const Graph & g, int t, int n, ArrowMode mode, const RsDecomposition * d = nullptr);

/// Whether this colouring has a red induced K_{1,t} or a blue induced M_n.
bool has_monochromatic_target(const Graph & g, std::span<const int> coloring, int t, int n);

nlohmann::json to_json(const RsDecomposition & d);

} // namespace exlab::rsgraph
