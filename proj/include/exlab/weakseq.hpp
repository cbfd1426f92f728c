#pragma once

#include <exlab/bitset.hpp>
#include <exlab/graph.hpp>
#include <exlab/rng.hpp>

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace exlab::weakseq {

/// t disjoint r-sets with an edge between every relevant pair. The complete
/// kind uses `s` only; the bi-complete kind pairs every s[i] with every t[j].
struct WeakSequence {
    enum class Kind { complete, bicomplete };
    Kind kind = Kind::bicomplete;
    int r = 0;
    std::vector<std::vector<int>> s;
    std::vector<std::vector<int>> t;

    int order() const { return static_cast<int>(s.size()); }
};

struct SequenceCheck {
    bool pass = true;
    std::string reason;
    int i = -1, j = -1; // first violating pair, when there is one
};

SequenceCheck verify_sequence(const Graph & g, const WeakSequence & w);

/// S_i ∪ T_i as a complete 2r-sequence.
WeakSequence as_complete(const WeakSequence & bicomplete);

/// Grow every set to r2 vertices with the smallest unused vertices.
WeakSequence pad_sequence(const Graph & g, const WeakSequence & w, int r2);

/// Derived quantities for a run with density p, and which of the three
/// parameter regimes of the density theorem hold. Logs are natural.
struct SeqParams {
    int n = 0;
    double p = 0;
    int r = 0;
    int t = 0;
    double rho = 0;         // (1 - p/2)^r
    double big_n = 0;       // pn / 16r
    double delta_bound = 0; // e^{-pr^2/8}
    int proof_case = 0;     // 1 when p <= 3/r, else 2
    std::array<bool, 3> regime{};
    std::array<double, 3> t_max{}; // t bound of each regime (0 when its conditions on n, p, r fail)

    static SeqParams compute(int n, double p, int r, int t);
    bool any_regime() const { return regime[0] || regime[1] || regime[2]; }
    nlohmann::json to_json() const;
};

/// floor(e^{pr^2/8} ln n / 16), at least 1.
int regime2_t(int n, double p, int r);

enum class FilterMode { sparse, dense };

struct FilterResult {
    std::vector<int> kept; // right-side indices
    double size_floor = 0;
    double degree_threshold = 0; // kept vertices have degree strictly above this
    int min_kept_degree = 0;
    nlohmann::json to_json() const;
};

/// Keep the right vertices of large degree. sparse(p): degree > p|L|/2, at
/// least p|R|/2 kept. dense(q): degree > (1-2q)|L|, at least |R|/2 kept.
FilterResult degree_filter(const BipartiteGraph & b, FilterMode mode, double param);

struct PartitionResult {
    std::vector<std::vector<int>> parts; // left-side indices, each of size r
    std::uint64_t uncovered = 0;         // pairs (A_i, b) with no edge
    double fraction = 0;
    double bound = 0; // (1-p)^r
    int attempts = 0;
    nlohmann::json to_json() const;
};

/// Random partition of the left side into r-sets such that at most a
/// (1-p)^r fraction of (part, right vertex) pairs have no edge. Every right
/// vertex must have at least p|L| neighbours.
PartitionResult cover_partition(const BipartiteGraph & b, double p, int r, RngStream & rng, int retry_cap = 1000);

struct Ktt {
    std::vector<int> left, right;
};

struct KttSearch {
    std::optional<Ktt> witness;
    bool exhaustive = true; // a missing witness is a certified negative only when true
    std::uint64_t nodes = 0;
};

/// Exact K_{t,t} search by backtracking over left t-sets. t <= 12.
KttSearch find_ktt(const BipartiteGraph & b, int t, std::uint64_t node_budget = 50'000'000);

struct StageRecord {
    std::string name;
    bool clauses_ok = true;
    nlohmann::json stats;
};

struct PipelineResult {
    WeakSequence sequence;
    SeqParams params;
    std::vector<StageRecord> stages;
    std::vector<std::string> warnings;
};

/// Weakly bi-complete r-sequence of order t in g. Stage failures throw
/// SearchFailure with the stage name and its measured statistics.
PipelineResult weak_sequence_pipeline(const Graph & g, int r, int t, RngStream & rng);

/// The same, starting from a bipartite graph with density at least p. Sets
/// are returned as bipartite indices: s inside the left side, t inside the
/// right side.
PipelineResult bipartite_sequence(const BipartiteGraph & b, double p, int r, int t, RngStream & rng);

/// Largest t for which g has a weakly complete r-sequence of order t.
/// Exhaustive; n <= 12.
int max_weakly_complete_order(const Graph & g, int r);

// ---------------------------------------------------------------- minors

struct DrcConstants {
    double size_factor = 1.0 / 50; // |X| >= size_factor * p * n
    double path_factor = 1e-9;     // paths per pair >= path_factor * p^5 * n
    double guard = 1600;           // requires p^2 n >= guard
};

/// Internal vertices of a 4-edge path x - a - u - b - y, where x, u, y are
/// left vertices and a, b right vertices.
struct Path4 {
    int a, u, b;
};

struct PathsDrcResult {
    std::vector<int> x; // left indices
    int budget = 0;     // certified internally disjoint paths per pair
    double size_floor = 0;
    double p = 0;
    int n = 0;
    int attempts = 0;
    int min_paths = 0; // smallest greedy count over pairs, capped at budget
    nlohmann::json to_json() const;
};

/// Greedy internally vertex-disjoint 4-edge paths from x to y whose middle
/// vertex is outside `avoid`. Stops after `want` paths.
std::vector<Path4> disjoint_paths(const BipartiteGraph & h, const Bitset & avoid, int x, int y, int want);

/// Edges present, internal vertices distinct across paths, middles outside `avoid`.
bool verify_paths(const BipartiteGraph & h, const Bitset & avoid, int x, int y, std::span<const Path4> paths);

/// A large left subset X in which every pair is joined by many internally
/// disjoint 4-edge paths avoiding X. Input must be balanced.
PathsDrcResult paths_drc(const BipartiteGraph & h, const DrcConstants & c, RngStream & rng, int retry_cap = 200);

struct MinorConstants {
    double cleanup = 1.0 / 8;         // drop vertices of degree < cleanup * p * n
    double bip_min_degree = 1.0 / 32; // min degree of the balanced bipartite H
    double x_prime = 1.0 / 400;       // |X'| = x_prime * p * n
    double z_threshold = 1.0 / 32;    // Z: at least (z_threshold * p * n / v) |X'| neighbours in X'
    DrcConstants first{};
    DrcConstants second{};
    bool enforce_regime = true;
    bool diameter_rule = true;

    static MinorConstants paper() { return {}; }
    static MinorConstants from_json(const nlohmann::json & j);
    nlohmann::json to_json() const;
};

struct MinorModel {
    std::vector<std::vector<int>> branch_sets;
    int size_cap = 0;
    int diameter_cap = 0; // 0: not asserted
};

struct MinorCheck {
    bool pass = true;
    std::string reason;
    int i = -1, j = -1;
};

MinorCheck verify_minor(const Graph & g, const MinorModel & m);

struct MinorResult {
    MinorModel model;
    std::vector<StageRecord> stages;
    std::vector<std::string> warnings;
};

/// Whether (n, p, r) lies in the minor theorem's regime.
bool minor_regime(int n, double p, int r);

/// K_t minor with branch sets of size at most 8r (diameter at most 9 with
/// the diameter rule). Stage failures throw SearchFailure.
MinorResult minor_pipeline(const Graph & g, int r, int t, const MinorConstants & c, RngStream & rng);

nlohmann::json to_json(const WeakSequence & w);
nlohmann::json to_json(const MinorModel & m);

} // namespace exlab::weakseq
