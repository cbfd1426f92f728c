#pragma once

#include <exlab/graph.hpp>
#include <exlab/rng.hpp>

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace exlab::removal {

/// Coloured tripartite graph. Vertices 0..q-1 form V0, q..q+n-1 form V1,
/// q+n..q+2n-1 form V2. No edge lies inside a part.
struct Tripartite {
    int q = 0;
    int n = 0;
    EdgeColoring coloring;

    int v0(int i) const { return i; }
    int v1(int i) const { return q + i; }
    int v2(int i) const { return q + n + i; }
};

/// Part-local indices: a in V0, b in V1, c in V2.
struct Triangle {
    int a = 0, b = 0, c = 0;
    int color = 0;
    friend bool operator==(const Triangle &, const Triangle &) = default;
};

struct TriangleCover {
    Tripartite host;
    std::vector<Triangle> triangles;
};

struct CoverCheck {
    bool pass = true;
    std::string reason;
    int triangle = -1;
};

/// Edge-disjoint monochromatic triangles covering exactly the V1-V2 edges.
/// With `require_complete`, V1 must also be complete to V2 (n^2 triangles).
CoverCheck validate_cover(const TriangleCover & t, bool require_complete = true);

struct Census {
    std::vector<std::uint64_t> per_color;
    std::uint64_t total = 0;
    std::vector<std::uint64_t> per_apex; // monochromatic triangles through each V0 vertex
};

/// Exact count of monochromatic triangles. n <= 300, q <= 1200.
Census triangle_census(const Tripartite & g);

struct StepResult {
    int v = -1;     // V0 vertex
    int color = -1; // the sparse colour
    std::vector<int> v1, v2;
    std::uint64_t census = 0;
    double delta = 0;                 // census / n^3
    std::uint64_t edges_in_color = 0; // measured between v1 and v2
    double edge_bound = 0;            // 4 delta n^2
    double size_floor = 0;            // n^2 / (4 q r)
    int a_size = 0;
    bool clauses_ok = true;
    nlohmann::json to_json() const;
};

/// One application of the sparse-pair lemma. Throws ValidationError naming
/// the failed hypothesis when the cover is invalid or m < n^2/2. `r` is the
/// number of colours in play (default: the colouring's count).
StepResult sparse_pair_step(const TriangleCover & t, int r = 0);

struct Diamond {
    int b = -1, c = -1; // shared V1-V2 edge, part-local
    int apex1 = -1, apex2 = -1;
    int color = -1;
};

/// First V1-V2 edge (in (b, c) order) with two monochromatic apexes.
std::optional<Diamond> diamond_find(const Tripartite & g);
/// Same question, looping over apexes first.
std::optional<Diamond> diamond_find_transposed(const Tripartite & g);

struct Level {
    int i = 0;
    int n = 0;
    int r = 0;
    std::uint64_t edges = 0; // between V1 and V2
    std::uint64_t s = 0;     // n^2 - edges
    std::uint64_t census = 0;
    double proof_n = 0; // n^{2^i} / (4qr)^{2^i - 1}
    double proof_s = 0; // s_{i-1} + 4 f_0 / n_{i-1}
    std::optional<StepResult> step;
    std::optional<Diamond> diamond; // in original labels
};

enum class IterVerdict { bound_holds, diamond_found };

struct IterResult {
    IterVerdict verdict = IterVerdict::bound_holds;
    std::vector<Level> trace;
    std::string stop_reason;
    std::optional<Diamond> diamond;
    double theorem_bound = 0; // (4cr)^{-2^{r+3}} n^3
    bool theorem_bound_ok = true;
    std::optional<double> base_bound; // n^5/(64 q^2) - n s/4 at the r = 1 level
    bool base_bound_ok = true;
    bool bookkeeping_ok = true; // n_i >= proof_n and s_i <= proof_s at every level
    nlohmann::json to_json() const;
};

/// Iterate the lemma, deleting the sparse colour between V1' and V2' each
/// time. With `stop_at_diamond` false, diamonds are recorded per level and
/// the descent continues.
IterResult removal_iterate(const TriangleCover & t, int r = 0, bool stop_at_diamond = true);

// ---------------------------------------------------------------- grids

/// Colours of the N x N grid, cells (x, y) with x, y in 1..N.
struct GridColoring {
    int n = 0;
    int r = 1;
    std::vector<int> cells; // row x-1 holds (x, 1..N)

    int at(int x, int y) const { return cells[static_cast<std::size_t>((x - 1) * n + (y - 1))]; }
};

/// "N" then N rows of N colour indices; r is max colour + 1.
GridColoring parse_grid(std::istream & in);
void format_grid(const GridColoring & g, std::ostream & out);
GridColoring random_grid(int n, int r, RngStream & rng);

/// Points (x,y), (x+d,y), (x,y+d); d may be negative.
struct Corner {
    int x = 0, y = 0, d = 0;
    int color = 0;
    friend bool operator==(const Corner &, const Corner &) = default;
};

bool verify_corner(const GridColoring & g, const Corner & c);

/// Every monochromatic corner, by direct scan. N <= 300.
std::vector<Corner> corner_oracle(const GridColoring & g);

/// Lines of the grid as a tripartite graph coloured by intersection points,
/// with the N^2 point triangles as its cover.
TriangleCover grid_reduction(const GridColoring & g);

struct GridResult {
    std::optional<Corner> corner;
    std::optional<Diamond> diamond;
    std::size_t oracle_corners = 0;
    bool oracle_agrees = true; // corner listed by the oracle, or both empty
};

/// Diamond search on the reduction, converted back to a corner. N <= 100.
GridResult grid_pipeline(const GridColoring & g, bool cross_check = true);

// ---------------------------------------------------------------- mutations

inline constexpr int cover_mutation_kinds = 20;
std::string cover_mutation_name(int kind);
/// A corrupted copy of a valid complete cover; `kind` in 0..19. Each kind
/// breaks a different clause of validate_cover.
TriangleCover mutate_cover(const TriangleCover & t, int kind, RngStream & rng);

nlohmann::json to_json(const Diamond & d);
nlohmann::json to_json(const Corner & c);

} // namespace exlab::removal
