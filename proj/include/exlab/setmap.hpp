#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace exlab::setmap {

enum class Family { eh_full, eh_lex, caro2, caro3 };

std::string to_string(Family f);

/// A set mapping on the ground set [n]^dim. Points are stored as indices in
/// lexicographic order (coordinate 0 most significant, coordinates 0-based),
/// so comparing indices compares points lexicographically. Images are
/// computed on demand from the rule.
class SetMapping {
public:
    /// Erdos-Hajnal mapping on [n]^k with images of size k! (full) or
    /// (k-1)! (lexicographic). Needs n,k >= 2, n^k <= 10^6 and n^k >= k + l.
    static SetMapping erdos_hajnal(int n, int k, bool lexicographic);
    /// Caro mapping on [m]^dim, dim in {2,3}, images of size 2, overlap at
    /// most 1 (dim 2) or 0 (dim 3).
    static SetMapping caro(int m, int dim);

    Family family() const { return family_; }
    int side() const { return n_; }
    int dim() const { return dim_; }
    int ground_size() const { return size_; }
    /// Size of the domain sets.
    int k() const { return family_ == Family::caro2 || family_ == Family::caro3 ? 2 : dim_; }
    /// Size of every image.
    int l() const { return l_; }
    /// Allowed |X ∩ f(X)|.
    int overlap() const { return family_ == Family::caro2 ? 1 : 0; }
    bool is_caro() const { return family_ == Family::caro2 || family_ == Family::caro3; }

    int index(std::span<const int> coords) const;
    std::vector<int> coords(int index) const;
    int coord(int index, int axis) const;

    /// f(X) for a k-subset X of point indices (any order). The result lists
    /// the image points in the order the rule produces them.
    std::vector<int> image(std::span<const int> x) const;

private:
    SetMapping(Family f, int n, int dim, int l);
    std::vector<int> eh_image(std::vector<int> x) const;
    std::vector<int> caro_image(std::vector<int> x) const;

    Family family_;
    int n_;
    int dim_;
    int l_;
    int size_;
    std::vector<int> pow_;
    std::vector<std::vector<int>> perms_;
};

/// X ⊆ P with f(X) meeting P (Erdos-Hajnal), or X ⊆ Q with f(X) ⊆ Q (Caro).
struct Violation {
    std::vector<int> x;
    std::vector<int> image;
    /// Erdos-Hajnal: the point of f(X) inside P; -1 for Caro.
    int witness = -1;
};

enum class Mode { disjoint, not_subset };

/// Re-evaluates the rule: X ⊆ S, |X| = k, and f(X) meets S (disjoint mode)
/// or f(X) ⊆ S (not_subset mode).
bool verify_violation(const SetMapping & f, std::span<const int> s, const Violation & v, Mode mode);

/// Iterated sparse-hyperplane deletion followed by the choice of p and
/// p_1..p_k. Guaranteed to succeed when |P| > k^2 n.
std::optional<Violation> eh_violator(const SetMapping & f, std::span<const int> p);

/// Highest/lowest point deletion argument. Guaranteed to succeed when
/// |Q| >= 2m+1 (dim 2) or |Q| >= 3m^2+1 (dim 3).
std::optional<Violation> caro_violator(const SetMapping & f, std::span<const int> q);

struct OracleResult {
    int lower = 0;           // size of the witness
    int upper = 0;           // certified upper bound; equals lower when exact
    std::vector<int> witness;
    std::uint64_t nodes = 0;
    bool exact() const { return lower == upper; }
};

/// Largest P that is free: no X in C(P,k) with f(X) ∩ P != ∅ (disjoint) or
/// f(X) ⊆ P (not_subset). Branch and bound over at most 64 ground points;
/// when `node_budget` runs out the result is a bracket.
OracleResult free_set_oracle(const SetMapping & f, Mode mode, std::uint64_t node_budget = 50'000'000);

/// True when no k-subset of S is violated.
bool is_free(const SetMapping & f, std::span<const int> s, Mode mode);

} // namespace exlab::setmap
