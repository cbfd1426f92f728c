#pragma once

#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

namespace exlab {

/// Exact C(n, k) as double (no overflow for the ranges used here).
double binomial(double n, int k);

/// C(n, k) in 64-bit integers; saturates at UINT64_MAX.
std::uint64_t binomial_u64(int n, int k);

/// Binomial extended to a convex function of real t: t(t-1)...(t-r+1)/r!
/// when t >= r-1, zero otherwise.
double extended_binomial(double t, int r);

/// Pascal table with rows 0..n, used for colex ranking.
class BinomialTable {
public:
    BinomialTable(int n, int k);
    std::uint64_t operator()(int n, int k) const
    {
        if (k < 0 || n < k)
            return 0;
        return table_[static_cast<std::size_t>(n) * static_cast<std::size_t>(kmax_ + 1) + static_cast<std::size_t>(k)];
    }
    /// Colex rank of a sorted subset: sum of C(s_i, i+1).
    std::uint64_t rank(std::span<const int> sorted_subset) const;
    /// Inverse of rank for k-subsets of {0..n-1}.
    std::vector<int> unrank(std::uint64_t rank, int k) const;

private:
    int nmax_;
    int kmax_;
    std::vector<std::uint64_t> table_;
};

/// Calls f(span<const int>) for every k-subset of {0..n-1} in lexicographic
/// order. f may return false to stop early; returns false if stopped.
template <typename F>
bool for_each_subset(int n, int k, F && f)
{
    if (k < 0 || k > n)
        return true;
    std::vector<int> s(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        s[static_cast<std::size_t>(i)] = i;
    while (true) {
        if constexpr (std::is_same_v<decltype(f(std::span<const int>(s))), bool>) {
            if (!f(std::span<const int>(s)))
                return false;
        }
        else {
            f(std::span<const int>(s));
        }
        int i = k - 1;
        while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i)
            --i;
        if (i < 0)
            return true;
        ++s[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j) - 1] + 1;
    }
}

/// Same, over the elements of `items` (subsets reported as item values).
template <typename F>
bool for_each_subset_of(std::span<const int> items, int k, F && f)
{
    std::vector<int> picked(static_cast<std::size_t>(k < 0 ? 0 : k));
    return for_each_subset(static_cast<int>(items.size()), k, [&](std::span<const int> idx) {
        for (std::size_t i = 0; i < idx.size(); ++i)
            picked[i] = items[static_cast<std::size_t>(idx[i])];
        if constexpr (std::is_same_v<decltype(f(std::span<const int>(picked))), bool>)
            return f(std::span<const int>(picked));
        else {
            f(std::span<const int>(picked));
            return true;
        }
    });
}

} // namespace exlab
