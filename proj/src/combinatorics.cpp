#include <exlab/combinatorics.hpp>

#include <limits>
#include <stdexcept>

namespace exlab {

double binomial(double n, int k)
{
    if (k < 0 || n < k)
        return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i)
        r = r * (n - i) / (i + 1);
    return r;
}

std::uint64_t binomial_u64(int n, int k)
{
    if (k < 0 || n < k)
        return 0;
    if (k > n - k)
        k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

double extended_binomial(double t, int r)
{
    if (r == 0)
        return 1.0;
    if (t < r - 1)
        return 0.0;
    double v = 1.0;
    for (int i = 0; i < r; ++i)
        v = v * (t - i) / (i + 1);
    return v;
}

BinomialTable::BinomialTable(int n, int k) : nmax_(n), kmax_(k)
{
    if (n < 0 || k < 0)
        throw std::invalid_argument("BinomialTable: negative size");
    table_.assign(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(k + 1), 0);
    for (int i = 0; i <= n; ++i) {
        auto row = static_cast<std::size_t>(i) * static_cast<std::size_t>(k + 1);
        table_[row] = 1;
        for (int j = 1; j <= k && j <= i; ++j) {
            auto prev = static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(k + 1);
            table_[row + static_cast<std::size_t>(j)] = table_[prev + static_cast<std::size_t>(j) - 1] + table_[prev + static_cast<std::size_t>(j)];
        }
    }
}

std::uint64_t BinomialTable::rank(std::span<const int> sorted_subset) const
{
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < sorted_subset.size(); ++i)
        r += (*this)(sorted_subset[i], static_cast<int>(i) + 1);
    return r;
}

std::vector<int> BinomialTable::unrank(std::uint64_t rank, int k) const
{
    std::vector<int> out(static_cast<std::size_t>(k));
    int top = nmax_;
    for (int i = k; i >= 1; --i) {
        // largest c with C(c, i) <= rank
        int c = top;
        while (c >= i && (*this)(c, i) > rank)
            --c;
        if (c < i - 1)
            throw std::out_of_range("BinomialTable::unrank: rank too large");
        out[static_cast<std::size_t>(i) - 1] = c;
        rank -= (*this)(c, i);
        top = c - 1;
    }
    return out;
}

} // namespace exlab
