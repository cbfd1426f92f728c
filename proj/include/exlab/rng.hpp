#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace exlab {

/// Seeded random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the distributions below are written
/// out by hand so that results do not depend on the standard library's
/// (implementation-defined) distribution classes.
class RngStream {
public:
    static constexpr std::string_view algorithm = "mt19937_64+splitmix64-derivation";

    explicit RngStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t draws() const { return draws_; }

    /// Independent stream for sub-task `tag` (trial index, retry round, ...).
    RngStream derive(std::uint64_t tag) const { return RngStream(mix(seed_, tag)); }

    std::uint64_t next_u64()
    {
        ++draws_;
        return engine_();
    }

    /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
    std::uint64_t uniform(std::uint64_t bound);

    /// Uniform integer in [lo, hi].
    std::int64_t uniform_between(std::int64_t lo, std::int64_t hi)
    {
        return lo + static_cast<std::int64_t>(uniform(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    template <typename T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[uniform(i)]);
    }
    template <typename T>
    void shuffle(std::vector<T> & items)
    {
        shuffle(std::span<T>(items));
    }

    /// k distinct values from [0, n), in draw order.
    std::vector<int> sample(int n, int k);

    static std::uint64_t splitmix64(std::uint64_t x);
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t tag);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

} // namespace exlab
