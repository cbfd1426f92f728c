#include <exlab/rng.hpp>

#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace exlab {

std::uint64_t RngStream::splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t RngStream::mix(std::uint64_t seed, std::uint64_t tag)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

std::uint64_t RngStream::uniform(std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("RngStream::uniform: empty range");
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::vector<int> RngStream::sample(int n, int k)
{
    if (k < 0 || k > n)
        throw std::invalid_argument("RngStream::sample: k out of range");
    // sparse Fisher-Yates so that small samples from huge ranges stay cheap
    std::unordered_map<int, int> swapped;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(uniform(static_cast<std::uint64_t>(n - i)));
        int vi = swapped.count(i) ? swapped[i] : i;
        int vj = swapped.count(j) ? swapped[j] : j;
        out.push_back(vj);
        swapped[j] = vi;
    }
    return out;
}

} // namespace exlab
