#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace exlab {

/// Fixed-length bitset sized at runtime. Used for adjacency rows and
/// common-neighbourhood intersections in the enumeration loops.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

    void set_all()
    {
        for (auto & w : words_)
            w = ~std::uint64_t{0};
        trim();
    }
    void clear()
    {
        for (auto & w : words_)
            w = 0;
    }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool none() const
    {
        for (auto w : words_)
            if (w)
                return false;
        return true;
    }

    Bitset & operator&=(const Bitset & o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= o.words_[i];
        return *this;
    }
    Bitset & operator|=(const Bitset & o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= o.words_[i];
        return *this;
    }
    /// this &= ~o
    Bitset & subtract(const Bitset & o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= ~o.words_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset & b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset & b) { return a |= b; }
    friend bool operator==(const Bitset &, const Bitset &) = default;

    /// |a & b| without materialising the intersection.
    static std::size_t and_count(const Bitset & a, const Bitset & b)
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < a.words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
        return c;
    }

    bool intersects(const Bitset & o) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i])
                return true;
        return false;
    }

    /// First set bit at position >= from, or size() if none.
    std::size_t find_next(std::size_t from) const
    {
        if (from >= size_)
            return size_;
        std::size_t wi = from >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w)
                return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi == words_.size())
                return size_;
            w = words_[wi];
        }
    }
    std::size_t find_first() const { return find_next(0); }

    template <typename F>
    void for_each(F && f) const
    {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                f((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const
    {
        std::vector<int> out;
        for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
        return out;
    }

private:
    void trim()
    {
        if (size_ % 64 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace exlab
