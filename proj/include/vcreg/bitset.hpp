#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vcreg {

// Fixed-length bit vector used for every vertex subset in the library.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    static Bitset full(std::size_t n);
    static Bitset from_indices(std::size_t n, std::span<const std::size_t> idx);

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

    std::size_t count() const;
    bool any() const;
    bool none() const { return !any(); }

    Bitset& operator&=(const Bitset& o);
    Bitset& operator|=(const Bitset& o);
    Bitset& operator^=(const Bitset& o);
    // this := this \ o
    Bitset& subtract(const Bitset& o);

    Bitset complement() const;
    bool is_subset_of(const Bitset& o) const;
    bool intersects(const Bitset& o) const;

    // Index of the lowest set bit, or npos.
    std::size_t first() const;
    // Lowest set bit strictly above i, or npos.
    std::size_t next(std::size_t i) const;

    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    std::vector<std::size_t> indices() const;
    std::span<const std::uint64_t> words() const { return words_; }
    std::size_t hash() const;

    bool operator==(const Bitset& o) const = default;

private:
    void trim();

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

inline Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
inline Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
inline Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }

// Lexicographic order on the ascending element lists of two sets
// (a proper prefix sorts first).
bool lex_less(const Bitset& a, const Bitset& b);

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace vcreg
