#include "vcreg/bitset.hpp"

#include <cassert>

namespace vcreg {

Bitset Bitset::full(std::size_t n)
{
    Bitset b(n);
    for (auto& w : b.words_) w = ~std::uint64_t{0};
    b.trim();
    return b;
}

Bitset Bitset::from_indices(std::size_t n, std::span<const std::size_t> idx)
{
    Bitset b(n);
    for (auto i : idx) b.set(i);
    return b;
}

void Bitset::trim()
{
    if (size_ % 64 != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

std::size_t Bitset::count() const
{
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool Bitset::any() const
{
    for (auto w : words_)
        if (w) return true;
    return false;
}

Bitset& Bitset::operator&=(const Bitset& o)
{
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

Bitset& Bitset::operator|=(const Bitset& o)
{
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

Bitset& Bitset::operator^=(const Bitset& o)
{
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

Bitset& Bitset::subtract(const Bitset& o)
{
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
}

Bitset Bitset::complement() const
{
    Bitset c(*this);
    for (auto& w : c.words_) w = ~w;
    c.trim();
    return c;
}

bool Bitset::is_subset_of(const Bitset& o) const
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

bool Bitset::intersects(const Bitset& o) const
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & o.words_[i]) return true;
    return false;
}

std::size_t Bitset::first() const
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return npos;
}

std::size_t Bitset::next(std::size_t i) const
{
    std::size_t j = i + 1;
    if (j >= size_) return npos;
    std::size_t w = j >> 6;
    std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (j & 63));
    while (true) {
        if (bits) return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        if (++w == words_.size()) return npos;
        bits = words_[w];
    }
}

std::vector<std::size_t> Bitset::indices() const
{
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
}

std::size_t Bitset::hash() const
{
    std::uint64_t h = 1469598103934665603ull ^ size_;
    for (auto w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

bool lex_less(const Bitset& a, const Bitset& b)
{
    assert(a.size() == b.size());
    auto aw = a.words();
    auto bw = b.words();
    for (std::size_t w = 0; w < aw.size(); ++w) {
        std::uint64_t diff = aw[w] ^ bw[w];
        if (!diff) continue;
        std::size_t x = w * 64 + static_cast<std::size_t>(std::countr_zero(diff));
        if (a.test(x)) return b.next(x) != Bitset::npos;
        return a.next(x) == Bitset::npos;
    }
    return false;
}

}  // namespace vcreg
