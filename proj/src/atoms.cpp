#include "vcreg/atoms.hpp"

#include <unordered_map>

namespace vcreg {

std::vector<Bitset> atoms(std::size_t n, std::span<const Bitset> generators)
{
    return atoms(Bitset::full(n), generators);
}

std::vector<Bitset> atoms(const Bitset& within, std::span<const Bitset> generators)
{
    const std::size_t n = within.size();
    std::vector<Bitset> out;
    std::unordered_map<Bitset, std::size_t, BitsetHash> slot;
    Bitset sig(generators.size());
    within.for_each([&](std::size_t x) {
        for (std::size_t g = 0; g < generators.size(); ++g) sig.assign(g, generators[g].test(x));
        auto [it, fresh] = slot.try_emplace(sig, out.size());
        if (fresh) out.emplace_back(n);
        out[it->second].set(x);
    });
    return out;
}

std::vector<Bitset> refine(const std::vector<Bitset>& a, const std::vector<Bitset>& b)
{
    std::vector<Bitset> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            Bitset c = x & y;
            if (c.any()) out.push_back(std::move(c));
        }
    return out;
}

bool is_union_of(const Bitset& s, const std::vector<Bitset>& partition)
{
    for (const auto& cell : partition)
        if (cell.intersects(s) && !cell.is_subset_of(s)) return false;
    return true;
}

}  // namespace vcreg
