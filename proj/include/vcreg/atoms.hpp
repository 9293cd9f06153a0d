#pragma once

#include "vcreg/bitset.hpp"

#include <span>
#include <vector>

namespace vcreg {

// Nonempty atoms of the Boolean algebra on {0..n-1} generated by `generators`,
// restricted to `within` when given. Atoms are ordered by least element.
std::vector<Bitset> atoms(std::size_t n, std::span<const Bitset> generators);
std::vector<Bitset> atoms(const Bitset& within, std::span<const Bitset> generators);

// Common refinement of two partitions of the same set (empty cells dropped).
std::vector<Bitset> refine(const std::vector<Bitset>& a, const std::vector<Bitset>& b);

// True iff `s` is a union of cells of `partition`.
bool is_union_of(const Bitset& s, const std::vector<Bitset>& partition);

}  // namespace vcreg
