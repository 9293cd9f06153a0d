#pragma once

#include "vcreg/hypergraph.hpp"
#include "vcreg/instances.hpp"
#include "vcreg/vc.hpp"

#include <vector>

namespace testing {

inline vcreg::Hypergraph half_graph(std::size_t n)
{
    std::vector<vcreg::Tuple> edges;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i; j < n; ++j) edges.push_back({i, j});
    return vcreg::Hypergraph({n, n}, edges);
}

inline vcreg::Hypergraph complete(std::vector<std::size_t> sizes)
{
    std::vector<vcreg::Tuple> edges;
    vcreg::Shape s(sizes);
    for (std::size_t i = 0; i < s.total(); ++i) edges.push_back(s.tuple(i));
    return vcreg::Hypergraph(sizes, edges);
}

inline vcreg::Hypergraph empty(std::vector<std::size_t> sizes) { return vcreg::Hypergraph(sizes, {}); }

// k-ary relation "all coordinates in the same block", blocks laid out consecutively.
inline vcreg::Hypergraph blocks(const std::vector<std::size_t>& sizes, std::size_t k = 2)
{
    std::vector<std::uint32_t> block_of;
    for (std::uint32_t b = 0; b < sizes.size(); ++b) block_of.insert(block_of.end(), sizes[b], b);
    const std::size_t n = block_of.size();
    vcreg::Shape shape(std::vector<std::size_t>(k, n));
    std::vector<vcreg::Tuple> edges;
    for (std::size_t i = 0; i < shape.total(); ++i) {
        vcreg::Tuple t = shape.tuple(i);
        bool same = true;
        for (auto x : t) same = same && block_of[x] == block_of[t[0]];
        if (same) edges.push_back(t);
    }
    return vcreg::Hypergraph(std::vector<std::size_t>(k, n), edges, true);
}

inline std::vector<vcreg::Bitset> block_sets(const std::vector<std::size_t>& sizes)
{
    std::size_t n = 0;
    for (auto s : sizes) n += s;
    std::vector<vcreg::Bitset> out;
    std::size_t at = 0;
    for (auto s : sizes) {
        vcreg::Bitset b(n);
        for (std::size_t i = 0; i < s; ++i) b.set(at + i);
        out.push_back(b);
        at += s;
    }
    return out;
}

inline vcreg::SetFamily intervals(std::size_t n)
{
    std::vector<vcreg::Bitset> members;
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t r = l; r < n; ++r) {
            vcreg::Bitset s(n);
            for (std::size_t x = l; x <= r; ++x) s.set(x);
            members.push_back(s);
        }
    return vcreg::SetFamily(n, members);
}

inline vcreg::SetFamily powerset(std::size_t n)
{
    std::vector<vcreg::Bitset> members;
    for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
        vcreg::Bitset s(n);
        for (std::size_t x = 0; x < n; ++x)
            if (m >> x & 1) s.set(x);
        members.push_back(s);
    }
    return vcreg::SetFamily(n, members);
}

inline bool refines(const std::vector<vcreg::Bitset>& classes, const std::vector<vcreg::Bitset>& coarse)
{
    for (const auto& c : classes) {
        bool inside = false;
        for (const auto& b : coarse) inside = inside || c.is_subset_of(b);
        if (!inside) return false;
    }
    return true;
}

inline vcreg::Bitset set_of(std::size_t n, std::vector<std::size_t> idx) { return vcreg::Bitset::from_indices(n, idx); }

}  // namespace testing
