#pragma once

// Brute-force reference computations. These only read inputs through plain
// accessors (edges, weights, tuples) and never call the algorithms under test.

#include "vcreg/hypergraph.hpp"
#include "vcreg/measure.hpp"
#include "vcreg/rational.hpp"
#include "vcreg/regularity.hpp"
#include "vcreg/vc.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using vcreg::Integer;
using vcreg::Rational;

inline Rational q(const Integer& n, const Integer& d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline Integer choose(long n, long k)
{
    if (k < 0 || k > n) return 0;
    Integer r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Members as explicit element lists.
inline std::vector<std::vector<bool>> members(const vcreg::SetFamily& f)
{
    std::vector<std::vector<bool>> out;
    for (const auto& m : f.members()) {
        std::vector<bool> row(f.ground());
        for (std::size_t x = 0; x < f.ground(); ++x) row[x] = m.test(x);
        out.push_back(row);
    }
    return out;
}

inline std::size_t traces(const std::vector<std::vector<bool>>& fam, const std::vector<std::size_t>& pts)
{
    std::set<std::vector<bool>> seen;
    for (const auto& row : fam) {
        std::vector<bool> t;
        for (auto p : pts) t.push_back(row[p]);
        seen.insert(t);
    }
    return seen.size();
}

// Every subset of the ground set by bitmask; ground <= 20.
inline std::size_t vc_dimension(const vcreg::SetFamily& f)
{
    auto fam = members(f);
    if (fam.empty()) return 0;
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << f.ground()); ++mask) {
        std::vector<std::size_t> pts;
        for (std::size_t x = 0; x < f.ground(); ++x)
            if (mask >> x & 1) pts.push_back(x);
        if (pts.size() <= best) continue;
        if (traces(fam, pts) == (std::size_t{1} << pts.size())) best = pts.size();
    }
    return best;
}

inline std::size_t shatter_function(const vcreg::SetFamily& f, std::size_t n)
{
    auto fam = members(f);
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << f.ground()); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
        std::vector<std::size_t> pts;
        for (std::size_t x = 0; x < f.ground(); ++x)
            if (mask >> x & 1) pts.push_back(x);
        best = std::max(best, fam.empty() ? 0 : traces(fam, pts));
    }
    return best;
}

inline Integer sauer(long n, long d)
{
    Integer s = 0;
    for (long i = 0; i <= d; ++i) s += choose(n, i);
    return s;
}

inline Rational tuple_weight(const vcreg::ProductMeasure& mu, const vcreg::Tuple& t)
{
    Rational w = 1;
    for (std::size_t c = 0; c < t.size(); ++c) w *= mu.part(c).weight(t[c]);
    return w;
}

inline bool in_box(const vcreg::Box& b, const vcreg::Tuple& t)
{
    for (std::size_t c = 0; c < t.size(); ++c)
        if (!b.sides[c].test(t[c])) return false;
    return true;
}

// Calls f(tuple) for every tuple of V_1 x ... x V_k in lex order.
template <class F>
void for_each_tuple(const std::vector<std::size_t>& sizes, F&& f)
{
    vcreg::Tuple t(sizes.size(), 0);
    for (auto s : sizes)
        if (s == 0) return;
    while (true) {
        f(t);
        std::size_t c = sizes.size();
        while (c > 0 && ++t[c - 1] == sizes[c - 1]) t[--c] = 0;
        if (c == 0) return;
    }
}

inline Rational edge_mass(const vcreg::Hypergraph& h, const vcreg::ProductMeasure& mu)
{
    Rational m = 0;
    for (const auto& e : h.edges()) m += tuple_weight(mu, e);
    return m;
}

// mu(A Δ E) with A the union of the boxes.
inline Rational symmetric_difference(const vcreg::Hypergraph& h, const vcreg::ProductMeasure& mu,
                                     const std::vector<vcreg::Box>& boxes)
{
    std::set<vcreg::Tuple> edges(h.edges().begin(), h.edges().end());
    Rational err = 0;
    for_each_tuple(h.part_sizes(), [&](const vcreg::Tuple& t) {
        bool a = false;
        for (const auto& b : boxes) a = a || in_box(b, t);
        if (a != (edges.count(t) > 0)) err += tuple_weight(mu, t);
    });
    return err;
}

struct BoxTally {
    Rational mass = 0, edges = 0;
};

// Mass and edge mass of a box, by enumeration.
inline BoxTally tally(const vcreg::Hypergraph& h, const vcreg::ProductMeasure& mu, const vcreg::Box& b)
{
    std::set<vcreg::Tuple> edges(h.edges().begin(), h.edges().end());
    BoxTally out;
    for_each_tuple(h.part_sizes(), [&](const vcreg::Tuple& t) {
        if (!in_box(b, t)) return;
        Rational w = tuple_weight(mu, t);
        out.mass += w;
        if (edges.count(t)) out.edges += w;
    });
    return out;
}

struct PartitionVerdict {
    bool ok = true;
    Rational sigma_mass = 0;
    std::size_t boxes = 0;
    std::string why;
};

// Independent check of a regular partition: classes partition each side, Σ has
// mass <= eps, every other box of positive mass has density < eps or > 1 - eps.
inline PartitionVerdict verify(const vcreg::Hypergraph& h, const vcreg::ProductMeasure& mu,
                               const vcreg::RegularPartition& p)
{
    PartitionVerdict v;
    const std::size_t k = h.k();
    std::vector<std::vector<std::size_t>> cls(k);
    for (std::size_t c = 0; c < k; ++c) {
        cls[c].assign(h.part_sizes()[c], SIZE_MAX);
        for (std::size_t j = 0; j < p.parts[c].size(); ++j)
            for (std::size_t x = 0; x < h.part_sizes()[c]; ++x)
                if (p.parts[c][j].test(x)) {
                    if (cls[c][x] != SIZE_MAX) {
                        v.ok = false;
                        v.why = "overlap";
                    }
                    cls[c][x] = j;
                }
        for (auto j : cls[c])
            if (j == SIZE_MAX) {
                v.ok = false;
                v.why = "uncovered vertex";
                return v;
            }
    }
    std::set<vcreg::Tuple> sigma(p.sigma.begin(), p.sigma.end());
    std::set<vcreg::Tuple> edges(h.edges().begin(), h.edges().end());
    std::map<vcreg::Tuple, BoxTally> boxes;
    for_each_tuple(h.part_sizes(), [&](const vcreg::Tuple& t) {
        vcreg::Tuple b(k);
        for (std::size_t c = 0; c < k; ++c) b[c] = static_cast<std::uint32_t>(cls[c][t[c]]);
        Rational w = tuple_weight(mu, t);
        auto& x = boxes[b];
        x.mass += w;
        if (edges.count(t)) x.edges += w;
    });
    v.boxes = boxes.size();
    for (const auto& [b, x] : boxes) {
        if (sigma.count(b)) {
            v.sigma_mass += x.mass;
            continue;
        }
        if (x.mass == 0) continue;
        Rational d = x.edges / x.mass;
        if (!(d < p.eps || d > 1 - p.eps)) {
            v.ok = false;
            v.why = "box density " + vcreg::to_string(d);
        }
    }
    if (v.sigma_mass > p.eps) {
        v.ok = false;
        v.why = "sigma mass " + vcreg::to_string(v.sigma_mass);
    }
    return v;
}

// Leaves of the depth-L tree inside the union of the balls, as integers with the
// first branch the most significant bit.
inline std::vector<std::uint32_t> leaves(const std::vector<std::string>& prefixes, std::size_t L)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = 0; x < (1u << L); ++x)
        for (const auto& p : prefixes) {
            bool in = true;
            for (std::size_t i = 0; i < p.size(); ++i) in = in && ((x >> (L - 1 - i)) & 1) == unsigned(p[i] - '0');
            if (in) {
                out.push_back(x);
                break;
            }
        }
    return out;
}

inline std::size_t common_prefix(std::uint32_t x, std::uint32_t y, std::size_t L)
{
    std::size_t v = 0;
    while (v < L && ((x >> (L - 1 - v)) & 1) == ((y >> (L - 1 - v)) & 1)) ++v;
    return v;
}

// Ordered distinct leaf pairs with an odd (even when flipped) split level.
inline Integer odd_split_edges(const std::vector<std::string>& prefixes, std::size_t L, bool flip = false)
{
    auto lv = leaves(prefixes, L);
    Integer e = 0;
    for (auto x : lv)
        for (auto y : lv)
            if (x != y && ((common_prefix(x, y, L) % 2 == 1) != flip)) ++e;
    return e;
}

inline Rational odd_split_density(const std::vector<std::string>& prefixes, std::size_t L, bool flip = false)
{
    const auto n = static_cast<long>(leaves(prefixes, L).size());
    return q(odd_split_edges(prefixes, L, flip), Integer(n) * (n - 1));
}

// Density of x1 + x3 >= 2 x2 over increasing triples of {lo..hi}.
inline Rational convexity_density(long lo, long hi)
{
    Integer edges = 0, all = 0;
    for (long a = lo; a <= hi; ++a)
        for (long b = a + 1; b <= hi; ++b)
            for (long c = b + 1; c <= hi; ++c) {
                ++all;
                if (a + c - 2 * b >= 0) ++edges;
            }
    return q(edges, all);
}

}  // namespace oracle
