#pragma once

#include "vcreg/bitset.hpp"
#include "vcreg/hypergraph.hpp"
#include "vcreg/rational.hpp"

#include <optional>
#include <vector>

namespace vcreg {

// Weighted counting measure on {0, ..., n-1}: weight(i) = numerator(i) / denominator(),
// with nonnegative numerators summing exactly to the denominator.
class Measure {
public:
    Measure() = default;

    static Measure uniform(std::size_t n, std::optional<std::size_t> part = std::nullopt);
    // Throws InputError unless all weights are >= 0 and they sum to exactly 1.
    static Measure from_weights(const std::vector<Rational>& weights, std::optional<std::size_t> part = std::nullopt);
    // Measure on V_a x V_b (a the more significant coordinate).
    static Measure product(const Measure& a, const Measure& b);

    std::size_t size() const { return num_.size(); }
    std::optional<std::size_t> part() const { return part_; }
    bool is_uniform() const { return uniform_; }

    Rational weight(std::size_t i) const;
    std::vector<Rational> weights() const;
    const Integer& numerator(std::size_t i) const { return num_[i]; }
    const Integer& denominator() const { return den_; }

    Rational mass(const Bitset& s) const;
    // mass(s) * denominator(), exact.
    Integer scaled_mass(const Bitset& s) const;

    // Vertices of positive weight.
    Bitset support() const;

    bool operator==(const Measure& o) const { return num_ == o.num_ && den_ == o.den_ && part_ == o.part_; }

private:
    std::vector<Integer> num_;
    Integer den_ = 1;
    std::optional<std::size_t> part_;
    bool uniform_ = false;
};

// X_1 x ... x X_k with X_i ⊆ V_i.
struct Box {
    std::vector<Bitset> sides;

    static Box full(const std::vector<std::size_t>& part_sizes);
    bool contains(std::span<const std::uint32_t> t) const;
    bool operator==(const Box& o) const = default;
};

// Calls f(index) for every tuple of the box, in lex order.
template <class F>
void for_each_in_box(const Shape& shape, const Box& box, F&& f)
{
    const std::size_t k = shape.arity();
    std::vector<std::vector<std::size_t>> sides;
    for (const auto& s : box.sides) {
        sides.push_back(s.indices());
        if (sides.back().empty()) return;
    }
    if (k == 0) {
        f(std::size_t{0});
        return;
    }
    std::vector<std::size_t> pos(k, 0);
    while (true) {
        std::size_t idx = 0;
        for (std::size_t c = 0; c < k; ++c) idx += sides[c][pos[c]] * shape.stride(c);
        f(idx);
        std::size_t c = k;
        while (c > 0 && ++pos[c - 1] == sides[c - 1].size()) pos[--c] = 0;
        if (c == 0) return;
    }
}

// mu_1 x ... x mu_k. For weighted counting measures the semidirect product
// coincides with the plain product, so one class covers both.
class ProductMeasure {
public:
    ProductMeasure() = default;
    explicit ProductMeasure(std::vector<Measure> parts);

    static ProductMeasure uniform(const std::vector<std::size_t>& part_sizes);

    std::size_t arity() const { return parts_.size(); }
    const Measure& part(std::size_t i) const { return parts_[i]; }
    const std::vector<Measure>& parts() const { return parts_; }

    // Common denominator of all tuple weights: the product of the part denominators.
    const Integer& denominator() const { return den_; }

    Rational mass(const Box& box) const;
    Integer scaled_mass(const Box& box) const;
    // Mass of an arbitrary subset of the product, given densely over shape(part sizes).
    Rational mass(const Bitset& tuples) const;
    Integer scaled_mass(const Bitset& tuples) const;

    Integer scaled_weight(std::span<const std::uint32_t> t) const;
    Rational weight(std::span<const std::uint32_t> t) const;

    // The product restricted to the coordinates in `coords`, flattened in Shape order.
    Measure flatten(const IndexSet& coords) const;

    // Checks sizes against the hypergraph; throws InputError on mismatch.
    void check_against(const Hypergraph& h) const;

private:
    std::vector<Measure> parts_;
    Integer den_ = 1;
};

// d_E(X) = mu(E ∩ X) / mu(X). Throws ZeroMeasureError if mu(X) = 0.
Rational density(const Hypergraph& h, const ProductMeasure& mu, const Box& box);

// For symmetric hypergraphs: both the all-tuples density and the density over
// tuples with pairwise-distinct coordinates.
struct DensityPair {
    Rational all_tuples;
    std::optional<Rational> distinct_tuples;  // empty when the distinct part has measure zero
};
DensityPair density_variants(const Hypergraph& h, const ProductMeasure& mu, const Box& box);

// mu(E ∩ X) for an arbitrary subset X of the product.
Rational edge_mass(const Hypergraph& h, const ProductMeasure& mu, const Box& box);

struct FubiniProbe {
    Rational max_fiber_mass;  // max over parameters a of mu_V(R_a)
    Rational product_mass;    // (mu_V x nu_W)(R)
    bool holds;               // max_fiber_mass < eps implies product_mass < eps
};

// Weak Fubini probe on the binary view with fibers in `fiber_coords`.
FubiniProbe weak_fubini_check(const Hypergraph& h, const ProductMeasure& mu, const IndexSet& fiber_coords,
                              const Rational& eps);

}  // namespace vcreg
