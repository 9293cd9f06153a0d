#include "vcreg/measure.hpp"

#include "vcreg/errors.hpp"

#include <string>

namespace vcreg {

Measure Measure::uniform(std::size_t n, std::optional<std::size_t> part)
{
    if (n == 0) throw InputError("measure on an empty part");
    Measure m;
    m.num_.assign(n, Integer(1));
    m.den_ = static_cast<unsigned long>(n);
    m.part_ = part;
    m.uniform_ = true;
    return m;
}

Measure Measure::from_weights(const std::vector<Rational>& weights, std::optional<std::size_t> part)
{
    if (weights.empty()) throw InputError("measure on an empty part");
    Integer den = 1;
    Rational total = 0;
    for (const auto& w : weights) {
        if (w < 0) throw InputError("negative weight " + to_string(w));
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.get_den_mpz_t());
        total += w;
    }
    if (total != 1) throw InputError("weights sum to " + to_string(total) + ", not 1");
    Measure m;
    m.part_ = part;
    m.den_ = den;
    m.num_.reserve(weights.size());
    for (const auto& w : weights) m.num_.push_back(w.get_num() * (den / w.get_den()));
    m.uniform_ = true;
    for (const auto& x : m.num_)
        if (x != m.num_[0]) m.uniform_ = false;
    return m;
}

Measure Measure::product(const Measure& a, const Measure& b)
{
    Measure m;
    m.den_ = a.den_ * b.den_;
    m.num_.reserve(a.size() * b.size());
    for (const auto& x : a.num_)
        for (const auto& y : b.num_) m.num_.push_back(x * y);
    m.uniform_ = a.uniform_ && b.uniform_;
    return m;
}

Rational Measure::weight(std::size_t i) const
{
    Rational r(num_[i], den_);
    r.canonicalize();
    return r;
}

std::vector<Rational> Measure::weights() const
{
    std::vector<Rational> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(weight(i));
    return out;
}

Integer Measure::scaled_mass(const Bitset& s) const
{
    if (uniform_) return num_[0] * static_cast<unsigned long>(s.count());
    Integer total = 0;
    s.for_each([&](std::size_t i) { total += num_[i]; });
    return total;
}

Rational Measure::mass(const Bitset& s) const
{
    Rational r(scaled_mass(s), den_);
    r.canonicalize();
    return r;
}

Bitset Measure::support() const
{
    Bitset b(size());
    for (std::size_t i = 0; i < size(); ++i)
        if (num_[i] > 0) b.set(i);
    return b;
}

Box Box::full(const std::vector<std::size_t>& part_sizes)
{
    Box b;
    for (auto n : part_sizes) b.sides.push_back(Bitset::full(n));
    return b;
}

bool Box::contains(std::span<const std::uint32_t> t) const
{
    for (std::size_t c = 0; c < sides.size(); ++c)
        if (!sides[c].test(t[c])) return false;
    return true;
}

ProductMeasure::ProductMeasure(std::vector<Measure> parts) : parts_(std::move(parts))
{
    den_ = 1;
    for (const auto& p : parts_) den_ *= p.denominator();
}

ProductMeasure ProductMeasure::uniform(const std::vector<std::size_t>& part_sizes)
{
    std::vector<Measure> parts;
    for (std::size_t i = 0; i < part_sizes.size(); ++i) parts.push_back(Measure::uniform(part_sizes[i], i));
    return ProductMeasure(std::move(parts));
}

Integer ProductMeasure::scaled_mass(const Box& box) const
{
    Integer r = 1;
    for (std::size_t i = 0; i < parts_.size(); ++i) r *= parts_[i].scaled_mass(box.sides[i]);
    return r;
}

Rational ProductMeasure::mass(const Box& box) const
{
    Rational r(scaled_mass(box), den_);
    r.canonicalize();
    return r;
}

Integer ProductMeasure::scaled_weight(std::span<const std::uint32_t> t) const
{
    Integer r = 1;
    for (std::size_t i = 0; i < parts_.size(); ++i) r *= parts_[i].numerator(t[i]);
    return r;
}

Rational ProductMeasure::weight(std::span<const std::uint32_t> t) const
{
    Rational r(scaled_weight(t), den_);
    r.canonicalize();
    return r;
}

Integer ProductMeasure::scaled_mass(const Bitset& tuples) const
{
    bool all_uniform = true;
    for (const auto& p : parts_) all_uniform = all_uniform && p.is_uniform();
    if (all_uniform) {
        Integer w = 1;
        for (const auto& p : parts_) w *= p.numerator(0);
        return w * static_cast<unsigned long>(tuples.count());
    }
    std::vector<std::size_t> sizes;
    for (const auto& p : parts_) sizes.push_back(p.size());
    Shape shape(sizes);
    Integer total = 0;
    Tuple t;
    tuples.for_each([&](std::size_t idx) {
        t = shape.tuple(idx);
        total += scaled_weight(t);
    });
    return total;
}

Rational ProductMeasure::mass(const Bitset& tuples) const
{
    Rational r(scaled_mass(tuples), den_);
    r.canonicalize();
    return r;
}

Measure ProductMeasure::flatten(const IndexSet& coords) const
{
    if (coords.empty()) return Measure::uniform(1);
    Measure m = parts_[coords[0]];
    for (std::size_t i = 1; i < coords.size(); ++i) m = Measure::product(m, parts_[coords[i]]);
    return m;
}

void ProductMeasure::check_against(const Hypergraph& h) const
{
    if (parts_.size() != h.k())
        throw InputError("expected " + std::to_string(h.k()) + " measures, got " + std::to_string(parts_.size()));
    for (std::size_t i = 0; i < parts_.size(); ++i)
        if (parts_[i].size() != h.part_sizes()[i])
            throw InputError("measure on part " + std::to_string(i) + " has the wrong number of weights");
}

Rational edge_mass(const Hypergraph& h, const ProductMeasure& mu, const Box& box)
{
    Integer total = 0;
    for (const auto& e : h.edges())
        if (box.contains(e)) total += mu.scaled_weight(e);
    Rational r(total, mu.denominator());
    r.canonicalize();
    return r;
}

Rational density(const Hypergraph& h, const ProductMeasure& mu, const Box& box)
{
    Rational m = mu.mass(box);
    if (m == 0) throw ZeroMeasureError("density of a box of measure zero");
    return edge_mass(h, mu, box) / m;
}

namespace {

bool pairwise_distinct(std::span<const std::uint32_t> t)
{
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (t[i] == t[j]) return false;
    return true;
}

}  // namespace

DensityPair density_variants(const Hypergraph& h, const ProductMeasure& mu, const Box& box)
{
    DensityPair out{density(h, mu, box), std::nullopt};
    // Mass of the off-diagonal part of the box, by enumerating its tuples.
    Integer box_distinct = 0, edge_distinct = 0;
    const Shape& shape = h.shape();
    Tuple t;
    for (std::size_t idx = 0; idx < shape.total(); ++idx) {
        t = shape.tuple(idx);
        if (!box.contains(t) || !pairwise_distinct(t)) continue;
        Integer w = mu.scaled_weight(t);
        box_distinct += w;
        if (h.relation().contains_index(idx)) edge_distinct += w;
    }
    if (box_distinct > 0) {
        Rational d(edge_distinct, box_distinct);
        d.canonicalize();
        out.distinct_tuples = d;
    }
    return out;
}

FubiniProbe weak_fubini_check(const Hypergraph& h, const ProductMeasure& mu, const IndexSet& fiber_coords,
                              const Rational& eps)
{
    mu.check_against(h);
    BinaryView view = h.relation().view(fiber_coords);
    Measure fiber_mu = mu.flatten(view.fiber_coords());
    Measure param_mu = mu.flatten(view.param_coords());
    FubiniProbe probe;
    probe.max_fiber_mass = 0;
    Integer product = 0;
    for (std::size_t b = 0; b < view.num_params(); ++b) {
        Integer fm = fiber_mu.scaled_mass(view.fiber(b));
        Rational q(fm, fiber_mu.denominator());
        q.canonicalize();
        if (q > probe.max_fiber_mass) probe.max_fiber_mass = q;
        product += fm * param_mu.numerator(b);
    }
    probe.product_mass = Rational(product, fiber_mu.denominator() * param_mu.denominator());
    probe.product_mass.canonicalize();
    probe.holds = !(probe.max_fiber_mass < eps) || probe.product_mass < eps;
    return probe;
}

}  // namespace vcreg
