#include "vcreg/atoms.hpp"
#include "vcreg/errors.hpp"
#include "vcreg/regularity.hpp"
#include "vcreg/vc.hpp"

#include <algorithm>
#include <string>

namespace vcreg {

std::size_t RegularPartition::size() const
{
    std::size_t n = 0;
    for (const auto& p : parts) n = std::max(n, p.size());
    return n;
}

Shape RegularPartition::box_shape() const
{
    std::vector<std::size_t> counts;
    for (const auto& p : parts) counts.push_back(p.size());
    return Shape(counts);
}

std::size_t RegularPartition::box_count() const { return box_shape().total(); }

std::vector<Bitset> merge_null_classes(std::vector<Bitset> classes, const Measure& mu)
{
    std::size_t keep = classes.size();
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (mu.scaled_mass(classes[i]) > 0) {
            keep = i;
            break;
        }
    if (keep == classes.size()) throw InputError("partition of a null set");
    Bitset merged = classes[keep];
    for (const auto& c : classes)
        if (mu.scaled_mass(c) == 0) merged |= c;
    std::vector<Bitset> out;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (i == keep)
            out.push_back(merged);
        else if (mu.scaled_mass(classes[i]) > 0)
            out.push_back(std::move(classes[i]));
    }
    std::sort(out.begin(), out.end(), [](const Bitset& a, const Bitset& b) { return a.first() < b.first(); });
    return out;
}

namespace {

std::string tuple_str(const Tuple& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

// Scaled (by mu.denominator()) per-box masses of X, E ∩ X and optionally A ∩ X.
struct BoxStats {
    std::vector<Integer> mass, edge, in_a;
};

BoxStats box_stats(const Hypergraph& h, const ProductMeasure& mu, const std::vector<std::vector<Bitset>>& parts,
                   const Bitset* a_members)
{
    const std::size_t k = h.k();
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::uint32_t>> class_of(k);
    std::vector<std::vector<Integer>> class_mass(k);
    for (std::size_t c = 0; c < k; ++c) {
        counts.push_back(parts[c].size());
        class_of[c].assign(h.part_sizes()[c], 0);
        for (std::size_t j = 0; j < parts[c].size(); ++j) {
            parts[c][j].for_each([&](std::size_t v) { class_of[c][v] = static_cast<std::uint32_t>(j); });
            class_mass[c].push_back(mu.part(c).scaled_mass(parts[c][j]));
        }
    }
    Shape bs(counts);
    const Shape& shape = h.shape();
    BoxStats st;
    st.mass.resize(bs.total());
    for (std::size_t x = 0; x < bs.total(); ++x) {
        Integer m = 1;
        for (std::size_t c = 0; c < k; ++c) m *= class_mass[c][bs.coord(x, c)];
        st.mass[x] = m;
    }

    bool uniform = true;
    Integer unit = 1;
    for (const auto& p : mu.parts()) {
        uniform = uniform && p.is_uniform();
        unit *= p.numerator(0);
    }
    auto box_of = [&](std::size_t idx) {
        std::size_t x = 0;
        for (std::size_t c = 0; c < k; ++c) x += class_of[c][shape.coord(idx, c)] * bs.stride(c);
        return x;
    };
    auto accumulate = [&](const Bitset& set, std::vector<Integer>& out) {
        out.assign(bs.total(), 0);
        if (uniform) {
            std::vector<std::uint64_t> cnt(bs.total(), 0);
            set.for_each([&](std::size_t idx) { ++cnt[box_of(idx)]; });
            for (std::size_t x = 0; x < cnt.size(); ++x)
                if (cnt[x]) out[x] = unit * static_cast<unsigned long>(cnt[x]);
        } else {
            Tuple t;
            set.for_each([&](std::size_t idx) {
                t = shape.tuple(idx);
                out[box_of(idx)] += mu.scaled_weight(t);
            });
        }
    };
    accumulate(h.relation().members(), st.edge);
    if (a_members) accumulate(*a_members, st.in_a);
    return st;
}

// num/den comparisons: lhs < eps * m  with everything scaled by the same denominator.
bool below_fraction(const Integer& lhs, const Rational& eps, const Integer& m)
{
    return lhs * eps.get_den() < eps.get_num() * m;
}

Integer c_d() { return 3; }  // Sum_{i<=d} C(n,i) < e n^d for n >= 1

// C_{k,d} from the recursion: C_{1,d} = 1, C_{2,d} = C_d (320 d)^d,
// C_{k+1,d} = C_d (1280 d)^d 2^{2(k-1)d} C_{k,d}.
Integer c_kd(std::size_t k, std::size_t d)
{
    if (k <= 1) return 1;
    Integer base;
    mpz_ui_pow_ui(base.get_mpz_t(), 320 * d, d);
    Integer c = c_d() * base;
    for (std::size_t j = 2; j < k; ++j) {
        Integer step;
        mpz_ui_pow_ui(step.get_mpz_t(), 1280 * d, d);
        c = c * c_d() * step * pow2(2 * (j - 1) * d);
    }
    return c;
}

void add_bounds(const Hypergraph& h, const RectApprox& ra, RegularPartition& p)
{
    const std::size_t k = h.k();
    const std::size_t d = relation_vc(h, 4).dimension;
    const Rational inv = 1 / p.eps;
    Integer ckd = c_kd(k, d);
    Rational norm_bound = Rational(ckd) * pow(inv * inv, 2 * (k - 1) * d);
    Integer ckd_pow;
    mpz_pow_ui(ckd_pow.get_mpz_t(), ckd.get_mpz_t(), d);
    Rational size_bound = Rational(c_d() * ckd_pow) * pow(inv, 2 * (k - 1) * d * d);
    auto row = [](std::string name, Rational realized, Rational bound) {
        bool within = realized <= bound;
        return BoundRow{std::move(name), std::move(realized), std::move(bound), within};
    };
    p.bounds.push_back(row("vc_dimension_cap4", Rational(static_cast<unsigned long>(d)), Rational(4)));
    p.bounds.push_back(row("parameter_norm", Rational(static_cast<unsigned long>(ra.norm())), norm_bound));
    p.bounds.push_back(row("partition_size", Rational(static_cast<unsigned long>(p.size())), size_bound));
    p.bounds.push_back(row("sigma_mass", p.sigma_mass, p.eps));
}

void check_or_throw(const Hypergraph& h, const ProductMeasure& mu, const RegularPartition& p)
{
    PartitionReport rep = verify_regular_partition(h, mu, p);
    if (!rep.ok())
        throw VerificationError("regular partition failed verification: " + rep.violations[0].kind + ": " +
                                rep.violations[0].detail);
}

}  // namespace

BoxMasses box_masses(const Hypergraph& h, const ProductMeasure& mu, const std::vector<std::vector<Bitset>>& parts)
{
    BoxStats st = box_stats(h, mu, parts, nullptr);
    std::vector<std::size_t> counts;
    for (const auto& p : parts) counts.push_back(p.size());
    return BoxMasses{Shape(counts), std::move(st.mass), std::move(st.edge)};
}

void label_boxes(const Hypergraph& h, const ProductMeasure& mu, const Bitset& a_members, RegularPartition& p)
{
    BoxStats st = box_stats(h, mu, p.parts, &a_members);
    Shape bs = p.box_shape();
    p.labels.assign(bs.total(), -1);
    p.sigma.clear();
    Integer sigma = 0;
    for (std::size_t x = 0; x < bs.total(); ++x) {
        const Integer& m = st.mass[x];
        if (m == 0) continue;
        int label;
        if (st.in_a[x] == m)
            label = 1;
        else if (st.in_a[x] == 0)
            label = 0;
        else
            throw VerificationError("approximation is not compatible with the partition at box " +
                                    tuple_str(bs.tuple(x)));
        Integer bad = label ? Integer(m - st.edge[x]) : st.edge[x];
        if (below_fraction(bad, p.eps, m)) {
            p.labels[x] = label;
        } else {
            p.sigma.push_back(bs.tuple(x));
            sigma += m;
        }
    }
    p.sigma_mass = Rational(sigma, mu.denominator());
    p.sigma_mass.canonicalize();
}

RegularPartition regular_partition(const Hypergraph& h, const ProductMeasure& mu, const Rational& eps)
{
    mu.check_against(h);
    if (eps <= 0 || eps >= 1) throw InputError("epsilon must lie in (0,1)");
    RectApprox ra = rectangular_approximation(h, mu, eps * eps);
    RegularPartition p;
    p.eps = eps;
    p.rect_error = ra.error;
    for (std::size_t c = 0; c < h.k(); ++c) {
        std::vector<Bitset> sides;
        for (const auto& b : ra.boxes) sides.push_back(b.sides[c]);
        p.parts.push_back(merge_null_classes(atoms(h.part_sizes()[c], sides), mu.part(c)));
    }
    p.params = ra.D;
    label_boxes(h, mu, ra.members(h.shape()), p);
    add_bounds(h, ra, p);
    check_or_throw(h, mu, p);
    return p;
}

RegularPartition uniform_regular_partition(const Hypergraph& h, const ProductMeasure& mu, const Rational& eps)
{
    mu.check_against(h);
    if (!h.symmetric()) throw InputError("uniform partition needs a symmetric hypergraph");
    for (std::size_t c = 1; c < h.k(); ++c)
        if (mu.part(c).weights() != mu.part(0).weights())
            throw InputError("uniform partition needs the same measure on every part");
    if (eps <= 0 || eps >= 1) throw InputError("epsilon must lie in (0,1)");
    RectApprox ra = rectangular_approximation(h, mu, eps * eps);
    std::vector<Tuple> pooled;
    for (const auto& d : ra.D) pooled.insert(pooled.end(), d.begin(), d.end());
    std::sort(pooled.begin(), pooled.end());
    pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

    const BinaryView& view = h.coordinate_view(0);
    std::vector<Bitset> gens;
    for (const auto& t : pooled) gens.push_back(view.fiber(view.param_shape().index(t)));
    std::vector<Bitset> P = merge_null_classes(atoms(h.part_sizes()[0], gens), mu.part(0));

    RegularPartition p;
    p.eps = eps;
    p.rect_error = ra.error;
    p.parts.assign(h.k(), P);
    p.params = {pooled};
    p.pooled_params = true;
    label_boxes(h, mu, ra.members(h.shape()), p);
    add_bounds(h, ra, p);
    check_or_throw(h, mu, p);
    return p;
}

PartitionReport verify_regular_partition(const Hypergraph& h, const ProductMeasure& mu, const RegularPartition& p)
{
    mu.check_against(h);
    PartitionReport rep;
    auto fail = [&](bool& flag, std::string kind, std::string detail) {
        flag = false;
        rep.violations.push_back({std::move(kind), std::move(detail)});
    };
    const std::size_t k = h.k();

    if (p.parts.size() != k) {
        fail(rep.partition_valid, "partition", "expected " + std::to_string(k) + " per-part partitions");
        return rep;
    }
    for (std::size_t c = 0; c < k; ++c) {
        Bitset seen(h.part_sizes()[c]);
        for (std::size_t j = 0; j < p.parts[c].size(); ++j) {
            const Bitset& cls = p.parts[c][j];
            if (cls.size() != h.part_sizes()[c]) {
                fail(rep.partition_valid, "partition", "class " + std::to_string(j) + " of part " +
                                                           std::to_string(c) + " has the wrong ground size");
                return rep;
            }
            if (cls.none()) fail(rep.partition_valid, "partition", "empty class in part " + std::to_string(c));
            if (cls.intersects(seen))
                fail(rep.partition_valid, "partition", "overlapping classes in part " + std::to_string(c));
            seen |= cls;
        }
        if (seen.count() != h.part_sizes()[c])
            fail(rep.partition_valid, "partition", "classes do not cover part " + std::to_string(c));
    }
    if (!rep.partition_valid) return rep;

    Shape bs = p.box_shape();
    rep.boxes = bs.total();
    if (!p.labels.empty() && p.labels.size() != bs.total()) {
        fail(rep.partition_valid, "partition", "label count does not match the box count");
        return rep;
    }
    std::vector<char> in_sigma(bs.total(), 0);
    for (const auto& t : p.sigma) {
        bool ok = t.size() == k;
        for (std::size_t c = 0; ok && c < k; ++c) ok = t[c] < p.parts[c].size();
        if (!ok) {
            fail(rep.partition_valid, "partition", "exceptional box " + tuple_str(t) + " out of range");
            return rep;
        }
        std::size_t x = bs.index(t);
        if (in_sigma[x]) fail(rep.partition_valid, "partition", "exceptional box " + tuple_str(t) + " listed twice");
        in_sigma[x] = 1;
    }

    BoxStats st = box_stats(h, mu, p.parts, nullptr);
    Integer sigma = 0;
    for (std::size_t x = 0; x < bs.total(); ++x) {
        const Integer& m = st.mass[x];
        if (in_sigma[x]) {
            sigma += m;
            continue;
        }
        if (m == 0) {
            ++rep.zero_boxes;
            continue;
        }
        const Integer& e = st.edge[x];
        const Integer non = m - e;
        const int label = p.labels.empty() ? -1 : p.labels[x];
        bool ok = label == 1   ? below_fraction(non, p.eps, m)
                  : label == 0 ? below_fraction(e, p.eps, m)
                               : below_fraction(non, p.eps, m) || below_fraction(e, p.eps, m);
        if (!ok) {
            Rational d(e, m);
            d.canonicalize();
            fail(rep.densities_ok, "density",
                 "box " + tuple_str(bs.tuple(x)) + " label " + std::to_string(label) + " density " + to_string(d));
        }
    }
    rep.sigma_mass = Rational(sigma, mu.denominator());
    rep.sigma_mass.canonicalize();
    if (rep.sigma_mass > p.eps)
        fail(rep.sigma_ok, "sigma-mass", to_string(rep.sigma_mass) + " exceeds " + to_string(p.eps));

    for (std::size_t c = 0; c < k; ++c) {
        const std::size_t src = p.pooled_params ? 0 : c;
        const BinaryView& view = h.coordinate_view(src);
        std::vector<Bitset> gens;
        bool params_ok = true;
        if (src < p.params.size()) {
            for (const auto& t : p.params[src]) {
                bool ok = t.size() + 1 == k;
                for (std::size_t i = 0; ok && i < t.size(); ++i) ok = t[i] < view.param_shape().size(i);
                if (!ok) {
                    fail(rep.definable_ok, "definability", "parameter " + tuple_str(t) + " malformed for part " +
                                                               std::to_string(c));
                    params_ok = false;
                    break;
                }
                gens.push_back(view.fiber(view.param_shape().index(t)));
            }
        }
        if (!params_ok) continue;
        std::vector<Bitset> at = atoms(h.part_sizes()[c], gens);
        for (std::size_t j = 0; j < p.parts[c].size(); ++j)
            if (!is_union_of(p.parts[c][j], at))
                fail(rep.definable_ok, "definability",
                     "class " + std::to_string(j) + " of part " + std::to_string(c) +
                         " is not a union of atoms over the recorded parameters");
    }
    return rep;
}

DenseBox find_dense_box(const Hypergraph& h, const ProductMeasure& mu, const Rational& alpha, const Rational& eps)
{
    mu.check_against(h);
    if (alpha <= 0 || alpha >= 1 || eps <= 0 || eps >= 1) throw InputError("alpha and epsilon must lie in (0,1)");
    Rational total = mu.mass(h.relation().members());
    if (total < alpha) throw InputError("edge measure " + to_string(total) + " is below alpha " + to_string(alpha));

    DenseBox out;
    out.eps_prime = std::min(alpha, eps) / 4;
    RegularPartition p = regular_partition(h, mu, out.eps_prime);
    Shape bs = p.box_shape();
    out.partition_boxes = bs.total();
    out.partition_size = p.size();
    out.delta_guarantee = out.eps_prime / Rational(static_cast<unsigned long>(bs.total()));

    BoxStats st = box_stats(h, mu, p.parts, nullptr);
    const Rational threshold = out.delta_guarantee * mu.denominator();
    std::size_t best = bs.total();
    for (std::size_t x = 0; x < bs.total(); ++x) {
        if (p.labels[x] != 1 || !(Rational(st.mass[x]) > threshold)) continue;
        if (best == bs.total() || st.mass[x] > st.mass[best]) best = x;
    }
    if (best == bs.total()) throw VerificationError("no dense box found");

    Tuple cls = bs.tuple(best);
    for (std::size_t c = 0; c < h.k(); ++c) {
        out.classes.push_back(cls[c]);
        out.box.sides.push_back(p.parts[c][cls[c]]);
        out.side_masses.push_back(mu.part(c).mass(p.parts[c][cls[c]]));
    }
    out.mass = Rational(st.mass[best], mu.denominator());
    out.mass.canonicalize();
    out.density = Rational(st.edge[best], st.mass[best]);
    out.density.canonicalize();
    if (!(out.density > 1 - eps)) throw VerificationError("dense box has density " + to_string(out.density));
    for (const auto& s : out.side_masses)
        if (!(s > out.delta_guarantee)) throw VerificationError("dense box side below the guarantee");
    return out;
}

}  // namespace vcreg
