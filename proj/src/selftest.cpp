#include "vcreg/selftest.hpp"

#include "vcreg/atoms.hpp"
#include "vcreg/convexity.hpp"
#include "vcreg/dyadic.hpp"
#include "vcreg/instances.hpp"
#include "vcreg/regularity.hpp"
#include "vcreg/rng.hpp"
#include "vcreg/rodl.hpp"
#include "vcreg/stable.hpp"
#include "vcreg/vc.hpp"

#include <functional>

namespace vcreg {

namespace {

Hypergraph half_graph(std::size_t n) { return generate_hypergraph({.kind = InstanceKind::half_graph, .sizes = {n}}); }

// Disjoint blocks of the given sizes on the diagonal, n x n with n their sum.
Hypergraph blocks(const std::vector<std::size_t>& sizes, std::size_t k = 2)
{
    std::vector<std::size_t> block_of;
    for (std::size_t b = 0; b < sizes.size(); ++b) block_of.insert(block_of.end(), sizes[b], b);
    const std::size_t n = block_of.size();
    Shape shape(std::vector<std::size_t>(k, n));
    Bitset m(shape.total());
    for (std::size_t i = 0; i < shape.total(); ++i) {
        Tuple t = shape.tuple(i);
        bool same = true;
        for (auto x : t) same = same && block_of[x] == block_of[t[0]];
        if (same) m.set(i);
    }
    return Hypergraph(Relation(shape, m), true);
}

SetFamily intervals(std::size_t n)
{
    std::vector<Bitset> members;
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t r = l; r < n; ++r) {
            Bitset s(n);
            for (std::size_t x = l; x <= r; ++x) s.set(x);
            members.push_back(s);
        }
    return SetFamily(n, members);
}

Rational brute_error(const Hypergraph& h, const ProductMeasure& mu, const RectApprox& ra)
{
    Integer err = 0;
    for (std::size_t i = 0; i < h.shape().total(); ++i) {
        Tuple t = h.shape().tuple(i);
        bool in_a = false;
        for (const auto& b : ra.boxes) in_a = in_a || b.contains(t);
        if (in_a != h.has_edge(t)) err += mu.scaled_weight(t);
    }
    Rational q(err, mu.denominator());
    q.canonicalize();
    return q;
}

bool refines(const std::vector<Bitset>& classes, const std::vector<Bitset>& coarse)
{
    for (const auto& c : classes) {
        bool inside = false;
        for (const auto& b : coarse) inside = inside || c.is_subset_of(b);
        if (!inside) return false;
    }
    return true;
}

std::vector<Bitset> block_sets(const std::vector<std::size_t>& sizes)
{
    std::size_t n = 0;
    for (auto s : sizes) n += s;
    std::vector<Bitset> out;
    std::size_t at = 0;
    for (auto s : sizes) {
        Bitset b(n);
        for (std::size_t i = 0; i < s; ++i) b.set(at + i);
        out.push_back(b);
        at += s;
    }
    return out;
}

bool all_homogeneous(const RegularPartition& p)
{
    for (int l : p.labels)
        if (l < 0) return false;
    return p.sigma.empty();
}

}  // namespace

void run_selftest(RunReport& r)
{
    auto expect = [&](const std::string& name, const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("threw: ") + e.what();
        }
        r.check(name, ok, detail);
    };
    const Hypergraph h4 = half_graph(4);
    const ProductMeasure u4 = ProductMeasure::uniform(h4.part_sizes());

    expect("fiber of half-graph 4x4 at b=2", [&](std::string& d) {
        Fiber f = h4.fiber({0}, {2});
        d = "size " + std::to_string(f.members.count());
        return f.members == Bitset::from_indices(4, std::vector<std::size_t>{0, 1, 2});
    });
    expect("half-graph 4x4 edge mass 10/16", [&](std::string& d) {
        Rational m = u4.mass(h4.relation().members());
        d = to_string(m);
        return m == ratio(10, 16);
    });
    expect("half-graph 4x4 full-box density 10/16", [&](std::string& d) {
        Rational m = density(h4, u4, Box::full(h4.part_sizes()));
        d = to_string(m);
        return m == ratio(10, 16);
    });
    expect("weak Fubini on a random 6x6 relation", [&](std::string& d) {
        Rng rng(7);
        std::vector<Tuple> edges;
        for (std::uint32_t a = 0; a < 6; ++a)
            for (std::uint32_t b = 0; b < 6; ++b)
                if (rng.coin()) edges.push_back({a, b});
        Hypergraph h({6, 6}, edges);
        ProductMeasure mu = ProductMeasure::uniform({6, 6});
        FubiniProbe probe = weak_fubini_check(h, mu, {0}, Rational(1));
        FubiniProbe at = weak_fubini_check(h, mu, {0}, probe.max_fiber_mass + Rational(1, 100));
        d = to_string(at.product_mass);
        return at.holds;
    });
    expect("intervals on 6 points have VC dimension 2", [&](std::string& d) {
        VcResult v = vc_dimension(intervals(6));
        d = std::to_string(v.dimension);
        return v.dimension == 2;
    });
    expect("interval shatter function on 10 points at n=3 is 7", [&](std::string& d) {
        auto pi = shatter_function(intervals(10), 3);
        d = std::to_string(pi);
        return pi == 7;
    });
    expect("Sauer-Shelah for intervals, d=2, n=3", [&](std::string& d) {
        SauerCheck s = sauer_check(intervals(10), 2, 3);
        d = std::to_string(s.pi) + " <= " + to_string(s.bound);
        return s.holds && s.pi == 7 && s.bound == 7;
    });
    expect("Sauer-Shelah for half-graph 8 fibers, d=1, n=4", [&](std::string& d) {
        SauerCheck s = sauer_check(SetFamily::of_fibers(half_graph(8).coordinate_view(0)), 1, 4);
        d = std::to_string(s.pi) + " <= " + to_string(s.bound);
        return s.holds && s.pi <= 5;
    });
    expect("definable atoms of half-graph 4x4 over all parameters", [&](std::string& d) {
        DefinableCount c = definable_count_bound(h4, {0}, {0, 1, 2, 3});
        d = std::to_string(c.count) + " atoms, bound " + to_string(c.bound);
        return c.count == 4 && c.bound == 5 && c.within_bound;
    });
    expect("greedy net for intervals on 20 points at 1/4", [&](std::string& d) {
        SetFamily f = intervals(20);
        Measure mu = Measure::uniform(20);
        EpsNet n = epsilon_net(f, mu, Rational(1, 4), NetStrategy::greedy, 0);
        d = std::to_string(n.points.size()) + " points";
        return n.verified && verify_net(f, mu, Rational(1, 4), n.points).ok &&
               n.points == std::vector<std::size_t>{4, 9, 14, 19};
    });
    expect("delta partition of half-graph 4x4 at 3/10", [&](std::string& d) {
        DeltaPartition dp = delta_approx_partition(h4, u4, {0}, Rational(3, 10));
        d = std::to_string(dp.classes.size()) + " classes, max distance " + to_string(dp.max_distance);
        return dp.max_distance < Rational(3, 10);
    });
    expect("rectangular approximation of half-graph 4x4 at 3/10", [&](std::string& d) {
        RectApprox ra = rectangular_approximation(h4, u4, Rational(3, 10));
        Rational b = brute_error(h4, u4, ra);
        d = to_string(b);
        return b == ra.error && b < Rational(3, 10);
    });
    expect("rectangular approximation of the 4^3 staircase at 1/2", [&](std::string& d) {
        Hypergraph s = generate_hypergraph({.kind = InstanceKind::staircase, .sizes = {4}, .k = 3});
        ProductMeasure mu = ProductMeasure::uniform(s.part_sizes());
        RectApprox ra = rectangular_approximation(s, mu, Rational(1, 2));
        Rational b = brute_error(s, mu, ra);
        d = to_string(b);
        return b == ra.error && b < Rational(1, 2);
    });
    expect("two blocks 8x8 partition at 1/10", [&](std::string& d) {
        Hypergraph h = blocks({4, 4});
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        RegularPartition p = regular_partition(h, mu, Rational(1, 10));
        d = std::to_string(p.size()) + " classes";
        return verify_regular_partition(h, mu, p).ok() && all_homogeneous(p) &&
               refines(p.parts[0], block_sets({4, 4})) && refines(p.parts[1], block_sets({4, 4}));
    });
    expect("half-graph 16x16 partition at 1/4", [&](std::string& d) {
        Hypergraph h = half_graph(16);
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        RegularPartition p = regular_partition(h, mu, Rational(1, 4));
        d = "sigma mass " + to_string(p.sigma_mass);
        return verify_regular_partition(h, mu, p).ok() && p.sigma_mass <= Rational(1, 4);
    });
    expect("three cliques on 12 vertices, uniform partition at 1/8", [&](std::string& d) {
        Hypergraph h = blocks({4, 4, 4});
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        RegularPartition p = uniform_regular_partition(h, mu, Rational(1, 8));
        d = std::to_string(p.size()) + " classes";
        return verify_regular_partition(h, mu, p).ok() && p.sigma.empty() && refines(p.parts[0], block_sets({4, 4, 4}));
    });
    expect("same-half 3-hypergraph on 8 vertices, uniform partition at 1/4", [&](std::string& d) {
        Hypergraph h = blocks({4, 4}, 3);
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        RegularPartition p = uniform_regular_partition(h, mu, Rational(1, 4));
        d = std::to_string(p.box_count()) + " boxes";
        return verify_regular_partition(h, mu, p).ok();
    });
    expect("adversarial single-class partition of half-graph 4x4 is rejected", [&](std::string& d) {
        RegularPartition p;
        p.eps = Rational(1, 10);
        p.parts = {{Bitset::full(4)}, {Bitset::full(4)}};
        p.params = {{}, {}};
        p.labels = {1};
        p.sigma_mass = 0;
        PartitionReport rep = verify_regular_partition(h4, u4, p);
        d = std::to_string(rep.violations.size()) + " violations";
        return !rep.densities_ok;
    });
    expect("dense box in two blocks, alpha 2/5, eps 1/10", [&](std::string& d) {
        Hypergraph h = blocks({4, 4});
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        DenseBox b = find_dense_box(h, mu, Rational(2, 5), Rational(1, 10));
        d = "density " + to_string(b.density);
        return b.density == 1 && density(h, mu, b.box) == 1;
    });
    expect("dense box in half-graph 16x16, alpha 1/2, eps 1/4", [&](std::string& d) {
        Hypergraph h = half_graph(16);
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        DenseBox b = find_dense_box(h, mu, Rational(1, 2), Rational(1, 4));
        bool sides = true;
        for (std::size_t i = 0; i < 2; ++i) sides = sides && mu.part(i).mass(b.box.sides[i]) > 0;
        d = "density " + to_string(b.density);
        return density(h, mu, b.box) > Rational(3, 4) && sides;
    });
    expect("half-graph 10x10 is not 1/5-good on a whole side", [&](std::string& d) {
        Hypergraph h = half_graph(10);
        GoodnessReport g =
            good_check(h, ProductMeasure::uniform(h.part_sizes()), Bitset::full(10), {0}, Rational(1, 5));
        d = g.witness ? "witness " + std::to_string(*g.witness) : "no witness";
        return !g.good && g.witness == 4u && g.witness_density == Rational(1, 2);
    });
    expect("descent on three blocks 12x12 at 1/8", [&](std::string& d) {
        Hypergraph h = blocks({4, 4, 4});
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        DescentPartition dp = good_descent_partition(h, mu, 0, Rational(1, 8), 8);
        bool good = true;
        for (const auto& c : dp.classes) good = good && good_check(h, mu, c, {0}, Rational(1, 8)).good;
        d = std::to_string(dp.classes.size()) + " classes";
        return good && refines(dp.classes, block_sets({4, 4, 4}));
    });
    expect("descent on half-graph 8x8 at 1/4", [&](std::string& d) {
        Hypergraph h = half_graph(8);
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        DescentPartition dp = good_descent_partition(h, mu, 0, Rational(1, 4), 8);
        bool good = true;
        for (const auto& c : dp.classes) good = good && good_check(h, mu, c, {0}, Rational(1, 8)).good;
        d = std::to_string(dp.classes.size()) + " classes, depth " + std::to_string(dp.max_depth);
        return good;
    });
    expect("stable partition of four blocks at 1/8", [&](std::string& d) {
        std::vector<std::size_t> sizes{3, 5, 4, 4};
        Hypergraph h = blocks(sizes);
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        StablePartition sp = stable_regular_partition(h, mu, Rational(1, 8), 8);
        d = std::to_string(sp.partition.size()) + " classes";
        return all_homogeneous(sp.partition) && sp.partition.parts[0] == block_sets(sizes) &&
               verify_regular_partition(h, mu, sp.partition).ok();
    });
    expect("stable partition of the same-block 3-relation at 1/8", [&](std::string& d) {
        Hypergraph h = blocks({4, 4}, 3);
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        StablePartition sp = stable_regular_partition(h, mu, Rational(1, 8), 8);
        d = std::to_string(sp.partition.box_count()) + " boxes";
        bool two = true;
        for (const auto& p : sp.partition.parts) two = two && p.size() == 2;
        return two && sp.partition.box_count() == 8 && all_homogeneous(sp.partition);
    });
    expect("product goodness inside one block", [&](std::string& d) {
        Hypergraph h = blocks({4, 4}, 3);
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        auto b = block_sets({4, 4});
        ProductGoodness g = product_goodness_check(h, mu, 1, {b[0]}, b[0], Rational(1, 8));
        d = g.holds ? "holds" : "fails";
        return g.holds && g.b_good && g.a_splits;
    });
    expect("odd-split density of the full tree at depth 4", [&](std::string& d) {
        Rational x = odd_split_density({DyadicBall{}}, 4);
        d = to_string(x);
        return x == Rational(1, 3) && odd_split_edges({DyadicBall{}}, 4) == 80 &&
               odd_split_density_enumerated({DyadicBall{}}, 4) == x;
    });
    expect("odd-split density of a radius-1 ball at depth 5", [&](std::string& d) {
        Rational x = odd_split_density({DyadicBall{"0"}}, 5);
        d = to_string(x);
        return x == Rational(2, 3) && odd_split_density_enumerated({DyadicBall{"0"}}, 5) == x;
    });
    expect("parity table rows", [&](std::string& d) {
        auto r4 = ball_parity_report(4);
        auto r5 = ball_parity_report(5);
        d = to_string(r4[3].density);
        return r4[0].density == Rational(1, 3) && r5[1].density == Rational(2, 3) && r4[3].density == 1;
    });
    expect("anti-homogeneity with two depth-1 balls at depth 6", [&](std::string& d) {
        AntiHomogeneity a = anti_homogeneity_bound_check({DyadicBall{"0"}, DyadicBall{"1"}}, DyadicBall{"0"}, 6);
        d = to_string(a.pair_mass) + " <= " + to_string(a.bound);
        return a.holds;
    });
    expect("anti-homogeneity with gamma 1/2 at depth 8", [&](std::string& d) {
        AntiHomogeneity a = anti_homogeneity_bound_check({DyadicBall{"00"}, DyadicBall{"10"}}, DyadicBall{"00"}, 8);
        d = "gamma " + to_string(a.gamma);
        return a.holds && a.gamma == Rational(1, 2);
    });
    expect("convexity densities on {1,2,3} and {1..4}", [&](std::string& d) {
        Rational a = convexity_density(3, {1, 3}), b = convexity_density(4, {1, 4});
        d = to_string(a) + ", " + to_string(b);
        return a == 1 && b == Rational(3, 4);
    });
    expect("convexity progression formula up to n=100", [&](std::string& d) {
        for (std::int64_t n = 3; n <= 100; ++n) {
            IntegerInterval c{1, n};
            Rational f = Rational(1, 2) + ratio(arithmetic_progressions(c), 2 * binomial(n, 3));
            if (convexity_density(n, c) != f || convexity_density_enumerated(n, c) != f) {
                d = "n=" + std::to_string(n);
                return false;
            }
        }
        return true;
    });
    expect("reflection on {1..4} swaps (1,3,4) and (1,2,4)", [&](std::string& d) {
        IntegerInterval c{1, 4};
        d = reflection_involution_check(c).holds ? "holds" : "fails";
        return reflection_involution_check(c).holds && reflect(c, {1, 3, 4}) == Triple{1, 2, 4};
    });
    expect("reflection on {5..10}", [&](std::string& d) {
        InvolutionReport rep = reflection_involution_check({5, 10});
        d = std::to_string(rep.triples) + " triples";
        return rep.holds;
    });
    expect("dyadic balls at depth 6 are never 1/5-homogeneous", [&](std::string& d) {
        BallSearch s = dyadic_ball_search(6, Rational(1, 5));
        d = "closest " + to_string(s.closest);
        return !s.found && s.closest >= Rational(1, 4);
    });
    expect("two-clique graph has a homogeneous clique", [&](std::string& d) {
        Hypergraph h = blocks({4, 4});
        HomogeneousSearch s =
            definable_homogeneous_search(h, ProductMeasure::uniform(h.part_sizes()), Rational(1, 8), 1);
        d = s.found ? to_string(s.density) : "NOT-FOUND";
        return s.found && s.density == 1 && s.mass == Rational(1, 2);
    });
    expect("complete graph is homogeneous on V", [&](std::string& d) {
        Hypergraph h = blocks({6});
        HomogeneousSearch s =
            definable_homogeneous_search(h, ProductMeasure::uniform(h.part_sizes()), Rational(1, 8), 1);
        d = s.found ? to_string(s.mass) : "NOT-FOUND";
        return s.found && s.mass == 1 && s.density == 1;
    });
    expect("half-graph 8 has ladder 8 and VC dimension 1", [&](std::string& d) {
        Instance inst = generate({.kind = InstanceKind::half_graph, .sizes = {8}});
        d = std::to_string(inst.measured.ladder_index) + ", " + std::to_string(inst.measured.vc_dimension);
        return inst.measured.ladder_index == 8 && inst.measured.vc_dimension == 1;
    });
    expect("block union of 3 on 12x12 has ladder 1", [&](std::string& d) {
        Instance inst = generate({.kind = InstanceKind::block_union, .sizes = {12}, .blocks = 3});
        d = std::to_string(inst.measured.ladder_index);
        return inst.measured.ladder_index == 1;
    });
    expect("staircase 4^3 has 20 edges", [&](std::string& d) {
        Hypergraph s = generate_hypergraph({.kind = InstanceKind::staircase, .sizes = {4}, .k = 3});
        d = std::to_string(s.edges().size());
        return s.edges().size() == 20;
    });
    expect("interval graph has VC dimension 2", [&](std::string& d) {
        Instance inst = generate({.kind = InstanceKind::interval_graph, .sizes = {12}, .seed = 3});
        d = std::to_string(inst.measured.vc_dimension);
        return inst.measured.vc_dimension == 2;
    });
}

}  // namespace vcreg
