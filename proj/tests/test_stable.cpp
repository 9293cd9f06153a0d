#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "vcreg/errors.hpp"
#include "vcreg/instances.hpp"
#include "vcreg/rng.hpp"
#include "vcreg/stable.hpp"

using namespace vcreg;
using testing::set_of;

namespace {

// Longest ladder by trying every pair of index sequences; tiny relations only.
std::size_t brute_ladder(const Hypergraph& h)
{
    const std::size_t n = h.part_sizes()[0], m = h.part_sizes()[1];
    std::size_t best = 0;
    std::vector<std::uint32_t> a, b;
    std::function<void()> grow = [&] {
        best = std::max(best, a.size());
        for (std::uint32_t x = 0; x < n; ++x)
            for (std::uint32_t y = 0; y < m; ++y) {
                bool ok = true;
                for (std::size_t i = 0; i < a.size() && ok; ++i)
                    ok = !h.has_edge(Tuple{x, b[i]}) && h.has_edge(Tuple{a[i], y});
                ok = ok && h.has_edge(Tuple{x, y});
                if (!ok) continue;
                a.push_back(x);
                b.push_back(y);
                grow();
                a.pop_back();
                b.pop_back();
            }
    };
    grow();
    return best;
}

Rational fiber_density(const Hypergraph& h, const ProductMeasure& mu, const Bitset& A, std::uint32_t b)
{
    Rational in = 0, all = 0;
    A.for_each([&](std::size_t a) {
        Rational w = mu.part(0).weight(a);
        all += w;
        if (h.has_edge(Tuple{static_cast<std::uint32_t>(a), b})) in += w;
    });
    return in / all;
}

// A is eps-good iff every fiber meets A in density < eps or > 1 - eps.
bool brute_good(const Hypergraph& h, const ProductMeasure& mu, const Bitset& A, const Rational& eps)
{
    for (std::uint32_t b = 0; b < h.part_sizes()[1]; ++b) {
        Rational d = fiber_density(h, mu, A, b);
        if (!(d < eps || d > 1 - eps)) return false;
    }
    return true;
}

bool exactly_homogeneous(const Hypergraph& h, const ProductMeasure& mu, const RegularPartition& p)
{
    Shape bs = p.box_shape();
    for (std::size_t x = 0; x < bs.total(); ++x) {
        Tuple t = bs.tuple(x);
        Box b;
        for (std::size_t c = 0; c < h.k(); ++c) b.sides.push_back(p.parts[c][t[c]]);
        auto tl = oracle::tally(h, mu, b);
        if (tl.mass == 0) continue;
        if (tl.edges != 0 && tl.edges != tl.mass) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("ladder index")
{
    for (std::size_t n = 1; n <= 6; ++n) {
        Ladder l = ladder_index(testing::half_graph(n), {0}, 10);
        CHECK(l.length == n);
        CHECK(verify_ladder(testing::half_graph(n), l));
    }
    CHECK(ladder_index(testing::complete({3, 3}), {0}, 5).length == 1);
    CHECK(ladder_index(testing::empty({3, 3}), {0}, 5).length == 0);
    Ladder capped = ladder_index(testing::half_graph(8), {0}, 4);
    CHECK(capped.length == 4);
    CHECK(capped.reached_cap);

    Rng rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Tuple> edges;
        const std::size_t n = 2 + rng.below(4), m = 2 + rng.below(4);
        oracle::for_each_tuple({n, m}, [&](const Tuple& t) {
            if (rng.coin()) edges.push_back(t);
        });
        Hypergraph h({n, m}, edges);
        Ladder l = ladder_index(h, {0}, 10);
        CHECK(l.length == brute_ladder(h));
        CHECK(verify_ladder(h, l));
    }
}

TEST_CASE("tree depth")
{
    CHECK(tree_depth(testing::complete({4, 4}), {0}, 5).depth == 0);
    // nested fibers of length n split a chain: depth floor(log2 n)
    CHECK(tree_depth(testing::half_graph(8), {0}, 8).depth == 3);
    CHECK(tree_depth(testing::blocks({2, 2, 2, 2}), {0}, 8).depth == 1);
}

TEST_CASE("goodness")
{
    Hypergraph h10 = testing::half_graph(10);
    ProductMeasure u10 = ProductMeasure::uniform({10, 10});
    GoodnessReport g = good_check(h10, u10, Bitset::full(10), {0}, Rational(1, 5));
    CHECK_FALSE(g.good);
    REQUIRE(g.witness);
    CHECK(*g.witness == 4);
    CHECK(g.witness_density == Rational(1, 2));
    CHECK(fiber_density(h10, u10, Bitset::full(10), 4) == Rational(1, 2));

    CHECK(good_check(testing::complete({4, 4}), ProductMeasure::uniform({4, 4}), set_of(4, {1, 2}), {0},
                     Rational(1, 3))
              .good);
    CHECK(good_check(testing::empty({4, 4}), ProductMeasure::uniform({4, 4}), set_of(4, {1}), {0}, Rational(1, 3))
              .good);
    Measure w = Measure::from_weights({Rational(1, 2), Rational(1, 2), 0, 0});
    CHECK_THROWS_AS(good_check(h10, ProductMeasure({w, w}), set_of(4, {3}), {0}, Rational(1, 3)), InputError);

    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        Bitset A(10);
        for (std::size_t i = 0; i < 10; ++i) A.assign(i, rng.coin());
        if (A.none()) A.set(0);
        Rational eps(static_cast<long>(1 + rng.below(4)), 10);
        CHECK(good_check(h10, u10, A, {0}, eps).good == brute_good(h10, u10, A, eps));
    }
}

TEST_CASE("good descent partitions")
{
    CHECK(good_descent_partition(testing::complete({5, 5}), ProductMeasure::uniform({5, 5}), 0, Rational(1, 8), 4)
              .classes.size() == 1);

    Hypergraph three = testing::blocks({4, 4, 4});
    ProductMeasure u12 = ProductMeasure::uniform({12, 12});
    DescentPartition dp = good_descent_partition(three, u12, 0, Rational(1, 8), 8);
    CHECK(testing::refines(dp.classes, testing::block_sets({4, 4, 4})));
    for (const auto& c : dp.classes) CHECK(brute_good(three, u12, c, Rational(1, 8)));

    Hypergraph h8 = testing::half_graph(8);
    ProductMeasure u8 = ProductMeasure::uniform({8, 8});
    DescentPartition dh = good_descent_partition(h8, u8, 0, Rational(1, 4), 8);
    Bitset cover(8);
    for (const auto& c : dh.classes) {
        CHECK(brute_good(h8, u8, c, Rational(1, 8)));
        CHECK_FALSE(c.intersects(cover));
        cover |= c;
    }
    CHECK(cover.count() == 8);
    CHECK_FALSE(dh.precondition_met);   // measured ladder 8 needs eps < 2^-8

    CHECK_THROWS_AS(good_descent_partition(h8, u8, 0, Rational(1, 4), 8, 3), InputError);
    CHECK_THROWS_AS(good_descent_partition(h8, u8, 0, Rational(1, 1024), 8, 9), InputError);
}

TEST_CASE("descent beyond the depth cap carries evidence")
{
    Hypergraph h = testing::half_graph(16);
    ProductMeasure u = ProductMeasure::uniform({16, 16});
    try {
        good_descent_partition(h, u, 0, Rational(1, 8), 1);
        FAIL("expected a depth error");
    } catch (const DescentDepthError& e) {
        CHECK_FALSE(e.evidence().empty());
    }
}

TEST_CASE("stable partitions of block unions are exact")
{
    CHECK(stable_regular_partition(testing::complete({4, 4}), ProductMeasure::uniform({4, 4}), Rational(1, 8), 8)
              .partition.box_count() == 1);

    std::vector<std::size_t> sizes{3, 5, 4, 4};
    Hypergraph h = testing::blocks(sizes);
    ProductMeasure u = ProductMeasure::uniform({16, 16});
    StablePartition sp = stable_regular_partition(h, u, Rational(1, 8), 8);
    CHECK(sp.partition.sigma.empty());
    CHECK(sp.partition.parts[0] == testing::block_sets(sizes));
    CHECK(exactly_homogeneous(h, u, sp.partition));
    CHECK(oracle::verify(h, u, sp.partition).ok);

    Hypergraph h3 = testing::blocks({4, 4}, 3);
    ProductMeasure u3 = ProductMeasure::uniform({8, 8, 8});
    StablePartition s3 = stable_regular_partition(h3, u3, Rational(1, 8), 8);
    for (const auto& p : s3.partition.parts) CHECK(p.size() == 2);
    CHECK(s3.partition.box_count() == 8);
    CHECK(exactly_homogeneous(h3, u3, s3.partition));
}

TEST_CASE("product goodness")
{
    Hypergraph h = testing::blocks({4, 4}, 3);
    ProductMeasure u = ProductMeasure::uniform({8, 8, 8});
    auto b = testing::block_sets({4, 4});
    ProductGoodness g = product_goodness_check(h, u, 1, {b[0]}, b[0], Rational(1, 8));
    CHECK(g.holds);
    CHECK(g.b_good);
    CHECK(g.a_splits);
    CHECK(product_goodness_check(testing::complete({3, 3, 3}), ProductMeasure::uniform({3, 3, 3}), 1,
                                 {Bitset::full(3)}, Bitset::full(3), Rational(1, 8))
              .holds);
    CHECK(product_goodness_check(testing::empty({3, 3, 3}), ProductMeasure::uniform({3, 3, 3}), 1, {Bitset::full(3)},
                                 Bitset::full(3), Rational(1, 8))
              .holds);

    Hypergraph st = generate_hypergraph({.kind = InstanceKind::staircase, .sizes = {6}, .k = 3});
    ProductGoodness bad = product_goodness_check(st, ProductMeasure::uniform({6, 6, 6}), 1, {Bitset::full(6)},
                                                 Bitset::full(6), Rational(1, 8));
    CHECK_FALSE(bad.holds);
}
