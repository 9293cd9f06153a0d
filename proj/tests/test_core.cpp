#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "vcreg/atoms.hpp"
#include "vcreg/errors.hpp"
#include "vcreg/measure.hpp"
#include "vcreg/rational.hpp"
#include "vcreg/rng.hpp"

using namespace vcreg;
using testing::set_of;

TEST_CASE("rationals parse exactly and print as num/den")
{
    CHECK(parse_rational("3/12") == Rational(1, 4));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK(to_string(Rational(5)) == "5/1");
    CHECK(to_string(ratio(10, 16)) == "5/8");
    CHECK_THROWS_AS(parse_rational("0.25"), InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(ratio(1, 0), InputError);
    CHECK(ratio(10, 16) + ratio(6, 16) == 1);
}

TEST_CASE("binomials and Sauer sums agree with the oracle")
{
    for (unsigned long n = 0; n <= 20; ++n)
        for (unsigned long d = 0; d <= 6; ++d) {
            CHECK(binomial(n, d) == oracle::choose(static_cast<long>(n), static_cast<long>(d)));
            CHECK(sauer_bound(n, d) == oracle::sauer(static_cast<long>(n), static_cast<long>(d)));
        }
    CHECK(pow2(70) == Integer("1180591620717411303424"));
}

TEST_CASE("bitset operations")
{
    Bitset a = set_of(130, {0, 64, 129});
    Bitset b = set_of(130, {64, 100});
    CHECK(a.count() == 3);
    CHECK((a & b).indices() == std::vector<std::size_t>{64});
    CHECK((a | b).count() == 4);
    CHECK((a ^ b).indices() == std::vector<std::size_t>{0, 100, 129});
    CHECK(a.complement().count() == 127);
    CHECK(a.first() == 0);
    CHECK(a.next(0) == 64);
    CHECK(a.next(129) == Bitset::npos);
    CHECK(Bitset(5).first() == Bitset::npos);
    CHECK(Bitset::full(70).count() == 70);
    CHECK(set_of(70, {3}).is_subset_of(Bitset::full(70)));
    CHECK(lex_less(set_of(5, {0, 3}), set_of(5, {1})));
    CHECK(lex_less(set_of(5, {0}), set_of(5, {0, 1})));
    CHECK_FALSE(lex_less(set_of(5, {0, 1}), set_of(5, {0, 1})));
}

TEST_CASE("shape indexing is lexicographic")
{
    Shape s({2, 3, 4});
    CHECK(s.total() == 24);
    std::size_t i = 0;
    oracle::for_each_tuple({2, 3, 4}, [&](const Tuple& t) {
        CHECK(s.index(t) == i);
        CHECK(s.tuple(i) == t);
        ++i;
    });
    CHECK(s.restrict({0, 2}).sizes() == std::vector<std::size_t>{2, 4});
}

TEST_CASE("fibers of small relations")
{
    Hypergraph h = testing::half_graph(4);
    CHECK(h.fiber({0}, {2}).members == set_of(4, {0, 1, 2}));
    CHECK(h.fiber({1}, {2}).members == set_of(4, {2, 3}));
    CHECK(testing::complete({2, 2}).fiber({0}, {0}).members == set_of(2, {0, 1}));
    CHECK(testing::empty({3, 3}).fiber({1}, {1}).members.none());
    CHECK_THROWS_AS(h.fiber({0}, {4}), InputError);
    CHECK_THROWS_AS(h.fiber({2}, {0}), InputError);
    CHECK(h.fiber({0, 1}, {}).members.count() == 10);
    CHECK_THROWS_AS(Hypergraph({2, 2}, {{0, 2}}), InputError);
    CHECK_THROWS_AS(Hypergraph({2, 3}, {{0, 1}}, true), InputError);
    CHECK_THROWS_AS(Hypergraph({2, 2}, {{0, 1}}, true), InputError);
}

TEST_CASE("three-coordinate views match the edge list")
{
    Rng rng(11);
    std::vector<Tuple> edges;
    oracle::for_each_tuple({3, 4, 2}, [&](const Tuple& t) {
        if (rng.coin()) edges.push_back(t);
    });
    Hypergraph h({3, 4, 2}, edges);
    std::set<Tuple> e(edges.begin(), edges.end());
    for (const IndexSet& I : {IndexSet{0}, IndexSet{1}, IndexSet{2}, IndexSet{0, 2}, IndexSet{1, 2}}) {
        BinaryView v = h.relation().view(I);
        for (std::size_t b = 0; b < v.num_params(); ++b)
            for (std::size_t a = 0; a < v.fiber_size(); ++a) {
                Tuple fa = v.fiber_shape().tuple(a), pb = v.param_shape().tuple(b), t(3);
                for (std::size_t i = 0; i < I.size(); ++i) t[I[i]] = fa[i];
                IndexSet rest = complement(I, 3);
                for (std::size_t i = 0; i < rest.size(); ++i) t[rest[i]] = pb[i];
                CHECK(v.fiber(b).test(a) == (e.count(t) > 0));
                CHECK(v.dual(a).test(b) == (e.count(t) > 0));
            }
    }
}

TEST_CASE("measures")
{
    ProductMeasure u = ProductMeasure::uniform({4, 4});
    Box b{{set_of(4, {0, 1}), set_of(4, {0, 1})}};
    CHECK(u.mass(b) == Rational(1, 4));

    Measure w = Measure::from_weights({Rational(1, 2), Rational(1, 2), 0, 0});
    ProductMeasure mw({w, Measure::uniform(4)});
    CHECK(mw.mass(Box{{set_of(4, {0}), Bitset::full(4)}}) == Rational(1, 2));
    CHECK(w.support() == set_of(4, {0, 1}));
    CHECK_THROWS_AS(Measure::from_weights({Rational(1, 2), Rational(1, 3)}), InputError);
    CHECK_THROWS_AS(Measure::from_weights({Rational(3, 2), Rational(-1, 2)}), InputError);

    Hypergraph h = testing::half_graph(4);
    CHECK(u.mass(h.relation().members()) == ratio(10, 16));
    CHECK(oracle::edge_mass(h, u) == ratio(10, 16));
    CHECK(density(h, u, Box::full({4, 4})) == ratio(10, 16));
    CHECK(density(testing::complete({3, 3}), ProductMeasure::uniform({3, 3}), Box::full({3, 3})) == 1);
    CHECK(density(testing::empty({3, 3}), ProductMeasure::uniform({3, 3}), Box::full({3, 3})) == 0);
    CHECK_THROWS_AS(density(h, mw, Box{{set_of(4, {2}), Bitset::full(4)}}), ZeroMeasureError);
}

TEST_CASE("weighted product masses agree with tuple enumeration")
{
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Measure> parts;
        std::vector<std::size_t> sizes{2 + rng.below(3), 2 + rng.below(3), 1 + rng.below(3)};
        for (auto n : sizes) {
            std::vector<Integer> raw;
            Integer sum = 0;
            for (std::size_t i = 0; i < n; ++i) sum += raw.emplace_back(static_cast<unsigned long>(rng.below(4)));
            if (sum == 0) raw[0] = sum = 1;
            std::vector<Rational> ws;
            for (auto& r : raw) ws.push_back(oracle::q(r, sum));
            parts.push_back(Measure::from_weights(ws));
        }
        ProductMeasure mu(parts);
        std::vector<Tuple> edges;
        oracle::for_each_tuple(sizes, [&](const Tuple& t) {
            if (rng.coin()) edges.push_back(t);
        });
        Hypergraph h(sizes, edges);
        CHECK(mu.mass(h.relation().members()) == oracle::edge_mass(h, mu));
        Box b;
        for (auto n : sizes) {
            Bitset s(n);
            for (std::size_t i = 0; i < n; ++i) s.assign(i, rng.coin());
            b.sides.push_back(s);
        }
        auto t = oracle::tally(h, mu, b);
        CHECK(mu.mass(b) == t.mass);
        CHECK(edge_mass(h, mu, b) == t.edges);
        if (t.mass > 0) CHECK(density(h, mu, b) == t.edges / t.mass);
    }
}

TEST_CASE("symmetric density variants")
{
    Hypergraph h = testing::blocks({2, 2});
    ProductMeasure u = ProductMeasure::uniform({4, 4});
    DensityPair d = density_variants(h, u, Box::full({4, 4}));
    CHECK(d.all_tuples == Rational(1, 2));
    REQUIRE(d.distinct_tuples);
    CHECK(*d.distinct_tuples == ratio(4, 12));
}

TEST_CASE("weak Fubini probe")
{
    CHECK(weak_fubini_check(testing::empty({3, 3}), ProductMeasure::uniform({3, 3}), {0}, Rational(1, 2)).holds);
    Hypergraph h = testing::half_graph(4);
    FubiniProbe p = weak_fubini_check(h, ProductMeasure::uniform({4, 4}), {0}, Rational(1));
    CHECK(p.holds);
    CHECK(p.max_fiber_mass == 1);
    CHECK(p.product_mass == ratio(10, 16));

    Rng rng(7);
    std::vector<Tuple> edges;
    for (std::uint32_t a = 0; a < 6; ++a)
        for (std::uint32_t b = 0; b < 6; ++b)
            if (rng.coin()) edges.push_back({a, b});
    Hypergraph r({6, 6}, edges);
    ProductMeasure u = ProductMeasure::uniform({6, 6});
    Rational max_fiber = 0;
    for (std::uint32_t b = 0; b < 6; ++b) {
        Integer c = 0;
        for (std::uint32_t a = 0; a < 6; ++a) c += r.has_edge(Tuple{a, b});
        max_fiber = std::max(max_fiber, oracle::q(c, 6));
    }
    FubiniProbe at = weak_fubini_check(r, u, {0}, max_fiber + Rational(1, 100));
    CHECK(at.max_fiber_mass == max_fiber);
    CHECK(at.product_mass == oracle::edge_mass(r, u));
    CHECK(at.holds);
}

TEST_CASE("atoms of a Boolean algebra")
{
    std::vector<Bitset> gens{set_of(6, {0, 1, 2}), set_of(6, {2, 3})};
    auto at = atoms(6, gens);
    REQUIRE(at.size() == 4);
    CHECK(at[0] == set_of(6, {0, 1}));
    CHECK(at[1] == set_of(6, {2}));
    CHECK(at[2] == set_of(6, {3}));
    CHECK(at[3] == set_of(6, {4, 5}));
    CHECK(atoms(6, std::vector<Bitset>{}).size() == 1);
    CHECK(is_union_of(set_of(6, {0, 1, 3}), at));
    CHECK_FALSE(is_union_of(set_of(6, {0}), at));
    auto r = refine(at, {set_of(6, {0, 5}), set_of(6, {1, 2, 3, 4})});
    CHECK(r.size() == 6);
}
