#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "vcreg/errors.hpp"
#include "vcreg/instances.hpp"
#include "vcreg/regularity.hpp"
#include "vcreg/serialize.hpp"

#include <cstdio>
#include <filesystem>

using namespace vcreg;

TEST_CASE("instance kinds round-trip through their names")
{
    for (auto k : {InstanceKind::interval_graph, InstanceKind::half_graph, InstanceKind::block_union,
                   InstanceKind::staircase, InstanceKind::random_vc_capped, InstanceKind::dyadic_export})
        CHECK(parse_instance_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_instance_kind("petersen"), InputError);
}

TEST_CASE("generators are pure functions of the spec")
{
    for (auto k : {InstanceKind::interval_graph, InstanceKind::block_union, InstanceKind::random_vc_capped}) {
        GeneratorSpec s{.kind = k, .sizes = {10}, .k = 2, .seed = 5, .blocks = 3};
        CHECK(generate_hypergraph(s) == generate_hypergraph(s));
        GeneratorSpec t = s;
        t.seed = 6;
        CHECK_FALSE(generate_hypergraph(s) == generate_hypergraph(t));
    }
}

TEST_CASE("generated instances have the advertised structure")
{
    Hypergraph h = generate_hypergraph({.kind = InstanceKind::half_graph, .sizes = {5}});
    CHECK(h.edges().size() == 15);
    CHECK(h == testing::half_graph(5));

    Hypergraph st = generate_hypergraph({.kind = InstanceKind::staircase, .sizes = {4}, .k = 3});
    CHECK(st.edges().size() == 20);
    for (const auto& e : st.edges()) CHECK(std::is_sorted(e.begin(), e.end()));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto bs = block_sizes(20, 4, seed);
        CHECK(bs.size() == 4);
        std::size_t sum = 0;
        for (auto b : bs) {
            CHECK(b >= 1);
            sum += b;
        }
        CHECK(sum == 20);
        Hypergraph bu =
            generate_hypergraph({.kind = InstanceKind::block_union, .sizes = {20}, .seed = seed, .blocks = 4});
        CHECK(bu.symmetric());
        std::size_t expected = 0;
        for (auto b : bs) expected += b * b;
        CHECK(bu.edges().size() == expected);
    }

    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Hypergraph rv =
            generate_hypergraph({.kind = InstanceKind::random_vc_capped, .sizes = {9}, .seed = seed, .cap_d = 2});
        CHECK(oracle::vc_dimension(SetFamily::of_fibers(rv.coordinate_view(0))) <= 2);
    }

    Hypergraph iv = generate_hypergraph({.kind = InstanceKind::interval_graph, .sizes = {12}, .seed = 3});
    CHECK(oracle::vc_dimension(SetFamily::of_fibers(iv.coordinate_view(0))) == 2);
    for (std::uint32_t b = 0; b < 12; ++b) {
        auto idx = iv.fiber({0}, {b}).members.indices();
        REQUIRE_FALSE(idx.empty());
        CHECK(idx.back() - idx.front() + 1 == idx.size());
    }

    CHECK_THROWS_AS(generate_hypergraph({.kind = InstanceKind::half_graph, .sizes = {3}, .k = 3}), InputError);
    CHECK_THROWS_AS(generate_hypergraph({.kind = InstanceKind::block_union, .sizes = {3}, .blocks = 4}), InputError);
    CHECK_THROWS_AS(generate_hypergraph({.kind = InstanceKind::dyadic_export, .sizes = {}, .depth = 11}), InputError);
}

TEST_CASE("measured parameters")
{
    Instance h8 = generate({.kind = InstanceKind::half_graph, .sizes = {8}});
    CHECK(h8.measured.ladder_index == 8);
    CHECK(h8.measured.vc_dimension == 1);
    Instance bu = generate({.kind = InstanceKind::block_union, .sizes = {12}, .blocks = 3});
    CHECK(bu.measured.ladder_index == 1);
    CHECK(bu.measured.vc_dimension == 1);
    Instance iv = generate({.kind = InstanceKind::interval_graph, .sizes = {12}, .seed = 3});
    CHECK(iv.measured.vc_dimension == 2);
}

TEST_CASE("JSON round trips")
{
    CHECK(rational_from_json(to_json(ratio(6, 8))) == Rational(3, 4));
    CHECK(to_json(Rational(3, 4)) == "3/4");
    CHECK_THROWS_AS(rational_from_json(Json(0.5)), InputError);
    CHECK_THROWS_AS(rational_from_json(Json("0.5")), InputError);

    Instance inst = generate({.kind = InstanceKind::interval_graph, .sizes = {7}, .seed = 2});
    Bundle b = bundle_from_json(to_json(inst));
    CHECK(b.hypergraph == inst.hypergraph);
    CHECK(b.measure.parts() == inst.measure.parts());
    REQUIRE(b.spec);
    CHECK(generator_spec_from_json(*b.spec) == inst.spec);

    Measure w = Measure::from_weights({Rational(1, 6), Rational(1, 3), Rational(1, 2)});
    ProductMeasure mu({w, Measure::uniform(2)});
    Hypergraph h({3, 2}, {{0, 1}, {2, 0}});
    Bundle wb{h, mu, std::nullopt, std::nullopt};
    Bundle back = bundle_from_json(parse_json(dump(to_json(wb))));
    CHECK(back.hypergraph == h);
    for (std::size_t c = 0; c < 2; ++c) CHECK(back.measure.part(c).weights() == mu.part(c).weights());

    // bare hypergraph: uniform measures
    Bundle bare = bundle_from_json(to_json(h));
    CHECK(bare.measure.parts() == ProductMeasure::uniform({3, 2}).parts());

    RegularPartition p = regular_partition(testing::half_graph(8), ProductMeasure::uniform({8, 8}), Rational(1, 4));
    RegularPartition q = regular_partition_from_json(to_json(p), testing::half_graph(8));
    CHECK(q.parts == p.parts);
    CHECK(q.labels == p.labels);
    CHECK(q.sigma == p.sigma);
    CHECK(q.params == p.params);
    CHECK(q.eps == p.eps);
    CHECK(verify_regular_partition(testing::half_graph(8), ProductMeasure::uniform({8, 8}), q).ok());
}

TEST_CASE("malformed input is rejected with a location")
{
    try {
        parse_json("{\n  \"k\": 2,\n  oops\n}", "x.json");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(hypergraph_from_json(Json::parse(R"({"part_sizes":[2,2],"edges":[[0,5]]})")), InputError);
    CHECK_THROWS_AS(
        bundle_from_json(Json::parse(R"({"hypergraph":{"part_sizes":[2],"edges":[]},"measures":[["1/3","1/3"]]})")),
        InputError);
}

TEST_CASE("atomic writes replace the target")
{
    auto dir = std::filesystem::temp_directory_path() / "vcreg_test_atomic";
    std::filesystem::create_directories(dir);
    auto path = (dir / "out.json").string();
    write_file_atomic(path, "one\n");
    write_file_atomic(path, "two\n");
    CHECK(read_file(path) == "two\n");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove_all(dir);
}
