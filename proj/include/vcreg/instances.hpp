#pragma once

#include "vcreg/hypergraph.hpp"
#include "vcreg/measure.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vcreg {

enum class InstanceKind { interval_graph, half_graph, block_union, staircase, random_vc_capped, dyadic_export };

std::string to_string(InstanceKind k);
InstanceKind parse_instance_kind(const std::string& s);

struct GeneratorSpec {
    InstanceKind kind = InstanceKind::half_graph;
    std::vector<std::size_t> sizes;   // one per part; a single entry is repeated k times
    std::size_t k = 2;
    std::uint64_t seed = 0;
    std::size_t blocks = 2;           // block-union
    std::size_t cap_d = 2;            // random-vc-capped: VC bound on the fibers R_b ⊆ V_0
    std::size_t depth = 4;            // dyadic-export
    std::size_t vc_cap = 4;           // caps for the measured parameters
    std::size_t ladder_cap = 8;

    bool operator==(const GeneratorSpec& o) const = default;
};

struct Measured {
    std::size_t vc_dimension = 0;
    bool vc_reached_cap = false;
    std::size_t vc_cap = 0;
    std::size_t ladder_index = 0;
    bool ladder_reached_cap = false;
    bool ladder_exhausted = false;
    std::size_t ladder_cap = 0;

    bool operator==(const Measured& o) const = default;
};

struct Instance {
    GeneratorSpec spec;
    Hypergraph hypergraph;
    ProductMeasure measure;
    Measured measured;
};

// Pure function of the spec; measures default to uniform. Throws InputError on inconsistent sizes.
Instance generate(const GeneratorSpec& spec);

// Edges only, without the measured record.
Hypergraph generate_hypergraph(const GeneratorSpec& spec);

Measured measure_parameters(const Hypergraph& h, std::size_t vc_cap, std::size_t ladder_cap);

// Block boundaries used by block-union: sizes of the m consecutive blocks of {0..n-1}.
std::vector<std::size_t> block_sizes(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace vcreg
