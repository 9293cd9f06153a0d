#pragma once

#include "vcreg/bitset.hpp"
#include "vcreg/dyadic.hpp"
#include "vcreg/hypergraph.hpp"
#include "vcreg/measure.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace vcreg {

struct HomogeneousSearch {
    bool found = false;
    Bitset set;                          // best witness: largest mu(A) with density outside (eps, 1-eps)
    std::vector<std::size_t> params;     // fibers the witness is a Boolean combination of
    Rational density;
    Rational mass;
    Rational closest;                    // min over examined A of dist(density(A), {0,1})
    Bitset closest_set;
    std::uint64_t tuples = 0;            // parameter tuples examined
    std::uint64_t sets = 0;              // definable sets examined
    bool sampled = false;                // the exact space exceeded the budget
    std::uint64_t budget = 0;
};

// Sets A ⊆ V definable as Boolean combinations of at most m fibers R_b, mu(A) > 0,
// density (mu x mu)(E ∩ A x A) / mu(A)^2. Needs k = 2 with equal parts and measures.
HomogeneousSearch definable_homogeneous_search(const Hypergraph& h, const ProductMeasure& mu, const Rational& eps,
                                               std::size_t m, std::uint64_t budget = 1'000'000,
                                               std::uint64_t seed = 0);

struct BallRow {
    std::size_t prefix_length = 0;
    Rational density;
    Rational distance;                   // to {0, 1}
};

struct BallSearch {
    bool found = false;
    std::optional<DyadicBall> ball;      // largest ball with density outside (eps, 1-eps)
    Rational closest;                    // min distance of a ball density to {0, 1}
    DyadicBall closest_ball;
    std::vector<BallRow> rows;           // one per prefix length; density depends only on it
};

// Single balls of co-depth >= min_co_depth in the depth-L odd-split graph.
BallSearch dyadic_ball_search(std::size_t L, const Rational& eps, std::size_t min_co_depth = 2,
                              bool flip_parity = false);

}  // namespace vcreg
