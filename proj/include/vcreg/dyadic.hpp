#pragma once

#include "vcreg/rational.hpp"
#include "vcreg/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vcreg {

// Leaves τ_0⌢τ of the depth-L binary tree; the prefix is a string over {'0','1'}.
struct DyadicBall {
    std::string prefix;

    std::size_t length() const { return prefix.size(); }
    bool operator==(const DyadicBall& o) const = default;
};

DyadicBall parse_ball(const std::string& bits);

// v(x,y) = length of the common prefix; E(x,y) iff v is odd (even when flip_parity).
// Density over ordered pairs of distinct depth-L leaves of the union.
// Throws InputError on overlapping balls, prefixes longer than L, or fewer than two leaves.
Rational odd_split_density(const std::vector<DyadicBall>& balls, std::size_t L, bool flip_parity = false);

// Same quantity by enumerating leaf pairs; L <= 16.
Rational odd_split_density_enumerated(const std::vector<DyadicBall>& balls, std::size_t L, bool flip_parity = false);

// Number of ordered distinct leaf pairs of the union that are edges.
Integer odd_split_edges(const std::vector<DyadicBall>& balls, std::size_t L, bool flip_parity = false);

struct ParityRow {
    std::size_t prefix_length = 0;
    std::size_t co_depth = 0;
    Rational density;
    Rational limit;          // 1/3 for even prefix length, 2/3 for odd
    Rational deviation;      // |density - limit|
    Rational allowed;        // 0 for even co-depth, 1/(3(2^h - 1)) for odd
    bool ok = false;
};

// One row per prefix length l < L, using the all-zero prefix.
std::vector<ParityRow> ball_parity_report(std::size_t L, bool flip_parity = false);

struct AntiHomogeneity {
    Rational pair_mass;      // (mu x mu)(E ∩ A x A), normalized leaf measure
    Rational density;        // over distinct pairs of A
    Rational mass;           // mu(A)
    Rational gamma;          // mu(B) / mu(A)
    Rational slack;          // gamma^2 / (3(2^h - 1)), 0 when h = 0
    Rational bound;          // (1 - gamma^2/3 + slack) mu(A)^2
    bool holds = false;
};

// B must be one of A's balls.
AntiHomogeneity anti_homogeneity_bound_check(const std::vector<DyadicBall>& A, const DyadicBall& B, std::size_t L);

// Random disjoint ball union at depth L together with one of its balls.
struct BallUnion {
    std::vector<DyadicBall> balls;
    DyadicBall chosen;
};
BallUnion random_ball_union(Rng& rng, std::size_t L);

}  // namespace vcreg
