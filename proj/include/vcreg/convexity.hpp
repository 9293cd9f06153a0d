#pragma once

#include "vcreg/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vcreg {

// Contiguous {lo, ..., hi} inside {1, ..., N}.
struct IntegerInterval {
    std::int64_t lo = 1;
    std::int64_t hi = 1;

    std::int64_t size() const { return hi - lo + 1; }
};

IntegerInterval parse_interval(const std::string& text, std::int64_t N);   // "lo..hi" or "lo:hi"

// E(x1,x2,x3) iff x1 < x2 < x3 and x1 + x3 - 2 x2 >= 0.
bool convexity_edge(std::int64_t x1, std::int64_t x2, std::int64_t x3);

// Density of E among strictly increasing triples of C; |C| >= 3.
Rational convexity_density(std::int64_t N, const IntegerInterval& C);
Rational convexity_density_enumerated(std::int64_t N, const IntegerInterval& C);

// Number of 3-term arithmetic progressions in C.
Integer arithmetic_progressions(const IntegerInterval& C);

using Triple = std::array<std::int64_t, 3>;

struct InvolutionReport {
    bool holds = true;
    std::uint64_t triples = 0;
    std::uint64_t strict_edges = 0;        // x1 + x3 - 2 x2 > 0
    std::uint64_t fixed_progressions = 0;  // x1 + x3 - 2 x2 = 0; the map permutes these
    std::optional<Triple> failure;
};

// (a, b, c) -> (q(c), q(b), q(a)) with q(x) = lo + hi - x.
Triple reflect(const IntegerInterval& C, const Triple& t);
InvolutionReport reflection_involution_check(const IntegerInterval& C);

}  // namespace vcreg
