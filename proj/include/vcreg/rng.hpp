#pragma once

#include "vcreg/rational.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace vcreg {

// std::mt19937_64 with rejection-sampled bounded draws. The output stream is
// fixed by the C++ standard, so runs are reproducible across platforms.
class Rng {
public:
    static constexpr std::string_view kName = "mt19937-64 rejection v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Uniform on [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);
    Integer below(const Integer& n);
    bool coin() { return next() >> 63; }

private:
    std::mt19937_64 engine_;
};

}  // namespace vcreg
