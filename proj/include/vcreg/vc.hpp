#pragma once

#include "vcreg/bitset.hpp"
#include "vcreg/hypergraph.hpp"
#include "vcreg/measure.hpp"
#include "vcreg/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vcreg {

// Family of subsets of {0..ground-1}, duplicates removed (first occurrence kept).
class SetFamily {
public:
    SetFamily() = default;
    SetFamily(std::size_t ground, std::vector<Bitset> members);

    // The fibers R_b of a binary view, one member per distinct fiber.
    static SetFamily of_fibers(const BinaryView& view);
    // Dual family on the parameters: one member {b : a ∈ R_b} per element a.
    static SetFamily of_duals(const BinaryView& view);

    std::size_t ground() const { return ground_; }
    std::size_t size() const { return members_.size(); }
    const std::vector<Bitset>& members() const { return members_; }

private:
    std::size_t ground_ = 0;
    std::vector<Bitset> members_;
};

struct VcResult {
    std::size_t dimension = 0;
    bool reached_cap = false;              // dimension == cap, so the true value may be larger
    std::vector<std::size_t> witness;      // lex-least shattered set of that size
};

VcResult vc_dimension(const SetFamily& f, std::size_t cap = 8);

// pi_F(n): max number of traces on an n-subset of the ground set. n <= 63.
std::uint64_t shatter_function(const SetFamily& f, std::size_t n);

struct SauerCheck {
    std::uint64_t pi = 0;
    Integer bound;
    bool holds = false;
};
SauerCheck sauer_check(const SetFamily& f, std::size_t d, std::size_t n);

struct DefinableCount {
    std::size_t count = 0;        // nonempty atoms generated by {R_b : b ∈ D}
    Integer bound;                // Sum_{i<=d} C(|D|, i)
    std::size_t dual_vc = 0;      // the d used in `bound`
    std::size_t fiber_vc = 0;
    bool within_power = false;    // count <= 2^|D|
    bool within_bound = false;    // count <= bound
    std::vector<Bitset> atoms;
};
// D lists parameter indices of the view with fibers in coordinates I.
DefinableCount definable_count_bound(const Hypergraph& h, const IndexSet& I, const std::vector<std::size_t>& D,
                                     std::size_t cap = 8);

enum class NetStrategy { greedy, random };
std::string to_string(NetStrategy s);
NetStrategy parse_net_strategy(const std::string& s);

struct NetCheck {
    bool ok = true;
    std::optional<std::size_t> unhit;  // index of a heavy member missed by T
    std::size_t heavy = 0;             // members of measure >= eps
};
NetCheck verify_net(const SetFamily& f, const Measure& mu, const Rational& eps, const std::vector<std::size_t>& points);

struct EpsNet {
    std::vector<std::size_t> points;  // multiset, sorted
    Rational eps;
    bool verified = false;
    NetStrategy requested = NetStrategy::greedy;
    NetStrategy used = NetStrategy::greedy;
    std::size_t attempts = 0;
    std::size_t vc = 0;
    std::size_t size_ln = 0;    // ceil(8 max(d,1) (1/eps) max(1, ln(1/eps)))
    std::size_t size_log2 = 0;  // same with log base 2
};

EpsNet epsilon_net(const SetFamily& f, const Measure& mu, const Rational& eps, NetStrategy strategy,
                   std::uint64_t seed, std::size_t retries = 16);

// Deterministic greedy eps-net: the lex-least unhit heavy member, then its point
// lying in the most unhit heavy members (largest index on ties). Sorted output.
std::vector<std::size_t> greedy_net(const SetFamily& f, const Measure& mu, const Rational& eps);

// Max over coordinate splits I of the VC dimension of {R_b : b ∈ V_I°}, capped.
VcResult relation_vc(const Hypergraph& h, std::size_t cap = 4);

// ceil(8 d (1/eps) max(1, log(1/eps))) for log base e (base2=false) or 2.
std::size_t paper_net_size(std::size_t d, const Rational& eps, bool base2);

}  // namespace vcreg
