#pragma once

#include "vcreg/errors.hpp"
#include "vcreg/hypergraph.hpp"
#include "vcreg/measure.hpp"
#include "vcreg/regularity.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vcreg {

// a_i ∈ R_{b_j} iff i <= j, with a_i ∈ V_I and b_j ∈ V_{I°}.
struct Ladder {
    IndexSet fiber_coords;
    std::size_t length = 0;
    bool reached_cap = false;
    bool exhausted_budget = false;   // search stopped early; length is only a lower bound
    std::vector<std::size_t> a, b;   // flattened indices into V_I and V_{I°}
    std::vector<Tuple> a_tuples, b_tuples;
};

Ladder ladder_index(const Hypergraph& h, const IndexSet& I, std::size_t cap, std::size_t node_budget = 20'000'000);
bool verify_ladder(const Hypergraph& h, const Ladder& l);

// Height of the deepest binary tree of parameters splitting V_I (Littlestone dimension).
struct TreeDepth {
    std::size_t depth = 0;
    bool reached_cap = false;
    bool exhausted_budget = false;
};
TreeDepth tree_depth(const Hypergraph& h, const IndexSet& I, std::size_t cap, std::size_t memo_budget = 200'000);

// Max ladder over the single-coordinate views (which cover every split up to transposition).
std::size_t measured_ladder(const Hypergraph& h, std::size_t cap);

struct GoodnessReport {
    bool good = true;
    Rational eps;
    Rational mass;                          // mu_I(A)
    std::size_t bad_params = 0;
    std::optional<std::size_t> witness;     // param index with density closest to 1/2 among bad ones
    std::optional<Tuple> witness_tuple;
    std::optional<Rational> witness_density;
};

// Throws ZeroMeasureError if mu_I(A) = 0.
GoodnessReport good_check(const Hypergraph& h, const ProductMeasure& mu, const Bitset& A, const IndexSet& I,
                          const Rational& eps);

struct DescentStep {
    std::vector<std::pair<Tuple, int>> path;   // witness parameter and branch (1 = inside R_c)
    Rational mass;                             // mu of the extracted piece
    Rational remaining_before;                 // mu of B before the extraction
};

struct DescentPartition {
    std::size_t part = 0;
    Rational eps;
    std::vector<Bitset> classes;
    std::vector<DescentStep> steps;
    std::size_t max_depth = 0;
    std::vector<Tuple> witnesses;              // every parameter used for a split
    bool residue_merged = false;
    bool best_fit_used = false;
    std::size_t d_hat = 0;
    bool d_hat_measured = true;
    bool precondition_met = false;             // eps < 2^{-d_hat}
    std::optional<double> paper_steps;         // log((eps/2)^{d+1}) / log(1 - (eps/2)^d)
};

// Carries the explored tree when no eps/2-good node exists within the depth cap.
class DescentDepthError : public VerificationError {
public:
    DescentDepthError(const std::string& what, std::string evidence)
        : VerificationError(what), evidence_(std::move(evidence))
    {
    }
    const std::string& evidence() const { return evidence_; }

private:
    std::string evidence_;
};

DescentPartition good_descent_partition(const Hypergraph& h, const ProductMeasure& mu, std::size_t part,
                                        const Rational& eps, std::size_t depth_cap,
                                        std::optional<std::size_t> d_hat = std::nullopt);

struct StablePartition {
    RegularPartition partition;                // sigma empty
    std::vector<DescentPartition> descents;
    Rational eps_inner;                        // eps / 2^{k+1}
    std::size_t rounds_cap = 0;
    std::size_t rounds_used = 0;
    std::size_t splits = 0;
    bool full_parameter_set = false;
    std::size_t d_hat = 0;
    bool precondition_met = false;
};

// Throws VerificationError (the excellence surrogate was insufficient) when some
// box is not homogeneous after the refinement rounds.
StablePartition stable_regular_partition(const Hypergraph& h, const ProductMeasure& mu, const Rational& eps,
                                         std::size_t depth_cap, std::size_t rounds = 0,
                                         std::optional<std::size_t> d_hat = std::nullopt);

struct ProductGoodness {
    bool holds = true;
    bool b_good = false;       // B is eps-good as a subset of V_{[n-1]}
    bool a_splits = false;     // A splits eps-negligibly against B for every c
    std::optional<Tuple> worst;
    Rational worst_density;
};

// A ⊆ V_n, B a box over coordinates 0..n-1 (n >= 1).
ProductGoodness product_goodness_check(const Hypergraph& h, const ProductMeasure& mu, std::size_t n,
                                       const std::vector<Bitset>& B, const Bitset& A, const Rational& eps);

}  // namespace vcreg
