#pragma once

#include "vcreg/hypergraph.hpp"
#include "vcreg/measure.hpp"
#include "vcreg/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vcreg {

// Partition of the parameter side V_{I°} of the view with fibers in I.
struct DeltaPartition {
    IndexSet fiber_coords;
    IndexSet param_coords;
    std::vector<Bitset> classes;               // over V_{I°}, ordered by least element
    std::vector<std::size_t> representatives;  // least element of each class
    std::vector<std::size_t> D;                // points of V_I (flattened indices)
    bool full_side = false;                    // D is all of V_I
    std::size_t net_size = 0;                  // size of the eps/2-net that was considered
    Rational eps;
    Rational max_distance;                     // max mu_V(R_a Δ R_a') within a class
};

DeltaPartition delta_approx_partition(const Relation& r, const Measure& mu_fiber_side, const IndexSet& fiber_coords,
                                      const Rational& eps);
DeltaPartition delta_approx_partition(const Hypergraph& h, const ProductMeasure& mu, const IndexSet& fiber_coords,
                                      const Rational& eps);

struct RectApprox {
    std::vector<Box> boxes;                // pairwise disjoint; their union is A
    std::vector<std::vector<Tuple>> D;     // D[j] ⊆ V_{j°}, tuples in increasing coordinate order
    Rational eps;
    Rational error;                        // mu(R Δ A), exact
    std::size_t top_classes = 0;           // classes of the outermost Δ-partition

    std::size_t norm() const;              // max_j |D_j|
    Bitset members(const Shape& shape) const;
};

RectApprox rectangular_approximation(const Hypergraph& h, const ProductMeasure& mu, const Rational& eps);

struct BoundRow {
    std::string name;
    Rational realized;
    Rational bound;
    bool within = false;
};

struct RegularPartition {
    std::vector<std::vector<Bitset>> parts;   // parts[i]: classes of V_i
    std::vector<std::vector<Tuple>> params;   // classes of parts[i] are unions of atoms over these fibers
    bool pooled_params = false;               // params[0] holds D for every coordinate (coordinate-0 fibers)
    std::vector<Tuple> sigma;                 // exceptional boxes, as class-index tuples
    std::vector<int> labels;                  // per box in lex order of class indices: 0, 1, or -1 (none)
    Rational eps;
    Rational sigma_mass;
    std::optional<Rational> rect_error;       // mu(A Δ E) of the approximation the partition came from
    std::vector<BoundRow> bounds;

    std::size_t size() const;                 // max_i |parts[i]|
    std::size_t box_count() const;
    Shape box_shape() const;
};

struct Violation {
    std::string kind;
    std::string detail;
};

struct PartitionReport {
    bool partition_valid = true;
    bool sigma_ok = true;
    bool densities_ok = true;
    bool definable_ok = true;
    Rational sigma_mass;
    std::size_t boxes = 0;
    std::size_t zero_boxes = 0;   // measure-zero boxes, skipped
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

PartitionReport verify_regular_partition(const Hypergraph& h, const ProductMeasure& mu, const RegularPartition& p);

RegularPartition regular_partition(const Hypergraph& h, const ProductMeasure& mu, const Rational& eps);
RegularPartition uniform_regular_partition(const Hypergraph& h, const ProductMeasure& mu, const Rational& eps);

// Per-box masses of X and E ∩ X, scaled by mu.denominator(); boxes in lex order of class indices.
struct BoxMasses {
    Shape shape;
    std::vector<Integer> mass, edge;
};
BoxMasses box_masses(const Hypergraph& h, const ProductMeasure& mu, const std::vector<std::vector<Bitset>>& parts);

// Labels, Σ and Σ-mass for given per-part classes and a set A compatible with
// them up to measure zero. Zero-measure classes must already be merged away.
void label_boxes(const Hypergraph& h, const ProductMeasure& mu, const Bitset& a_members, RegularPartition& p);

// Merges every class of measure zero into the first class of positive measure.
std::vector<Bitset> merge_null_classes(std::vector<Bitset> classes, const Measure& mu);

struct DenseBox {
    Box box;
    std::vector<std::size_t> classes;   // class index per part
    Rational density;
    Rational mass;
    std::vector<Rational> side_masses;
    Rational delta_guarantee;
    Rational eps_prime;
    std::size_t partition_boxes = 0;
    std::size_t partition_size = 0;
};

DenseBox find_dense_box(const Hypergraph& h, const ProductMeasure& mu, const Rational& alpha, const Rational& eps);

}  // namespace vcreg
