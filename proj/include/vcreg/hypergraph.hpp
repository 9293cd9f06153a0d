#pragma once

#include "vcreg/bitset.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vcreg {

using Tuple = std::vector<std::uint32_t>;
// Sorted, duplicate-free list of coordinate indices (0-based).
using IndexSet = std::vector<std::size_t>;

IndexSet all_coords(std::size_t k);
IndexSet complement(const IndexSet& coords, std::size_t k);

// Mixed-radix indexing of V_{i_1} x ... x V_{i_m}. Coordinate 0 is the most
// significant digit, so index order is lexicographic tuple order.
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<std::size_t> sizes);

    std::size_t arity() const { return sizes_.size(); }
    std::size_t size(std::size_t coord) const { return sizes_[coord]; }
    const std::vector<std::size_t>& sizes() const { return sizes_; }
    std::size_t total() const { return total_; }

    std::size_t index(std::span<const std::uint32_t> t) const;
    Tuple tuple(std::size_t index) const;
    std::size_t coord(std::size_t index, std::size_t c) const { return (index / strides_[c]) % sizes_[c]; }
    std::size_t stride(std::size_t c) const { return strides_[c]; }

    Shape restrict(const IndexSet& coords) const;

    bool operator==(const Shape& o) const { return sizes_ == o.sizes_; }

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 1;
};

// Largest product V_1 x ... x V_k the dense representation accepts.
inline constexpr std::size_t kMaxDenseTuples = std::size_t{1} << 28;

// R viewed as R ⊆ V_I x V_{I°}: one fiber R_b ⊆ V_I per parameter b ∈ V_{I°}.
class BinaryView {
public:
    BinaryView(IndexSet fiber_coords, IndexSet param_coords, Shape fiber_shape, Shape param_shape,
               std::vector<Bitset> rows);

    const IndexSet& fiber_coords() const { return fiber_coords_; }
    const IndexSet& param_coords() const { return param_coords_; }
    const Shape& fiber_shape() const { return fiber_shape_; }
    const Shape& param_shape() const { return param_shape_; }

    std::size_t num_params() const { return rows_.size(); }
    std::size_t fiber_size() const { return fiber_shape_.total(); }
    const Bitset& fiber(std::size_t param) const { return rows_[param]; }
    const std::vector<Bitset>& fibers() const { return rows_; }

    // {b : a ∈ R_b} for a fixed element a of V_I.
    Bitset dual(std::size_t element) const;

private:
    IndexSet fiber_coords_;
    IndexSet param_coords_;
    Shape fiber_shape_;
    Shape param_shape_;
    std::vector<Bitset> rows_;
};

// Dense k-ary relation over a product of finite parts.
class Relation {
public:
    Relation() = default;
    Relation(Shape shape, Bitset members);

    static Relation from_tuples(const Shape& shape, std::span<const Tuple> tuples);

    const Shape& shape() const { return shape_; }
    std::size_t arity() const { return shape_.arity(); }
    const Bitset& members() const { return members_; }
    bool contains(std::span<const std::uint32_t> t) const { return members_.test(shape_.index(t)); }
    bool contains_index(std::size_t i) const { return members_.test(i); }

    BinaryView view(const IndexSet& fiber_coords) const;
    Bitset fiber(const IndexSet& fiber_coords, std::span<const std::uint32_t> param) const;

    // R_a ⊆ V_1 x ... x V_{k-1} for a value a of the last coordinate.
    Relation fiber_of_last(std::size_t a) const;

private:
    Shape shape_;
    Bitset members_;
};

struct Fiber {
    IndexSet coords;
    Tuple parameter;
    Shape shape;
    Bitset members;

    std::vector<Tuple> member_tuples() const;
};

class Hypergraph {
public:
    Hypergraph(std::vector<std::size_t> part_sizes, std::vector<Tuple> edges, bool symmetric = false);
    Hypergraph(const Relation& rel, bool symmetric = false);

    std::size_t k() const { return part_sizes_.size(); }
    const std::vector<std::size_t>& part_sizes() const { return part_sizes_; }
    const std::vector<Tuple>& edges() const { return edges_; }
    bool symmetric() const { return symmetric_; }
    const Relation& relation() const { return relation_; }
    const Shape& shape() const { return relation_.shape(); }

    bool has_edge(std::span<const std::uint32_t> t) const { return relation_.contains(t); }

    // Cached view with fibers in the single coordinate `coord`.
    const BinaryView& coordinate_view(std::size_t coord) const { return coord_views_[coord]; }

    // Fiber R_b ⊆ V_I for b ∈ V_{I°}; throws InputError on bad coordinates or bounds.
    Fiber fiber(const IndexSet& coords, const Tuple& parameter) const;

    bool operator==(const Hypergraph& o) const
    {
        return part_sizes_ == o.part_sizes_ && edges_ == o.edges_ && symmetric_ == o.symmetric_;
    }

private:
    void validate_symmetry() const;

    std::vector<std::size_t> part_sizes_;
    std::vector<Tuple> edges_;
    bool symmetric_ = false;
    Relation relation_;
    std::vector<BinaryView> coord_views_;
};

}  // namespace vcreg
