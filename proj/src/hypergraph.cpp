#include "vcreg/hypergraph.hpp"

#include "vcreg/errors.hpp"

#include <algorithm>
#include <string>

namespace vcreg {

IndexSet all_coords(std::size_t k)
{
    IndexSet out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = i;
    return out;
}

IndexSet complement(const IndexSet& coords, std::size_t k)
{
    IndexSet out;
    for (std::size_t i = 0; i < k; ++i)
        if (!std::binary_search(coords.begin(), coords.end(), i)) out.push_back(i);
    return out;
}

Shape::Shape(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)), strides_(sizes_.size())
{
    total_ = 1;
    for (std::size_t c = sizes_.size(); c-- > 0;) {
        strides_[c] = total_;
        if (sizes_[c] != 0 && total_ > kMaxDenseTuples / sizes_[c])
            throw InputError("product of part sizes exceeds the dense limit");
        total_ *= sizes_[c];
    }
}

std::size_t Shape::index(std::span<const std::uint32_t> t) const
{
    std::size_t idx = 0;
    for (std::size_t c = 0; c < sizes_.size(); ++c) idx += t[c] * strides_[c];
    return idx;
}

Tuple Shape::tuple(std::size_t index) const
{
    Tuple t(sizes_.size());
    for (std::size_t c = 0; c < sizes_.size(); ++c) t[c] = static_cast<std::uint32_t>(coord(index, c));
    return t;
}

Shape Shape::restrict(const IndexSet& coords) const
{
    std::vector<std::size_t> s;
    s.reserve(coords.size());
    for (auto c : coords) s.push_back(sizes_[c]);
    return Shape(std::move(s));
}

BinaryView::BinaryView(IndexSet fiber_coords, IndexSet param_coords, Shape fiber_shape, Shape param_shape,
                       std::vector<Bitset> rows)
    : fiber_coords_(std::move(fiber_coords)),
      param_coords_(std::move(param_coords)),
      fiber_shape_(std::move(fiber_shape)),
      param_shape_(std::move(param_shape)),
      rows_(std::move(rows))
{
}

Bitset BinaryView::dual(std::size_t element) const
{
    Bitset out(rows_.size());
    for (std::size_t b = 0; b < rows_.size(); ++b)
        if (rows_[b].test(element)) out.set(b);
    return out;
}

Relation::Relation(Shape shape, Bitset members) : shape_(std::move(shape)), members_(std::move(members))
{
    if (members_.size() != shape_.total()) throw InputError("relation bitset does not match its shape");
}

Relation Relation::from_tuples(const Shape& shape, std::span<const Tuple> tuples)
{
    Bitset m(shape.total());
    for (const auto& t : tuples) m.set(shape.index(t));
    return Relation(shape, std::move(m));
}

BinaryView Relation::view(const IndexSet& fiber_coords) const
{
    const std::size_t k = arity();
    IndexSet params = complement(fiber_coords, k);
    Shape fshape = shape_.restrict(fiber_coords);
    Shape pshape = shape_.restrict(params);

    // Per coordinate: (stride in fiber index, stride in param index); one is zero.
    std::vector<std::size_t> fstride(k, 0), pstride(k, 0);
    for (std::size_t i = 0; i < fiber_coords.size(); ++i) fstride[fiber_coords[i]] = fshape.stride(i);
    for (std::size_t i = 0; i < params.size(); ++i) pstride[params[i]] = pshape.stride(i);

    std::vector<Bitset> rows(pshape.total(), Bitset(fshape.total()));
    members_.for_each([&](std::size_t idx) {
        std::size_t f = 0, p = 0;
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t d = shape_.coord(idx, c);
            f += d * fstride[c];
            p += d * pstride[c];
        }
        rows[p].set(f);
    });
    return BinaryView(fiber_coords, std::move(params), std::move(fshape), std::move(pshape), std::move(rows));
}

Bitset Relation::fiber(const IndexSet& fiber_coords, std::span<const std::uint32_t> param) const
{
    const std::size_t k = arity();
    IndexSet params = complement(fiber_coords, k);
    Shape fshape = shape_.restrict(fiber_coords);
    Bitset out(fshape.total());
    Tuple full(k);
    for (std::size_t i = 0; i < params.size(); ++i) full[params[i]] = param[i];
    for (std::size_t f = 0; f < fshape.total(); ++f) {
        for (std::size_t i = 0; i < fiber_coords.size(); ++i)
            full[fiber_coords[i]] = static_cast<std::uint32_t>(fshape.coord(f, i));
        if (contains(full)) out.set(f);
    }
    return out;
}

Relation Relation::fiber_of_last(std::size_t a) const
{
    const std::size_t k = arity();
    std::vector<std::size_t> sizes(shape_.sizes().begin(), shape_.sizes().end() - 1);
    Shape sub(sizes);
    Bitset m(sub.total());
    const std::size_t last = shape_.size(k - 1);
    // Coordinate k-1 is least significant: tuple (c, a) has index c * last + a.
    for (std::size_t c = 0; c < sub.total(); ++c)
        if (members_.test(c * last + a)) m.set(c);
    return Relation(std::move(sub), std::move(m));
}

std::vector<Tuple> Fiber::member_tuples() const
{
    std::vector<Tuple> out;
    members.for_each([&](std::size_t i) { out.push_back(shape.tuple(i)); });
    return out;
}

Hypergraph::Hypergraph(std::vector<std::size_t> part_sizes, std::vector<Tuple> edges, bool symmetric)
    : part_sizes_(std::move(part_sizes)), edges_(std::move(edges)), symmetric_(symmetric)
{
    if (part_sizes_.empty()) throw InputError("hypergraph arity must be at least 1");
    for (auto s : part_sizes_)
        if (s == 0) throw InputError("every part must be nonempty");
    for (const auto& e : edges_) {
        if (e.size() != part_sizes_.size())
            throw InputError("edge of arity " + std::to_string(e.size()) + " in a " +
                             std::to_string(part_sizes_.size()) + "-partite hypergraph");
        for (std::size_t c = 0; c < e.size(); ++c)
            if (e[c] >= part_sizes_[c])
                throw InputError("edge coordinate " + std::to_string(e[c]) + " out of bounds for part " +
                                 std::to_string(c));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    relation_ = Relation::from_tuples(Shape(part_sizes_), edges_);
    if (symmetric_) validate_symmetry();
    for (std::size_t c = 0; c < k(); ++c) coord_views_.push_back(relation_.view({c}));
}

Hypergraph::Hypergraph(const Relation& rel, bool symmetric)
    : part_sizes_(rel.shape().sizes()), symmetric_(symmetric), relation_(rel)
{
    for (auto s : part_sizes_)
        if (s == 0) throw InputError("every part must be nonempty");
    rel.members().for_each([&](std::size_t i) { edges_.push_back(rel.shape().tuple(i)); });
    if (symmetric_) validate_symmetry();
    for (std::size_t c = 0; c < k(); ++c) coord_views_.push_back(relation_.view({c}));
}

void Hypergraph::validate_symmetry() const
{
    for (auto s : part_sizes_)
        if (s != part_sizes_[0]) throw InputError("symmetric hypergraph needs equal part sizes");
    // Adjacent transpositions generate the symmetric group.
    for (const auto& e : edges_) {
        for (std::size_t c = 0; c + 1 < e.size(); ++c) {
            Tuple t = e;
            std::swap(t[c], t[c + 1]);
            if (!relation_.contains(t)) throw InputError("edge set is not invariant under coordinate permutations");
        }
    }
}

Fiber Hypergraph::fiber(const IndexSet& coords, const Tuple& parameter) const
{
    if (coords.empty() || !std::is_sorted(coords.begin(), coords.end()) ||
        std::adjacent_find(coords.begin(), coords.end()) != coords.end() || coords.back() >= k())
        throw InputError("fiber coordinates must be a sorted subset of the parts");
    IndexSet params = complement(coords, k());
    if (parameter.size() != params.size()) throw InputError("fiber parameter has the wrong arity");
    for (std::size_t i = 0; i < params.size(); ++i)
        if (parameter[i] >= part_sizes_[params[i]]) throw InputError("fiber parameter out of bounds");
    Fiber f;
    f.coords = coords;
    f.parameter = parameter;
    f.shape = relation_.shape().restrict(coords);
    if (coords.size() == 1) {
        f.members = coord_views_[coords[0]].fiber(Shape(part_sizes_).restrict(params).index(parameter));
    } else {
        BinaryView v = relation_.view(coords);
        f.members = v.fiber(v.param_shape().index(parameter));
    }
    return f;
}

}  // namespace vcreg
