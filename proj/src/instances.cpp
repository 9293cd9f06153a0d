#include "vcreg/instances.hpp"

#include "vcreg/errors.hpp"
#include "vcreg/rng.hpp"
#include "vcreg/stable.hpp"
#include "vcreg/vc.hpp"

#include <algorithm>

namespace vcreg {

namespace {

constexpr std::pair<InstanceKind, const char*> kKinds[] = {
    {InstanceKind::interval_graph, "interval-graph"},
    {InstanceKind::half_graph, "half-graph"},
    {InstanceKind::block_union, "block-union"},
    {InstanceKind::staircase, "staircase"},
    {InstanceKind::random_vc_capped, "random-vc-capped"},
    {InstanceKind::dyadic_export, "dyadic-export"},
};

std::vector<std::size_t> resolve_sizes(const GeneratorSpec& s)
{
    if (s.k < 1) throw InputError("arity must be at least 1");
    std::vector<std::size_t> sizes = s.sizes;
    if (sizes.empty()) sizes = {8};
    if (sizes.size() == 1) sizes.assign(s.k, sizes[0]);
    if (sizes.size() != s.k) throw InputError("expected one size per part");
    for (auto n : sizes)
        if (n == 0) throw InputError("part sizes must be positive");
    return sizes;
}

void require_binary(const GeneratorSpec& s, const char* what)
{
    if (s.k != 2) throw InputError(std::string(what) + " instances are binary");
}

template <class Pred>
Relation build(const Shape& shape, Pred&& pred)
{
    Bitset m(shape.total());
    for (std::size_t i = 0; i < shape.total(); ++i)
        if (pred(shape.tuple(i))) m.set(i);
    return Relation(shape, std::move(m));
}

}  // namespace

std::string to_string(InstanceKind k)
{
    for (const auto& [kind, name] : kKinds)
        if (kind == k) return name;
    return "?";
}

InstanceKind parse_instance_kind(const std::string& s)
{
    for (const auto& [kind, name] : kKinds)
        if (s == name) return kind;
    throw InputError("unknown instance kind: " + s);
}

std::vector<std::size_t> block_sizes(std::size_t n, std::size_t m, std::uint64_t seed)
{
    if (m < 1 || m > n) throw InputError("block count must lie in 1..part size");
    Rng rng(seed);
    std::vector<std::size_t> cuts(n - 1);
    for (std::size_t i = 0; i < cuts.size(); ++i) cuts[i] = i + 1;
    // partial Fisher-Yates: the first m-1 entries become the cut points
    for (std::size_t i = 0; i + 1 < m; ++i) std::swap(cuts[i], cuts[i + rng.below(cuts.size() - i)]);
    cuts.resize(m - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(n);
    std::vector<std::size_t> out;
    std::size_t prev = 0;
    for (auto c : cuts) {
        out.push_back(c - prev);
        prev = c;
    }
    return out;
}

Hypergraph generate_hypergraph(const GeneratorSpec& spec)
{
    std::vector<std::size_t> sizes = resolve_sizes(spec);
    switch (spec.kind) {
    case InstanceKind::half_graph: {
        require_binary(spec, "half-graph");
        return Hypergraph(build(Shape(sizes), [](const Tuple& t) { return t[0] <= t[1]; }));
    }
    case InstanceKind::staircase: {
        return Hypergraph(build(Shape(sizes), [](const Tuple& t) { return std::is_sorted(t.begin(), t.end()); }));
    }
    case InstanceKind::interval_graph: {
        require_binary(spec, "interval-graph");
        const std::size_t n = sizes[0];
        Rng rng(spec.seed);
        std::vector<std::pair<std::size_t, std::size_t>> iv;
        if (n >= 3) iv = {{0, 0}, {1, 1}, {0, 1}, {n - 1, n - 1}};   // shatter {0,1}
        iv.resize(std::min(iv.size(), sizes[1]));
        while (iv.size() < sizes[1]) {
            std::size_t l = rng.below(n), r = rng.below(n);
            iv.emplace_back(std::min(l, r), std::max(l, r));
        }
        return Hypergraph(build(Shape(sizes), [&](const Tuple& t) {
            return iv[t[1]].first <= t[0] && t[0] <= iv[t[1]].second;
        }));
    }
    case InstanceKind::block_union: {
        if (spec.k < 2) throw InputError("block-union needs at least two parts");
        std::vector<std::vector<std::size_t>> block_of(spec.k);
        const bool equal = std::all_of(sizes.begin(), sizes.end(), [&](std::size_t n) { return n == sizes[0]; });
        for (std::size_t c = 0; c < spec.k; ++c) {
            auto bs = block_sizes(sizes[c], spec.blocks, equal ? spec.seed : spec.seed + c);
            for (std::size_t b = 0; b < bs.size(); ++b) block_of[c].insert(block_of[c].end(), bs[b], b);
        }
        Relation r = build(Shape(sizes), [&](const Tuple& t) {
            for (std::size_t c = 1; c < t.size(); ++c)
                if (block_of[c][t[c]] != block_of[0][t[0]]) return false;
            return true;
        });
        return Hypergraph(r, equal);
    }
    case InstanceKind::random_vc_capped: {
        require_binary(spec, "random-vc-capped");
        const std::size_t n = sizes[0];
        Rng rng(spec.seed);
        std::vector<Bitset> members;
        for (std::size_t b = 0; b < sizes[1]; ++b) {
            bool placed = false;
            for (int attempt = 0; attempt < 32 && !placed; ++attempt) {
                Bitset cand(n);
                for (std::size_t a = 0; a < n; ++a)
                    if (rng.coin()) cand.set(a);
                std::vector<Bitset> trial = members;
                trial.push_back(cand);
                if (vc_dimension(SetFamily(n, trial), spec.cap_d + 1).dimension <= spec.cap_d) {
                    members.push_back(std::move(cand));
                    placed = true;
                }
            }
            if (!placed) members.push_back(members.empty() ? Bitset(n) : members[rng.below(members.size())]);
        }
        return Hypergraph(build(Shape(sizes), [&](const Tuple& t) { return members[t[1]].test(t[0]); }));
    }
    case InstanceKind::dyadic_export: {
        require_binary(spec, "dyadic-export");
        if (spec.depth < 1 || spec.depth > 10) throw InputError("dyadic depth must lie in 1..10");
        const std::size_t n = std::size_t{1} << spec.depth;
        if (!spec.sizes.empty() && sizes != std::vector<std::size_t>{n, n})
            throw InputError("dyadic-export sizes are fixed by the depth");
        const std::size_t L = spec.depth;
        Relation r = build(Shape({n, n}), [&](const Tuple& t) {
            if (t[0] == t[1]) return false;
            const std::size_t v = L - static_cast<std::size_t>(std::bit_width(t[0] ^ t[1]));
            return v % 2 == 1;
        });
        return Hypergraph(r, true);
    }
    }
    throw InputError("unknown instance kind");
}

Measured measure_parameters(const Hypergraph& h, std::size_t vc_cap, std::size_t ladder_cap)
{
    Measured m;
    m.vc_cap = vc_cap;
    m.ladder_cap = ladder_cap;
    if (h.k() >= 2) {
        VcResult v = relation_vc(h, vc_cap);
        m.vc_dimension = v.dimension;
        m.vc_reached_cap = v.reached_cap;
        for (std::size_t c = 0; c < h.k(); ++c) {
            Ladder l = ladder_index(h, {c}, ladder_cap, 2'000'000);
            m.ladder_index = std::max(m.ladder_index, l.length);
            m.ladder_exhausted = m.ladder_exhausted || l.exhausted_budget;
        }
        m.ladder_reached_cap = m.ladder_index >= ladder_cap;
    }
    return m;
}

Instance generate(const GeneratorSpec& spec)
{
    Hypergraph h = generate_hypergraph(spec);
    ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
    Measured m = measure_parameters(h, spec.vc_cap, spec.ladder_cap);
    return Instance{spec, std::move(h), std::move(mu), m};
}

}  // namespace vcreg
