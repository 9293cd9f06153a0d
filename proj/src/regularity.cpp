#include "vcreg/regularity.hpp"

#include "vcreg/atoms.hpp"
#include "vcreg/errors.hpp"
#include "vcreg/vc.hpp"

#include <algorithm>
#include <unordered_map>

namespace vcreg {

namespace {

Measure flatten(std::span<const Measure> mus)
{
    Measure m = mus[0];
    for (std::size_t i = 1; i < mus.size(); ++i) m = Measure::product(m, mus[i]);
    return m;
}

}  // namespace

DeltaPartition delta_approx_partition(const Relation& r, const Measure& mu, const IndexSet& fiber_coords,
                                      const Rational& eps)
{
    if (eps <= 0) throw InputError("epsilon must be positive");
    BinaryView view = r.view(fiber_coords);
    if (mu.size() != view.fiber_size()) throw InputError("measure does not match the fiber side");
    DeltaPartition dp;
    dp.fiber_coords = view.fiber_coords();
    dp.param_coords = view.param_coords();
    dp.eps = eps;
    const std::size_t params = view.num_params();

    std::vector<std::size_t> fid(params);
    std::vector<Bitset> distinct;
    std::unordered_map<Bitset, std::size_t, BitsetHash> ids;
    for (std::size_t b = 0; b < params; ++b) {
        auto [it, fresh] = ids.try_emplace(view.fiber(b), distinct.size());
        if (fresh) distinct.push_back(view.fiber(b));
        fid[b] = it->second;
    }

    if (eps > 1) {
        dp.classes.push_back(Bitset::full(params));
    } else {
        std::vector<Bitset> diffs;
        for (std::size_t x = 0; x < distinct.size(); ++x)
            for (std::size_t y = x + 1; y < distinct.size(); ++y) diffs.push_back(distinct[x] ^ distinct[y]);
        SetFamily family(view.fiber_size(), std::move(diffs));
        std::vector<std::size_t> net = greedy_net(family, mu, eps / 2);
        dp.net_size = net.size();
        if (net.size() >= view.fiber_size()) {
            dp.full_side = true;
            net.clear();
            for (std::size_t a = 0; a < view.fiber_size(); ++a) net.push_back(a);
        }
        dp.D = net;
        std::vector<Bitset> gens;
        for (auto a : dp.D) gens.push_back(view.dual(a));
        dp.classes = atoms(params, gens);
    }
    for (const auto& cls : dp.classes) dp.representatives.push_back(cls.first());

    dp.max_distance = 0;
    for (const auto& cls : dp.classes) {
        std::vector<std::size_t> f;
        cls.for_each([&](std::size_t b) { f.push_back(fid[b]); });
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        for (std::size_t x = 0; x < f.size(); ++x)
            for (std::size_t y = x + 1; y < f.size(); ++y) {
                Rational d = mu.mass(distinct[f[x]] ^ distinct[f[y]]);
                if (d > dp.max_distance) dp.max_distance = d;
            }
    }
    if (!(dp.max_distance < eps))
        throw VerificationError("delta partition class has fiber distance " + to_string(dp.max_distance));
    return dp;
}

DeltaPartition delta_approx_partition(const Hypergraph& h, const ProductMeasure& mu, const IndexSet& fiber_coords,
                                      const Rational& eps)
{
    mu.check_against(h);
    if (fiber_coords.empty() || fiber_coords.back() >= h.k() ||
        !std::is_sorted(fiber_coords.begin(), fiber_coords.end()))
        throw InputError("fiber coordinates must be a sorted nonempty subset of the parts");
    return delta_approx_partition(h.relation(), mu.flatten(fiber_coords), fiber_coords, eps);
}

namespace {

struct RectPart {
    std::vector<Box> boxes;
    std::vector<std::vector<Tuple>> D;
    std::size_t top_classes = 0;
};

RectPart rect_rec(const Relation& r, std::span<const Measure> mus, const Rational& eps)
{
    const std::size_t k = r.arity();
    RectPart out;
    out.D.resize(k);
    if (k == 1) {
        if (r.members().any()) {
            out.boxes.push_back(Box{{r.members()}});
            out.D[0].push_back(Tuple{});
        }
        out.top_classes = 1;
        return out;
    }
    const Rational e1 = k == 2 ? eps : eps / 2;
    const IndexSet fiber_side = all_coords(k - 1);
    DeltaPartition dp = delta_approx_partition(r, flatten(mus.first(k - 1)), fiber_side, e1);
    out.top_classes = dp.classes.size();
    Shape fshape = r.shape().restrict(fiber_side);
    for (auto c : dp.D) out.D[k - 1].push_back(fshape.tuple(c));

    for (std::size_t i = 0; i < dp.classes.size(); ++i) {
        const auto a = static_cast<std::uint32_t>(dp.representatives[i]);
        RectPart sub = rect_rec(r.fiber_of_last(a), mus.first(k - 1), e1);
        for (auto& b : sub.boxes) {
            b.sides.push_back(dp.classes[i]);
            out.boxes.push_back(std::move(b));
        }
        for (std::size_t j = 0; j + 1 < k; ++j)
            for (auto& t : sub.D[j]) {
                t.push_back(a);
                out.D[j].push_back(std::move(t));
            }
    }
    for (auto& d : out.D) {
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
    }
    return out;
}

}  // namespace

std::size_t RectApprox::norm() const
{
    std::size_t n = 0;
    for (const auto& d : D) n = std::max(n, d.size());
    return n;
}

Bitset RectApprox::members(const Shape& shape) const
{
    Bitset m(shape.total());
    for (const auto& b : boxes) for_each_in_box(shape, b, [&](std::size_t idx) { m.set(idx); });
    return m;
}

RectApprox rectangular_approximation(const Hypergraph& h, const ProductMeasure& mu, const Rational& eps)
{
    mu.check_against(h);
    if (eps <= 0) throw InputError("epsilon must be positive");
    RectPart part = rect_rec(h.relation(), mu.parts(), eps);
    RectApprox ra;
    ra.boxes = std::move(part.boxes);
    ra.D = std::move(part.D);
    ra.top_classes = part.top_classes;
    ra.eps = eps;
    ra.error = mu.mass(ra.members(h.shape()) ^ h.relation().members());
    if (!(ra.error < eps)) throw VerificationError("rectangular approximation error " + to_string(ra.error));
    return ra;
}

}  // namespace vcreg
