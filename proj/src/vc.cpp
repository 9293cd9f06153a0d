#include "vcreg/vc.hpp"

#include "vcreg/atoms.hpp"
#include "vcreg/errors.hpp"
#include "vcreg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace vcreg {

SetFamily::SetFamily(std::size_t ground, std::vector<Bitset> members) : ground_(ground)
{
    std::unordered_set<Bitset, BitsetHash> seen;
    for (auto& m : members) {
        if (m.size() != ground) throw InputError("family member over the wrong ground set");
        if (seen.insert(m).second) members_.push_back(std::move(m));
    }
}

SetFamily SetFamily::of_fibers(const BinaryView& view) { return SetFamily(view.fiber_size(), view.fibers()); }

SetFamily SetFamily::of_duals(const BinaryView& view)
{
    std::vector<Bitset> duals;
    for (std::size_t a = 0; a < view.fiber_size(); ++a) duals.push_back(view.dual(a));
    return SetFamily(view.num_params(), std::move(duals));
}

namespace {

// Points with identical columns (membership across all members) are interchangeable,
// and constant columns are never in a shattered set, so the search runs over the
// first point of each distinct nonconstant column.
struct ShatterSearch {
    const std::vector<Bitset>& cols;
    std::size_t target;
    std::vector<std::size_t> chosen;

    // classes: members grouped by their trace on the chosen points, one class per
    // trace; cands: points that keep the chosen set shattered when added (a subset
    // of a shattered set is shattered).
    bool run(const std::vector<Bitset>& classes, const std::vector<std::size_t>& cands)
    {
        if (chosen.size() == target) return true;
        const std::size_t need = target - chosen.size();
        std::vector<std::size_t> ok;
        for (auto x : cands) {
            bool splits = true;
            for (const auto& c : classes)
                if (!c.intersects(cols[x]) || c.is_subset_of(cols[x])) {
                    splits = false;
                    break;
                }
            if (splits) ok.push_back(x);
        }
        for (std::size_t i = 0; i + need <= ok.size(); ++i) {
            const Bitset& col = cols[ok[i]];
            std::vector<Bitset> next;
            for (const auto& c : classes) {
                Bitset in = c;
                in &= col;
                next.push_back(std::move(in));
                next.push_back(c);
                next.back().subtract(col);
            }
            chosen.push_back(ok[i]);
            std::vector<std::size_t> rest(ok.begin() + static_cast<std::ptrdiff_t>(i) + 1, ok.end());
            if (run(next, rest)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace

VcResult vc_dimension(const SetFamily& f, std::size_t cap)
{
    VcResult r;
    if (f.size() == 0) return r;
    std::size_t limit = std::min<std::size_t>({cap, f.ground(), 30});
    std::size_t log2m = 0;
    while ((std::size_t{2} << log2m) <= f.size()) ++log2m;
    limit = std::min(limit, log2m);

    std::vector<Bitset> cols;
    std::vector<std::size_t> point;
    {
        std::vector<Bitset> all(f.ground(), Bitset(f.size()));
        for (std::size_t m = 0; m < f.size(); ++m) f.members()[m].for_each([&](std::size_t x) { all[x].set(m); });
        std::unordered_set<Bitset, BitsetHash> seen;
        for (std::size_t x = 0; x < f.ground(); ++x) {
            const std::size_t c = all[x].count();
            if (c == 0 || c == f.size() || !seen.insert(all[x]).second) continue;
            cols.push_back(std::move(all[x]));
            point.push_back(x);
        }
    }
    const std::vector<Bitset> root{Bitset::full(f.size())};
    std::vector<std::size_t> all(cols.size());
    for (std::size_t x = 0; x < all.size(); ++x) all[x] = x;
    for (std::size_t t = 1; t <= limit; ++t) {
        ShatterSearch s{cols, t, {}};
        if (!s.run(root, all)) break;
        r.dimension = t;
        r.witness.clear();
        for (auto c : s.chosen) r.witness.push_back(point[c]);
    }
    r.reached_cap = r.dimension == cap && cap < std::min(f.ground(), log2m);
    return r;
}

std::uint64_t shatter_function(const SetFamily& f, std::size_t n)
{
    if (n > f.ground()) throw InputError("shatter function argument exceeds the ground set");
    if (n > 63) throw InputError("shatter function supports n <= 63");
    if (f.size() == 0) return 0;
    const std::uint64_t ceiling = n >= 63 ? f.size() : std::min<std::uint64_t>(f.size(), std::uint64_t{1} << n);
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    std::vector<std::uint64_t> traces(f.size());
    std::uint64_t best = 0;
    while (true) {
        for (std::size_t m = 0; m < f.size(); ++m) {
            std::uint64_t t = 0;
            for (std::size_t i = 0; i < n; ++i) t |= static_cast<std::uint64_t>(f.members()[m].test(pick[i])) << i;
            traces[m] = t;
        }
        std::sort(traces.begin(), traces.end());
        std::uint64_t distinct = std::unique(traces.begin(), traces.end()) - traces.begin();
        best = std::max(best, distinct);
        if (best == ceiling) return best;
        // next combination in lex order
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == f.ground() - n + i - 1) --i;
        if (i == 0) return best;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
}

SauerCheck sauer_check(const SetFamily& f, std::size_t d, std::size_t n)
{
    SauerCheck c;
    c.pi = shatter_function(f, n);
    c.bound = sauer_bound(n, d);
    c.holds = Integer(static_cast<unsigned long>(c.pi)) <= c.bound;
    return c;
}

DefinableCount definable_count_bound(const Hypergraph& h, const IndexSet& I, const std::vector<std::size_t>& D,
                                     std::size_t cap)
{
    BinaryView view = h.relation().view(I);
    std::vector<Bitset> gens;
    for (auto b : D) {
        if (b >= view.num_params()) throw InputError("parameter index out of bounds");
        gens.push_back(view.fiber(b));
    }
    DefinableCount out;
    out.atoms = atoms(view.fiber_size(), gens);
    out.count = out.atoms.size();
    out.fiber_vc = vc_dimension(SetFamily::of_fibers(view), cap).dimension;
    out.dual_vc = vc_dimension(SetFamily::of_duals(view), cap).dimension;
    out.bound = sauer_bound(D.size(), out.dual_vc);
    out.within_power = D.size() >= 63 || out.count <= (std::size_t{1} << D.size());
    out.within_bound = Integer(static_cast<unsigned long>(out.count)) <= out.bound;
    return out;
}

std::string to_string(NetStrategy s) { return s == NetStrategy::greedy ? "greedy" : "random"; }

NetStrategy parse_net_strategy(const std::string& s)
{
    if (s == "greedy") return NetStrategy::greedy;
    if (s == "random") return NetStrategy::random;
    throw InputError("unknown net strategy '" + s + "'");
}

namespace {

std::vector<std::size_t> heavy_members(const SetFamily& f, const Measure& mu, const Rational& eps)
{
    std::vector<std::size_t> out;
    // mu(F) >= eps  <=>  scaled_mass(F) >= eps * den
    Rational threshold = eps * mu.denominator();
    for (std::size_t m = 0; m < f.size(); ++m)
        if (Rational(mu.scaled_mass(f.members()[m])) >= threshold) out.push_back(m);
    return out;
}

std::vector<std::size_t> greedy_cover(const SetFamily& f, const std::vector<std::size_t>& heavy)
{
    std::vector<std::size_t> unhit = heavy;
    std::vector<std::size_t> points;
    while (!unhit.empty()) {
        std::size_t pick = unhit[0];
        for (auto m : unhit)
            if (lex_less(f.members()[m], f.members()[pick])) pick = m;
        // Point of the chosen member lying in the most unhit heavy members.
        std::size_t best = Bitset::npos, best_cover = 0;
        f.members()[pick].for_each([&](std::size_t x) {
            std::size_t cover = 0;
            for (auto m : unhit) cover += f.members()[m].test(x);
            if (best == Bitset::npos || cover >= best_cover) best = x, best_cover = cover;
        });
        points.push_back(best);
        std::erase_if(unhit, [&](std::size_t m) { return f.members()[m].test(best); });
    }
    std::sort(points.begin(), points.end());
    return points;
}

}  // namespace

NetCheck verify_net(const SetFamily& f, const Measure& mu, const Rational& eps, const std::vector<std::size_t>& points)
{
    if (mu.size() != f.ground()) throw InputError("measure does not match the family's ground set");
    Bitset t(f.ground());
    for (auto p : points) {
        if (p >= f.ground()) throw InputError("net point out of bounds");
        t.set(p);
    }
    NetCheck c;
    auto heavy = heavy_members(f, mu, eps);
    c.heavy = heavy.size();
    for (auto m : heavy)
        if (!f.members()[m].intersects(t)) {
            c.ok = false;
            c.unhit = m;
            break;
        }
    return c;
}

std::vector<std::size_t> greedy_net(const SetFamily& f, const Measure& mu, const Rational& eps)
{
    if (mu.size() != f.ground()) throw InputError("measure does not match the family's ground set");
    return greedy_cover(f, heavy_members(f, mu, eps));
}

VcResult relation_vc(const Hypergraph& h, std::size_t cap)
{
    VcResult best;
    const std::size_t k = h.k();
    // Nonempty proper subsets I of the coordinates; I = [k] gives the single set R.
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
        IndexSet I;
        for (std::size_t c = 0; c < k; ++c)
            if (mask >> c & 1) I.push_back(c);
        VcResult r = vc_dimension(SetFamily::of_fibers(h.relation().view(I)), cap);
        if (r.dimension > best.dimension || (r.reached_cap && !best.reached_cap)) best = r;
    }
    return best;
}

std::size_t paper_net_size(std::size_t d, const Rational& eps, bool base2)
{
    const double inv = 1.0 / to_double(eps);
    const double lg = base2 ? std::log2(inv) : std::log(inv);
    return static_cast<std::size_t>(std::ceil(8.0 * static_cast<double>(std::max<std::size_t>(d, 1)) * inv * std::max(1.0, lg)));
}

EpsNet epsilon_net(const SetFamily& f, const Measure& mu, const Rational& eps, NetStrategy strategy, std::uint64_t seed,
                   std::size_t retries)
{
    if (eps <= 0) throw InputError("epsilon must be positive");
    if (mu.size() != f.ground()) throw InputError("measure does not match the family's ground set");
    EpsNet net;
    net.eps = eps;
    net.requested = strategy;
    net.vc = vc_dimension(f).dimension;
    net.size_ln = paper_net_size(net.vc, eps, false);
    net.size_log2 = paper_net_size(net.vc, eps, true);
    auto heavy = heavy_members(f, mu, eps);

    if (strategy == NetStrategy::random && !heavy.empty()) {
        std::vector<Integer> prefix;
        Integer acc = 0;
        for (std::size_t i = 0; i < mu.size(); ++i) prefix.push_back(acc += mu.numerator(i));
        Rng rng(seed);
        for (std::size_t attempt = 1; attempt <= retries; ++attempt) {
            std::vector<std::size_t> pts;
            for (std::size_t s = 0; s < net.size_ln; ++s) {
                Integer u = rng.below(mu.denominator());
                pts.push_back(std::upper_bound(prefix.begin(), prefix.end(), u) - prefix.begin());
            }
            std::sort(pts.begin(), pts.end());
            net.attempts = attempt;
            if (verify_net(f, mu, eps, pts).ok) {
                net.points = std::move(pts);
                net.used = NetStrategy::random;
                net.verified = true;
                return net;
            }
        }
    }
    net.used = heavy.empty() ? strategy : NetStrategy::greedy;
    net.points = greedy_cover(f, heavy);
    net.attempts += 1;
    net.verified = verify_net(f, mu, eps, net.points).ok;
    if (!net.verified) throw VerificationError("greedy net failed verification");
    return net;
}

}  // namespace vcreg
