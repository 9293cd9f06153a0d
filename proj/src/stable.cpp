#include "vcreg/stable.hpp"

#include "vcreg/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace vcreg {

namespace {

// Indices of `s` keeping one element per distinct value of key(i).
template <class Key>
std::vector<std::size_t> distinct_by(const Bitset& s, Key&& key)
{
    std::vector<std::size_t> out;
    std::unordered_set<Bitset, BitsetHash> seen;
    s.for_each([&](std::size_t i) {
        if (seen.insert(key(i)).second) out.push_back(i);
    });
    return out;
}

struct LadderSearch {
    const BinaryView& view;
    std::vector<Bitset> duals;
    std::size_t cap;
    std::size_t budget;
    std::size_t nodes = 0;
    bool stop = false;
    bool exhausted = false;
    std::vector<std::size_t> cur_a, cur_b, best_a, best_b;

    void run(const Bitset& cand_a, const Bitset& cand_b)
    {
        if (cur_a.size() > best_a.size()) {
            best_a = cur_a;
            best_b = cur_b;
            if (best_a.size() >= cap) stop = true;
        }
        if (stop) return;
        if (++nodes > budget) {
            exhausted = stop = true;
            return;
        }
        if (cur_a.size() + std::min(cand_a.count(), cand_b.count()) <= best_a.size()) return;
        for (auto a : distinct_by(cand_a, [&](std::size_t i) { return duals[i]; })) {
            Bitset bs = cand_b & duals[a];
            for (auto b : distinct_by(bs, [&](std::size_t j) { return view.fiber(j); })) {
                Bitset next_a = cand_a;
                next_a.subtract(view.fiber(b));
                Bitset next_b = bs;
                next_b.reset(b);
                cur_a.push_back(a);
                cur_b.push_back(b);
                run(next_a, next_b);
                cur_a.pop_back();
                cur_b.pop_back();
                if (stop) return;
            }
        }
    }
};

struct TreeSearch {
    std::vector<Bitset> splitters;
    std::size_t cap;
    std::size_t budget;
    bool exhausted = false;
    std::unordered_map<Bitset, std::size_t, BitsetHash> memo;

    std::size_t run(const Bitset& s)
    {
        const std::size_t n = s.count();
        if (n <= 1) return 0;
        if (auto it = memo.find(s); it != memo.end()) return it->second;
        std::size_t ceiling = std::min<std::size_t>(cap, std::bit_width(n) - 1);
        std::size_t best = 0;
        for (const auto& f : splitters) {
            if (best >= ceiling) break;
            Bitset in = s & f;
            if (in.none() || in == s) continue;
            Bitset out = s;
            out.subtract(f);
            std::size_t lo = run(in);
            if (lo + 1 <= best) continue;
            best = std::max(best, 1 + std::min(lo, run(out)));
        }
        if (memo.size() < budget)
            memo.emplace(s, best);
        else
            exhausted = true;
        return best;
    }
};

GoodnessReport good_on_view(const BinaryView& view, const Measure& mu, const Bitset& A, const Rational& eps)
{
    GoodnessReport r;
    r.eps = eps;
    const Integer ma = mu.scaled_mass(A);
    if (ma == 0) throw ZeroMeasureError("goodness of a set of measure zero");
    r.mass = Rational(ma, mu.denominator());
    r.mass.canonicalize();
    const Integer lo = eps.get_num() * ma;                        // m < eps ma     <=> m den < lo
    const Integer hi = (eps.get_den() - eps.get_num()) * ma;      // m > (1-eps) ma <=> m den > hi
    Integer best_gap;
    for (std::size_t b = 0; b < view.num_params(); ++b) {
        Integer m = mu.scaled_mass(A & view.fiber(b));
        Integer md = m * eps.get_den();
        if (md < lo || md > hi) continue;
        ++r.bad_params;
        Integer gap = abs(2 * m - ma);
        if (!r.witness || gap < best_gap) {
            best_gap = gap;
            r.witness = b;
            Rational d(m, ma);
            d.canonicalize();
            r.witness_density = d;
        }
    }
    r.good = r.bad_params == 0;
    if (r.witness) r.witness_tuple = view.param_shape().tuple(*r.witness);
    return r;
}

std::string path_str(const std::vector<std::pair<Tuple, int>>& path)
{
    std::string s = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
        s += i ? ",{\"param\":[" : "{\"param\":[";
        for (std::size_t j = 0; j < path[i].first.size(); ++j)
            s += (j ? "," : "") + std::to_string(path[i].first[j]);
        s += "],\"branch\":" + std::to_string(path[i].second) + "}";
    }
    return s + "]";
}

struct DHat {
    std::size_t value;
    bool measured;
};

DHat resolve_d_hat(const Hypergraph& h, const Rational& eps, std::size_t depth_cap, std::optional<std::size_t> d_hat)
{
    if (!d_hat) return {measured_ladder(h, depth_cap), true};
    if (*d_hat > depth_cap) throw InputError("depth cap is below the stability bound");
    if (!(eps < Rational(1, pow2(*d_hat)))) throw InputError("epsilon must be below 2^-d");
    return {*d_hat, false};
}

DescentPartition descent(const Hypergraph& h, const ProductMeasure& mu, std::size_t part, const Rational& eps,
                         std::size_t depth_cap, DHat d)
{
    if (part >= h.k()) throw InputError("part index out of range");
    if (eps <= 0 || eps >= 1) throw InputError("epsilon must lie in (0,1)");
    const BinaryView& view = h.coordinate_view(part);
    const Measure& mu_i = mu.part(part);
    const Rational half = eps / 2;

    DescentPartition out;
    out.part = part;
    out.eps = eps;
    out.d_hat = d.value;
    out.d_hat_measured = d.measured;
    out.precondition_met = eps < Rational(1, pow2(d.value));
    if (d.value > 0) {
        const double x = std::pow(to_double(half), static_cast<double>(d.value));
        out.paper_steps = static_cast<double>(d.value + 1) * std::log(to_double(half)) / std::log1p(-x);
    }

    auto good = [&](const Bitset& s) { return good_on_view(view, mu_i, s, half).good; };
    Bitset B = Bitset::full(h.part_sizes()[part]);

    auto best_fit = [&](const Bitset& residue) {
        Measure mu_other = mu.flatten(complement({part}, h.k()));
        std::vector<Bitset> trial = out.classes;
        for (const auto& g : atoms(residue, view.fibers())) {
            if (mu_i.scaled_mass(g) == 0) {
                trial[0] |= g;
                continue;
            }
            const Bitset dg = view.dual(g.first());
            std::vector<std::pair<Integer, std::size_t>> order;
            for (std::size_t c = 0; c < trial.size(); ++c)
                order.emplace_back(mu_other.scaled_mass(dg ^ view.dual(trial[c].first())), c);
            std::sort(order.begin(), order.end());
            bool placed = false;
            for (const auto& [dist, c] : order) {
                Bitset cand = trial[c] | g;
                if (good(cand)) {
                    trial[c] = std::move(cand);
                    placed = true;
                    break;
                }
            }
            if (!placed) return false;
        }
        out.classes = std::move(trial);
        return true;
    };

    while (B.any()) {
        const Integer mb = mu_i.scaled_mass(B);
        if (mb == 0) {
            out.classes[0] |= B;
            break;
        }
        struct Node {
            Bitset set;
            std::vector<std::pair<Tuple, int>> path;
        };
        std::deque<Node> queue{{B, {}}};
        std::optional<Node> found;
        std::string evidence = "[";
        while (!queue.empty()) {
            Node node = std::move(queue.front());
            queue.pop_front();
            GoodnessReport g = good_on_view(view, mu_i, node.set, half);
            if (g.good) {
                found = std::move(node);
                break;
            }
            if (node.path.size() >= depth_cap) {
                evidence += (evidence.size() > 1 ? "," : "") + path_str(node.path);
                continue;
            }
            const Bitset& f = view.fiber(*g.witness);
            Node in{node.set & f, node.path};
            in.path.emplace_back(*g.witness_tuple, 1);
            Node outside{node.set, std::move(node.path)};
            outside.set.subtract(f);
            outside.path.emplace_back(*g.witness_tuple, 0);
            queue.push_back(std::move(in));
            queue.push_back(std::move(outside));
        }
        if (!found)
            throw DescentDepthError("no eps/2-good piece within depth " + std::to_string(depth_cap) + " on part " +
                                        std::to_string(part),
                                    evidence + "]");

        DescentStep step;
        step.path = found->path;
        step.remaining_before = Rational(mb, mu_i.denominator());
        step.remaining_before.canonicalize();
        step.mass = mu_i.mass(found->set);
        out.max_depth = std::max(out.max_depth, step.path.size());
        for (const auto& [t, branch] : step.path) out.witnesses.push_back(t);
        out.steps.push_back(std::move(step));
        out.classes.push_back(found->set);
        B.subtract(found->set);

        const Integer rest = mu_i.scaled_mass(B);
        if (rest == 0 || !B.any()) continue;
        // mu(B) <= (eps/2) mu(A_1)
        if (rest * half.get_den() <= half.get_num() * mu_i.scaled_mass(out.classes[0])) {
            Bitset merged = out.classes[0] | B;
            if (good(merged)) {
                out.classes[0] = std::move(merged);
                out.residue_merged = true;
                break;
            }
            if (best_fit(B)) {
                out.best_fit_used = true;
                break;
            }
        }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    out.witnesses.erase(std::unique(out.witnesses.begin(), out.witnesses.end()), out.witnesses.end());
    std::sort(out.classes.begin(), out.classes.end(),
              [](const Bitset& a, const Bitset& b) { return a.first() < b.first(); });
    return out;
}

std::vector<Tuple> all_params(const BinaryView& view)
{
    std::vector<Tuple> out;
    for (std::size_t b = 0; b < view.num_params(); ++b) out.push_back(view.param_shape().tuple(b));
    return out;
}

}  // namespace

Ladder ladder_index(const Hypergraph& h, const IndexSet& I, std::size_t cap, std::size_t node_budget)
{
    if (cap < 1) throw InputError("ladder cap must be at least 1");
    BinaryView view = h.relation().view(I);
    LadderSearch s{view, {}, cap, node_budget, 0, false, false, {}, {}, {}, {}};
    for (std::size_t a = 0; a < view.fiber_size(); ++a) s.duals.push_back(view.dual(a));
    s.run(Bitset::full(view.fiber_size()), Bitset::full(view.num_params()));
    Ladder l;
    l.fiber_coords = view.fiber_coords();
    l.length = s.best_a.size();
    l.reached_cap = l.length >= cap;
    l.exhausted_budget = s.exhausted;
    l.a = s.best_a;
    l.b = s.best_b;
    for (auto a : l.a) l.a_tuples.push_back(view.fiber_shape().tuple(a));
    for (auto b : l.b) l.b_tuples.push_back(view.param_shape().tuple(b));
    return l;
}

bool verify_ladder(const Hypergraph& h, const Ladder& l)
{
    if (l.a_tuples.size() != l.length || l.b_tuples.size() != l.length) return false;
    const IndexSet params = complement(l.fiber_coords, h.k());
    Tuple t(h.k());
    for (std::size_t i = 0; i < l.length; ++i)
        for (std::size_t j = 0; j < l.length; ++j) {
            for (std::size_t x = 0; x < l.fiber_coords.size(); ++x) t[l.fiber_coords[x]] = l.a_tuples[i][x];
            for (std::size_t x = 0; x < params.size(); ++x) t[params[x]] = l.b_tuples[j][x];
            if (h.has_edge(t) != (i <= j)) return false;
        }
    return true;
}

TreeDepth tree_depth(const Hypergraph& h, const IndexSet& I, std::size_t cap, std::size_t memo_budget)
{
    BinaryView view = h.relation().view(I);
    TreeSearch s{{}, cap, memo_budget, false, {}};
    std::unordered_set<Bitset, BitsetHash> seen;
    for (const auto& f : view.fibers())
        if (seen.insert(f).second) s.splitters.push_back(f);
    TreeDepth t;
    t.depth = s.run(Bitset::full(view.fiber_size()));
    t.reached_cap = t.depth >= cap;
    t.exhausted_budget = s.exhausted;
    return t;
}

std::size_t measured_ladder(const Hypergraph& h, std::size_t cap)
{
    std::size_t best = 0;
    for (std::size_t c = 0; c < h.k(); ++c) best = std::max(best, ladder_index(h, {c}, std::max<std::size_t>(cap, 1)).length);
    return best;
}

GoodnessReport good_check(const Hypergraph& h, const ProductMeasure& mu, const Bitset& A, const IndexSet& I,
                          const Rational& eps)
{
    mu.check_against(h);
    if (I.empty() || I.back() >= h.k() || !std::is_sorted(I.begin(), I.end()))
        throw InputError("coordinates must be a sorted nonempty subset of the parts");
    if (I.size() == 1) {
        if (A.size() != h.part_sizes()[I[0]]) throw InputError("set does not match the part size");
        return good_on_view(h.coordinate_view(I[0]), mu.part(I[0]), A, eps);
    }
    BinaryView view = h.relation().view(I);
    if (A.size() != view.fiber_size()) throw InputError("set does not match the product size");
    return good_on_view(view, mu.flatten(I), A, eps);
}

DescentPartition good_descent_partition(const Hypergraph& h, const ProductMeasure& mu, std::size_t part,
                                        const Rational& eps, std::size_t depth_cap, std::optional<std::size_t> d_hat)
{
    mu.check_against(h);
    if (eps <= 0 || eps >= 1) throw InputError("epsilon must lie in (0,1)");
    return descent(h, mu, part, eps, depth_cap, resolve_d_hat(h, eps, depth_cap, d_hat));
}

StablePartition stable_regular_partition(const Hypergraph& h, const ProductMeasure& mu, const Rational& eps,
                                         std::size_t depth_cap, std::size_t rounds, std::optional<std::size_t> d_hat)
{
    mu.check_against(h);
    if (eps <= 0 || eps >= 1) throw InputError("epsilon must lie in (0,1)");
    const std::size_t k = h.k();
    DHat d = resolve_d_hat(h, eps, depth_cap, d_hat);
    StablePartition sp;
    sp.eps_inner = eps / Rational(pow2(k + 1));
    sp.rounds_cap = rounds ? rounds : 2 * k;
    sp.d_hat = d.value;
    sp.precondition_met = eps < Rational(1, pow2(d.value));

    std::vector<std::vector<Bitset>> parts;
    for (std::size_t n = 0; n < k; ++n) {
        sp.descents.push_back(descent(h, mu, n, sp.eps_inner, depth_cap, d));
        parts.push_back(sp.descents.back().classes);
        sp.full_parameter_set = sp.full_parameter_set || sp.descents.back().best_fit_used;
    }

    const Rational& e0 = sp.eps_inner;
    for (std::size_t round = 0; round < sp.rounds_cap; ++round) {
        bool changed = false;
        for (std::size_t n = 0; n < k; ++n) {
            const BinaryView& view = h.coordinate_view(n);
            const IndexSet others = complement({n}, k);
            Measure mu_other = mu.flatten(others);
            std::vector<Bitset> duals;
            for (std::size_t a = 0; a < h.part_sizes()[n]; ++a) duals.push_back(view.dual(a));

            std::vector<std::size_t> counts;
            for (auto o : others) counts.push_back(parts[o].size());
            Shape combos(counts);
            for (std::size_t x = 0; x < combos.total(); ++x) {
                Box b;
                for (std::size_t i = 0; i < others.size(); ++i) b.sides.push_back(parts[others[i]][combos.coord(x, i)]);
                Bitset bset(view.num_params());
                for_each_in_box(view.param_shape(), b, [&](std::size_t idx) { bset.set(idx); });
                const Integer mb = mu_other.scaled_mass(bset);
                if (mb == 0) continue;
                const Integer lo = e0.get_num() * mb;
                const Integer hi = (e0.get_den() - e0.get_num()) * mb;

                std::vector<Bitset> next;
                for (const auto& G : parts[n]) {
                    const std::size_t sz = G.size();
                    Bitset low(sz), high(sz), mid(sz);
                    G.for_each([&](std::size_t a) {
                        Integer m = mu_other.scaled_mass(duals[a] & bset) * e0.get_den();
                        (m < lo ? low : m > hi ? high : mid).set(a);
                    });
                    const Integer ml = mu.part(n).scaled_mass(low), mh = mu.part(n).scaled_mass(high),
                                  mm = mu.part(n).scaled_mass(mid), mg = mu.part(n).scaled_mass(G);
                    const int positive = (ml > 0) + (mh > 0) + (mm > 0);
                    const Integer floor = e0.get_num() * mg;   // e0 mu(G), scaled by e0 den
                    const bool not_excellent =
                        ml * e0.get_den() >= floor && mh * e0.get_den() >= floor;
                    if (positive < 2 || !(not_excellent || mm > 0)) {
                        next.push_back(G);
                        continue;
                    }
                    std::vector<std::pair<Integer, Bitset>> groups{{ml, low}, {mh, high}, {mm, mid}};
                    std::sort(groups.begin(), groups.end(),
                              [](const auto& a, const auto& b) { return a.first > b.first; });
                    for (auto& [m, g] : groups) {
                        if (m > 0)
                            next.push_back(g);
                        else if (g.any())
                            next[next.size() - 1] |= g;  // null group joins the last positive piece
                    }
                    ++sp.splits;
                    changed = true;
                }
                parts[n] = std::move(next);
            }
            std::sort(parts[n].begin(), parts[n].end(),
                      [](const Bitset& a, const Bitset& b) { return a.first() < b.first(); });
        }
        ++sp.rounds_used;
        if (!changed) break;
    }
    if (sp.splits > 0) sp.full_parameter_set = true;

    RegularPartition& p = sp.partition;
    p.eps = eps;
    p.parts = parts;
    p.sigma_mass = 0;
    for (std::size_t n = 0; n < k; ++n)
        p.params.push_back(sp.full_parameter_set ? all_params(h.coordinate_view(n)) : sp.descents[n].witnesses);

    BoxMasses bm = box_masses(h, mu, parts);
    p.labels.assign(bm.shape.total(), -1);
    for (std::size_t x = 0; x < bm.shape.total(); ++x) {
        const Integer& m = bm.mass[x];
        if (m == 0) continue;
        const Integer lim = eps.get_num() * m;
        if ((m - bm.edge[x]) * eps.get_den() < lim)
            p.labels[x] = 1;
        else if (bm.edge[x] * eps.get_den() < lim)
            p.labels[x] = 0;
        else {
            Tuple t = bm.shape.tuple(x);
            std::string s;
            for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
            Rational dens(bm.edge[x], m);
            dens.canonicalize();
            throw VerificationError("excellence surrogate insufficient: box (" + s + ") has density " +
                                    to_string(dens) + " after " + std::to_string(sp.rounds_used) + " rounds");
        }
    }
    return sp;
}

ProductGoodness product_goodness_check(const Hypergraph& h, const ProductMeasure& mu, std::size_t n,
                                       const std::vector<Bitset>& B, const Bitset& A, const Rational& eps)
{
    mu.check_against(h);
    const std::size_t k = h.k();
    if (n < 1 || n >= k) throw InputError("A must sit on a coordinate n with 1 <= n < k");
    if (B.size() != n) throw InputError("B must have one side per coordinate before n");
    for (std::size_t c = 0; c < n; ++c)
        if (B[c].size() != h.part_sizes()[c]) throw InputError("side of B does not match its part");
    if (A.size() != h.part_sizes()[n]) throw InputError("A does not match its part");

    ProductGoodness out;
    const IndexSet upto_n = all_coords(n + 1);
    BinaryView view = h.relation().view(upto_n);
    Measure mu_f = mu.flatten(upto_n);
    Box box{B};
    box.sides.push_back(A);
    Bitset S(view.fiber_size());
    for_each_in_box(view.fiber_shape(), box, [&](std::size_t idx) { S.set(idx); });
    const Integer ms = mu_f.scaled_mass(S);
    if (ms == 0) throw ZeroMeasureError("B x A has measure zero");
    const Rational two = 2 * eps;
    Integer best_gap;
    for (std::size_t c = 0; c < view.num_params(); ++c) {
        Rational d(mu_f.scaled_mass(S & view.fiber(c)), ms);
        d.canonicalize();
        if (d > two && d < 1 - two) {
            Integer gap = abs(Integer(2 * d.get_num() - d.get_den())) * ms / d.get_den();
            if (out.holds || gap < best_gap) {
                best_gap = gap;
                out.worst = view.param_shape().tuple(c);
                out.worst_density = d;
            }
            out.holds = false;
        }
    }

    // Goodness of B inside V_{[n-1]} and the split of A against B.
    const IndexSet before = all_coords(n);
    BinaryView bview = h.relation().view(before);
    Measure mu_b = mu.flatten(before);
    Bitset bset(bview.fiber_size());
    for_each_in_box(bview.fiber_shape(), Box{B}, [&](std::size_t idx) { bset.set(idx); });
    const Integer mb = mu_b.scaled_mass(bset);
    if (mb == 0) throw ZeroMeasureError("B has measure zero");
    out.b_good = good_on_view(bview, mu_b, bset, eps).good;

    const std::size_t tail = bview.num_params() / h.part_sizes()[n];  // params are (a, c), a most significant
    const Integer ma = mu.part(n).scaled_mass(A);
    out.a_splits = ma > 0;
    const Integer lo = eps.get_num() * mb, hi = (eps.get_den() - eps.get_num()) * mb;
    for (std::size_t c = 0; out.a_splits && c < tail; ++c) {
        Bitset a0(A.size()), a1(A.size());
        bool total = true;
        A.for_each([&](std::size_t a) {
            Integer m = mu_b.scaled_mass(bview.fiber(a * tail + c) & bset) * eps.get_den();
            if (m < lo)
                a0.set(a);
            else if (m > hi)
                a1.set(a);
            else
                total = false;
        });
        const Integer cap = eps.get_num() * ma;
        out.a_splits = total && (mu.part(n).scaled_mass(a0) * eps.get_den() < cap ||
                                 mu.part(n).scaled_mass(a1) * eps.get_den() < cap);
    }
    return out;
}

}  // namespace vcreg
