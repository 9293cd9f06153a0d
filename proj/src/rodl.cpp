#include "vcreg/rodl.hpp"

#include "vcreg/atoms.hpp"
#include "vcreg/errors.hpp"
#include "vcreg/rng.hpp"

#include <algorithm>

namespace vcreg {

namespace {

// Visits every sorted tuple of distinct elements of {0..n-1} with size <= m.
template <class F>
void for_each_combination(std::size_t n, std::size_t m, F&& f)
{
    std::vector<std::size_t> c;
    f(c);
    for (std::size_t j = 1; j <= std::min(m, n); ++j) {
        c.resize(j);
        for (std::size_t i = 0; i < j; ++i) c[i] = i;
        while (true) {
            f(c);
            std::size_t i = j;
            while (i > 0 && c[i - 1] == n - j + i - 1) --i;
            if (i == 0) break;
            ++c[i - 1];
            for (std::size_t x = i; x < j; ++x) c[x] = c[x - 1] + 1;
        }
    }
}

Integer combination_count(std::size_t n, std::size_t m)
{
    Integer t = 0;
    for (std::size_t j = 0; j <= std::min(m, n); ++j) t += binomial(n, j);
    return t;
}

Rational distance_to_ends(const Rational& d) { return std::min(d, Rational(1 - d)); }

}  // namespace

HomogeneousSearch definable_homogeneous_search(const Hypergraph& h, const ProductMeasure& mu, const Rational& eps,
                                               std::size_t m, std::uint64_t budget, std::uint64_t seed)
{
    mu.check_against(h);
    if (h.k() != 2 || h.part_sizes()[0] != h.part_sizes()[1] || !(mu.part(0).weights() == mu.part(1).weights()))
        throw InputError("search needs a binary relation on one vertex set with one measure");
    if (eps <= 0 || eps >= Rational(1, 2)) throw InputError("epsilon must lie in (0,1/2)");
    if (m > 4) throw InputError("complexity cap above 4 is not supported");
    const std::size_t n = h.part_sizes()[0];
    const Measure& w = mu.part(0);
    const BinaryView& rows = h.coordinate_view(1);    // rows.fiber(a) = {b : E(a,b)}
    const BinaryView& cols = h.coordinate_view(0);    // cols.fiber(b) = R_b

    HomogeneousSearch r;
    r.budget = budget;
    r.closest = 1;
    Integer best_mass = -1;

    auto examine = [&](const std::vector<std::size_t>& params) {
        ++r.tuples;
        std::vector<Bitset> gens;
        for (auto b : params) gens.push_back(cols.fiber(b));
        std::vector<Bitset> cells;
        std::vector<Integer> cm;
        for (auto& a : atoms(n, gens)) {
            Integer x = w.scaled_mass(a);
            if (x == 0) continue;
            cells.push_back(std::move(a));
            cm.push_back(std::move(x));
        }
        const std::size_t t = cells.size();
        std::vector<Integer> M(t * t);   // scaled by den^2
        for (std::size_t i = 0; i < t; ++i)
            cells[i].for_each([&](std::size_t a) {
                for (std::size_t j = 0; j < t; ++j) M[i * t + j] += w.numerator(a) * w.scaled_mass(rows.fiber(a) & cells[j]);
            });
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << t); ++mask) {
            ++r.sets;
            Integer mass = 0, edge = 0;
            for (std::size_t i = 0; i < t; ++i) {
                if (!(mask >> i & 1)) continue;
                mass += cm[i];
                for (std::size_t j = 0; j < t; ++j)
                    if (mask >> j & 1) edge += M[i * t + j];
            }
            Rational d(edge, mass * mass);
            d.canonicalize();
            Rational dist = distance_to_ends(d);
            auto assemble = [&] {
                Bitset s(n);
                for (std::size_t i = 0; i < t; ++i)
                    if (mask >> i & 1) s |= cells[i];
                return s;
            };
            if (dist < r.closest) {
                r.closest = dist;
                r.closest_set = assemble();
            }
            if (dist > eps || mass < best_mass) continue;
            Bitset s = assemble();
            if (mass == best_mass && !lex_less(s, r.set)) continue;
            best_mass = mass;
            r.found = true;
            r.set = std::move(s);
            r.params = params;
            r.density = d;
        }
    };

    if (combination_count(n, m) <= budget) {
        for_each_combination(n, m, examine);
    } else {
        r.sampled = true;
        Rng rng(seed);
        for (std::uint64_t i = 0; i < budget; ++i) {
            std::vector<std::size_t> p;
            for (std::size_t j = 0; j < m; ++j) p.push_back(rng.below(n));
            std::sort(p.begin(), p.end());
            p.erase(std::unique(p.begin(), p.end()), p.end());
            examine(p);
        }
    }
    if (r.found) r.mass = Rational(best_mass, w.denominator());
    r.mass.canonicalize();
    return r;
}

BallSearch dyadic_ball_search(std::size_t L, const Rational& eps, std::size_t min_co_depth, bool flip)
{
    if (eps <= 0 || eps >= Rational(1, 2)) throw InputError("epsilon must lie in (0,1/2)");
    if (min_co_depth < 1 || L < min_co_depth) throw InputError("depth is below the minimal co-depth");
    BallSearch r;
    r.closest = 1;
    for (std::size_t l = 0; l + min_co_depth <= L; ++l) {
        DyadicBall b{std::string(l, '0')};
        BallRow row{l, odd_split_density({b}, L, flip), 0};
        row.distance = distance_to_ends(row.density);
        if (row.distance < r.closest) {
            r.closest = row.distance;
            r.closest_ball = b;
        }
        if (!r.found && row.distance <= eps) {
            r.found = true;
            r.ball = b;
        }
        r.rows.push_back(std::move(row));
    }
    return r;
}

}  // namespace vcreg
