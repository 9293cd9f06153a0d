#include "vcreg/dyadic.hpp"

#include "vcreg/errors.hpp"

#include <algorithm>
#include <bit>

namespace vcreg {

namespace {

void validate(const std::vector<DyadicBall>& balls, std::size_t L)
{
    if (balls.empty()) throw InputError("no balls given");
    for (std::size_t i = 0; i < balls.size(); ++i) {
        if (balls[i].length() > L) throw InputError("prefix " + balls[i].prefix + " is longer than the depth");
        for (std::size_t j = 0; j < i; ++j) {
            const auto& a = balls[i].prefix;
            const auto& b = balls[j].prefix;
            const auto n = std::min(a.size(), b.size());
            if (a.compare(0, n, b, 0, n) == 0) throw InputError("balls " + a + " and " + b + " overlap");
        }
    }
}

bool is_edge(std::size_t v, bool flip) { return (v % 2 == 1) != flip; }

Integer leaf_count(const std::vector<DyadicBall>& balls, std::size_t L)
{
    Integer n = 0;
    for (const auto& b : balls) n += pow2(L - b.length());
    return n;
}

}  // namespace

DyadicBall parse_ball(const std::string& bits)
{
    if (bits.find_first_not_of("01") != std::string::npos) throw InputError("prefix must be a bit string: " + bits);
    return DyadicBall{bits};
}

Integer odd_split_edges(const std::vector<DyadicBall>& balls, std::size_t L, bool flip)
{
    validate(balls, L);
    Integer e = 0;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        const std::size_t l = balls[i].length();
        // a node at depth m splits 2 * (2^{L-m-1})^2 ordered pairs; there are 2^{m-l} such nodes
        for (std::size_t m = l; m < L; ++m)
            if (is_edge(m, flip)) e += pow2(m - l) * 2 * pow2(2 * (L - m - 1));
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            const auto& a = balls[i].prefix;
            const auto& b = balls[j].prefix;
            const std::size_t v = std::mismatch(a.begin(), a.begin() + std::min(a.size(), b.size()), b.begin()).first -
                                  a.begin();
            if (is_edge(v, flip)) e += 2 * pow2(L - a.size()) * pow2(L - b.size());
        }
    }
    return e;
}

Rational odd_split_density(const std::vector<DyadicBall>& balls, std::size_t L, bool flip)
{
    Integer e = odd_split_edges(balls, L, flip);
    Integer n = leaf_count(balls, L);
    if (n < 2) throw InputError("the union has fewer than two leaves");
    Rational d(e, n * (n - 1));
    d.canonicalize();
    return d;
}

Rational odd_split_density_enumerated(const std::vector<DyadicBall>& balls, std::size_t L, bool flip)
{
    if (L > 16) throw InputError("enumeration is limited to depth 16");
    validate(balls, L);
    std::vector<std::uint32_t> leaves;
    for (const auto& b : balls) {
        std::uint32_t base = 0;
        for (char c : b.prefix) base = (base << 1) | static_cast<std::uint32_t>(c == '1');
        const std::size_t h = L - b.length();
        for (std::uint32_t t = 0; t < (1u << h); ++t) leaves.push_back((base << h) | t);
    }
    if (leaves.size() < 2) throw InputError("the union has fewer than two leaves");
    std::uint64_t e = 0;
    for (auto x : leaves)
        for (auto y : leaves)
            if (x != y && is_edge(L - static_cast<std::size_t>(std::bit_width(x ^ y)), flip)) ++e;
    const std::uint64_t n = leaves.size();
    Rational d(Integer(e), Integer(n) * Integer(n - 1));
    d.canonicalize();
    return d;
}

std::vector<ParityRow> ball_parity_report(std::size_t L, bool flip)
{
    if (L < 2) throw InputError("depth must be at least 2");
    std::vector<ParityRow> rows;
    for (std::size_t l = 0; l < L; ++l) {
        ParityRow r;
        r.prefix_length = l;
        r.co_depth = L - l;
        r.density = odd_split_density({DyadicBall{std::string(l, '0')}}, L, flip);
        r.limit = (l % 2 == 0) != flip ? Rational(1, 3) : Rational(2, 3);
        r.deviation = abs(r.density - r.limit);
        r.allowed = r.co_depth % 2 == 0 ? Rational(0) : Rational(Integer(1), 3 * (pow2(r.co_depth) - 1));
        r.allowed.canonicalize();
        r.ok = r.deviation <= r.allowed;
        rows.push_back(std::move(r));
    }
    return rows;
}

AntiHomogeneity anti_homogeneity_bound_check(const std::vector<DyadicBall>& A, const DyadicBall& B, std::size_t L)
{
    if (std::find(A.begin(), A.end(), B) == A.end()) throw InputError("ball " + B.prefix + " is not one of A's balls");
    AntiHomogeneity r;
    const Integer e = odd_split_edges(A, L, false);
    const Integer n = leaf_count(A, L);
    const Integer total = pow2(L);
    r.mass = Rational(n, total);
    r.mass.canonicalize();
    r.pair_mass = Rational(e, total * total);
    r.pair_mass.canonicalize();
    r.density = n >= 2 ? Rational(e, n * (n - 1)) : Rational(0);
    r.density.canonicalize();
    const std::size_t h = L - B.length();
    r.gamma = Rational(pow2(h), n);
    r.gamma.canonicalize();
    const Rational g2 = r.gamma * r.gamma;
    r.slack = h == 0 ? Rational(0) : g2 / Rational(3 * (pow2(h) - 1));
    r.bound = (1 - g2 / 3 + r.slack) * r.mass * r.mass;
    r.holds = r.pair_mass <= r.bound;
    return r;
}

BallUnion random_ball_union(Rng& rng, std::size_t L)
{
    if (L < 1) throw InputError("depth must be at least 1");
    std::vector<DyadicBall> cells;
    std::vector<std::string> stack{""};
    while (!stack.empty()) {
        std::string p = std::move(stack.back());
        stack.pop_back();
        if (p.size() == L || rng.below(3) == 0) {
            cells.push_back(DyadicBall{std::move(p)});
            continue;
        }
        stack.push_back(p + "1");
        stack.push_back(p + "0");
    }
    BallUnion u;
    for (auto& c : cells)
        if (rng.coin()) u.balls.push_back(c);
    if (u.balls.empty()) u.balls.push_back(cells[rng.below(cells.size())]);
    u.chosen = u.balls[rng.below(u.balls.size())];
    return u;
}

}  // namespace vcreg
