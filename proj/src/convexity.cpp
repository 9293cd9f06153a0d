#include "vcreg/convexity.hpp"

#include "vcreg/errors.hpp"

#include <charconv>

namespace vcreg {

namespace {

void validate(std::int64_t N, const IntegerInterval& C)
{
    if (N < 1) throw InputError("N must be positive");
    if (C.lo < 1 || C.hi > N || C.lo > C.hi) throw InputError("interval must be a nonempty part of 1..N");
    if (C.size() < 3) throw InputError("interval needs at least three points");
}

std::int64_t parse_int(std::string_view s)
{
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw InputError("not an integer: " + std::string(s));
    return v;
}

}  // namespace

IntegerInterval parse_interval(const std::string& text, std::int64_t N)
{
    std::string_view s = text;
    std::size_t sep = s.find("..");
    std::size_t skip = 2;
    if (sep == std::string_view::npos) {
        sep = s.find(':');
        skip = 1;
    }
    if (sep == std::string_view::npos) throw InputError("interval must look like lo..hi");
    IntegerInterval c{parse_int(s.substr(0, sep)), parse_int(s.substr(sep + skip))};
    if (c.lo < 1 || c.hi > N || c.lo > c.hi) throw InputError("interval must be a nonempty part of 1..N");
    return c;
}

bool convexity_edge(std::int64_t x1, std::int64_t x2, std::int64_t x3)
{
    return x1 < x2 && x2 < x3 && x1 + x3 - 2 * x2 >= 0;
}

Rational convexity_density(std::int64_t N, const IntegerInterval& C)
{
    validate(N, C);
    const std::int64_t n = C.size();
    // (x1, x3) at gap g has floor(g/2) middle points on the convex side
    Integer e = 0;
    for (std::int64_t g = 2; g < n; ++g) e += Integer(n - g) * (g / 2);
    Rational d(e, binomial(static_cast<unsigned long>(n), 3));
    d.canonicalize();
    return d;
}

Rational convexity_density_enumerated(std::int64_t N, const IntegerInterval& C)
{
    validate(N, C);
    std::uint64_t e = 0, t = 0;
    for (auto a = C.lo; a <= C.hi; ++a)
        for (auto b = a + 1; b <= C.hi; ++b)
            for (auto c = b + 1; c <= C.hi; ++c) {
                ++t;
                e += convexity_edge(a, b, c);
            }
    Rational d{Integer(e), Integer(t)};
    d.canonicalize();
    return d;
}

Integer arithmetic_progressions(const IntegerInterval& C)
{
    const std::int64_t n = C.size();
    if (n < 3) return 0;
    // floor((n-1)^2 / 4)
    return Integer((n - 1) * (n - 1) / 4);
}

Triple reflect(const IntegerInterval& C, const Triple& t)
{
    const auto q = [&](std::int64_t x) { return C.lo + C.hi - x; };
    return {q(t[2]), q(t[1]), q(t[0])};
}

InvolutionReport reflection_involution_check(const IntegerInterval& C)
{
    if (C.size() < 3) throw InputError("interval needs at least three points");
    InvolutionReport r;
    auto fail = [&](const Triple& t) {
        r.holds = false;
        if (!r.failure) r.failure = t;
    };
    for (auto a = C.lo; a <= C.hi; ++a)
        for (auto b = a + 1; b <= C.hi; ++b)
            for (auto c = b + 1; c <= C.hi; ++c) {
                ++r.triples;
                const Triple t{a, b, c};
                const Triple u = reflect(C, t);
                if (!(C.lo <= u[0] && u[0] < u[1] && u[1] < u[2] && u[2] <= C.hi) || reflect(C, u) != t) {
                    fail(t);
                    continue;
                }
                const auto s = a + c - 2 * b;
                const auto su = u[0] + u[2] - 2 * u[1];
                if (s > 0) {
                    ++r.strict_edges;
                    if (convexity_edge(u[0], u[1], u[2])) fail(t);
                } else if (s == 0) {
                    if (su != 0) fail(t);
                    else ++r.fixed_progressions;
                } else if (su <= 0) {
                    fail(t);
                }
            }
    return r;
}

}  // namespace vcreg
