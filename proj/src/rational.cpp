#include "vcreg/rational.hpp"

#include "vcreg/errors.hpp"

#include <cctype>

namespace vcreg {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip_plus(std::string_view s)
{
    return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-')
        throw InputError("not a rational of the form num/den: '" + std::string(text) + "'");
    Integer n(strip_plus(num));
    Integer d(strip_plus(den));
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer pow2(unsigned long e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

Rational pow(const Rational& base, unsigned long e)
{
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

Integer sauer_bound(unsigned long n, unsigned long d)
{
    Integer s = 0;
    for (unsigned long i = 0; i <= d && i <= n; ++i) s += binomial(n, i);
    return s;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational ratio(const Integer& n, const Integer& d)
{
    if (d == 0) throw InputError("zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace vcreg
