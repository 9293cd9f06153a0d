#include "vcreg/rng.hpp"

#include "vcreg/errors.hpp"

namespace vcreg {

std::uint64_t Rng::below(std::uint64_t n)
{
    if (n == 0) throw InputError("empty sampling range");
    // Largest multiple of n that fits; draws above it are rejected.
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % n;
}

Integer Rng::below(const Integer& n)
{
    if (n <= 0) throw InputError("empty sampling range");
    if (n.fits_ulong_p()) return Integer(static_cast<unsigned long>(below(std::uint64_t{n.get_ui()})));
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    Integer x;
    do {
        x = 0;
        std::size_t got = 0;
        while (got < bits) {
            std::size_t take = std::min<std::size_t>(64, bits - got);
            std::uint64_t w = next() >> (64 - take);
            x <<= static_cast<mp_bitcnt_t>(take);
            x += Integer(static_cast<unsigned long>(w));
            got += take;
        }
    } while (x >= n);
    return x;
}

}  // namespace vcreg
