#include "isem/rational.hpp"

namespace isem {

Rational pow2(long k)
{
    Rational r;
    mpz_class one = 1;
    if (k >= 0) {
        mpz_mul_2exp(one.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
        r = one;
    } else {
        mpz_class den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
        r = Rational(one, den);
    }
    return r;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

bool is_dyadic(const Rational& q)
{
    const mpz_class& d = q.get_den();
    return mpz_popcount(d.get_mpz_t()) == 1;
}

} // namespace isem
