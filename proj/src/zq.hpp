#ifndef BASSMONOID_ZQ_HPP_
#define BASSMONOID_ZQ_HPP_
#include <algorithm>

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"

namespace bassmonoid {

/* Working coefficient ring o = Z_p[y]/(h(y)) at precision p^N, the ring of
 * integers of the unramified extension of Q_p of degree dk. dk == 1 (h = y)
 * is plain Z_p. h is the deterministic defining polynomial from
 * make_unramified, so contexts are reproducible across runs.
 *
 * Elements ("zq") are coefficient vectors of length dk with entries in
 * [0, p^N). Residue-field elements ("fq") are the same with entries in
 * [0, p).
 */
struct padic_ctx {
    mpz_class p;
    unsigned long prec = 0; /* N */
    mpz_class pN;           /* p^N */
    unsigned dk = 1;
    std::vector<mpz_class> h; /* monic: y^dk + h[dk-1] y^(dk-1) + ... + h[0] */

    padic_ctx() = default;
    padic_ctx(mpz_class p_, unsigned long prec_, unsigned dk_);

    bool operator==(padic_ctx const & o) const
    {
        return p == o.p && prec == o.prec && dk == o.dk;
    }

    mpz_class q() const; /* p^dk */
    padic_ctx with_prec(unsigned long n2) const { return padic_ctx(p, n2, dk); }
};

using zq = std::vector<mpz_class>; /* length ctx.dk */
using fq = std::vector<mpz_class>; /* length ctx.dk, entries mod p */

/* spec op make_unramified: lexicographically smallest monic irreducible
 * polynomial of degree d over F_p (coefficients compared from the leading
 * one down, i.e. ascending base-p value), lifted into {0..p-1}. d = 1
 * gives y. */
std::vector<mpz_class> make_unramified(mpz_class const & p, unsigned d);

zq zq_zero(padic_ctx const & c);
zq zq_one(padic_ctx const & c);
zq zq_from_mpz(padic_ctx const & c, mpz_class const & a);
zq zq_neg(padic_ctx const & c, zq const & a);
zq zq_add(padic_ctx const & c, zq const & a, zq const & b);
zq zq_sub(padic_ctx const & c, zq const & a, zq const & b);
zq zq_mul(padic_ctx const & c, zq const & a, zq const & b);
bool zq_is_zero(zq const & a);

/* min p-valuation of the coefficients, capped at N (the cap means
 * "indistinguishable from zero at this precision") */
unsigned long zq_val(padic_ctx const & c, zq const & a);

bool zq_is_unit(padic_ctx const & c, zq const & a);
zq zq_inv(padic_ctx const & c, zq const & a); /* requires unit */

/* divide by p^k; element is then only correct mod p^(N-k), callers reduce
 * into the residue field or guard accordingly */
zq zq_shift_down(padic_ctx const & c, zq const & a, unsigned long k);

fq zq_to_fq(padic_ctx const & c, zq const & a);
zq fq_lift(padic_ctx const & c, fq const & a);

fq fq_add(padic_ctx const & c, fq const & a, fq const & b);
fq fq_sub(padic_ctx const & c, fq const & a, fq const & b);
fq fq_mul(padic_ctx const & c, fq const & a, fq const & b);
fq fq_pow(padic_ctx const & c, fq const & a, mpz_class e);
fq fq_inv(padic_ctx const & c, fq const & a);
bool fq_is_zero(fq const & a);

/* canonical integer encoding sum c_i p^i, used for deterministic ordering
 * and enumeration */
mpz_class fq_encode(padic_ctx const & c, fq const & a);
fq fq_decode(padic_ctx const & c, mpz_class v);

std::string zq_to_string(padic_ctx const & c, zq const & a);

/* Precision policy: start at n0 (at least 2 v_p(disc) + 4 for polynomial
 * input), double on precision_exhausted up to the cap, which is 2^16 by
 * default and overridable through BASSMONOID_PRECISION_CAP. */
unsigned long precision_cap();

template <typename F> auto with_precision_retry(unsigned long n0, F && f)
{
    unsigned long const cap = precision_cap();
    unsigned long n = std::max<unsigned long>(n0, 4);
    for (;;) {
        try {
            return f(n);
        } catch (precision_exhausted const &) {
            if (n >= cap)
                throw;
            n = std::min(2 * n, cap);
        }
    }
}

} // namespace bassmonoid

#endif /* BASSMONOID_ZQ_HPP_ */
