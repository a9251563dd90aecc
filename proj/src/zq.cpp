#include "zq.hpp"

#include <cstdlib>
#include <sstream>

namespace bassmonoid {

static mpz_class pow_ui(mpz_class const & b, unsigned long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

padic_ctx::padic_ctx(mpz_class p_, unsigned long prec_, unsigned dk_)
    : p(std::move(p_)), prec(prec_), dk(dk_)
{
    BM_REQUIRE(prec >= 3, "padic context needs precision >= 3");
    BM_REQUIRE(dk >= 1, "padic context needs dk >= 1");
    pN = pow_ui(p, prec);
    h = make_unramified(p, dk);
}

mpz_class padic_ctx::q() const
{
    return pow_ui(p, dk);
}

/* --- F_p[y] helpers used only to construct the tower polynomial --- */

static std::vector<mpz_class> fp_poly_mulmod(std::vector<mpz_class> const & a,
                                             std::vector<mpz_class> const & b,
                                             std::vector<mpz_class> const & f,
                                             mpz_class const & p)
{
    /* f monic (implicit leading 1 of degree f.size()) given by its low
     * coefficients; reduce a*b mod f mod p */
    unsigned const d = unsigned(f.size());
    std::vector<mpz_class> prod(2 * d, 0);
    for (unsigned i = 0; i < d; i++)
        for (unsigned j = 0; j < d; j++)
            prod[i + j] += a[i] * b[j];
    for (unsigned ii = 2 * d; ii-- > d;) {
        mpz_class c = prod[ii] % p;
        if (c != 0)
            for (unsigned j = 0; j < d; j++)
                prod[ii - d + j] -= c * f[j];
        prod[ii] = 0;
    }
    std::vector<mpz_class> r(d);
    for (unsigned i = 0; i < d; i++)
        mpz_fdiv_r(r[i].get_mpz_t(), prod[i].get_mpz_t(), p.get_mpz_t());
    return r;
}

static std::vector<mpz_class> fp_poly_y_powmod(std::vector<mpz_class> const & f,
                                               mpz_class const & p, mpz_class e)
{
    /* y^e mod f mod p */
    unsigned const d = unsigned(f.size());
    std::vector<mpz_class> r(d, 0), b(d, 0);
    r[0] = 1;
    if (d == 1) {
        /* y == -f[0] mod f */
        mpz_class base = (p - f[0] % p) % p;
        mpz_class acc;
        mpz_powm(acc.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        r[0] = acc;
        return r;
    }
    b[1] = 1;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = fp_poly_mulmod(r, b, f, p);
        b = fp_poly_mulmod(b, b, f, p);
        e >>= 1;
    }
    return r;
}

static bool fp_poly_is_irreducible(std::vector<mpz_class> const & f, mpz_class const & p)
{
    unsigned const d = unsigned(f.size());
    /* y^(p^d) == y mod f, and y^(p^(d/l)) != y for prime l | d */
    auto ypow = fp_poly_y_powmod(f, p, pow_ui(p, d));
    std::vector<mpz_class> y(d, 0);
    if (d == 1) {
        /* any monic linear polynomial is irreducible */
        return true;
    }
    y[1] = 1;
    if (ypow != y)
        return false;
    for (unsigned l = 2; l <= d; l++) {
        if (d % l != 0)
            continue;
        bool lprime = true;
        for (unsigned t = 2; t * t <= l; t++)
            if (l % t == 0)
                lprime = false;
        if (!lprime)
            continue;
        if (fp_poly_y_powmod(f, p, pow_ui(p, d / l)) == y)
            return false;
    }
    return true;
}

std::vector<mpz_class> make_unramified(mpz_class const & p, unsigned d)
{
    BM_REQUIRE(d >= 1, "make_unramified: d >= 1");
    if (d == 1)
        return {0}; /* the polynomial y */
    /* scan coefficient vectors (c_{d-1}, ..., c_0) in ascending base-p
     * value; the first irreducible wins */
    mpz_class total = pow_ui(p, d);
    for (mpz_class v = 0; v < total; v++) {
        std::vector<mpz_class> f(d);
        mpz_class t = v;
        /* v's base-p digits, least significant digit = c_0 */
        for (unsigned i = 0; i < d; i++) {
            f[i] = t % p;
            t /= p;
        }
        if (fp_poly_is_irreducible(f, p))
            return f;
    }
    throw internal_error("make_unramified: no irreducible polynomial found");
}

zq zq_zero(padic_ctx const & c)
{
    return zq(c.dk, 0);
}

zq zq_one(padic_ctx const & c)
{
    zq r(c.dk, 0);
    r[0] = 1;
    return r;
}

zq zq_from_mpz(padic_ctx const & c, mpz_class const & a)
{
    zq r(c.dk, 0);
    mpz_fdiv_r(r[0].get_mpz_t(), a.get_mpz_t(), c.pN.get_mpz_t());
    return r;
}

zq zq_neg(padic_ctx const & c, zq const & a)
{
    zq r(c.dk);
    for (unsigned i = 0; i < c.dk; i++)
        r[i] = a[i] == 0 ? mpz_class(0) : mpz_class(c.pN - a[i]);
    return r;
}

zq zq_add(padic_ctx const & c, zq const & a, zq const & b)
{
    zq r(c.dk);
    for (unsigned i = 0; i < c.dk; i++) {
        r[i] = a[i] + b[i];
        if (r[i] >= c.pN)
            r[i] -= c.pN;
    }
    return r;
}

zq zq_sub(padic_ctx const & c, zq const & a, zq const & b)
{
    zq r(c.dk);
    for (unsigned i = 0; i < c.dk; i++) {
        r[i] = a[i] - b[i];
        if (r[i] < 0)
            r[i] += c.pN;
    }
    return r;
}

zq zq_mul(padic_ctx const & c, zq const & a, zq const & b)
{
    unsigned const d = c.dk;
    if (d == 1) {
        zq r(1);
        r[0] = a[0] * b[0] % c.pN;
        return r;
    }
    std::vector<mpz_class> prod(2 * d, 0);
    for (unsigned i = 0; i < d; i++) {
        if (a[i] == 0)
            continue;
        for (unsigned j = 0; j < d; j++)
            if (b[j] != 0)
                prod[i + j] += a[i] * b[j];
    }
    for (unsigned ii = 2 * d; ii-- > d;) {
        mpz_class const cdeg = prod[ii] % c.pN;
        if (cdeg != 0)
            for (unsigned j = 0; j < d; j++)
                prod[ii - d + j] -= cdeg * c.h[j];
        prod[ii] = 0;
    }
    zq r(d);
    for (unsigned i = 0; i < d; i++)
        mpz_fdiv_r(r[i].get_mpz_t(), prod[i].get_mpz_t(), c.pN.get_mpz_t());
    return r;
}

bool zq_is_zero(zq const & a)
{
    for (auto const & e : a)
        if (e != 0)
            return false;
    return true;
}

unsigned long zq_val(padic_ctx const & c, zq const & a)
{
    unsigned long best = c.prec;
    mpz_class scratch;
    for (auto const & e : a) {
        if (e == 0)
            continue;
        unsigned long const v =
            mpz_remove(scratch.get_mpz_t(), e.get_mpz_t(), c.p.get_mpz_t());
        if (v < best)
            best = v;
        if (best == 0)
            break;
    }
    return best;
}

bool zq_is_unit(padic_ctx const & c, zq const & a)
{
    return zq_val(c, a) == 0;
}

zq zq_inv(padic_ctx const & c, zq const & a)
{
    BM_REQUIRE(zq_is_unit(c, a), "zq_inv of non-unit");
    /* invert mod p by Fermat in F_q, then Newton-lift: z <- z(2 - a z) */
    fq a0 = zq_to_fq(c, a);
    fq z0 = fq_inv(c, a0);
    zq z = fq_lift(c, z0);
    zq two = zq_from_mpz(c, 2);
    for (unsigned long k = 1; k < c.prec; k *= 2)
        z = zq_mul(c, z, zq_sub(c, two, zq_mul(c, a, z)));
    return z;
}

zq zq_shift_down(padic_ctx const & c, zq const & a, unsigned long k)
{
    BM_REQUIRE(zq_val(c, a) >= k, "zq_shift_down: valuation too small");
    mpz_class pk = 1;
    for (unsigned long i = 0; i < k; i++)
        pk *= c.p;
    zq r(c.dk);
    for (unsigned i = 0; i < c.dk; i++)
        mpz_divexact(r[i].get_mpz_t(), a[i].get_mpz_t(), pk.get_mpz_t());
    return r;
}

fq zq_to_fq(padic_ctx const & c, zq const & a)
{
    fq r(c.dk);
    for (unsigned i = 0; i < c.dk; i++)
        mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), c.p.get_mpz_t());
    return r;
}

zq fq_lift(padic_ctx const & c, fq const & a)
{
    return a;
}

fq fq_add(padic_ctx const & c, fq const & a, fq const & b)
{
    fq r(c.dk);
    for (unsigned i = 0; i < c.dk; i++) {
        r[i] = a[i] + b[i];
        if (r[i] >= c.p)
            r[i] -= c.p;
    }
    return r;
}

fq fq_sub(padic_ctx const & c, fq const & a, fq const & b)
{
    fq r(c.dk);
    for (unsigned i = 0; i < c.dk; i++) {
        r[i] = a[i] - b[i];
        if (r[i] < 0)
            r[i] += c.p;
    }
    return r;
}

fq fq_mul(padic_ctx const & c, fq const & a, fq const & b)
{
    if (c.dk == 1)
        return {a[0] * b[0] % c.p};
    return fp_poly_mulmod(a, b, c.h, c.p);
}

fq fq_pow(padic_ctx const & c, fq const & a, mpz_class e)
{
    fq r(c.dk, 0);
    r[0] = 1;
    fq b = a;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = fq_mul(c, r, b);
        b = fq_mul(c, b, b);
        e >>= 1;
    }
    return r;
}

fq fq_inv(padic_ctx const & c, fq const & a)
{
    BM_REQUIRE(!fq_is_zero(a), "fq_inv of zero");
    return fq_pow(c, a, c.q() - 2);
}

bool fq_is_zero(fq const & a)
{
    for (auto const & e : a)
        if (e != 0)
            return false;
    return true;
}

mpz_class fq_encode(padic_ctx const & c, fq const & a)
{
    mpz_class v = 0;
    for (unsigned i = c.dk; i-- > 0;)
        v = v * c.p + a[i];
    return v;
}

fq fq_decode(padic_ctx const & c, mpz_class v)
{
    fq r(c.dk);
    for (unsigned i = 0; i < c.dk; i++) {
        r[i] = v % c.p;
        v /= c.p;
    }
    return r;
}

std::string zq_to_string(padic_ctx const & c, zq const & a)
{
    if (c.dk == 1)
        return a[0].get_str();
    std::ostringstream os;
    os << "[";
    for (unsigned i = 0; i < c.dk; i++)
        os << (i ? "," : "") << a[i].get_str();
    os << "]";
    return os.str();
}

unsigned long precision_cap()
{
    if (char const * env = std::getenv("BASSMONOID_PRECISION_CAP")) {
        char * end = nullptr;
        unsigned long const v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 4)
            return v;
    }
    return 1ul << 16;
}

} // namespace bassmonoid
