#ifndef BASSMONOID_LOCALPOLY_HPP_
#define BASSMONOID_LOCALPOLY_HPP_

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "zq.hpp"

namespace bassmonoid {

/* Polynomials over the working coefficient ring, coefficients ascending
 * (c[0] = constant term). Most entry points require monic input. */
struct local_poly {
    std::vector<zq> c;

    unsigned degree() const { return c.empty() ? 0 : unsigned(c.size() - 1); }
};

using fq_poly = std::vector<fq>; /* ascending, no leading zeros */

local_poly lp_from_integers(padic_ctx const & ctx, std::vector<mpz_class> const & ascending);
bool lp_is_monic(padic_ctx const & ctx, local_poly const & f);
local_poly lp_mul(padic_ctx const & ctx, local_poly const & a, local_poly const & b);
local_poly lp_sub(padic_ctx const & ctx, local_poly const & a, local_poly const & b);
/* divide by a monic divisor: returns quotient, stores remainder */
local_poly lp_divmod_monic(padic_ctx const & ctx, local_poly const & a, local_poly const & b,
                           local_poly & rem);
zq lp_eval(padic_ctx const & ctx, local_poly const & f, zq const & x);
local_poly lp_derivative(padic_ctx const & ctx, local_poly const & f);
/* f(x + a) */
local_poly lp_shift(padic_ctx const & ctx, local_poly const & f, zq const & a);
fq_poly lp_to_fq(padic_ctx const & ctx, local_poly const & f);

/* deterministic total order: degree, then canonical coefficient encodings
 * from the constant term up */
int lp_cmp(padic_ctx const & ctx, local_poly const & a, local_poly const & b);

std::string lp_to_string(padic_ctx const & ctx, local_poly const & f);

/* --- residue-field polynomial arithmetic --- */
unsigned fqp_degree(fq_poly const & f);
fq_poly fqp_normalize(padic_ctx const & ctx, fq_poly f);
fq_poly fqp_mul(padic_ctx const & ctx, fq_poly const & a, fq_poly const & b);
fq_poly fqp_divmod(padic_ctx const & ctx, fq_poly const & a, fq_poly const & b, fq_poly & rem);
fq_poly fqp_gcd(padic_ctx const & ctx, fq_poly a, fq_poly b); /* monic */
/* g, u, v with g = gcd (monic) and u a + v b = g */
void fqp_ext_gcd(padic_ctx const & ctx, fq_poly const & a, fq_poly const & b, fq_poly & g,
                 fq_poly & u, fq_poly & v);
std::vector<fq> fqp_roots(padic_ctx const & ctx, fq_poly const & f);

/* Deterministic factorization over F_q into monic irreducibles with
 * multiplicities, sorted by (degree, canonical coefficients). */
std::vector<std::pair<fq_poly, unsigned>> factor_fq(padic_ctx const & ctx, fq_poly f);

/* spec op: hensel_split. Splits a monic polynomial along the grouping of
 * its residual factorization into pairwise coprime irreducible powers;
 * each returned factor is monic and reduces to a single g_i^{m_i}.
 * Factors are canonically ordered. */
std::vector<local_poly> hensel_split(padic_ctx const & ctx, local_poly const & phi);

/* spec op: newton_polygon. Segments of the lower hull of
 * (j, ord coeff of x^j), reported as (root valuation, length) pairs in
 * hull order, i.e. steepest (largest valuation) first. */
std::vector<std::pair<mpq_class, unsigned>> newton_polygon(padic_ctx const & ctx,
                                                           local_poly const & phi);

/* spec op: residual_quadratic. */
enum class quad_class { irreducible, inseparable, split_separable };
struct residual_quadratic_t {
    fq_poly poly; /* monic quadratic over the residue field */
    quad_class classification;
};
residual_quadratic_t residual_quadratic(padic_ctx const & ctx, local_poly const & phi);

/* Exact discriminant of a monic integer polynomial (ascending coeffs),
 * via the Sylvester resultant. */
mpz_class disc_int_poly(std::vector<mpz_class> const & ascending);

} // namespace bassmonoid

#endif /* BASSMONOID_LOCALPOLY_HPP_ */
