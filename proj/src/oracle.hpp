#ifndef BASSMONOID_ORACLE_HPP_
#define BASSMONOID_ORACLE_HPP_

#include <vector>

#include "localorder.hpp"

namespace bassmonoid {

struct oracle_caps {
    unsigned long max_candidates = 1'000'000;
};

/* spec type FiniteQuotientRing: additive structure of sup/sub with the
 * ambient multiplication, supporting residue enumeration */
struct finite_quotient {
    lattice sup, sub;
    std::vector<mpz_class> divisors; /* elementary divisors of sup/sub */
    int_mat gen_basis;               /* columns: generators of sup matching divisors
                                        (coordinates in sup's basis) */
    int_mat to_gen;                  /* inverse transform (sup coords -> generator coords) */
    mpz_class size;                  /* prod of divisors */
};
finite_quotient make_finite_quotient(lattice const & sup, lattice const & sub);

/* residue index -> representative in ambient coordinates over sup.den */
std::vector<mpz_class> fq_rep(finite_quotient const & q, mpz_class idx);
/* canonical residue of an ambient vector v/vden (must lie in sup) */
std::vector<mpz_class> fq_canon(finite_quotient const & q, std::vector<mpz_class> const & v,
                                mpz_class const & vden);

/* spec op: brute_overorders — all lattices L with R <= L <= M containing 1
 * and closed under multiplication, by exhaustive subgroup enumeration of
 * M/R. Works for local (p-power index) and global quotients alike. */
std::vector<lattice> brute_overorders(mult_table const & alg, lattice const & r,
                                      lattice const & m, oracle_caps const & caps = {});

/* spec op: brute_ideal_classes — fractional-ideal classes counted by
 * enumerating R-stable lattices between rad(M)^depth and M and deduping by
 * scaling; depth-stability is verified (one automatic retry). */
mpz_class brute_ideal_classes(local_order const & r, max_order_info const & mo,
                              unsigned long depth, oracle_caps const & caps = {});

/* spec op: brute_unit_index — #(O_E^x / O^x) by exhaustion modulo
 * rad(M)^depth. */
mpz_class brute_unit_index(local_ambient const & amb, lattice const & o,
                           max_order_info const & mo, unsigned long depth,
                           oracle_caps const & caps = {});

} // namespace bassmonoid

#endif /* BASSMONOID_ORACLE_HPP_ */
