#ifndef BASSMONOID_GLOBALORDER_HPP_
#define BASSMONOID_GLOBALORDER_HPP_

#include <optional>
#include <vector>

#include "bassorbit.hpp"
#include "localorder.hpp"

namespace bassmonoid {

/* --- exact integer polynomial and integer utilities --- */

/* monic ascending input; factors into monic irreducibles over Z (Zassenhaus:
 * factor mod a good prime, Hensel lift, subset recombination) */
std::vector<std::vector<mpz_class>> factor_int_poly(std::vector<mpz_class> const & f);
bool is_irreducible_int_poly(std::vector<mpz_class> const & f);

/* prime factorization of |n|, n != 0 (trial division + Pollard rho) */
std::vector<std::pair<mpz_class, unsigned>> factor_integer(mpz_class n);

/* --- the global order --- */

/* spec type GlobalOrderRec */
struct global_order {
    std::vector<mpz_class> field_poly; /* monic irreducible over Z, ascending */
    unsigned n = 0;
    mult_table alg;      /* exact ambient on the power basis */
    lattice l;           /* the order R as a lattice (may carry a denominator) */
    bool power_basis = true;
    mpz_class disc_r;    /* discriminant of R over Z (trace form) */
    lattice max_lattice; /* O_E */
    mpz_class disc_oe;
    mpz_class index;     /* [O_E : R] */
    std::vector<mpz_class> bad_primes; /* P_R: p | disc_r / disc_oe */
};

/* spec op: global_from_polynomial — the order Z[x]/(phi). */
global_order global_from_polynomial(std::vector<mpz_class> const & phi);
/* non-monogenic input: a sublattice of E = Q[x]/(phi) closed under
 * multiplication (basis + multiplication table route) */
global_order global_from_lattice(std::vector<mpz_class> const & phi, lattice r);

/* one completion R_w together with its maximal order and the coordinate
 * map from the global power basis into the local ambient */
struct local_piece {
    local_order ord;
    max_order_info mo;
    std::optional<local_poly> phi_w; /* monogenic path */
    int_mat tmap;                    /* n_w x n: global coords -> local ambient coords */
    mpz_class tden = 1;
    invariant_bundle inv;
    bass_witness bass;
};

/* spec op: localize — the completions R_w for w | p. */
std::vector<local_piece> localize(global_order const & g, mpz_class const & p);

/* spec op: conductor_factorization. */
struct conductor_entry {
    mpz_class p;
    unsigned w_index = 0;
    enum class kind_t { kappa_one, kappa_two, split } kind = kind_t::kappa_one;
    unsigned long s_k = 0; /* = l_i, m_j or n_k */
};
struct conductor_data {
    std::vector<conductor_entry> entries; /* only w | f(R), i.e. S_K > 0 */
};
conductor_data conductor_factorization(global_order const & g);

/* spec op: count_nontrivial_classes = prod (S_K(R_w) + 1). */
mpz_class count_nontrivial_classes(global_order const & g);

/* spec op: overorders_global. */
struct global_overorder {
    std::vector<unsigned long> exponents; /* S_K target per conductor entry */
    lattice l;
};
std::vector<global_overorder> overorders_global(global_order const & g);

/* image of a global lattice inside the w-component (used for the
 * re-localization checks) */
lattice localize_lattice(global_order const & g, local_piece const & piece, lattice const & l);

/* { v in within : map_w(v) in target }, exact global sublattice */
lattice preimage_of_local(global_order const & g, local_piece const & piece,
                          lattice const & target, lattice const & within);

} // namespace bassmonoid

#endif /* BASSMONOID_GLOBALORDER_HPP_ */
