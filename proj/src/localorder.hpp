#ifndef BASSMONOID_LOCALORDER_HPP_
#define BASSMONOID_LOCALORDER_HPP_

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "localpoly.hpp"

namespace bassmonoid {

/* Ambient etale algebra over Q_p shared by an order and everything derived
 * from it. When built from a polynomial phi over the context (whose
 * coefficient ring is O_K, unramified of degree ctx.dk), the Z_p-basis is
 * { y^b x^i : b < dk, i < rank_k } at position i*dk + b. */
struct local_ambient {
    padic_ctx ctx;
    unsigned rank_k = 0; /* rank over O_K */
    unsigned n = 0;      /* absolute rank over Z_p */
    mult_table alg;
    std::optional<local_poly> phi;
};

using local_ambient_ptr = std::shared_ptr<local_ambient const>;

local_ambient_ptr make_poly_ambient(padic_ctx const & ctx, local_poly const & phi);
/* abstract ambient from an explicit tensor (basis assumed multiplicatively
 * closed, unit coordinates supplied by the tensor) */
local_ambient_ptr make_tensor_ambient(padic_ctx const & ctx, mult_table alg);

/* element sum_i a_i x^i (a_i in O_K, i < rank_k) as ambient coordinates */
std::vector<mpz_class> amb_elem(local_ambient const & amb, std::vector<zq> const & poly_coeffs);
std::vector<mpz_class> amb_x(local_ambient const & amb);       /* the generator x */
std::vector<mpz_class> amb_scalar(local_ambient const & amb, zq const & a);

struct local_order {
    local_ambient_ptr amb;
    lattice L;
};

/* spec op: order_from_polynomial. */
local_order order_from_polynomial(padic_ctx const & ctx, local_poly const & phi);
local_order order_from_basis(local_ambient_ptr amb, lattice L);

/* p-radical of an order lattice: preimage of the nilradical of L/pL.
 * Since L/pL is Artinian this is the Jacobson radical of L over pL; for a
 * local L it is the maximal ideal. */
lattice p_radical(local_ambient const & amb, lattice const & l);

/* preimage in L of the nilradical of L/(pL + I), for an ideal I of L */
lattice radical_above(local_ambient const & amb, lattice const & l, lattice const & i);

/* spec op: maximal_order, Round-2 style: iterate L <- (rad(L) : rad(L))
 * until fixpoint, then split the result into its components. */
struct max_order_info {
    lattice m;   /* the maximal order */
    lattice rad; /* its Jacobson radical (pi_E in the domain case) */
    unsigned r = 0;
    std::vector<unsigned> comp_d; /* residue degrees over F_p */
    std::vector<unsigned> comp_n; /* Z_p-ranks; e_i = comp_n[i]/comp_d[i] */
    /* primitive idempotents, ambient coordinates over a denominator; only
     * accurate modulo p^idem_prec (the derived precision of the maximal
     * order's own multiplication table) */
    std::vector<std::pair<std::vector<mpz_class>, mpz_class>> idem;
    unsigned long idem_prec = 0;

    unsigned comp_e(unsigned i) const { return comp_n[i] / comp_d[i]; }
    bool is_domain() const { return r == 1; }
};
max_order_info maximal_order(local_order const & r);

/* valuation of z (in M, given in ambient coordinates z/zden) along
 * component i: ord_{E_i} via v_p(N_{E_i/Q_p}) / d_i */
unsigned long ord_component(local_ambient const & amb, max_order_info const & mo, unsigned i,
                            std::vector<mpz_class> const & z, mpz_class const & zden);
/* as above, but values indistinguishable from infinity at the working
 * precision come back as ord_infinite (zero divisors vanish on one
 * component, so split-case minima must tolerate them) */
inline constexpr unsigned long ord_infinite = ~0ul;
unsigned long ord_component_or_inf(local_ambient const & amb, max_order_info const & mo,
                                   unsigned i, std::vector<mpz_class> const & z,
                                   mpz_class const & zden);
/* domain-case ord_E */
unsigned long ord_e(local_ambient const & amb, max_order_info const & mo,
                    std::vector<mpz_class> const & z, mpz_class const & zden);

/* spec type InvariantBundle */
struct invariant_bundle {
    unsigned long S = 0, S_K = 0, u = 0, f = 0;
    unsigned d_R = 1, kappa_index = 1, e = 1, d = 1;
    std::vector<unsigned long> f_pair; /* split case conductor exponents */
};
/* spec op: invariants (domain case for u/f; split case fills f_pair). */
invariant_bundle invariants(local_order const & r, max_order_info const & mo);

/* spec op: multiplicator_ring (I:I). */
local_order multiplicator_ring(local_ambient_ptr amb, lattice const & i);

/* #(O_E^x / O^x) for an order O inside the maximal order. Domain case uses
 * (q^d-1)/(q^{d_O}-1) * #(pi_E O_E / m_O); otherwise the conductor-quotient
 * unit count ratio. */
mpz_class unit_index(local_ambient const & amb, lattice const & o, max_order_info const & mo);
/* the general route on its own (used as a cross-check) */
mpz_class unit_index_via_conductor(local_ambient const & amb, lattice const & o,
                                   max_order_info const & mo);

/* #(L/C)^x for a finite quotient of an order by an ideal of p-power index */
mpz_class count_units_quotient(local_ambient const & amb, lattice const & l, lattice const & c);

/* residue field degrees of the semisimple quotient L/rad (over F_p) */
std::vector<unsigned> residue_field_degrees(local_ambient const & amb, lattice const & l,
                                            lattice const & rad);

/* spec op: is_bass, with witness. */
enum class bass_branch { maximal, u2_kappa1, u1_kappa2, split, none };
struct bass_witness {
    bool bass = false;
    bass_branch branch = bass_branch::none;
    unsigned long m_dim = 0; /* dim_{kappa_R} O_E / m_R O_E */
};
bass_witness is_bass(local_order const & r, max_order_info const & mo);

/* spec op: is_bass_monogenic, the polynomial-level criterion. */
bool is_bass_monogenic(padic_ctx const & ctx, local_poly const & phi);

/* spec op: local_splitting. Components (e_i, d_i) relative to the context
 * base field; primary path is Newton polygon segmentation plus residual
 * factorization, with a maximal-order idempotent fallback for residual
 * powers the first level cannot separate. */
struct splitting_result {
    bool is_field = false;
    std::vector<std::pair<unsigned, unsigned>> components; /* (e, d) */
};
splitting_result local_splitting(padic_ctx const & ctx, local_poly const & phi_w);

} // namespace bassmonoid

#endif /* BASSMONOID_LOCALORDER_HPP_ */
