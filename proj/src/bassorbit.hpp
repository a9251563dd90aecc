#ifndef BASSMONOID_BASSORBIT_HPP_
#define BASSMONOID_BASSORBIT_HPP_

#include <optional>
#include <vector>

#include "localorder.hpp"

namespace bassmonoid {

/* spec type SplitLocalData */
struct split_local_data {
    padic_ctx tctx;    /* tower context of the normalized presentation */
    local_order rep;   /* the order, monogenic over the tower */
    max_order_info mo; /* its maximal order */
    zq shift;          /* residual root a; factors are minimal polynomials
                          of x - a on the two components */
    local_poly f1, f2; /* factor polynomials, deg f1 = r1 >= r2 = deg f2 */
    unsigned r1 = 0, r2 = 0;
    unsigned comp1 = 0, comp2 = 0; /* component indices in mo */
    unsigned long s = 0;           /* ord_{E_1}(f2(x_1)) = S_K(R_w) */
};

/* spec op: split_decomposition. */
split_local_data split_decomposition(local_order const & r, max_order_info const & mo);

/* spec type OverorderList entries */
struct overorder_entry {
    lattice l;
    unsigned long s_k = 0;
    unsigned long f_exp = 0;              /* domain case */
    std::vector<unsigned long> f_pair;    /* split case */
    mpz_class unit_idx;
};

/* spec op: overorders_bass. Entries strictly decreasing in S_K from
 * S_K(R) to 0; the last entry is the maximal order. */
std::vector<overorder_entry> overorders_bass(local_order const & r, max_order_info const & mo);

/* spec op: class_monoid_size = S_K(R) + 1. */
mpz_class class_monoid_size(local_order const & r, max_order_info const & mo);

/* spec op: orbital_integral. */
struct orbital_result {
    mpz_class lambda_count;
    mpz_class class_monoid;
    std::optional<mpq_class> geometric;
};
orbital_result orbital_integral(local_order const & r, max_order_info const & mo);

/* spec op: mass_check — recompute the orbital integral as the sum of unit
 * indices over all overorders and compare with the closed form. */
struct mass_report {
    mpz_class lambda_closed;
    mpz_class unit_sum;
    bool equal = false;
    std::vector<mpz_class> per_overorder;
};
mass_report mass_check(local_order const & r, max_order_info const & mo);

/* spec op: geometric_orbital — the measure conversion, exact rational. */
mpq_class geometric_orbital(local_order const & r, max_order_info const & mo);

} // namespace bassmonoid

#endif /* BASSMONOID_BASSORBIT_HPP_ */
