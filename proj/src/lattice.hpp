#ifndef BASSMONOID_LATTICE_HPP_
#define BASSMONOID_LATTICE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "intmat.hpp"

namespace bassmonoid {

/* Free module of rank n with an explicit multiplication tensor: the
 * product of basis vectors e_i * e_j is the vector tens[(i*n+j)*n ..].
 * The basis is assumed multiplicatively closed (an order), so tensor
 * entries are integers, and `one` holds the coordinates of the ring unit.
 *
 * modulus == 0 means exact arithmetic (global lattices over Z). A
 * positive modulus p^N means the tensor entries are only known mod p^N;
 * lattices in such an algebra must keep their index below the modulus
 * (stabilized HNF), which keeps every computation here exact.
 */
struct mult_table {
    unsigned n = 0;
    std::vector<mpz_class> tens;
    std::vector<mpz_class> one;
    mpz_class modulus = 0; /* 0 = exact; else p^N */
    mpz_class p = 0;       /* prime, when modulus != 0 */
    unsigned long prec = 0;

    mult_table() = default;
    mult_table(unsigned n_, std::vector<mpz_class> tens_, std::vector<mpz_class> one_)
        : n(n_), tens(std::move(tens_)), one(std::move(one_)) {}

    std::vector<mpz_class> mul(std::vector<mpz_class> const & a,
                               std::vector<mpz_class> const & b) const;
    /* matrix of multiplication by a on the standard basis */
    int_mat mul_matrix(std::vector<mpz_class> const & a) const;
    void reduce(std::vector<mpz_class> & v) const;
};

/* Full-rank lattice (1/den) * column-span(basis) inside the ambient free
 * module. basis is a square column HNF; den > 0 and the pair is
 * normalized so that gcd(den, content(basis)) = 1. Immutable in spirit:
 * all operations build new values. */
struct lattice {
    unsigned n = 0;
    int_mat basis; /* n x n, column HNF */
    mpz_class den = 1;

    lattice() = default;

    bool operator==(lattice const & o) const
    {
        return n == o.n && den == o.den && basis == o.basis;
    }
    bool operator!=(lattice const & o) const { return !(*this == o); }
    bool operator<(lattice const & o) const; /* arbitrary total order, for sets */

    std::string to_string() const;
};

/* Build from generator columns (k >= n) with a common denominator.
 * Throws rank_deficient if the columns do not span full rank.
 * If alg.modulus != 0 the generators are stabilized with modulus * I. */
lattice lattice_from_generators(unsigned n, int_mat const & gens, mpz_class const & den,
                                mult_table const & alg);
lattice lattice_from_generators(unsigned n, int_mat const & gens, mpz_class const & den);

lattice standard_lattice(unsigned n);

/* spec op: hnf(m) -> LatticeHNF (integral input, denominator 1). */
lattice hnf(int_mat const & m);

/* spec op: snf(m) -> QuotientShape. */
struct quotient_shape {
    std::vector<mpz_class> elementary_divisors; /* ascending divisibility */
};
quotient_shape snf(int_mat const & m);

bool member(lattice const & l, std::vector<mpz_class> const & v, mpz_class const & vden);
bool contains(lattice const & outer, lattice const & inner);

/* [outer : inner] for inner <= outer; exact positive integer. */
mpz_class lattice_index(lattice const & outer, lattice const & inner);

/* Elementary divisors of outer/inner (inner <= outer). */
std::vector<mpz_class> quotient_divisors(lattice const & outer, lattice const & inner);

lattice lattice_sum(lattice const & a, lattice const & b, mult_table const & alg);
lattice lattice_intersect(lattice const & a, lattice const & b, mult_table const & alg);

/* I * J: span of all pairwise products of basis vectors. */
lattice lattice_product(lattice const & a, lattice const & b, mult_table const & alg);
lattice lattice_power(lattice const & a, unsigned long k, mult_table const & alg);
lattice lattice_scale(lattice const & a, std::vector<mpz_class> const & z,
                      mpz_class const & zden, mult_table const & alg);

/* spec op: colon_lattice(I, J) = { x in ambient algebra : x J <= I }. */
lattice colon_lattice(lattice const & i, lattice const & j, mult_table const & alg);

/* spec op: product_closure(L) — true iff 1 in L and L * L <= L. */
bool product_closure(lattice const & l, mult_table const & alg);

/* Ring closure <gens> = smallest lattice containing L that is closed
 * under multiplication (iterated L <- L + L*L until fixpoint). */
lattice ring_closure(lattice const & l, mult_table const & alg);

/* Multiplication tensor of an order lattice L with respect to its own
 * basis. Throws internal_error if L is not multiplicatively closed. */
mult_table order_mult_table(lattice const & l, mult_table const & alg);

/* Coordinates of ambient vector v/vden in the basis of L; requires
 * membership. */
std::vector<mpz_class> coords_in(lattice const & l, std::vector<mpz_class> const & v,
                                 mpz_class const & vden);

/* v = basis * c / den for coordinates c. */
void from_coords(lattice const & l, std::vector<mpz_class> const & c,
                 std::vector<mpz_class> & v, mpz_class & vden);

} // namespace bassmonoid

#endif /* BASSMONOID_LATTICE_HPP_ */
