#ifndef BASSMONOID_INTMAT_HPP_
#define BASSMONOID_INTMAT_HPP_

#include <gmpxx.h>

#include <string>
#include <vector>

#include "errors.hpp"

namespace bassmonoid {

/* Dense matrix over Z with exact (GMP) entries, row-major. Small sizes
 * only; every algorithm here is the classical exact one. */
struct int_mat {
    unsigned rows = 0;
    unsigned cols = 0;
    std::vector<mpz_class> x;

    int_mat() = default;
    int_mat(unsigned m, unsigned n) : rows(m), cols(n), x(size_t(m) * n) {}

    static int_mat identity(unsigned n);
    static int_mat scalar(unsigned n, mpz_class const & c);

    mpz_class & operator()(unsigned i, unsigned j) { return x[size_t(i) * cols + j]; }
    mpz_class const & operator()(unsigned i, unsigned j) const { return x[size_t(i) * cols + j]; }

    bool operator==(int_mat const & o) const { return rows == o.rows && cols == o.cols && x == o.x; }
    bool operator!=(int_mat const & o) const { return !(*this == o); }

    int_mat transpose() const;
    std::string to_string() const;
};

int_mat mat_mul(int_mat const & a, int_mat const & b);
std::vector<mpz_class> mat_vec(int_mat const & a, std::vector<mpz_class> const & v);
void mat_mod(int_mat & a, mpz_class const & m);

/* Exact determinant (fraction-free Bareiss). Square input. */
mpz_class det(int_mat const & a);

/* Column-style Hermite normal form.
 *
 * Input: m x k matrix whose columns generate a sublattice of Z^m.
 * Output: m x r matrix, r = rank, upper triangular (pivot of column j in
 * row j after column permutation-free reduction), pivots positive, and
 * every entry to the right of a pivot reduced into [0, pivot).
 *
 * When require_full_rank is set, throws rank_deficient unless r == m.
 */
int_mat hnf_columns(int_mat const & m, bool require_full_rank);

/* Smith normal form: returns the elementary divisors d_1 | d_2 | ... | d_n
 * (all positive) of a square nonsingular matrix; prod d_i = |det|.
 * Throws rank_deficient on singular input. If left is non-null it receives
 * the unimodular U with U * m * V = diag(d). */
std::vector<mpz_class> snf_divisors(int_mat const & m);
std::vector<mpz_class> snf_divisors_left(int_mat const & m, int_mat & left);

/* inverse of a unimodular matrix (det = +-1) */
int_mat inverse_unimodular(int_mat const & u);

/* adjugate and determinant: adj * m = det * I */
void adjugate(int_mat const & m, int_mat & adj, mpz_class & d);

/* Solve U * x = v exactly for an upper-triangular U with nonzero diagonal.
 * Returns false if no integer solution exists. */
bool solve_upper_triangular(int_mat const & u, std::vector<mpz_class> const & v,
                            std::vector<mpz_class> & out);

/* Basis of { x in Z^n : A x = 0 } as columns (A is m x n). */
int_mat kernel_integer(int_mat const & a);

/* Basis of { x in Z^n : A x = 0 (mod modulus) }, as columns; the result
 * always contains modulus * Z^n. */
int_mat kernel_mod(int_mat const & a, mpz_class const & modulus);

/* Gaussian elimination over F_p (p prime). Returns the rank; if kernel is
 * non-null, stores a basis of the right kernel (columns, entries in
 * [0, p)). */
unsigned rank_mod_p(int_mat a, mpz_class const & p, int_mat * kernel);

/* z with V z == w (mod p^k), for V injective over Z_p; entries are
 * canonical representatives. Throws precision_exhausted when no solution
 * with unit last pivot exists at this modulus. */
std::vector<mpz_class> solve_congruence(int_mat const & v, std::vector<mpz_class> const & w,
                                        mpz_class const & pm, mpz_class const & p);

} // namespace bassmonoid

#endif /* BASSMONOID_INTMAT_HPP_ */
