#include "intmat.hpp"

#include <algorithm>
#include <sstream>

namespace bassmonoid {

int_mat int_mat::identity(unsigned n)
{
    int_mat r(n, n);
    for (unsigned i = 0; i < n; i++)
        r(i, i) = 1;
    return r;
}

int_mat int_mat::scalar(unsigned n, mpz_class const & c)
{
    int_mat r(n, n);
    for (unsigned i = 0; i < n; i++)
        r(i, i) = c;
    return r;
}

int_mat int_mat::transpose() const
{
    int_mat r(cols, rows);
    for (unsigned i = 0; i < rows; i++)
        for (unsigned j = 0; j < cols; j++)
            r(j, i) = (*this)(i, j);
    return r;
}

std::string int_mat::to_string() const
{
    std::ostringstream os;
    for (unsigned i = 0; i < rows; i++) {
        os << (i ? "; " : "[");
        for (unsigned j = 0; j < cols; j++)
            os << (j ? " " : "") << (*this)(i, j).get_str();
    }
    os << "]";
    return os.str();
}

int_mat mat_mul(int_mat const & a, int_mat const & b)
{
    BM_REQUIRE(a.cols == b.rows, "mat_mul shape mismatch");
    int_mat r(a.rows, b.cols);
    for (unsigned i = 0; i < a.rows; i++)
        for (unsigned k = 0; k < a.cols; k++) {
            if (a(i, k) == 0)
                continue;
            for (unsigned j = 0; j < b.cols; j++)
                r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

std::vector<mpz_class> mat_vec(int_mat const & a, std::vector<mpz_class> const & v)
{
    BM_REQUIRE(a.cols == v.size(), "mat_vec shape mismatch");
    std::vector<mpz_class> r(a.rows);
    for (unsigned i = 0; i < a.rows; i++)
        for (unsigned j = 0; j < a.cols; j++)
            r[i] += a(i, j) * v[j];
    return r;
}

void mat_mod(int_mat & a, mpz_class const & m)
{
    for (auto & e : a.x)
        mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
}

mpz_class det(int_mat const & a)
{
    BM_REQUIRE(a.rows == a.cols, "det needs a square matrix");
    unsigned const n = a.rows;
    if (n == 0)
        return 1;
    int_mat m = a;
    mpz_class prev = 1;
    int sign = 1;
    for (unsigned k = 0; k + 1 < n; k++) {
        if (m(k, k) == 0) {
            unsigned piv = k + 1;
            while (piv < n && m(piv, k) == 0)
                piv++;
            if (piv == n)
                return 0;
            for (unsigned j = 0; j < n; j++)
                std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (unsigned i = k + 1; i < n; i++) {
            for (unsigned j = k + 1; j < n; j++) {
                m(i, j) = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : mpz_class(-m(n - 1, n - 1));
}

int_mat hnf_columns(int_mat const & m, bool require_full_rank)
{
    unsigned const n = m.rows;
    unsigned const k = m.cols;
    int_mat a = m;

    auto col_swap = [&](unsigned c1, unsigned c2) {
        if (c1 != c2)
            for (unsigned i = 0; i < n; i++)
                std::swap(a(i, c1), a(i, c2));
    };
    auto col_axpy = [&](unsigned dst, unsigned src, mpz_class const & q) {
        /* col_dst -= q * col_src */
        if (q == 0)
            return;
        for (unsigned i = 0; i < n; i++)
            a(i, dst) -= q * a(i, src);
    };

    /* Eliminate bottom-up: after handling row i, one column carries the
     * pivot for row i and is parked on the right; all remaining columns
     * are zero from row i downward. */
    unsigned avail = k; /* columns [0, avail) still in play */
    std::vector<unsigned> pivot_col;
    std::vector<unsigned> pivot_row;
    for (unsigned ii = n; ii-- > 0 && avail > 0;) {
        /* gcd-combine all columns with a nonzero entry in row ii */
        for (;;) {
            unsigned best = avail;
            for (unsigned c = 0; c < avail; c++)
                if (a(ii, c) != 0 && (best == avail || cmp(abs(a(ii, c)), abs(a(ii, best))) < 0))
                    best = c;
            if (best == avail)
                break; /* row is zero on the active columns */
            bool others = false;
            for (unsigned c = 0; c < avail; c++) {
                if (c == best || a(ii, c) == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a(ii, c).get_mpz_t(), a(ii, best).get_mpz_t());
                col_axpy(c, best, q);
                if (a(ii, c) != 0)
                    others = true;
            }
            if (!others) {
                /* single nonzero left: park it */
                if (a(ii, best) < 0)
                    for (unsigned i = 0; i < n; i++)
                        a(i, best) = -a(i, best);
                col_swap(best, avail - 1);
                avail--;
                pivot_col.push_back(avail);
                pivot_row.push_back(ii);
                break;
            }
        }
    }

    unsigned const r = unsigned(pivot_col.size());
    if (require_full_rank && r != n)
        throw rank_deficient();

    /* Assemble: pivots were found for rows n-1, n-2, ... in that order and
     * parked right-to-left, so columns [avail, k) are already ordered with
     * increasing pivot row. Copy them out. */
    int_mat h(n, r);
    for (unsigned j = 0; j < r; j++)
        for (unsigned i = 0; i < n; i++)
            h(i, j) = a(i, avail + j);

    /* reduce entries right of each pivot into [0, pivot); process pivots
     * bottom-up so a reduction never dirties an already-reduced row
     * (column j only has entries in rows <= its pivot row) */
    for (unsigned j = r; j-- > 0;) {
        unsigned const pr = pivot_row[r - 1 - j]; /* pivot row of column j */
        for (unsigned j2 = j + 1; j2 < r; j2++) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), h(pr, j2).get_mpz_t(), h(pr, j).get_mpz_t());
            if (q != 0)
                for (unsigned i = 0; i < n; i++)
                    h(i, j2) -= q * h(i, j);
        }
    }
    return h;
}

static std::vector<mpz_class> snf_impl(int_mat const & m, int_mat * left)
{
    BM_REQUIRE(m.rows == m.cols, "snf needs a square matrix");
    unsigned const n = m.rows;
    int_mat a = m;
    if (det(a) == 0)
        throw rank_deficient("snf: matrix is singular");
    int_mat u = int_mat::identity(n);
    auto row_sub = [&](unsigned dst, unsigned src, mpz_class const & q, unsigned from) {
        for (unsigned j = from; j < n; j++)
            a(dst, j) -= q * a(src, j);
        for (unsigned j = 0; j < n; j++)
            u(dst, j) -= q * u(src, j);
    };
    auto row_swap = [&](unsigned r1, unsigned r2) {
        for (unsigned j = 0; j < n; j++) {
            std::swap(a(r1, j), a(r2, j));
            std::swap(u(r1, j), u(r2, j));
        }
    };

    for (unsigned k = 0; k < n; k++) {
        for (;;) {
            /* move a nonzero entry of the trailing block to (k, k) */
            unsigned pi = k, pj = k;
            bool found = false;
            for (unsigned i = k; i < n && !found; i++)
                for (unsigned j = k; j < n && !found; j++)
                    if (a(i, j) != 0) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
            BM_REQUIRE(found, "snf: trailing block vanished");
            if (pi != k)
                row_swap(k, pi);
            if (pj != k)
                for (unsigned i = 0; i < n; i++)
                    std::swap(a(i, k), a(i, pj));

            bool clean = true;
            for (unsigned i = k + 1; i < n; i++)
                while (a(i, k) != 0) {
                    clean = false;
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), a(i, k).get_mpz_t(), a(k, k).get_mpz_t());
                    row_sub(i, k, q, k);
                    if (a(i, k) != 0)
                        row_swap(k, i);
                }
            for (unsigned j = k + 1; j < n; j++)
                while (a(k, j) != 0) {
                    clean = false;
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), a(k, j).get_mpz_t(), a(k, k).get_mpz_t());
                    for (unsigned i = k; i < n; i++)
                        a(i, j) -= q * a(i, k);
                    if (a(k, j) != 0)
                        for (unsigned i = k; i < n; i++)
                            std::swap(a(i, k), a(i, j));
                }
            if (clean)
                break;
        }
        /* force divisibility d_k | a(i, j) for the trailing block */
        bool redo = false;
        for (unsigned i = k + 1; i < n && !redo; i++)
            for (unsigned j = k + 1; j < n && !redo; j++)
                if (a(i, j) % a(k, k) != 0) {
                    row_sub(k, i, mpz_class(-1), k);
                    redo = true;
                }
        if (redo) {
            k--;
            continue;
        }
        if (a(k, k) < 0) {
            for (unsigned j = k; j < n; j++)
                a(k, j) = -a(k, j);
            for (unsigned j = 0; j < n; j++)
                u(k, j) = -u(k, j);
        }
    }

    if (left)
        *left = u;
    std::vector<mpz_class> d(n);
    for (unsigned i = 0; i < n; i++)
        d[i] = a(i, i);
    return d;
}

std::vector<mpz_class> snf_divisors(int_mat const & m)
{
    return snf_impl(m, nullptr);
}

std::vector<mpz_class> snf_divisors_left(int_mat const & m, int_mat & left)
{
    return snf_impl(m, &left);
}

void adjugate(int_mat const & m, int_mat & adj, mpz_class & d)
{
    unsigned const n = m.rows;
    BM_REQUIRE(n == m.cols, "adjugate needs a square matrix");
    d = det(m);
    adj = int_mat(n, n);
    int_mat minor(n >= 1 ? n - 1 : 0, n >= 1 ? n - 1 : 0);
    for (unsigned i = 0; i < n; i++)
        for (unsigned j = 0; j < n; j++) {
            for (unsigned ii = 0, mi = 0; ii < n; ii++) {
                if (ii == i)
                    continue;
                for (unsigned jj = 0, mj = 0; jj < n; jj++) {
                    if (jj == j)
                        continue;
                    minor(mi, mj) = m(ii, jj);
                    mj++;
                }
                mi++;
            }
            mpz_class mm = det(minor);
            adj(j, i) = ((i + j) % 2 == 0) ? mm : mpz_class(-mm);
        }
}

int_mat inverse_unimodular(int_mat const & u)
{
    int_mat adj;
    mpz_class d;
    adjugate(u, adj, d);
    BM_REQUIRE(d == 1 || d == -1, "inverse_unimodular: determinant not a unit");
    if (d == -1)
        for (auto & e : adj.x)
            e = -e;
    return adj;
}

bool solve_upper_triangular(int_mat const & u, std::vector<mpz_class> const & v,
                            std::vector<mpz_class> & out)
{
    unsigned const n = u.rows;
    BM_REQUIRE(u.cols == n && v.size() == n, "solve_upper_triangular shape");
    out.assign(n, 0);
    for (unsigned ii = n; ii-- > 0;) {
        mpz_class acc = v[ii];
        for (unsigned j = ii + 1; j < n; j++)
            acc -= u(ii, j) * out[j];
        if (u(ii, ii) == 0)
            return false;
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), u(ii, ii).get_mpz_t());
        if (r != 0)
            return false;
        out[ii] = q;
    }
    return true;
}

/* Kernel over Z via HNF of the transpose with a unimodular transform.
 * Rows of T with zero image rows form a basis of the left kernel of A^t,
 * i.e. the right kernel of A. */
int_mat kernel_integer(int_mat const & a)
{
    unsigned const m = a.rows, n = a.cols;
    /* Work on the n x (m + n) matrix [A^t | I]; row-reduce the A^t part. */
    int_mat w(n, m + n);
    for (unsigned i = 0; i < n; i++) {
        for (unsigned j = 0; j < m; j++)
            w(i, j) = a(j, i);
        w(i, m + i) = 1;
    }
    /* plain row HNF restricted to the first m columns */
    unsigned r = 0;
    for (unsigned c = 0; c < m && r < n; c++) {
        for (unsigned i = r + 1; i < n; i++) {
            while (w(i, c) != 0) {
                if (w(r, c) == 0) {
                    for (unsigned j = 0; j < m + n; j++)
                        std::swap(w(r, j), w(i, j));
                    continue;
                }
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), w(i, c).get_mpz_t(), w(r, c).get_mpz_t());
                if (q != 0)
                    for (unsigned j = 0; j < m + n; j++)
                        w(i, j) -= q * w(r, j);
                if (w(i, c) != 0)
                    for (unsigned j = 0; j < m + n; j++)
                        std::swap(w(r, j), w(i, j));
            }
        }
        if (w(r, c) != 0)
            r++;
    }
    int_mat k(n, n - r);
    for (unsigned i = r; i < n; i++)
        for (unsigned j = 0; j < n; j++)
            k(j, i - r) = w(i, m + j);
    return k;
}

int_mat kernel_mod(int_mat const & a, mpz_class const & modulus)
{
    BM_REQUIRE(modulus > 0, "kernel_mod needs a positive modulus");
    unsigned const m = a.rows, n = a.cols;
    /* { x : A x = 0 mod M } = projection onto x of ker [A | -M*I] */
    int_mat big(m, n + m);
    for (unsigned i = 0; i < m; i++) {
        for (unsigned j = 0; j < n; j++)
            big(i, j) = a(i, j);
        big(i, n + i) = -modulus;
    }
    int_mat k = kernel_integer(big);
    int_mat proj(n, k.cols);
    for (unsigned i = 0; i < n; i++)
        for (unsigned j = 0; j < k.cols; j++)
            proj(i, j) = k(i, j);
    return hnf_columns(proj, false);
}

/* z with V z == w mod p^M (unique when V is injective); entries of the
 * result are canonical representatives mod p^M */
std::vector<mpz_class> solve_congruence(int_mat const & v, std::vector<mpz_class> const & w,
                                               mpz_class const & pm, mpz_class const & p)
{
    unsigned const n = v.rows, m = v.cols;
    int_mat a(n, m + 1);
    for (unsigned i = 0; i < n; i++) {
        for (unsigned j = 0; j < m; j++)
            a(i, j) = v(i, j);
        a(i, m) = -w[i];
    }
    int_mat k = kernel_mod(a, pm);
    /* the kernel HNF is (m+1) x (m+1); a solution (z, 1) exists iff the
     * last pivot is prime to p */
    BM_REQUIRE(k.rows == m + 1 && k.cols == m + 1, "solve_congruence: kernel shape");
    mpz_class const piv = k(m, m);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), piv.get_mpz_t(), p.get_mpz_t());
    if (g != 1)
        throw precision_exhausted("solve_congruence: no unit solution at this precision");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), piv.get_mpz_t(), pm.get_mpz_t());
    std::vector<mpz_class> z(m);
    for (unsigned i = 0; i < m; i++)
        z[i] = k(i, m) * inv % pm;
    return z;
}

unsigned rank_mod_p(int_mat a, mpz_class const & p, int_mat * kernel)
{
    unsigned const m = a.rows, n = a.cols;
    mat_mod(a, p);
    std::vector<unsigned> pivot_col;
    unsigned r = 0;
    for (unsigned c = 0; c < n && r < m; c++) {
        unsigned piv = r;
        while (piv < m && a(piv, c) == 0)
            piv++;
        if (piv == m)
            continue;
        if (piv != r)
            for (unsigned j = 0; j < n; j++)
                std::swap(a(r, j), a(piv, j));
        mpz_class inv;
        int const ok = mpz_invert(inv.get_mpz_t(), a(r, c).get_mpz_t(), p.get_mpz_t());
        BM_REQUIRE(ok, "rank_mod_p: pivot not invertible (p not prime?)");
        for (unsigned j = c; j < n; j++)
            a(r, j) = a(r, j) * inv % p;
        for (unsigned i = 0; i < m; i++) {
            if (i == r || a(i, c) == 0)
                continue;
            mpz_class f = a(i, c);
            for (unsigned j = c; j < n; j++) {
                a(i, j) -= f * a(r, j);
                mpz_fdiv_r(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), p.get_mpz_t());
            }
        }
        pivot_col.push_back(c);
        r++;
    }
    if (kernel) {
        std::vector<bool> is_pivot(n, false);
        for (unsigned c : pivot_col)
            is_pivot[c] = true;
        *kernel = int_mat(n, n - r);
        unsigned kc = 0;
        for (unsigned c = 0; c < n; c++) {
            if (is_pivot[c])
                continue;
            for (unsigned i = 0; i < r; i++)
                (*kernel)(pivot_col[i], kc) = (p - a(i, c)) % p;
            (*kernel)(c, kc) = 1;
            kc++;
        }
    }
    return r;
}

} // namespace bassmonoid
