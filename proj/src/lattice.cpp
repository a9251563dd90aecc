#include "lattice.hpp"

#include <algorithm>
#include <sstream>

namespace bassmonoid {

std::vector<mpz_class> mult_table::mul(std::vector<mpz_class> const & a,
                                       std::vector<mpz_class> const & b) const
{
    BM_REQUIRE(a.size() == n && b.size() == n, "mult_table::mul shape");
    std::vector<mpz_class> r(n);
    for (unsigned i = 0; i < n; i++) {
        if (a[i] == 0)
            continue;
        for (unsigned j = 0; j < n; j++) {
            if (b[j] == 0)
                continue;
            mpz_class const c = a[i] * b[j];
            mpz_class const * t = &tens[(size_t(i) * n + j) * n];
            for (unsigned k = 0; k < n; k++)
                if (t[k] != 0)
                    r[k] += c * t[k];
        }
    }
    reduce(r);
    return r;
}

int_mat mult_table::mul_matrix(std::vector<mpz_class> const & a) const
{
    int_mat m(n, n);
    for (unsigned j = 0; j < n; j++) {
        std::vector<mpz_class> ej(n);
        ej[j] = 1;
        auto col = mul(a, ej);
        for (unsigned i = 0; i < n; i++)
            m(i, j) = col[i];
    }
    return m;
}

void mult_table::reduce(std::vector<mpz_class> & v) const
{
    if (modulus == 0)
        return;
    for (auto & e : v)
        mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), modulus.get_mpz_t());
}

bool lattice::operator<(lattice const & o) const
{
    if (n != o.n)
        return n < o.n;
    if (den != o.den)
        return den < o.den;
    for (size_t i = 0; i < basis.x.size(); i++)
        if (basis.x[i] != o.basis.x[i])
            return basis.x[i] < o.basis.x[i];
    return false;
}

std::string lattice::to_string() const
{
    std::ostringstream os;
    os << "1/" << den.get_str() << " * " << basis.to_string();
    return os.str();
}

static void normalize(lattice & l)
{
    mpz_class g = l.den;
    for (auto const & e : l.basis.x) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
        if (g == 1)
            return;
    }
    if (g > 1) {
        for (auto & e : l.basis.x)
            mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(l.den.get_mpz_t(), l.den.get_mpz_t(), g.get_mpz_t());
    }
}

lattice lattice_from_generators(unsigned n, int_mat const & gens, mpz_class const & den)
{
    BM_REQUIRE(gens.rows == n, "generator rows != ambient rank");
    BM_REQUIRE(den > 0, "denominator must be positive");
    lattice l;
    l.n = n;
    l.basis = hnf_columns(gens, true);
    l.den = den;
    normalize(l);
    return l;
}

lattice lattice_from_generators(unsigned n, int_mat const & gens, mpz_class const & den,
                                mult_table const & alg)
{
    if (alg.modulus == 0)
        return lattice_from_generators(n, gens, den);
    /* Local lattices only carry Z_p-module meaning. Joining p^N * Z^n both
     * absorbs the mod-p^N truncation of the generators and p-saturates the
     * span (span + p^N Z^n is exactly the p-saturation: the prime-to-p part
     * of the index is killed by a Bezout combination). The prime-to-p part
     * of the denominator is a p-adic unit and is stripped, so equal
     * Z_p-lattices get identical canonical forms. */
    /* strip the common p-power of generators and denominator first: this
     * is exact on truncated entries and keeps the saturated index small */
    mpz_class scratch;
    unsigned long const a_den = mpz_remove(scratch.get_mpz_t(), den.get_mpz_t(), alg.p.get_mpz_t());
    unsigned long strip = a_den;
    for (auto const & e : gens.x) {
        if (strip == 0)
            break;
        if (e == 0)
            continue;
        unsigned long const v = mpz_remove(scratch.get_mpz_t(), e.get_mpz_t(), alg.p.get_mpz_t());
        strip = std::min(strip, v);
    }
    mpz_class pstrip = 1;
    for (unsigned long i = 0; i < strip; i++)
        pstrip *= alg.p;

    int_mat g(n, gens.cols + n);
    for (unsigned i = 0; i < n; i++) {
        for (unsigned j = 0; j < gens.cols; j++) {
            g(i, j) = gens(i, j);
            if (strip)
                mpz_divexact(g(i, j).get_mpz_t(), g(i, j).get_mpz_t(), pstrip.get_mpz_t());
        }
        g(i, gens.cols + i) = alg.modulus;
    }
    lattice l;
    l.n = n;
    l.basis = hnf_columns(g, true);
    l.den = 1;
    for (unsigned long i = strip; i < a_den; i++)
        l.den *= alg.p;
    /* the saturated span must be unchanged by the p^N join */
    if (det(l.basis) >= alg.modulus)
        throw precision_exhausted("lattice index reaches the working modulus");
    normalize(l);
    if (det(l.basis) * alg.p * alg.p >= alg.modulus)
        throw precision_exhausted("lattice index too close to working modulus");
    return l;
}

lattice standard_lattice(unsigned n)
{
    lattice l;
    l.n = n;
    l.basis = int_mat::identity(n);
    l.den = 1;
    return l;
}

lattice hnf(int_mat const & m)
{
    return lattice_from_generators(m.rows, m, 1);
}

quotient_shape snf(int_mat const & m)
{
    return quotient_shape{snf_divisors(m)};
}

bool member(lattice const & l, std::vector<mpz_class> const & v, mpz_class const & vden)
{
    BM_REQUIRE(v.size() == l.n, "member shape");
    /* need basis * x = (l.den / vden) * v with integer x */
    std::vector<mpz_class> w(l.n);
    for (unsigned i = 0; i < l.n; i++) {
        mpz_class num = l.den * v[i];
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), vden.get_mpz_t());
        if (r != 0)
            return false;
        w[i] = q;
    }
    std::vector<mpz_class> x;
    return solve_upper_triangular(l.basis, w, x);
}

bool contains(lattice const & outer, lattice const & inner)
{
    for (unsigned j = 0; j < inner.n; j++) {
        std::vector<mpz_class> col(inner.n);
        for (unsigned i = 0; i < inner.n; i++)
            col[i] = inner.basis(i, j);
        if (!member(outer, col, inner.den))
            return false;
    }
    return true;
}

static mpz_class pow_of(mpz_class const & b, unsigned long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpz_class lattice_index(lattice const & outer, lattice const & inner)
{
    mpq_class idx(det(inner.basis) * pow_of(outer.den, outer.n),
                  det(outer.basis) * pow_of(inner.den, inner.n));
    idx.canonicalize();
    if (idx < 0)
        idx = -idx;
    BM_REQUIRE(idx.get_den() == 1, "lattice_index: not an integer (inner not inside outer?)");
    return idx.get_num();
}

std::vector<mpz_class> quotient_divisors(lattice const & outer, lattice const & inner)
{
    BM_REQUIRE(outer.n == inner.n, "quotient shape");
    int_mat c(outer.n, outer.n);
    for (unsigned j = 0; j < inner.n; j++) {
        std::vector<mpz_class> col(inner.n);
        for (unsigned i = 0; i < inner.n; i++)
            col[i] = inner.basis(i, j);
        auto x = coords_in(outer, col, inner.den);
        for (unsigned i = 0; i < inner.n; i++)
            c(i, j) = x[i];
    }
    return snf_divisors(c);
}

static int_mat scaled_basis(lattice const & l, mpz_class const & target_den)
{
    mpz_class f = target_den / l.den;
    BM_REQUIRE(f * l.den == target_den, "scaled_basis: denominator mismatch");
    int_mat b = l.basis;
    if (f != 1)
        for (auto & e : b.x)
            e *= f;
    return b;
}

lattice lattice_sum(lattice const & a, lattice const & b, mult_table const & alg)
{
    BM_REQUIRE(a.n == b.n, "sum shape");
    mpz_class d;
    mpz_lcm(d.get_mpz_t(), a.den.get_mpz_t(), b.den.get_mpz_t());
    int_mat ab(a.n, 2 * a.n);
    int_mat sa = scaled_basis(a, d), sb = scaled_basis(b, d);
    for (unsigned i = 0; i < a.n; i++)
        for (unsigned j = 0; j < a.n; j++) {
            ab(i, j) = sa(i, j);
            ab(i, a.n + j) = sb(i, j);
        }
    /* sum of exactly-stored lattices is exact; no stabilizer needed */
    (void)alg;
    return lattice_from_generators(a.n, ab, d);
}

lattice lattice_intersect(lattice const & a, lattice const & b, mult_table const & alg)
{
    BM_REQUIRE(a.n == b.n, "intersect shape");
    (void)alg;
    unsigned const n = a.n;
    mpz_class d;
    mpz_lcm(d.get_mpz_t(), a.den.get_mpz_t(), b.den.get_mpz_t());
    int_mat sa = scaled_basis(a, d), sb = scaled_basis(b, d);
    /* v in both spans: v = sa u = sb w; kernel of [sa | -sb] */
    int_mat big(n, 2 * n);
    for (unsigned i = 0; i < n; i++)
        for (unsigned j = 0; j < n; j++) {
            big(i, j) = sa(i, j);
            big(i, n + j) = -sb(i, j);
        }
    int_mat k = kernel_integer(big);
    int_mat u(n, k.cols);
    for (unsigned i = 0; i < n; i++)
        for (unsigned j = 0; j < k.cols; j++)
            u(i, j) = k(i, j);
    return lattice_from_generators(n, mat_mul(sa, u), d);
}

lattice lattice_product(lattice const & a, lattice const & b, mult_table const & alg)
{
    BM_REQUIRE(a.n == b.n && a.n == alg.n, "product shape");
    unsigned const n = a.n;
    int_mat gens(n, n * n);
    for (unsigned j1 = 0; j1 < n; j1++) {
        std::vector<mpz_class> c1(n);
        for (unsigned i = 0; i < n; i++)
            c1[i] = a.basis(i, j1);
        for (unsigned j2 = 0; j2 < n; j2++) {
            std::vector<mpz_class> c2(n);
            for (unsigned i = 0; i < n; i++)
                c2[i] = b.basis(i, j2);
            auto pr = alg.mul(c1, c2);
            for (unsigned i = 0; i < n; i++)
                gens(i, j1 * n + j2) = pr[i];
        }
    }
    return lattice_from_generators(n, gens, a.den * b.den, alg);
}

lattice lattice_power(lattice const & a, unsigned long k, mult_table const & alg)
{
    lattice r = standard_lattice(a.n); /* caller wants ideal powers of full lattices */
    if (k == 0)
        return r;
    r = a;
    for (unsigned long i = 1; i < k; i++)
        r = lattice_product(r, a, alg);
    return r;
}

lattice lattice_scale(lattice const & a, std::vector<mpz_class> const & z,
                      mpz_class const & zden, mult_table const & alg)
{
    unsigned const n = a.n;
    int_mat gens(n, n);
    for (unsigned j = 0; j < n; j++) {
        std::vector<mpz_class> c(n);
        for (unsigned i = 0; i < n; i++)
            c[i] = a.basis(i, j);
        auto pr = alg.mul(z, c);
        for (unsigned i = 0; i < n; i++)
            gens(i, j) = pr[i];
    }
    return lattice_from_generators(n, gens, a.den * zden, alg);
}

/* Deterministic non-zerodivisor inside the column span: sum lambda^i c_i
 * for increasing lambda. In an etale algebra a full-rank span always
 * contains one, and at most (k-1)*n values of lambda are bad. */
static bool find_unit_combination(int_mat const & cols, mult_table const & alg,
                                  std::vector<mpz_class> & elt, int_mat & mul_m, mpz_class & d)
{
    unsigned const n = cols.rows;
    bool found = false;
    mpz_class best_g;
    /* single columns first, then lambda-weighted sums; keep the candidate
     * whose determinant carries the least p-power (or any nonzero one in
     * the exact case) */
    for (unsigned lam = 0; lam <= cols.cols * n + 1; lam++) {
        std::vector<mpz_class> cand(n, 0);
        if (lam < cols.cols) {
            for (unsigned i = 0; i < n; i++)
                cand[i] = cols(i, lam);
        } else {
            mpz_class w = 1;
            unsigned const l = lam - cols.cols + 1;
            for (unsigned j = 0; j < cols.cols; j++) {
                for (unsigned i = 0; i < n; i++)
                    cand[i] += w * cols(i, j);
                w *= l;
            }
        }
        alg.reduce(cand);
        int_mat m = alg.mul_matrix(cand);
        mpz_class dc = det(m);
        if (dc == 0)
            continue;
        if (alg.modulus == 0) {
            elt = cand;
            mul_m = m;
            d = dc;
            return true;
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), dc.get_mpz_t(), alg.modulus.get_mpz_t());
        if (g * alg.p * alg.p > alg.modulus)
            continue;
        if (!found || g < best_g) {
            found = true;
            best_g = g;
            elt = cand;
            mul_m = m;
            d = dc;
            if (g == 1)
                break;
        }
    }
    return found;
}

lattice colon_lattice(lattice const & i, lattice const & j, mult_table const & alg)
{
    BM_REQUIRE(i.n == j.n && i.n == alg.n, "colon shape");
    unsigned const n = i.n;

    /* Start from (i : z) = i * z^{-1} for one non-zerodivisor z in j. */
    std::vector<mpz_class> z;
    int_mat mz;
    mpz_class dz;
    if (!find_unit_combination(j.basis, alg, z, mz, dz))
        throw precision_exhausted("colon: no invertible element found in J");
    int_mat adjz;
    mpz_class detz;
    adjugate(mz, adjz, detz);
    BM_REQUIRE(detz != 0, "colon: z became a zero divisor");
    /* x * z in i  <=>  x in (1/(i.den*detz)) * adj(mz) * B_i * j.den, as a
     * lattice (z has denominator j.den). */
    int_mat num = mat_mul(adjz, i.basis);
    for (auto & e : num.x)
        e *= j.den;
    mpz_class den0 = i.den * detz;
    if (den0 < 0) {
        den0 = -den0;
        for (auto & e : num.x)
            e = -e;
    }
    lattice l0 = lattice_from_generators(n, num, den0, alg);

    /* Filter by the remaining generators: x * c_k in i. In l0-coordinates
     * y, the condition is adj(B_i) M_k B_0 y == 0 mod (det(B_i) * l0.den *
     * j.den / i.den), up to exact scaling. */
    int_mat adji;
    mpz_class deti;
    adjugate(i.basis, adji, deti);
    if (deti < 0) {
        deti = -deti;
        for (auto & e : adji.x)
            e = -e;
    }
    for (unsigned k = 0; k < n; k++) {
        std::vector<mpz_class> ck(n);
        for (unsigned r = 0; r < n; r++)
            ck[r] = j.basis(r, k);
        int_mat mk = alg.mul_matrix(ck);
        /* condition: adj(B_i) * mk * (B_0 y / l0.den) / j.den in deti/i.den * Z^n
         * i.e. P y == 0 mod m with P integer and m = deti * l0.den * j.den / i.den */
        mpq_class mq(deti * l0.den * j.den, i.den);
        mq.canonicalize();
        BM_REQUIRE(mq.get_den() == 1, "colon: modulus not integral");
        mpz_class m = mq.get_num();
        if (m == 1)
            continue;
        if (alg.modulus != 0) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), alg.modulus.get_mpz_t());
            if (g * alg.p * alg.p > alg.modulus)
                throw precision_exhausted("colon: condition modulus too large");
        }
        int_mat pmat = mat_mul(adji, mat_mul(mk, l0.basis));
        int_mat ker = kernel_mod(pmat, m);
        l0 = lattice_from_generators(n, mat_mul(l0.basis, ker), l0.den, alg);
    }
    return l0;
}

bool product_closure(lattice const & l, mult_table const & alg)
{
    if (!member(l, alg.one, 1))
        return false;
    unsigned const n = l.n;
    for (unsigned j1 = 0; j1 < n; j1++)
        for (unsigned j2 = j1; j2 < n; j2++) {
            std::vector<mpz_class> c1(n), c2(n);
            for (unsigned i = 0; i < n; i++) {
                c1[i] = l.basis(i, j1);
                c2[i] = l.basis(i, j2);
            }
            auto pr = alg.mul(c1, c2);
            if (!member(l, pr, l.den * l.den))
                return false;
        }
    return true;
}

lattice ring_closure(lattice const & l, mult_table const & alg)
{
    lattice cur = l;
    for (unsigned iter = 0; iter < 64; iter++) {
        lattice sq = lattice_product(cur, cur, alg);
        lattice nxt = lattice_sum(cur, sq, alg);
        if (nxt == cur)
            return cur;
        cur = nxt;
    }
    throw precision_exhausted("ring_closure did not stabilize");
}

mult_table order_mult_table(lattice const & l, mult_table const & alg)
{
    unsigned const n = l.n;
    mult_table t;
    t.n = n;
    t.tens.assign(size_t(n) * n * n, 0);
    t.p = alg.p;
    for (unsigned j1 = 0; j1 < n; j1++) {
        std::vector<mpz_class> c1(n);
        for (unsigned i = 0; i < n; i++)
            c1[i] = l.basis(i, j1);
        for (unsigned j2 = 0; j2 < n; j2++) {
            std::vector<mpz_class> c2(n);
            for (unsigned i = 0; i < n; i++)
                c2[i] = l.basis(i, j2);
            auto pr = alg.mul(c1, c2);
            auto z = coords_in(l, pr, l.den * l.den);
            for (unsigned k = 0; k < n; k++)
                t.tens[(size_t(j1) * n + j2) * n + k] = z[k];
        }
    }
    t.one = coords_in(l, alg.one, 1);
    if (alg.modulus != 0) {
        /* coordinates are exact mod p^(N - v_p(den^2 * det)); shrink the
         * working modulus accordingly */
        mpz_class lost = l.den * l.den * det(l.basis);
        if (lost < 0)
            lost = -lost;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lost.get_mpz_t(), alg.modulus.get_mpz_t());
        mpz_class newmod = alg.modulus / g;
        unsigned long newprec = 0;
        mpz_class t2 = newmod;
        while (t2 > 1 && mpz_divisible_p(t2.get_mpz_t(), alg.p.get_mpz_t())) {
            t2 /= alg.p;
            newprec++;
        }
        if (newprec < 4)
            throw precision_exhausted("order_mult_table: derived precision too small");
        t.modulus = 1;
        for (unsigned long a = 0; a < newprec; a++)
            t.modulus *= alg.p;
        t.prec = newprec;
        for (auto & e : t.tens)
            mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), t.modulus.get_mpz_t());
    }
    return t;
}

std::vector<mpz_class> coords_in(lattice const & l, std::vector<mpz_class> const & v,
                                 mpz_class const & vden)
{
    std::vector<mpz_class> w(l.n);
    for (unsigned i = 0; i < l.n; i++) {
        mpz_class num = l.den * v[i];
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), vden.get_mpz_t());
        BM_REQUIRE(r == 0, "coords_in: vector not in lattice (denominator)");
        w[i] = q;
    }
    std::vector<mpz_class> x;
    bool const ok = solve_upper_triangular(l.basis, w, x);
    BM_REQUIRE(ok, "coords_in: vector not in lattice");
    return x;
}

void from_coords(lattice const & l, std::vector<mpz_class> const & c,
                 std::vector<mpz_class> & v, mpz_class & vden)
{
    v = mat_vec(l.basis, c);
    vden = l.den;
}

} // namespace bassmonoid
