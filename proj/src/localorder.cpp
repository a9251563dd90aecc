#include "localorder.hpp"

#include <algorithm>

namespace bassmonoid {

static mpz_class pow_ui(mpz_class const & b, unsigned long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

static unsigned long vp(mpz_class const & a, mpz_class const & p)
{
    BM_REQUIRE(a != 0, "vp of zero");
    mpz_class t;
    return mpz_remove(t.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
}

/* --- ambient construction --- */

local_ambient_ptr make_poly_ambient(padic_ctx const & ctx, local_poly const & phi)
{
    BM_REQUIRE(lp_is_monic(ctx, phi), "ambient: polynomial must be monic");
    unsigned const rk = phi.degree();
    BM_REQUIRE(rk >= 1, "ambient: degree >= 1");
    unsigned const dk = ctx.dk;
    unsigned const n = rk * dk;

    auto amb = std::make_shared<local_ambient>();
    amb->ctx = ctx;
    amb->rank_k = rk;
    amb->n = n;
    amb->phi = phi;

    /* x^k mod phi for k <= 2(rk-1), as coefficient vectors of length rk */
    std::vector<std::vector<zq>> xpow(2 * rk - 1, std::vector<zq>(rk, zq_zero(ctx)));
    xpow[0][0] = zq_one(ctx);
    for (unsigned k = 1; k < 2 * rk - 1; k++) {
        /* multiply by x, reduce by phi */
        std::vector<zq> cur(rk, zq_zero(ctx));
        zq const lead = xpow[k - 1][rk - 1];
        for (unsigned i = 0; i + 1 < rk; i++)
            cur[i + 1] = xpow[k - 1][i];
        if (!zq_is_zero(lead))
            for (unsigned i = 0; i < rk; i++)
                cur[i] = zq_sub(ctx, cur[i], zq_mul(ctx, lead, phi.c[i]));
        xpow[k] = cur;
    }

    mult_table t;
    t.n = n;
    t.tens.assign(size_t(n) * n * n, 0);
    t.one.assign(n, 0);
    t.one[0] = 1;
    t.modulus = ctx.pN;
    t.p = ctx.p;
    t.prec = ctx.prec;

    for (unsigned i = 0; i < rk; i++)
        for (unsigned b = 0; b < dk; b++)
            for (unsigned j = 0; j < rk; j++)
                for (unsigned c = 0; c < dk; c++) {
                    zq yb = zq_zero(ctx), yc = zq_zero(ctx);
                    yb[b] = 1;
                    yc[c] = 1;
                    zq const ybc = zq_mul(ctx, yb, yc);
                    unsigned const row = i * dk + b, col = j * dk + c;
                    for (unsigned m = 0; m < rk; m++) {
                        zq const co = zq_mul(ctx, xpow[i + j][m], ybc);
                        for (unsigned tt = 0; tt < dk; tt++)
                            t.tens[(size_t(row) * n + col) * n + (m * dk + tt)] = co[tt];
                    }
                }
    amb->alg = std::move(t);
    return amb;
}

local_ambient_ptr make_tensor_ambient(padic_ctx const & ctx, mult_table alg)
{
    auto amb = std::make_shared<local_ambient>();
    amb->ctx = ctx;
    amb->rank_k = alg.n;
    amb->n = alg.n;
    if (alg.modulus == 0) {
        alg.modulus = ctx.pN;
        alg.p = ctx.p;
        alg.prec = ctx.prec;
        for (auto & e : alg.tens)
            mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), ctx.pN.get_mpz_t());
    }
    amb->alg = std::move(alg);
    return amb;
}

std::vector<mpz_class> amb_elem(local_ambient const & amb, std::vector<zq> const & pc)
{
    std::vector<mpz_class> v(amb.n, 0);
    unsigned const dk = amb.ctx.dk;
    BM_REQUIRE(pc.size() <= amb.rank_k, "amb_elem: degree too large");
    for (unsigned i = 0; i < pc.size(); i++)
        for (unsigned b = 0; b < dk; b++)
            v[i * dk + b] = pc[i][b];
    return v;
}

std::vector<mpz_class> amb_x(local_ambient const & amb)
{
    std::vector<mpz_class> v(amb.n, 0);
    BM_REQUIRE(amb.rank_k >= 2, "amb_x: rank 1 algebra has no generator");
    v[amb.ctx.dk] = 1;
    return v;
}

std::vector<mpz_class> amb_scalar(local_ambient const & amb, zq const & a)
{
    std::vector<mpz_class> v(amb.n, 0);
    for (unsigned b = 0; b < amb.ctx.dk; b++)
        v[b] = a[b];
    return v;
}

local_order order_from_polynomial(padic_ctx const & ctx, local_poly const & phi)
{
    /* the residual must be a power of a single irreducible for the order
     * to be local (hensel_split output shape) */
    auto fac = factor_fq(ctx, lp_to_fq(ctx, phi));
    if (fac.size() != 1)
        throw shape_violation("order_from_polynomial: residual is not a prime power");
    local_order r;
    r.amb = make_poly_ambient(ctx, phi);
    r.L = standard_lattice(r.amb->n);
    return r;
}

local_order order_from_basis(local_ambient_ptr amb, lattice l)
{
    BM_REQUIRE(product_closure(l, amb->alg), "order_from_basis: lattice is not a ring");
    return {std::move(amb), std::move(l)};
}

/* --- quotient F_p algebra of an order modulo a sublattice --- */

namespace {

struct fp_quotient {
    unsigned k = 0;               /* dimension over F_p */
    std::vector<unsigned> pos;    /* coordinate positions forming the basis */
    int_mat rref;                 /* rows: reduced generators of the sub */
    std::vector<unsigned> pivcol; /* pivot column of each rref row */
};

/* rows of `gens` (each length n, mod p) span the sub; build reduction data */
fp_quotient build_fp_quotient(int_mat gens, mpz_class const & p)
{
    unsigned const n = gens.cols;
    mat_mod(gens, p);
    fp_quotient q;
    unsigned r = 0;
    for (unsigned c = 0; c < n && r < gens.rows; c++) {
        unsigned piv = r;
        while (piv < gens.rows && gens(piv, c) == 0)
            piv++;
        if (piv == gens.rows)
            continue;
        if (piv != r)
            for (unsigned j = 0; j < n; j++)
                std::swap(gens(r, j), gens(piv, j));
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), gens(r, c).get_mpz_t(), p.get_mpz_t());
        for (unsigned j = 0; j < n; j++)
            gens(r, j) = gens(r, j) * inv % p;
        for (unsigned i = 0; i < gens.rows; i++) {
            if (i == r || gens(i, c) == 0)
                continue;
            mpz_class f = gens(i, c);
            for (unsigned j = 0; j < n; j++) {
                gens(i, j) -= f * gens(r, j);
                mpz_fdiv_r(gens(i, j).get_mpz_t(), gens(i, j).get_mpz_t(), p.get_mpz_t());
            }
        }
        q.pivcol.push_back(c);
        r++;
    }
    q.rref = int_mat(r, n);
    for (unsigned i = 0; i < r; i++)
        for (unsigned j = 0; j < n; j++)
            q.rref(i, j) = gens(i, j);
    std::vector<bool> isp(n, false);
    for (unsigned c : q.pivcol)
        isp[c] = true;
    for (unsigned c = 0; c < n; c++)
        if (!isp[c])
            q.pos.push_back(c);
    q.k = unsigned(q.pos.size());
    return q;
}

std::vector<mpz_class> fp_quotient_reduce(fp_quotient const & q, std::vector<mpz_class> v,
                                          mpz_class const & p)
{
    for (auto & e : v)
        mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    for (unsigned i = 0; i < q.rref.rows; i++) {
        mpz_class const f = v[q.pivcol[i]];
        if (f == 0)
            continue;
        for (unsigned j = 0; j < q.rref.cols; j++) {
            v[j] -= f * q.rref(i, j);
            mpz_fdiv_r(v[j].get_mpz_t(), v[j].get_mpz_t(), p.get_mpz_t());
        }
    }
    std::vector<mpz_class> out(q.k);
    for (unsigned i = 0; i < q.k; i++)
        out[i] = v[q.pos[i]];
    return out;
}

struct fp_alg {
    unsigned k = 0;
    mpz_class p;
    std::vector<mpz_class> tens;
    std::vector<mpz_class> one;
};

std::vector<mpz_class> fp_mul(fp_alg const & f, std::vector<mpz_class> const & a,
                              std::vector<mpz_class> const & b)
{
    std::vector<mpz_class> r(f.k, 0);
    for (unsigned i = 0; i < f.k; i++) {
        if (a[i] == 0)
            continue;
        for (unsigned j = 0; j < f.k; j++) {
            if (b[j] == 0)
                continue;
            mpz_class const c = a[i] * b[j] % f.p;
            for (unsigned t = 0; t < f.k; t++)
                r[t] = (r[t] + c * f.tens[(size_t(i) * f.k + j) * f.k + t]) % f.p;
        }
    }
    return r;
}

std::vector<mpz_class> fp_pow(fp_alg const & f, std::vector<mpz_class> a, mpz_class e)
{
    std::vector<mpz_class> r = f.one;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = fp_mul(f, r, a);
        a = fp_mul(f, a, a);
        e >>= 1;
    }
    return r;
}

int_mat fp_mul_matrix(fp_alg const & f, std::vector<mpz_class> const & a)
{
    int_mat m(f.k, f.k);
    for (unsigned j = 0; j < f.k; j++) {
        std::vector<mpz_class> ej(f.k, 0);
        ej[j] = 1;
        auto col = fp_mul(f, a, ej);
        for (unsigned i = 0; i < f.k; i++)
            m(i, j) = col[i];
    }
    return m;
}

/* any solution of A x = b over F_p, or empty vector if none */
std::vector<mpz_class> fp_solve(int_mat a, std::vector<mpz_class> b, mpz_class const & p)
{
    unsigned const rows = a.rows, cols = a.cols;
    mat_mod(a, p);
    for (auto & e : b)
        mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    std::vector<unsigned> pivcol;
    unsigned r = 0;
    for (unsigned c = 0; c < cols && r < rows; c++) {
        unsigned piv = r;
        while (piv < rows && a(piv, c) == 0)
            piv++;
        if (piv == rows)
            continue;
        if (piv != r) {
            for (unsigned j = 0; j < cols; j++)
                std::swap(a(r, j), a(piv, j));
            std::swap(b[r], b[piv]);
        }
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), a(r, c).get_mpz_t(), p.get_mpz_t());
        for (unsigned j = 0; j < cols; j++)
            a(r, j) = a(r, j) * inv % p;
        b[r] = b[r] * inv % p;
        for (unsigned i = 0; i < rows; i++) {
            if (i == r || a(i, c) == 0)
                continue;
            mpz_class f = a(i, c);
            for (unsigned j = 0; j < cols; j++) {
                a(i, j) -= f * a(r, j);
                mpz_fdiv_r(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), p.get_mpz_t());
            }
            b[i] -= f * b[r];
            mpz_fdiv_r(b[i].get_mpz_t(), b[i].get_mpz_t(), p.get_mpz_t());
        }
        pivcol.push_back(c);
        r++;
    }
    for (unsigned i = r; i < rows; i++)
        if (b[i] != 0)
            return {};
    std::vector<mpz_class> x(cols, 0);
    for (unsigned i = 0; i < r; i++)
        x[pivcol[i]] = b[i];
    return x;
}

/* quotient algebra of the order L modulo the sublattice S (pL <= S <= L),
 * with multiplication from the order's own table */
fp_alg quotient_algebra(local_ambient const & amb, lattice const & l, lattice const & s,
                        mult_table const & tl, fp_quotient & q)
{
    unsigned const n = amb.n;
    int_mat gens(n, n);
    for (unsigned j = 0; j < n; j++) {
        std::vector<mpz_class> col(n);
        for (unsigned i = 0; i < n; i++)
            col[i] = s.basis(i, j);
        auto cc = coords_in(l, col, s.den);
        for (unsigned i = 0; i < n; i++)
            gens(j, i) = cc[i]; /* rows of the builder */
    }
    q = build_fp_quotient(gens, amb.ctx.p);
    fp_alg f;
    f.k = q.k;
    f.p = amb.ctx.p;
    f.tens.assign(size_t(q.k) * q.k * q.k, 0);
    for (unsigned a = 0; a < q.k; a++)
        for (unsigned b = 0; b < q.k; b++) {
            std::vector<mpz_class> va(n, 0), vb(n, 0);
            va[q.pos[a]] = 1;
            vb[q.pos[b]] = 1;
            auto pr = tl.mul(va, vb);
            auto rr = fp_quotient_reduce(q, pr, amb.ctx.p);
            for (unsigned t = 0; t < q.k; t++)
                f.tens[(size_t(a) * q.k + b) * q.k + t] = rr[t];
        }
    f.one = fp_quotient_reduce(q, tl.one, amb.ctx.p);
    return f;
}

/* fields of a finite commutative semisimple F_p-algebra, with their
 * primitive idempotents (coordinates in the given algebra) */
struct field_component {
    unsigned dim = 0;
    std::vector<mpz_class> idem;
};

std::vector<field_component> split_fields(fp_alg const & top)
{
    std::vector<field_component> out;
    if (top.k == 0)
        return out;
    BM_REQUIRE(top.p <= mpz_class(2'000'000), "residue splitting: prime too large to enumerate");

    /* stack of components, each given by a basis (columns, top coords) */
    std::vector<int_mat> stack;
    int_mat full(top.k, top.k);
    for (unsigned i = 0; i < top.k; i++)
        full(i, i) = 1;
    stack.push_back(full);

    while (!stack.empty()) {
        int_mat basis = std::move(stack.back());
        stack.pop_back();
        unsigned const m = basis.cols;

        /* sub-algebra structure in basis coordinates */
        fp_alg g;
        g.k = m;
        g.p = top.p;
        g.tens.assign(size_t(m) * m * m, 0);
        auto col_of = [&](unsigned j) {
            std::vector<mpz_class> v(top.k);
            for (unsigned i = 0; i < top.k; i++)
                v[i] = basis(i, j);
            return v;
        };
        for (unsigned a = 0; a < m; a++)
            for (unsigned b = 0; b < m; b++) {
                auto pr = fp_mul(top, col_of(a), col_of(b));
                auto z = fp_solve(basis, pr, top.p);
                BM_REQUIRE(!z.empty(), "split_fields: product left the component");
                for (unsigned t = 0; t < m; t++)
                    g.tens[(size_t(a) * m + b) * m + t] = z[t];
            }
        /* unit: solve u * v_b = v_b for all b */
        {
            int_mat sys(top.k * m, m);
            std::vector<mpz_class> rhs(top.k * m);
            for (unsigned b = 0; b < m; b++) {
                for (unsigned a = 0; a < m; a++) {
                    auto pr = fp_mul(top, col_of(a), col_of(b));
                    for (unsigned i = 0; i < top.k; i++)
                        sys(b * top.k + i, a) = pr[i];
                }
                for (unsigned i = 0; i < top.k; i++)
                    rhs[b * top.k + i] = basis(i, b);
            }
            auto u = fp_solve(sys, rhs, top.p);
            BM_REQUIRE(!u.empty(), "split_fields: component has no unit");
            g.one = u;
        }

        /* Frobenius-fixed subalgebra */
        int_mat frob(m, m);
        for (unsigned j = 0; j < m; j++) {
            std::vector<mpz_class> ej(m, 0);
            ej[j] = 1;
            auto fj = fp_pow(g, ej, top.p);
            for (unsigned i = 0; i < m; i++)
                frob(i, j) = (fj[i] - (i == j ? 1 : 0) % top.p + top.p) % top.p;
        }
        int_mat ker;
        rank_mod_p(frob, top.p, &ker);
        unsigned const r = ker.cols;
        BM_REQUIRE(r >= 1, "split_fields: empty fixed algebra");
        if (r == 1) {
            /* a field: emit (dimension, idempotent in top coords) */
            field_component fc;
            fc.dim = m;
            fc.idem.assign(top.k, 0);
            for (unsigned a = 0; a < m; a++)
                for (unsigned i = 0; i < top.k; i++)
                    fc.idem[i] = (fc.idem[i] + g.one[a] * basis(i, a)) % top.p;
            out.push_back(std::move(fc));
            continue;
        }
        /* pick a fixed element independent of the unit and split by its
         * eigenspaces (all eigenvalues lie in F_p) */
        std::vector<mpz_class> b_elt;
        for (unsigned j = 0; j < r && b_elt.empty(); j++) {
            std::vector<mpz_class> cand(m);
            for (unsigned i = 0; i < m; i++)
                cand[i] = ker(i, j);
            /* independent of one? */
            int_mat two(m, 2);
            for (unsigned i = 0; i < m; i++) {
                two(i, 0) = g.one[i];
                two(i, 1) = cand[i];
            }
            if (rank_mod_p(two, top.p, nullptr) == 2)
                b_elt = cand;
        }
        BM_REQUIRE(!b_elt.empty(), "split_fields: no separating fixed element");
        int_mat mb = fp_mul_matrix(g, b_elt);
        unsigned found = 0;
        for (mpz_class lam = 0; lam < top.p && found < m; lam++) {
            int_mat shifted = mb;
            for (unsigned i = 0; i < m; i++)
                shifted(i, i) = (shifted(i, i) - lam % top.p + top.p) % top.p;
            int_mat ker2;
            rank_mod_p(shifted, top.p, &ker2);
            if (ker2.cols == 0)
                continue;
            found += ker2.cols;
            /* eigenspace basis in top coords */
            int_mat sub(top.k, ker2.cols);
            for (unsigned j = 0; j < ker2.cols; j++)
                for (unsigned i = 0; i < top.k; i++) {
                    mpz_class acc = 0;
                    for (unsigned a = 0; a < m; a++)
                        acc += ker2(a, j) * basis(i, a);
                    sub(i, j) = acc % top.p;
                }
            stack.push_back(sub);
        }
        BM_REQUIRE(found == m, "split_fields: eigenspaces do not fill the component");
    }
    return out;
}

} // namespace

/* --- radicals --- */

lattice radical_above(local_ambient const & amb, lattice const & l, lattice const & i)
{
    unsigned const n = amb.n;
    mult_table tl = order_mult_table(l, amb.alg);
    /* sub = pL + I */
    lattice pl = l;
    for (auto & e : pl.basis.x)
        e *= amb.ctx.p;
    lattice sub = lattice_sum(pl, i, amb.alg);
    BM_REQUIRE(contains(l, sub), "radical_above: ideal not inside the order");

    fp_quotient q;
    fp_alg f = quotient_algebra(amb, l, sub, tl, q);
    if (f.k == 0)
        return sub;
    /* nilradical = kernel of x -> x^(p^m), p^m >= dim */
    unsigned long m = 1;
    mpz_class pm = amb.ctx.p;
    while (pm < f.k) {
        pm *= amb.ctx.p;
        m++;
    }
    int_mat frob(f.k, f.k);
    for (unsigned j = 0; j < f.k; j++) {
        std::vector<mpz_class> ej(f.k, 0);
        ej[j] = 1;
        auto fj = fp_pow(f, ej, pm);
        for (unsigned i2 = 0; i2 < f.k; i2++)
            frob(i2, j) = fj[i2];
    }
    int_mat ker;
    rank_mod_p(frob, amb.ctx.p, &ker);
    /* generators: lifted kernel vectors joined with sub, over lcm denom */
    mpz_class dd;
    mpz_lcm(dd.get_mpz_t(), l.den.get_mpz_t(), sub.den.get_mpz_t());
    mpz_class const sl = dd / l.den, ss = dd / sub.den;
    int_mat gens(n, ker.cols + n);
    for (unsigned j = 0; j < ker.cols; j++) {
        std::vector<mpz_class> lc(n, 0); /* L-coords */
        for (unsigned a = 0; a < f.k; a++)
            lc[q.pos[a]] = ker(a, j);
        auto av = mat_vec(l.basis, lc);
        for (unsigned i2 = 0; i2 < n; i2++)
            gens(i2, j) = av[i2] * sl;
    }
    for (unsigned j = 0; j < n; j++)
        for (unsigned i2 = 0; i2 < n; i2++)
            gens(i2, ker.cols + j) = sub.basis(i2, j) * ss;
    return lattice_from_generators(n, gens, dd, amb.alg);
}

lattice p_radical(local_ambient const & amb, lattice const & l)
{
    lattice pl = l;
    for (auto & e : pl.basis.x)
        e *= amb.ctx.p;
    return radical_above(amb, l, pl);
}

/* --- maximal order (Round 2) --- */

max_order_info maximal_order(local_order const & r)
{
    local_ambient const & amb = *r.amb;
    BM_REQUIRE(product_closure(r.L, amb.alg), "maximal_order: input is not an order");
    lattice m = r.L;
    unsigned long iter = 0;
    for (;;) {
        if (++iter > 2 * amb.ctx.prec + 8)
            throw precision_exhausted("maximal order iteration did not stabilize (non-reduced input?)");
        lattice t = p_radical(amb, m);
        lattice m2 = colon_lattice(t, t, amb.alg);
        if (m2 == m)
            break;
        BM_REQUIRE(contains(m2, m), "round-2 enlargement must grow");
        m = m2;
    }

    max_order_info mo;
    mo.m = m;
    mo.rad = p_radical(amb, m);

    mult_table tm = order_mult_table(m, amb.alg);
    mo.idem_prec = tm.modulus == 0 ? amb.ctx.prec : tm.prec;
    fp_quotient q;
    fp_alg f = quotient_algebra(amb, m, mo.rad, tm, q);
    auto fields = split_fields(f);
    mo.r = unsigned(fields.size());
    BM_REQUIRE(mo.r >= 1, "maximal order has no residue field");

    for (auto const & fc : fields) {
        /* lift the idempotent: quotient coords -> m-coords, then iterate
         * e <- 3e^2 - 2e^3 in the order arithmetic */
        std::vector<mpz_class> e(amb.n, 0);
        for (unsigned a = 0; a < f.k; a++)
            e[q.pos[a]] = fc.idem[a];
        unsigned long cap = 4;
        {
            unsigned long t2 = tm.modulus == 0 ? amb.ctx.prec : tm.prec;
            while ((1ul << cap) < t2 + amb.n)
                cap++;
        }
        bool stable = false;
        for (unsigned long it = 0; it <= 2 * cap + 8; it++) {
            auto e2 = tm.mul(e, e);
            if (e2 == e) {
                stable = true;
                break;
            }
            /* 3 e^2 - 2 e^3 */
            auto e3 = tm.mul(e2, e);
            std::vector<mpz_class> nxt(amb.n);
            for (unsigned i2 = 0; i2 < amb.n; i2++)
                nxt[i2] = 3 * e2[i2] - 2 * e3[i2];
            tm.reduce(nxt);
            e = nxt;
        }
        if (!stable)
            throw precision_exhausted("idempotent lift did not stabilize");
        mo.comp_d.push_back(fc.dim);
        int_mat me = tm.mul_matrix(e);
        mo.comp_n.push_back(rank_mod_p(me, amb.ctx.p, nullptr));
        /* ambient coordinates of the idempotent */
        auto av = mat_vec(m.basis, e);
        mo.idem.push_back({av, m.den});
    }
    /* canonical component order: by (d, n, idempotent coordinates) */
    std::vector<unsigned> perm(mo.r);
    for (unsigned i = 0; i < mo.r; i++)
        perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](unsigned a, unsigned b) {
        if (mo.comp_d[a] != mo.comp_d[b])
            return mo.comp_d[a] < mo.comp_d[b];
        if (mo.comp_n[a] != mo.comp_n[b])
            return mo.comp_n[a] < mo.comp_n[b];
        return mo.idem[a].first < mo.idem[b].first;
    });
    max_order_info sorted = mo;
    for (unsigned i = 0; i < mo.r; i++) {
        sorted.comp_d[i] = mo.comp_d[perm[i]];
        sorted.comp_n[i] = mo.comp_n[perm[i]];
        sorted.idem[i] = mo.idem[perm[i]];
    }
    unsigned total = 0;
    for (unsigned i = 0; i < sorted.r; i++)
        total += sorted.comp_n[i];
    BM_REQUIRE(total == amb.n, "component ranks must sum to the rank");
    return sorted;
}

/* --- valuations --- */

unsigned long ord_component_or_inf(local_ambient const & amb, max_order_info const & mo,
                                   unsigned i, std::vector<mpz_class> const & z,
                                   mpz_class const & zden)
{
    BM_REQUIRE(i < mo.r, "ord_component: bad component");
    /* w = e_i z + (1 - e_i), computed in ambient coordinates over a common
     * denominator, then det of multiplication on M */
    auto const & [ev, ed] = mo.idem[i];
    auto eiz = amb.alg.mul(ev, z);
    /* denominators: eiz / (ed*zden); one / 1; (1-e_i): (ed - ev)/ed */
    mpz_class const den = ed * zden;
    std::vector<mpz_class> w(amb.n);
    for (unsigned t = 0; t < amb.n; t++) {
        w[t] = eiz[t] + (amb.alg.one[t] * ed - ev[t]) * zden;
        mpz_fdiv_r(w[t].get_mpz_t(), w[t].get_mpz_t(), amb.alg.modulus.get_mpz_t());
    }
    auto wc = coords_in(mo.m, w, den);
    mult_table tm = order_mult_table(mo.m, amb.alg);
    mpz_class d = det(tm.mul_matrix(wc));
    if (d == 0)
        return ord_infinite;
    unsigned long v = vp(d, amb.ctx.p);
    if (v + 2 >= (tm.modulus == 0 ? amb.ctx.prec : tm.prec))
        return ord_infinite;
    BM_REQUIRE(v % mo.comp_d[i] == 0, "ord_component: norm valuation not divisible by d");
    return v / mo.comp_d[i];
}

unsigned long ord_component(local_ambient const & amb, max_order_info const & mo, unsigned i,
                            std::vector<mpz_class> const & z, mpz_class const & zden)
{
    unsigned long const v = ord_component_or_inf(amb, mo, i, z, zden);
    if (v == ord_infinite)
        throw precision_exhausted("ord_component: valuation unresolvable at working precision");
    return v;
}

unsigned long ord_e(local_ambient const & amb, max_order_info const & mo,
                    std::vector<mpz_class> const & z, mpz_class const & zden)
{
    BM_REQUIRE(mo.is_domain(), "ord_e needs a domain");
    return ord_component(amb, mo, 0, z, zden);
}

/* --- invariants --- */

invariant_bundle invariants(local_order const & r, max_order_info const & mo)
{
    local_ambient const & amb = *r.amb;
    invariant_bundle b;
    mpz_class const idx = lattice_index(mo.m, r.L);
    b.S = idx == 1 ? 0 : vp(idx, amb.ctx.p);
    BM_REQUIRE(pow_ui(amb.ctx.p, b.S) == idx, "S: index is not a p-power");

    lattice mr = p_radical(amb, r.L);
    mpz_class const ridx = lattice_index(r.L, mr);
    b.d_R = unsigned(vp(ridx, amb.ctx.p));
    BM_REQUIRE(pow_ui(amb.ctx.p, b.d_R) == ridx, "d_R: index is not a p-power");
    BM_REQUIRE(b.S % b.d_R == 0, "S not divisible by d_R");
    b.S_K = b.S / b.d_R;

    lattice cond = colon_lattice(r.L, mo.m, amb.alg);
    if (mo.is_domain()) {
        b.d = mo.comp_d[0];
        b.e = amb.n / b.d;
        b.kappa_index = b.d / b.d_R;
        /* u = min ord_E over generators of m_R */
        unsigned long u = ~0ul;
        for (unsigned j = 0; j < amb.n; j++) {
            std::vector<mpz_class> col(amb.n);
            for (unsigned i = 0; i < amb.n; i++)
                col[i] = mr.basis(i, j);
            u = std::min(u, ord_e(amb, mo, col, mr.den));
        }
        b.u = u;
        mpz_class const ci = lattice_index(mo.m, cond);
        unsigned long cv = ci == 1 ? 0 : vp(ci, amb.ctx.p);
        BM_REQUIRE(cv % b.d == 0, "conductor index not a power of the residue size");
        b.f = cv / b.d;
    } else {
        /* split case: conductor exponents per component */
        b.e = 0;
        b.d = 0;
        b.kappa_index = 1;
        for (unsigned i = 0; i < mo.r; i++) {
            unsigned long a = ord_infinite;
            for (unsigned j = 0; j < amb.n; j++) {
                std::vector<mpz_class> col(amb.n);
                for (unsigned i2 = 0; i2 < amb.n; i2++)
                    col[i2] = cond.basis(i2, j);
                a = std::min(a, ord_component_or_inf(amb, mo, i, col, cond.den));
            }
            if (a == ord_infinite)
                throw precision_exhausted("conductor exponent unresolvable at working precision");
            b.f_pair.push_back(a);
        }
        b.f = b.f_pair.empty() ? 0 : *std::max_element(b.f_pair.begin(), b.f_pair.end());
        b.u = 0;
    }
    return b;
}

local_order multiplicator_ring(local_ambient_ptr amb, lattice const & i)
{
    lattice m = colon_lattice(i, i, amb->alg);
    BM_REQUIRE(product_closure(m, amb->alg), "multiplicator ring is not closed");
    return {std::move(amb), std::move(m)};
}

/* --- unit indices --- */

std::vector<unsigned> residue_field_degrees(local_ambient const & amb, lattice const & l,
                                            lattice const & rad)
{
    mult_table tl = order_mult_table(l, amb.alg);
    fp_quotient q;
    fp_alg f = quotient_algebra(amb, l, rad, tl, q);
    std::vector<unsigned> dims;
    for (auto const & fc : split_fields(f))
        dims.push_back(fc.dim);
    std::sort(dims.begin(), dims.end());
    return dims;
}

mpz_class count_units_quotient(local_ambient const & amb, lattice const & l, lattice const & c)
{
    if (l == c)
        return 1;
    lattice t = radical_above(amb, l, c);
    mpz_class res = lattice_index(t, c);
    for (unsigned dj : residue_field_degrees(amb, l, t))
        res *= pow_ui(amb.ctx.p, dj) - 1;
    return res;
}

mpz_class unit_index_via_conductor(local_ambient const & amb, lattice const & o,
                                   max_order_info const & mo)
{
    if (o == mo.m)
        return 1;
    lattice cond = colon_lattice(o, mo.m, amb.alg);
    mpz_class const a = count_units_quotient(amb, mo.m, cond);
    mpz_class const b = count_units_quotient(amb, o, cond);
    BM_REQUIRE(a % b == 0, "unit index: quotient counts not divisible");
    return a / b;
}

mpz_class unit_index(local_ambient const & amb, lattice const & o, max_order_info const & mo)
{
    if (o == mo.m)
        return 1;
    if (!mo.is_domain())
        return unit_index_via_conductor(amb, o, mo);
    /* (q^d - 1)/(q^{d_O} - 1) * #(pi_E O_E / m_O) */
    lattice m_o = p_radical(amb, o);
    unsigned const d = mo.comp_d[0];
    unsigned long const d_o = vp(lattice_index(o, m_o), amb.ctx.p);
    mpz_class const num = pow_ui(amb.ctx.p, d) - 1;
    mpz_class const den = pow_ui(amb.ctx.p, d_o) - 1;
    BM_REQUIRE(num % den == 0, "unit index: residue field extension degrees");
    return num / den * lattice_index(mo.rad, m_o);
}

/* --- Bass tests --- */

bass_witness is_bass(local_order const & r, max_order_info const & mo)
{
    local_ambient const & amb = *r.amb;
    bass_witness w;
    if (r.L == mo.m) {
        w.bass = true;
        w.branch = bass_branch::maximal;
        return w;
    }
    lattice mr = p_radical(amb, r.L);
    lattice j = lattice_product(mr, mo.m, amb.alg);
    unsigned long const dim_fp = vp(lattice_index(mo.m, j), amb.ctx.p);
    unsigned const d_r = unsigned(vp(lattice_index(r.L, mr), amb.ctx.p));
    BM_REQUIRE(dim_fp % d_r == 0, "is_bass: dimension not divisible by d_R");
    w.m_dim = dim_fp / d_r;
    w.bass = (w.m_dim == 2);
    if (!w.bass)
        return w;
    if (!mo.is_domain()) {
        w.branch = bass_branch::split;
        return w;
    }
    invariant_bundle b = invariants(r, mo);
    if (b.u == 2 && b.kappa_index == 1)
        w.branch = bass_branch::u2_kappa1;
    else if (b.u == 1 && b.kappa_index == 2)
        w.branch = bass_branch::u1_kappa2;
    else
        throw internal_error("is_bass: witness branch inconsistent with invariants");
    return w;
}

bool is_bass_monogenic(padic_ctx const & ctx, local_poly const & phi)
{
    auto fac = factor_fq(ctx, lp_to_fq(ctx, phi));
    if (fac.size() != 1)
        throw shape_violation("is_bass_monogenic: residual is not a single prime power");
    unsigned const dg = fqp_degree(fac[0].first);

    padic_ctx tctx = ctx;
    local_poly g = phi;
    if (dg > 1) {
        if (ctx.dk != 1)
            throw shape_violation("is_bass_monogenic: residual not linear over the tower");
        tctx = padic_ctx(ctx.p, ctx.prec, dg);
        std::vector<mpz_class> asc;
        for (auto const & co : phi.c)
            asc.push_back(co[0]);
        local_poly lifted = lp_from_integers(tctx, asc);
        auto parts = hensel_split(tctx, lifted);
        BM_REQUIRE(parts.size() == dg, "is_bass_monogenic: conjugate split size");
        g = parts[0];
    }
    unsigned const n_r = g.degree();
    if (n_r <= 2)
        return true;
    auto roots = fqp_roots(tctx, lp_to_fq(tctx, g));
    BM_REQUIRE(roots.size() == 1, "is_bass_monogenic: residual root not unique");
    zq const a = fq_lift(tctx, roots[0]);
    unsigned long const val = zq_val(tctx, lp_eval(tctx, g, a));
    if (val + 2 >= tctx.prec)
        throw precision_exhausted("is_bass_monogenic: ord(g(a)) at precision limit");
    /* ord 1 forces O_K[alpha] maximal (Eisenstein after the shift), which
     * is Bass; ord 2 is the proper Bass bound */
    return val == 1 || val == 2;
}

/* --- local splitting --- */

static splitting_result splitting_by_idempotents(padic_ctx const & ctx, local_poly const & phi)
{
    local_order r = order_from_polynomial(ctx, phi);
    max_order_info mo = maximal_order(r);
    splitting_result res;
    res.is_field = mo.is_domain();
    for (unsigned i = 0; i < mo.r; i++) {
        BM_REQUIRE(mo.comp_d[i] % ctx.dk == 0, "component residue degree vs tower");
        res.components.push_back({mo.comp_e(i), mo.comp_d[i] / ctx.dk});
    }
    std::sort(res.components.begin(), res.components.end());
    return res;
}

splitting_result local_splitting(padic_ctx const & ctx, local_poly const & phi_w)
{
    BM_REQUIRE(lp_is_monic(ctx, phi_w), "local_splitting: monic input required");
    auto fac = factor_fq(ctx, lp_to_fq(ctx, phi_w));
    if (fac.size() > 1) {
        /* permissive: split along the residual and recurse */
        splitting_result res;
        for (auto const & part : hensel_split(ctx, phi_w)) {
            auto sub = local_splitting(ctx, part);
            for (auto const & c : sub.components)
                res.components.push_back(c);
        }
        std::sort(res.components.begin(), res.components.end());
        res.is_field = res.components.size() == 1;
        return res;
    }
    unsigned const m = fac[0].second;
    unsigned const dg = fqp_degree(fac[0].first);
    if (m == 1)
        return {true, {{1, dg}}};
    if (dg > 1) {
        if (ctx.dk != 1)
            return splitting_by_idempotents(ctx, phi_w);
        padic_ctx tctx(ctx.p, ctx.prec, dg);
        std::vector<mpz_class> asc;
        for (auto const & co : phi_w.c)
            asc.push_back(co[0]);
        auto parts = hensel_split(tctx, lp_from_integers(tctx, asc));
        BM_REQUIRE(parts.size() == dg, "local_splitting: conjugate split size");
        auto sub = local_splitting(tctx, parts[0]);
        splitting_result res;
        res.is_field = sub.is_field;
        for (auto const & [e, d] : sub.components)
            res.components.push_back({e, d * dg});
        std::sort(res.components.begin(), res.components.end());
        return res;
    }
    /* residual (x - a)^m: recenter */
    auto roots = fqp_roots(ctx, fac[0].first);
    BM_REQUIRE(roots.size() == 1, "local_splitting: linear residual without a root");
    local_poly psi = lp_shift(ctx, phi_w, fq_lift(ctx, roots[0]));
    if (zq_val(ctx, psi.c[0]) + 2 >= ctx.prec)
        return splitting_by_idempotents(ctx, phi_w);
    auto segs = newton_polygon(ctx, psi);
    if (segs.size() != 1)
        return splitting_by_idempotents(ctx, phi_w);
    mpq_class const slope = segs[0].first;
    unsigned long const e1 = mpz_get_ui(slope.get_den().get_mpz_t());
    unsigned long const h = mpz_get_ui(slope.get_num().get_mpz_t());
    BM_REQUIRE(m % e1 == 0, "local_splitting: segment length vs slope denominator");
    unsigned const ell = m / unsigned(e1);
    if (ell == 1)
        return {true, {{m, 1}}};
    /* residual polynomial of the single segment */
    fq_poly a(ell + 1, fq(ctx.dk, 0));
    for (unsigned j = 0; j <= ell; j++) {
        unsigned long const need = (unsigned long)(ell - j) * h;
        zq const & co = psi.c[j * e1];
        if (zq_val(ctx, co) < need)
            throw internal_error("local_splitting: coefficient below the hull");
        a[j] = zq_to_fq(ctx, zq_shift_down(ctx, co, need));
    }
    auto afac = factor_fq(ctx, a);
    if (afac.size() == 1 && afac[0].second == 1)
        return {true, {{unsigned(e1), ell}}};
    /* repeated or split residual: first level cannot separate */
    return splitting_by_idempotents(ctx, phi_w);
}

} // namespace bassmonoid
