#include "bassorbit.hpp"

#include <algorithm>

namespace bassmonoid {

static mpz_class pow_ui(mpz_class const & b, unsigned long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

split_local_data split_decomposition(local_order const & r, max_order_info const & mo)
{
    if (mo.is_domain())
        throw is_domain("split_decomposition: order is a domain");
    bass_witness w = is_bass(r, mo);
    if (!w.bass)
        throw not_bass("split_decomposition: order is not Bass");
    if (!r.amb->phi)
        throw not_monogenic("split_decomposition: no defining polynomial");

    split_local_data sd;
    padic_ctx const & ctx = r.amb->ctx;
    auto fac = factor_fq(ctx, lp_to_fq(ctx, *r.amb->phi));
    BM_REQUIRE(fac.size() == 1, "split_decomposition: residual not a prime power");
    unsigned const dg = fqp_degree(fac[0].first);
    if (dg == 1) {
        sd.tctx = ctx;
        sd.rep = r;
        sd.mo = mo;
    } else {
        BM_REQUIRE(ctx.dk == 1, "split_decomposition: nested tower extension unsupported");
        sd.tctx = padic_ctx(ctx.p, ctx.prec, dg);
        std::vector<mpz_class> asc;
        for (auto const & co : r.amb->phi->c)
            asc.push_back(co[0]);
        auto parts = hensel_split(sd.tctx, lp_from_integers(sd.tctx, asc));
        BM_REQUIRE(parts.size() == dg, "split_decomposition: conjugate split size");
        sd.rep = order_from_polynomial(sd.tctx, parts[0]);
        sd.mo = maximal_order(sd.rep);
    }
    BM_REQUIRE(sd.mo.r == 2, "split Bass order must have exactly two primes above");

    local_ambient const & amb = *sd.rep.amb;
    padic_ctx const & tc = sd.tctx;
    unsigned const dk = tc.dk;

    /* recenter at the residual root: residual = (x - a)^m over the tower */
    auto tfac = factor_fq(tc, lp_to_fq(tc, *sd.rep.amb->phi));
    BM_REQUIRE(tfac.size() == 1 && fqp_degree(tfac[0].first) == 1,
               "split_decomposition: residual not a linear power over the tower");
    fq const abar = [&] {
        auto rr = fqp_roots(tc, tfac[0].first);
        BM_REQUIRE(rr.size() == 1, "split_decomposition: residual root");
        return rr[0];
    }();
    sd.shift = fq_lift(tc, abar);

    /* x' = x - a in ambient coordinates */
    std::vector<mpz_class> xprime = amb_x(amb);
    {
        auto av = amb_scalar(amb, sd.shift);
        for (unsigned i = 0; i < amb.n; i++) {
            xprime[i] -= av[i];
            mpz_fdiv_r(xprime[i].get_mpz_t(), xprime[i].get_mpz_t(),
                       amb.alg.modulus.get_mpz_t());
        }
    }

    /* minimal polynomial of x' on each component: solve
     * x'^ri e_i = sum_{b,j} z_{b,j} y^b x'^j e_i */
    auto factor_on_component = [&](unsigned ci, local_poly & out, unsigned & ri) {
        BM_REQUIRE(sd.mo.comp_d[ci] == dk,
                   "split component is not totally ramified over the tower");
        ri = sd.mo.comp_n[ci] / dk;
        auto const & [ev, ed] = sd.mo.idem[ci];
        /* powers of x' times the idempotent, cleared to integer vectors
         * over the common denominator ed */
        std::vector<std::vector<mpz_class>> pw(ri + 1);
        pw[0] = ev;
        for (unsigned j = 1; j <= ri; j++)
            pw[j] = amb.alg.mul(pw[j - 1], xprime);
        int_mat v(amb.n, ri * dk);
        for (unsigned j = 0; j < ri; j++)
            for (unsigned b = 0; b < dk; b++) {
                zq yb = zq_zero(tc);
                yb[b] = 1;
                auto col = amb.alg.mul(pw[j], amb_scalar(amb, yb));
                for (unsigned i = 0; i < amb.n; i++)
                    v(i, j * dk + b) = col[i];
            }
        /* both sides carry the same implicit denominator ed, and the
         * idempotent is only accurate mod p^idem_prec */
        if (sd.mo.idem_prec <= 6)
            throw precision_exhausted("split factor extraction needs more precision");
        mpz_class const pm = pow_ui(tc.p, sd.mo.idem_prec - 2);
        auto z = solve_congruence(v, pw[ri], pm, tc.p);
        out.c.assign(ri + 1, zq_zero(tc));
        for (unsigned j = 0; j < ri; j++) {
            zq c(dk);
            for (unsigned b = 0; b < dk; b++) {
                /* negate mod pm; the coefficients are only determined mod
                 * pm, so pick the representative that balances small */
                mpz_class g = (pm - z[j * dk + b]) % pm;
                if (2 * g > pm)
                    g += tc.pN - pm;
                c[b] = g;
            }
            out.c[j] = c;
        }
        out.c[ri] = zq_one(tc);
    };

    unsigned ra = 0, rb = 0;
    local_poly fa, fb;
    factor_on_component(0, fa, ra);
    factor_on_component(1, fb, rb);
    unsigned ca = 0, cb = 1;
    if (rb > ra || (rb == ra && lp_cmp(tc, fb, fa) < 0)) {
        std::swap(fa, fb);
        std::swap(ra, rb);
        std::swap(ca, cb);
    }
    sd.f1 = fa;
    sd.f2 = fb;
    sd.r1 = ra;
    sd.r2 = rb;
    sd.comp1 = ca;
    sd.comp2 = cb;
    BM_REQUIRE(lp_cmp(tc, sd.f1, sd.f2) != 0, "split factors must be distinct");

    /* s = ord_{E_1}(f2(x_1)): evaluate f2 at x' and take the component-1
     * valuation */
    std::vector<mpz_class> acc = amb_scalar(amb, sd.f2.c[sd.r2]);
    for (unsigned ii = sd.r2; ii-- > 0;) {
        acc = amb.alg.mul(acc, xprime);
        auto cv = amb_scalar(amb, sd.f2.c[ii]);
        for (unsigned i = 0; i < amb.n; i++) {
            acc[i] += cv[i];
            mpz_fdiv_r(acc[i].get_mpz_t(), acc[i].get_mpz_t(), amb.alg.modulus.get_mpz_t());
        }
    }
    sd.s = ord_component(amb, sd.mo, sd.comp1, acc, 1);

    /* Lemma: S_{K_w}(R_w) = s, and the conductor is the exponent-(s,s)
     * pair ideal */
    invariant_bundle const b = invariants(sd.rep, sd.mo);
    BM_REQUIRE(b.S_K == sd.s, "split: s must equal the relative Serre invariant");
    BM_REQUIRE(b.f_pair.size() == 2 && b.f_pair[0] == sd.s && b.f_pair[1] == sd.s,
               "split: conductor exponent pair must be (s, s)");
    return sd;
}

std::vector<overorder_entry> overorders_bass(local_order const & r, max_order_info const & mo)
{
    bass_witness w = is_bass(r, mo);
    if (!w.bass)
        throw not_bass("overorders_bass: order is not Bass");
    local_ambient const & amb = *r.amb;
    invariant_bundle const inv = invariants(r, mo);

    std::vector<overorder_entry> out;
    for (unsigned long k = inv.S_K + 1; k-- > 0;) {
        overorder_entry e;
        e.s_k = k;
        unsigned long fexp;
        if (mo.is_domain()) {
            unsigned long const num = 2 * k;
            BM_REQUIRE(num % inv.kappa_index == 0, "overorders: conductor exponent not integral");
            fexp = num / inv.kappa_index;
        } else {
            fexp = k;
        }
        e.f_exp = fexp;
        lattice ideal = fexp == 0 ? mo.m : lattice_power(mo.rad, fexp, amb.alg);
        lattice cand = ring_closure(lattice_sum(r.L, ideal, amb.alg), amb.alg);
        BM_REQUIRE(product_closure(cand, amb.alg), "overorder candidate is not a ring");
        /* S_K of the candidate */
        mpz_class const idx = lattice_index(mo.m, cand);
        unsigned long sv = 0;
        {
            mpz_class t = idx, scratch;
            if (t != 1)
                sv = mpz_remove(scratch.get_mpz_t(), t.get_mpz_t(), amb.ctx.p.get_mpz_t());
            BM_REQUIRE(pow_ui(amb.ctx.p, sv) == idx, "overorder index not a p-power");
        }
        BM_REQUIRE(sv == k * inv.d_R, "overorder has wrong relative Serre invariant");
        /* conductor determines the overorder: (cand : O_E) must equal the
         * ideal we adjoined */
        lattice cord = colon_lattice(cand, mo.m, amb.alg);
        BM_REQUIRE(cord == ideal, "overorder conductor mismatch");
        if (!mo.is_domain())
            for (unsigned ci = 0; ci < mo.r; ci++)
                e.f_pair.push_back(fexp);
        e.l = cand;
        e.unit_idx = unit_index(amb, cand, mo);
        out.push_back(std::move(e));
    }
    BM_REQUIRE(out.front().l == r.L, "overorder chain must start at R");
    BM_REQUIRE(out.back().l == mo.m, "overorder chain must end at the maximal order");
    return out;
}

mpz_class class_monoid_size(local_order const & r, max_order_info const & mo)
{
    bass_witness w = is_bass(r, mo);
    if (!w.bass)
        throw not_bass("class_monoid_size: order is not Bass");
    return mpz_class(invariants(r, mo).S_K + 1);
}

orbital_result orbital_integral(local_order const & r, max_order_info const & mo)
{
    bass_witness w = is_bass(r, mo);
    if (!w.bass)
        throw not_bass("orbital_integral: order is not Bass");
    local_ambient const & amb = *r.amb;
    invariant_bundle const inv = invariants(r, mo);
    orbital_result res;
    res.class_monoid = mpz_class(inv.S_K + 1);
    if (mo.is_domain()) {
        /* q^S + [kE:kR] (q^{S-dR} + ... + q^{dR} + 1), q = p */
        res.lambda_count = pow_ui(amb.ctx.p, inv.S);
        mpz_class tail = 0;
        for (unsigned long j = 0; j < inv.S_K; j++)
            tail += pow_ui(amb.ctx.p, j * inv.d_R);
        res.lambda_count += inv.kappa_index * tail;
    } else {
        /* q_R^{S_K} = p^{S} */
        res.lambda_count = pow_ui(amb.ctx.p, inv.S);
    }
    return res;
}

mass_report mass_check(local_order const & r, max_order_info const & mo)
{
    mass_report rep;
    rep.lambda_closed = orbital_integral(r, mo).lambda_count;
    rep.unit_sum = 0;
    for (auto const & e : overorders_bass(r, mo)) {
        rep.per_overorder.push_back(e.unit_idx);
        rep.unit_sum += e.unit_idx;
    }
    rep.equal = rep.unit_sum == rep.lambda_closed;
    return rep;
}

mpq_class geometric_orbital(local_order const & r, max_order_info const & mo)
{
    if (!r.amb->phi || !(r.L == standard_lattice(r.amb->n)))
        throw not_monogenic("geometric_orbital: order is not the power-basis order");
    local_ambient const & amb = *r.amb;
    unsigned const n = amb.rank_k;
    mpz_class const q = amb.ctx.q();
    invariant_bundle const inv = invariants(r, mo);
    BM_REQUIRE(inv.S % amb.ctx.dk == 0, "geometric_orbital: S over the base ring");
    unsigned long const s_base = inv.S / amb.ctx.dk;

    mpz_class lambda = orbital_integral(r, mo).lambda_count;
    mpz_class gl = 1;
    for (unsigned i = 0; i < n; i++)
        gl *= pow_ui(q, n) - pow_ui(q, i);
    mpz_class denom = pow_ui(q, s_base);
    if (n % 2 == 1)
        denom *= (q - 1) * pow_ui(q, (unsigned long)n * n - 1);
    else
        denom *= (q * q - 1) * pow_ui(q, (unsigned long)n * n - 2);
    mpq_class so(lambda * gl, denom);
    so.canonicalize();
    return so;
}

} // namespace bassmonoid
