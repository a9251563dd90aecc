#include "verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "report.hpp"

namespace bassmonoid {

static mpz_class pow_ui(mpz_class const & b, unsigned long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

unsigned long local_disc_valuation(local_ambient const & amb, lattice const & l)
{
    unsigned const n = amb.n;
    int_mat gram(n, n);
    for (unsigned i = 0; i < n; i++)
        for (unsigned j = i; j < n; j++) {
            std::vector<mpz_class> bi(n), bj(n);
            for (unsigned t = 0; t < n; t++) {
                bi[t] = l.basis(t, i);
                bj[t] = l.basis(t, j);
            }
            auto pr = amb.alg.mul(bi, bj);
            int_mat mm = amb.alg.mul_matrix(pr);
            mpz_class tr = 0;
            for (unsigned t = 0; t < n; t++)
                tr += mm(t, t);
            mpz_fdiv_r(tr.get_mpz_t(), tr.get_mpz_t(), amb.alg.modulus.get_mpz_t());
            gram(i, j) = tr;
            gram(j, i) = tr;
        }
    mpz_class const d = det(gram);
    if (d == 0)
        throw precision_exhausted("trace form determinant vanishes at working precision");
    mpz_class scratch;
    unsigned long const v = mpz_remove(scratch.get_mpz_t(), d.get_mpz_t(), amb.ctx.p.get_mpz_t());
    unsigned long const dden =
        mpz_remove(scratch.get_mpz_t(), l.den.get_mpz_t(), amb.ctx.p.get_mpz_t());
    BM_REQUIRE(v >= 2 * n * dden, "disc valuation below denominator correction");
    unsigned long const out = v - 2 * n * dden;
    if (out + 4 >= amb.ctx.prec)
        throw precision_exhausted("disc valuation too close to working precision");
    return out;
}

namespace {

struct checker {
    verify_result res;
    std::string tag;

    void fail(std::string const & what)
    {
        res.violations.push_back(tag + ": " + what);
    }
    void require(bool ok, std::string const & what)
    {
        if (!ok)
            fail(what);
    }
};

} // namespace

verify_result verify_local_order(local_order const & ord, max_order_info const & mo,
                                 oracle_caps const & caps, bool run_oracles)
{
    checker ck;
    local_ambient const & amb = *ord.amb;
    mpz_class const & p = amb.ctx.p;
    std::ostringstream tag;
    tag << "p=" << p.get_str();
    if (ord.amb->phi)
        tag << " phi=" << lp_to_string(amb.ctx, *ord.amb->phi);
    ck.tag = tag.str();

    bass_witness w = is_bass(ord, mo);
    invariant_bundle inv = invariants(ord, mo);

    /* invariant chains hold for any order of a field */
    if (mo.is_domain() && !(ord.L == mo.m)) {
        ck.require(1 <= inv.u && inv.u <= inv.e, "u out of [1, e]");
        ck.require(inv.u <= inv.f, "u <= f fails");
        ck.require(inv.f <= (unsigned long)inv.e * inv.S, "f <= e S fails");
        ck.require((unsigned long)inv.e * inv.S <= (unsigned long)(inv.e * inv.d) * inv.f,
                   "e S <= n f fails");
        ck.require(inv.f >= 1, "f >= 1 fails");
    }
    if (mo.is_domain() && ord.L == mo.m)
        ck.require(inv.S == 0 && inv.f == 0 && inv.u == 1, "maximal invariants not (0,0,1)");

    /* Serre invariant from the discriminant, for monogenic orders */
    if (ord.amb->phi && ord.L == standard_lattice(amb.n) && amb.ctx.dk == 1) {
        try {
            unsigned long const vphi = local_disc_valuation(amb, ord.L);
            unsigned long const vmax = local_disc_valuation(amb, mo.m);
            ck.require(2 * inv.S == vphi - vmax, "S != (ord disc phi - ord disc E)/2");
        } catch (precision_exhausted const &) {
            ck.res.skipped.push_back(ck.tag + ": disc valuation at precision limit");
        }
    }

    /* phi_2 dichotomy on even-degree domain input with the right shape */
    if (ord.amb->phi && mo.is_domain() && w.bass && ord.amb->phi->degree() % 2 == 0) {
        try {
            auto rq = residual_quadratic(amb.ctx, *ord.amb->phi);
            ck.require(rq.classification != quad_class::split_separable,
                       "phi_2 split separable on a Bass domain");
        } catch (shape_violation const &) {
            /* valuation pattern does not apply */
        }
    }

    /* polynomial-level Bass criterion agrees with the lattice one */
    if (ord.amb->phi && mo.is_domain() && ord.L == standard_lattice(amb.n)) {
        bool mono = is_bass_monogenic(amb.ctx, *ord.amb->phi);
        ck.require(mono == w.bass, "is_bass_monogenic disagrees with is_bass");
    }

    if (!w.bass) {
        ck.res.skipped.push_back(ck.tag + ": not Bass (dim = " + std::to_string(w.m_dim) +
                                 "), closed forms skipped");
        return ck.res;
    }

    /* relsercon */
    if (mo.is_domain())
        ck.require(inv.f * inv.kappa_index == 2 * inv.S_K, "f != 2 S_K / kappa");
    else
        ck.require(inv.f_pair.size() == mo.r &&
                       std::all_of(inv.f_pair.begin(), inv.f_pair.end(),
                                   [&](unsigned long a) { return a == inv.S_K; }),
                   "split conductor pair != (S_K, S_K)");

    /* overorder chain, conductor-determines-overorder is asserted inside */
    std::vector<overorder_entry> chain;
    try {
        chain = overorders_bass(ord, mo);
    } catch (precision_exhausted const &) {
        throw;
    } catch (error const & e) {
        ck.fail(std::string("overorders_bass failed: ") + e.what());
        return ck.res;
    }
    ck.require(chain.size() == inv.S_K + 1, "overorder count != S_K + 1");
    ck.require(class_monoid_size(ord, mo) == mpz_class(inv.S_K + 1), "class monoid size");

    /* mass identity */
    auto mc = mass_check(ord, mo);
    ck.require(mc.equal, "mass identity fails: lambda=" + mc.lambda_closed.get_str() +
                             " sum=" + mc.unit_sum.get_str());

    /* unit index bounds and the dual unit-index routes */
    for (auto const & e : chain) {
        local_order oo{ord.amb, e.l};
        if (mo.is_domain()) {
            ck.require(unit_index_via_conductor(amb, e.l, mo) == e.unit_idx,
                       "unit index routes disagree");
            if (!(e.l == mo.m)) {
                invariant_bundle oi = invariants(oo, mo);
                lattice m_o = p_radical(amb, e.l);
                mpz_class scratch;
                unsigned long const d_o = mpz_remove(
                    scratch.get_mpz_t(), lattice_index(e.l, m_o).get_mpz_t(), p.get_mpz_t());
                mpz_class const head = (pow_ui(p, inv.d) - 1) / (pow_ui(p, d_o) - 1);
                mpz_class const lo = head * pow_ui(p, inv.d * (oi.u - 1));
                mpz_class const hi = head * pow_ui(p, inv.d * (oi.f - 1));
                ck.require(lo <= e.unit_idx && e.unit_idx <= hi,
                           "unit index outside the [u, f] bounds");
            }
        } else {
            /* split overorder chain: q^{s-k-1}(q-1) with q = p^{d_R} */
            mpz_class const q = pow_ui(p, inv.d_R);
            mpz_class expect =
                e.s_k == 0 ? mpz_class(1) : pow_ui(q, (unsigned long)(e.s_k - 1)) * (q - 1);
            ck.require(e.unit_idx == expect, "split unit index != q^{s-k-1}(q-1)");
        }
    }

    /* split structure */
    if (!mo.is_domain() && ord.amb->phi) {
        try {
            auto sd = split_decomposition(ord, mo);
            ck.require(sd.s == inv.S_K, "split s != S_K");
        } catch (precision_exhausted const &) {
            throw;
        } catch (error const & e) {
            ck.fail(std::string("split_decomposition failed: ") + e.what());
        }
    }

    if (run_oracles) {
        try {
            auto brute = brute_overorders(amb.alg, ord.L, mo.m, caps);
            std::set<lattice> a(brute.begin(), brute.end()), b;
            for (auto const & e : chain)
                b.insert(e.l);
            ck.require(a == b, "brute-force overorders differ from the closed-form chain");
        } catch (search_space_too_large const &) {
            ck.res.skipped.push_back(ck.tag + ": overorder oracle above cap");
        }
        try {
            unsigned long const depth = std::max<unsigned long>(2, inv.f + 1);
            mpz_class cls = brute_ideal_classes(ord, mo, depth, caps);
            ck.require(cls == mpz_class(inv.S_K + 1), "brute ideal classes != S_K + 1");
        } catch (search_space_too_large const &) {
            ck.res.skipped.push_back(ck.tag + ": ideal class oracle above cap");
        }
        try {
            unsigned long const depth = std::max<unsigned long>(2, inv.f + 1);
            mpz_class ub = brute_unit_index(amb, ord.L, mo, depth, caps);
            ck.require(ub == unit_index(amb, ord.L, mo), "brute unit index mismatch");
        } catch (search_space_too_large const &) {
            ck.res.skipped.push_back(ck.tag + ": unit index oracle above cap");
        }
    }
    return ck.res;
}

verify_result verify_local_entry(std::vector<mpz_class> const & poly, mpz_class const & p,
                                 oracle_caps const & caps, bool run_oracles)
{
    mpz_class const disc = disc_int_poly(poly);
    if (disc == 0) {
        verify_result r;
        r.skipped.push_back("p=" + p.get_str() + " " + poly_to_string(poly) +
                            ": repeated factor, not an order");
        return r;
    }
    mpz_class scratch;
    unsigned long const v = mpz_remove(scratch.get_mpz_t(), disc.get_mpz_t(), p.get_mpz_t());
    return with_precision_retry(2 * v + 4, [&](unsigned long prec) {
        padic_ctx ctx(p, prec, 1);
        verify_result all;
        for (auto const & phi_w : hensel_split(ctx, lp_from_integers(ctx, poly))) {
            local_order ord = order_from_polynomial(ctx, phi_w);
            max_order_info mo = maximal_order(ord);
            auto r = verify_local_order(ord, mo, caps, run_oracles);
            all.violations.insert(all.violations.end(), r.violations.begin(),
                                  r.violations.end());
            all.skipped.insert(all.skipped.end(), r.skipped.begin(), r.skipped.end());
        }
        return all;
    });
}

verify_result verify_global_entry(std::vector<mpz_class> const & poly, oracle_caps const & caps,
                                  bool run_oracles)
{
    checker ck;
    ck.tag = poly_to_string(poly);
    global_order g;
    try {
        g = global_from_polynomial(poly);
    } catch (reducible const & e) {
        verify_result r;
        r.skipped.push_back(ck.tag + ": " + e.what());
        return r;
    }

    mpz_class count;
    try {
        count = count_nontrivial_classes(g);
    } catch (not_bass const & e) {
        ck.res.skipped.push_back(ck.tag + ": " + e.what());
        return ck.res;
    }

    /* product of local class monoid sizes */
    mpz_class prod = 1;
    mpz_class norm_lhs = 1;
    for (auto const & p : g.bad_primes)
        for (auto const & piece : localize(g, p)) {
            prod *= mpz_class(piece.inv.S_K + 1);
            mpz_class qw = pow_ui(p, piece.inv.d_R);
            norm_lhs *= pow_ui(qw, 2 * piece.inv.S_K);
        }
    ck.require(count == prod, "global count != product of local counts");

    mpz_class norm_rhs = g.disc_r / g.disc_oe;
    if (norm_rhs < 0)
        norm_rhs = -norm_rhs;
    ck.require(norm_lhs == norm_rhs, "norm identity fails");

    auto oo = overorders_global(g);
    ck.require(mpz_class(oo.size()) == count, "overorder count != class count");

    /* conductor reconstruction */
    {
        lattice cglob = colon_lattice(g.l, g.max_lattice, g.alg);
        auto cd = conductor_factorization(g);
        lattice rebuilt = g.max_lattice;
        for (auto const & e : cd.entries) {
            auto pieces = localize(g, e.p);
            auto const & piece = pieces[e.w_index];
            unsigned long const fexp =
                e.kind == conductor_entry::kind_t::kappa_one ? 2 * e.s_k : e.s_k;
            lattice target = lattice_power(piece.mo.rad, fexp, piece.ord.amb->alg);
            rebuilt = preimage_of_local(g, piece, target, rebuilt);
        }
        ck.require(rebuilt == cglob, "conductor reconstruction != (R : O_E)");
    }

    /* re-localization of the global overorders matches the local chains */
    for (auto const & p : g.bad_primes) {
        auto pieces = localize(g, p);
        for (auto const & piece : pieces) {
            if (piece.inv.S_K == 0)
                continue;
            std::set<lattice> local_set, relocalized;
            for (auto const & e : overorders_bass(piece.ord, piece.mo))
                local_set.insert(e.l);
            for (auto const & e : oo)
                relocalized.insert(localize_lattice(g, piece, e.l));
            ck.require(relocalized == local_set,
                       "re-localized global overorders differ from the local chain at p=" +
                           p.get_str());
        }
    }

    if (run_oracles) {
        try {
            auto brute = brute_overorders(g.alg, g.l, g.max_lattice, caps);
            std::set<lattice> a(brute.begin(), brute.end()), b;
            for (auto const & e : oo)
                b.insert(e.l);
            ck.require(a == b, "global brute-force subrings differ from overorders_global");
        } catch (search_space_too_large const &) {
            ck.res.skipped.push_back(ck.tag + ": global subring oracle above cap");
        }
    }
    return ck.res;
}

} // namespace bassmonoid
