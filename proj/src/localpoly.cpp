#include "localpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "intmat.hpp"

namespace bassmonoid {

static constexpr unsigned long k_enum_cap = 2'000'000;

local_poly lp_from_integers(padic_ctx const & ctx, std::vector<mpz_class> const & ascending)
{
    local_poly f;
    f.c.reserve(ascending.size());
    for (auto const & a : ascending)
        f.c.push_back(zq_from_mpz(ctx, a));
    return f;
}

bool lp_is_monic(padic_ctx const & ctx, local_poly const & f)
{
    return !f.c.empty() && f.c.back() == zq_one(ctx);
}

local_poly lp_mul(padic_ctx const & ctx, local_poly const & a, local_poly const & b)
{
    local_poly r;
    if (a.c.empty() || b.c.empty())
        return r;
    r.c.assign(a.c.size() + b.c.size() - 1, zq_zero(ctx));
    for (size_t i = 0; i < a.c.size(); i++) {
        if (zq_is_zero(a.c[i]))
            continue;
        for (size_t j = 0; j < b.c.size(); j++)
            r.c[i + j] = zq_add(ctx, r.c[i + j], zq_mul(ctx, a.c[i], b.c[j]));
    }
    return r;
}

local_poly lp_sub(padic_ctx const & ctx, local_poly const & a, local_poly const & b)
{
    local_poly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), zq_zero(ctx));
    for (size_t i = 0; i < a.c.size(); i++)
        r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); i++)
        r.c[i] = zq_sub(ctx, r.c[i], b.c[i]);
    return r;
}

local_poly lp_divmod_monic(padic_ctx const & ctx, local_poly const & a, local_poly const & b,
                           local_poly & rem)
{
    BM_REQUIRE(lp_is_monic(ctx, b), "lp_divmod_monic: divisor not monic");
    unsigned const db = b.degree();
    local_poly q;
    rem = a;
    if (rem.c.size() <= db) {
        q.c.clear();
        return q;
    }
    q.c.assign(rem.c.size() - db, zq_zero(ctx));
    for (size_t ii = rem.c.size(); ii-- > db;) {
        zq const coef = rem.c[ii];
        if (zq_is_zero(coef))
            continue;
        q.c[ii - db] = coef;
        for (unsigned j = 0; j <= db; j++)
            rem.c[ii - db + j] = zq_sub(ctx, rem.c[ii - db + j], zq_mul(ctx, coef, b.c[j]));
    }
    while (rem.c.size() > 1 && zq_is_zero(rem.c.back()))
        rem.c.pop_back();
    if (rem.c.size() == 1 && zq_is_zero(rem.c[0]))
        rem.c.clear();
    return q;
}

zq lp_eval(padic_ctx const & ctx, local_poly const & f, zq const & x)
{
    zq r = zq_zero(ctx);
    for (size_t ii = f.c.size(); ii-- > 0;)
        r = zq_add(ctx, zq_mul(ctx, r, x), f.c[ii]);
    return r;
}

local_poly lp_derivative(padic_ctx const & ctx, local_poly const & f)
{
    local_poly r;
    for (size_t i = 1; i < f.c.size(); i++)
        r.c.push_back(zq_mul(ctx, f.c[i], zq_from_mpz(ctx, mpz_class(i))));
    return r;
}

local_poly lp_shift(padic_ctx const & ctx, local_poly const & f, zq const & a)
{
    /* Horner: f(x + a) = (...((c_n)(x+a) + c_{n-1})(x+a) + ...) */
    local_poly r;
    local_poly xa;
    xa.c = {a, zq_one(ctx)};
    for (size_t ii = f.c.size(); ii-- > 0;) {
        r = lp_mul(ctx, r, xa);
        if (r.c.empty())
            r.c.push_back(zq_zero(ctx));
        r.c[0] = zq_add(ctx, r.c[0], f.c[ii]);
    }
    return r;
}

fq_poly lp_to_fq(padic_ctx const & ctx, local_poly const & f)
{
    fq_poly r;
    r.reserve(f.c.size());
    for (auto const & co : f.c)
        r.push_back(zq_to_fq(ctx, co));
    return fqp_normalize(ctx, std::move(r));
}

int lp_cmp(padic_ctx const & ctx, local_poly const & a, local_poly const & b)
{
    (void)ctx;
    if (a.degree() != b.degree())
        return a.degree() < b.degree() ? -1 : 1;
    for (size_t i = 0; i < a.c.size(); i++)
        for (size_t k = 0; k < a.c[i].size(); k++) {
            if (a.c[i][k] != b.c[i][k])
                return a.c[i][k] < b.c[i][k] ? -1 : 1;
        }
    return 0;
}

std::string lp_to_string(padic_ctx const & ctx, local_poly const & f)
{
    /* balanced representatives for readability */
    auto balanced = [&](mpz_class const & c) {
        return 2 * c > ctx.pN ? mpz_class(c - ctx.pN) : c;
    };
    std::ostringstream os;
    bool first = true;
    for (size_t ii = f.c.size(); ii-- > 0;) {
        if (zq_is_zero(f.c[ii]) && f.c.size() > 1)
            continue;
        if (ctx.dk == 1) {
            mpz_class c = balanced(f.c[ii][0]);
            if (!first)
                os << (c < 0 ? " - " : " + ");
            else if (c < 0)
                os << "-";
            mpz_class a = c < 0 ? mpz_class(-c) : c;
            if (a != 1 || ii == 0)
                os << a.get_str();
        } else {
            if (!first)
                os << " + ";
            os << "[";
            for (unsigned b = 0; b < ctx.dk; b++)
                os << (b ? "," : "") << balanced(f.c[ii][b]).get_str();
            os << "]";
            if (ii > 0)
                os << "*";
        }
        if (ii >= 1) {
            os << "x";
            if (ii > 1)
                os << "^" << ii;
        }
        first = false;
    }
    return os.str();
}

/* --- residue field polynomials --- */

unsigned fqp_degree(fq_poly const & f)
{
    return f.empty() ? 0 : unsigned(f.size() - 1);
}

fq_poly fqp_normalize(padic_ctx const & ctx, fq_poly f)
{
    (void)ctx;
    while (!f.empty() && fq_is_zero(f.back()))
        f.pop_back();
    return f;
}

fq_poly fqp_mul(padic_ctx const & ctx, fq_poly const & a, fq_poly const & b)
{
    if (a.empty() || b.empty())
        return {};
    fq_poly r(a.size() + b.size() - 1, fq(ctx.dk, 0));
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < b.size(); j++)
            r[i + j] = fq_add(ctx, r[i + j], fq_mul(ctx, a[i], b[j]));
    return fqp_normalize(ctx, std::move(r));
}

fq_poly fqp_divmod(padic_ctx const & ctx, fq_poly const & a, fq_poly const & b, fq_poly & rem)
{
    BM_REQUIRE(!b.empty(), "fqp_divmod by zero");
    fq const lead_inv = fq_inv(ctx, b.back());
    rem = a;
    fq_poly q;
    if (a.size() < b.size())
        return q;
    q.assign(a.size() - b.size() + 1, fq(ctx.dk, 0));
    for (size_t ii = rem.size(); ii-- + 1 > b.size();) {
        if (fq_is_zero(rem[ii]))
            continue;
        fq const f = fq_mul(ctx, rem[ii], lead_inv);
        q[ii - (b.size() - 1)] = f;
        for (size_t j = 0; j < b.size(); j++)
            rem[ii - (b.size() - 1) + j] =
                fq_sub(ctx, rem[ii - (b.size() - 1) + j], fq_mul(ctx, f, b[j]));
    }
    rem = fqp_normalize(ctx, std::move(rem));
    return fqp_normalize(ctx, std::move(q));
}

static fq_poly fqp_make_monic(padic_ctx const & ctx, fq_poly f)
{
    if (f.empty())
        return f;
    fq const inv = fq_inv(ctx, f.back());
    for (auto & c : f)
        c = fq_mul(ctx, c, inv);
    return f;
}

fq_poly fqp_gcd(padic_ctx const & ctx, fq_poly a, fq_poly b)
{
    a = fqp_normalize(ctx, std::move(a));
    b = fqp_normalize(ctx, std::move(b));
    while (!b.empty()) {
        fq_poly r;
        fqp_divmod(ctx, a, b, r);
        a = std::move(b);
        b = std::move(r);
    }
    return fqp_make_monic(ctx, std::move(a));
}

void fqp_ext_gcd(padic_ctx const & ctx, fq_poly const & a, fq_poly const & b, fq_poly & g,
                 fq_poly & u, fq_poly & v)
{
    fq_poly r0 = fqp_normalize(ctx, a), r1 = fqp_normalize(ctx, b);
    fq_poly u0 = {fq(ctx.dk, 0)}, u1 = {fq(ctx.dk, 0)};
    u0[0][0] = 1;
    u0 = fqp_normalize(ctx, u0);
    u1.clear();
    fq_poly v0, v1 = {fq(ctx.dk, 0)};
    v1[0][0] = 1;
    v1 = fqp_normalize(ctx, v1);
    while (!r1.empty()) {
        fq_poly rem;
        fq_poly q = fqp_divmod(ctx, r0, r1, rem);
        r0 = std::move(r1);
        r1 = std::move(rem);
        fq_poly nu = fqp_normalize(ctx, [&] {
            fq_poly t = fqp_mul(ctx, q, u1);
            fq_poly res(std::max(u0.size(), t.size()), fq(ctx.dk, 0));
            for (size_t i = 0; i < u0.size(); i++)
                res[i] = u0[i];
            for (size_t i = 0; i < t.size(); i++)
                res[i] = fq_sub(ctx, res[i], t[i]);
            return res;
        }());
        u0 = std::move(u1);
        u1 = std::move(nu);
        fq_poly nv = fqp_normalize(ctx, [&] {
            fq_poly t = fqp_mul(ctx, q, v1);
            fq_poly res(std::max(v0.size(), t.size()), fq(ctx.dk, 0));
            for (size_t i = 0; i < v0.size(); i++)
                res[i] = v0[i];
            for (size_t i = 0; i < t.size(); i++)
                res[i] = fq_sub(ctx, res[i], t[i]);
            return res;
        }());
        v0 = std::move(v1);
        v1 = std::move(nv);
    }
    /* make monic */
    g = r0;
    u = u0;
    v = v0;
    if (!g.empty()) {
        fq const inv = fq_inv(ctx, g.back());
        for (auto & c : g)
            c = fq_mul(ctx, c, inv);
        for (auto & c : u)
            c = fq_mul(ctx, c, inv);
        for (auto & c : v)
            c = fq_mul(ctx, c, inv);
    }
}

std::vector<fq> fqp_roots(padic_ctx const & ctx, fq_poly const & f)
{
    mpz_class const q = ctx.q();
    BM_REQUIRE(q <= k_enum_cap, "residue field too large for root enumeration");
    std::vector<fq> roots;
    for (mpz_class v = 0; v < q; v++) {
        fq x = fq_decode(ctx, v);
        fq acc(ctx.dk, 0);
        for (size_t ii = f.size(); ii-- > 0;)
            acc = fq_add(ctx, fq_mul(ctx, acc, x), f[ii]);
        if (fq_is_zero(acc))
            roots.push_back(x);
    }
    return roots;
}

static fq_poly fqp_powmod_x(padic_ctx const & ctx, mpz_class e, fq_poly const & mod)
{
    /* x^e mod `mod` */
    fq_poly r = {fq(ctx.dk, 0)};
    r[0][0] = 1;
    fq_poly b = {fq(ctx.dk, 0), fq(ctx.dk, 0)};
    b[1][0] = 1;
    b = fqp_normalize(ctx, b);
    fq_poly rem;
    fqp_divmod(ctx, b, mod, rem);
    b = rem;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            r = fqp_mul(ctx, r, b);
            fqp_divmod(ctx, r, mod, rem);
            r = rem;
        }
        b = fqp_mul(ctx, b, b);
        fqp_divmod(ctx, b, mod, rem);
        b = rem;
        e >>= 1;
    }
    return r;
}

static int fqp_cmp(padic_ctx const & ctx, fq_poly const & a, fq_poly const & b)
{
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (size_t i = 0; i < a.size(); i++) {
        mpz_class ea = fq_encode(ctx, a[i]), eb = fq_encode(ctx, b[i]);
        if (ea != eb)
            return ea < eb ? -1 : 1;
    }
    return 0;
}

/* all monic polynomials of given degree in canonical order */
static fq_poly fqp_nth_monic(padic_ctx const & ctx, unsigned deg, mpz_class idx)
{
    fq_poly f(deg + 1, fq(ctx.dk, 0));
    mpz_class const q = ctx.q();
    for (unsigned i = 0; i < deg; i++) {
        f[i] = fq_decode(ctx, idx % q);
        idx /= q;
    }
    f[deg][0] = 1;
    return f;
}

static fq_poly fqp_pth_root(padic_ctx const & ctx, fq_poly const & f)
{
    /* f = g(x^p): g coefficients are p-th roots (Frobenius inverse:
     * a^(q/p)) of f's coefficients at indices divisible by p */
    BM_REQUIRE(mpz_fits_ulong_p(ctx.p.get_mpz_t()), "fqp_pth_root: prime too large");
    unsigned long const p = mpz_get_ui(ctx.p.get_mpz_t());
    mpz_class const e = ctx.q() / ctx.p;
    fq_poly g;
    for (size_t i = 0; i < f.size(); i += p)
        g.push_back(fq_pow(ctx, f[i], e));
    return fqp_normalize(ctx, std::move(g));
}

static fq_poly fqp_derivative(padic_ctx const & ctx, fq_poly const & f)
{
    fq_poly r;
    for (size_t i = 1; i < f.size(); i++) {
        fq c = f[i];
        mpz_class const m = mpz_class(i) % ctx.p;
        fq scale(ctx.dk, 0);
        scale[0] = m;
        r.push_back(fq_mul(ctx, c, scale));
    }
    return fqp_normalize(ctx, std::move(r));
}

/* distinct-degree then equal-degree (by deterministic enumeration) on a
 * squarefree monic input */
static void ddf_edf(padic_ctx const & ctx, fq_poly s, std::vector<fq_poly> & out)
{
    mpz_class const q = ctx.q();
    unsigned d = 1;
    while (fqp_degree(s) >= 1) {
        if (fqp_degree(s) < 2 * d) {
            out.push_back(fqp_make_monic(ctx, s)); /* irreducible remainder */
            return;
        }
        /* gcd(s, x^(q^d) - x) collects all factors of degree d */
        mpz_class qd = 1;
        for (unsigned i = 0; i < d; i++)
            qd *= q;
        fq_poly xqd = fqp_powmod_x(ctx, qd, s);
        /* xqd - x */
        fq_poly diff = xqd;
        if (diff.size() < 2)
            diff.resize(2, fq(ctx.dk, 0));
        fq one(ctx.dk, 0);
        one[0] = 1;
        diff[1] = fq_sub(ctx, diff[1], one);
        diff = fqp_normalize(ctx, std::move(diff));
        fq_poly part = fqp_gcd(ctx, s, diff);
        if (fqp_degree(part) > 0) {
            unsigned const k = fqp_degree(part) / d;
            if (k == 1)
                out.push_back(part);
            else {
                /* enumerate monic degree-d divisors in canonical order */
                mpz_class candidates = 1;
                for (unsigned i = 0; i < d; i++)
                    candidates *= q;
                if (candidates > k_enum_cap)
                    throw search_space_too_large("equal-degree split enumeration");
                fq_poly work = part;
                for (mpz_class idx = 0; idx < candidates && fqp_degree(work) > 0; idx++) {
                    fq_poly cand = fqp_nth_monic(ctx, d, idx);
                    fq_poly rem;
                    fq_poly quo = fqp_divmod(ctx, work, cand, rem);
                    if (rem.empty()) {
                        out.push_back(cand);
                        work = quo;
                    }
                }
                BM_REQUIRE(fqp_degree(work) == 0, "equal-degree split incomplete");
            }
            fq_poly rem;
            s = fqp_divmod(ctx, s, part, rem);
            BM_REQUIRE(rem.empty(), "ddf: non-exact division");
        }
        d++;
    }
}

std::vector<std::pair<fq_poly, unsigned>> factor_fq(padic_ctx const & ctx, fq_poly f)
{
    f = fqp_normalize(ctx, std::move(f));
    BM_REQUIRE(!f.empty(), "factor_fq of zero polynomial");
    f = fqp_make_monic(ctx, std::move(f));

    std::vector<fq_poly> irreducibles;
    std::vector<fq_poly> stack = {f};
    while (!stack.empty()) {
        fq_poly g = std::move(stack.back());
        stack.pop_back();
        if (fqp_degree(g) == 0)
            continue;
        fq_poly gd = fqp_derivative(ctx, g);
        if (gd.empty()) {
            stack.push_back(fqp_pth_root(ctx, g));
            continue;
        }
        fq_poly cof = fqp_gcd(ctx, g, gd);
        fq_poly rem;
        fq_poly sqfree = fqp_divmod(ctx, g, cof, rem);
        BM_REQUIRE(rem.empty(), "factor_fq: squarefree part division");
        ddf_edf(ctx, sqfree, irreducibles);
        if (fqp_degree(cof) > 0)
            stack.push_back(cof);
    }

    /* dedupe, then recover multiplicities by trial division of f */
    std::sort(irreducibles.begin(), irreducibles.end(),
              [&](fq_poly const & a, fq_poly const & b) { return fqp_cmp(ctx, a, b) < 0; });
    irreducibles.erase(std::unique(irreducibles.begin(), irreducibles.end()),
                       irreducibles.end());

    std::vector<std::pair<fq_poly, unsigned>> out;
    fq_poly work = f;
    for (auto const & g : irreducibles) {
        unsigned mult = 0;
        for (;;) {
            fq_poly rem;
            fq_poly quo = fqp_divmod(ctx, work, g, rem);
            if (!rem.empty())
                break;
            work = quo;
            mult++;
        }
        if (mult)
            out.push_back({g, mult});
    }
    BM_REQUIRE(fqp_degree(work) == 0, "factor_fq: leftover factor");
    return out;
}

/* --- Hensel lifting --- */

static local_poly lp_from_fq(padic_ctx const & ctx, fq_poly const & f)
{
    local_poly r;
    for (auto const & c : f)
        r.c.push_back(fq_lift(ctx, c));
    return r;
}

/* f monic = a*b mod p with residuals abar, bbar coprime monic; quadratic
 * lift to the context modulus. */
static void two_factor_hensel(padic_ctx const & ctx, local_poly const & f, fq_poly const & abar,
                              fq_poly const & bbar, local_poly & a, local_poly & b)
{
    fq_poly gbar, sbar, tbar;
    fqp_ext_gcd(ctx, abar, bbar, gbar, sbar, tbar);
    BM_REQUIRE(fqp_degree(gbar) == 0 && !gbar.empty(), "hensel: residual factors not coprime");

    a = lp_from_fq(ctx, abar);
    b = lp_from_fq(ctx, bbar);
    local_poly s = lp_from_fq(ctx, sbar);
    local_poly t = lp_from_fq(ctx, tbar);

    auto trim = [&](local_poly & g) {
        while (!g.c.empty() && zq_is_zero(g.c.back()))
            g.c.pop_back();
    };
    auto is_zero = [&](local_poly const & g) {
        for (auto const & co : g.c)
            if (!zq_is_zero(co))
                return false;
        return true;
    };

    unsigned long iters = 1;
    while ((1ul << iters) < ctx.prec + 1)
        iters++;
    bool converged = false;
    for (unsigned long it = 0; it <= iters + 1; it++) {
        local_poly e = lp_sub(ctx, f, lp_mul(ctx, a, b));
        trim(e);
        if (is_zero(e)) {
            converged = true;
            break;
        }
        /* a <- a + (t e mod a) keeps a monic of fixed degree; the cofactor
         * is recomputed as an exact monic quotient, which both preserves
         * f = a b mod p^(2k) and keeps degrees in check. */
        local_poly te = lp_mul(ctx, t, e);
        local_poly r;
        lp_divmod_monic(ctx, te, a, r);
        for (size_t i = 0; i < r.c.size(); i++)
            a.c[i] = zq_add(ctx, a.c[i], r.c[i]);
        local_poly rem;
        b = lp_divmod_monic(ctx, f, a, rem);
        /* Bezout maintenance: d = s a + t b - 1 (== 0 mod p^k);
         * s <- s - (s d mod b), t <- t - t d - (s d div b) a */
        local_poly d = lp_mul(ctx, s, a);
        {
            local_poly tb = lp_mul(ctx, t, b);
            local_poly tmp;
            tmp.c.assign(std::max(d.c.size(), tb.c.size()), zq_zero(ctx));
            for (size_t i = 0; i < d.c.size(); i++)
                tmp.c[i] = d.c[i];
            for (size_t i = 0; i < tb.c.size(); i++)
                tmp.c[i] = zq_add(ctx, tmp.c[i], tb.c[i]);
            tmp.c[0] = zq_sub(ctx, tmp.c[0], zq_one(ctx));
            trim(tmp);
            d = tmp;
        }
        if (is_zero(d))
            continue;
        local_poly sd = lp_mul(ctx, s, d);
        local_poly r2;
        local_poly q2 = lp_divmod_monic(ctx, sd, b, r2);
        s = lp_sub(ctx, s, r2);
        trim(s);
        local_poly td = lp_mul(ctx, t, d);
        local_poly q2a = lp_mul(ctx, q2, a);
        local_poly tmp;
        tmp.c.assign(std::max(std::max(t.c.size(), td.c.size()), q2a.c.size()), zq_zero(ctx));
        for (size_t i = 0; i < t.c.size(); i++)
            tmp.c[i] = t.c[i];
        for (size_t i = 0; i < td.c.size(); i++)
            tmp.c[i] = zq_sub(ctx, tmp.c[i], td.c[i]);
        for (size_t i = 0; i < q2a.c.size(); i++)
            tmp.c[i] = zq_sub(ctx, tmp.c[i], q2a.c[i]);
        trim(tmp);
        t = tmp;
    }
    if (!converged) {
        local_poly check = lp_sub(ctx, f, lp_mul(ctx, a, b));
        trim(check);
        if (!is_zero(check))
            throw precision_exhausted("hensel lift failed to converge");
    }
}

std::vector<local_poly> hensel_split(padic_ctx const & ctx, local_poly const & phi)
{
    BM_REQUIRE(lp_is_monic(ctx, phi), "hensel_split: input not monic");
    fq_poly fbar = lp_to_fq(ctx, phi);
    if (fqp_degree(fbar) != phi.degree())
        throw shape_violation("hensel_split: residual degree drop (input not monic mod p)");
    auto factors = factor_fq(ctx, fbar);
    if (factors.size() <= 1)
        return {phi};

    /* residual parts g_i^{m_i}, pairwise coprime */
    std::vector<fq_poly> parts;
    for (auto const & [g, m] : factors) {
        fq_poly part = {fq(ctx.dk, 0)};
        part[0][0] = 1;
        for (unsigned i = 0; i < m; i++)
            part = fqp_mul(ctx, part, g);
        parts.push_back(part);
    }

    std::vector<local_poly> out;
    local_poly rest = phi;
    for (size_t i = 0; i + 1 < parts.size(); i++) {
        /* split rest = lift(parts[i]) * remainder */
        fq_poly other = {fq(ctx.dk, 0)};
        other[0][0] = 1;
        for (size_t j = i + 1; j < parts.size(); j++)
            other = fqp_mul(ctx, other, parts[j]);
        local_poly a, b;
        two_factor_hensel(ctx, rest, parts[i], other, a, b);
        out.push_back(a);
        rest = b;
    }
    out.push_back(rest);
    std::sort(out.begin(), out.end(),
              [&](local_poly const & a, local_poly const & b) { return lp_cmp(ctx, a, b) < 0; });
    return out;
}

std::vector<std::pair<mpq_class, unsigned>> newton_polygon(padic_ctx const & ctx,
                                                           local_poly const & phi)
{
    BM_REQUIRE(lp_is_monic(ctx, phi), "newton_polygon: input not monic");
    unsigned const n = phi.degree();
    BM_REQUIRE(n >= 1, "newton_polygon: constant polynomial");
    if (zq_val(ctx, phi.c[0]) >= ctx.prec)
        throw zero_constant_term();

    /* finite points (j, v_j) */
    std::vector<std::pair<unsigned, unsigned long>> pts;
    for (unsigned j = 0; j <= n; j++) {
        if (zq_is_zero(phi.c[j]))
            continue;
        unsigned long v = zq_val(ctx, phi.c[j]);
        if (v >= ctx.prec && j != 0 && j != n)
            continue; /* indistinguishable from zero; never on the hull
                         below height prec (guarded by callers) */
        pts.push_back({j, v});
    }
    /* lower convex hull, left to right */
    std::vector<std::pair<unsigned, unsigned long>> hull;
    for (auto const & pt : pts) {
        while (hull.size() >= 2) {
            auto const & a = hull[hull.size() - 2];
            auto const & b = hull[hull.size() - 1];
            /* drop b if it lies on or above segment a->pt */
            mpz_class lhs = mpz_class(b.second - 0) * (mpz_class(pt.first) - mpz_class(a.first));
            mpz_class rhs = mpz_class(a.second) * (mpz_class(pt.first) - mpz_class(b.first)) +
                            mpz_class(pt.second) * (mpz_class(b.first) - mpz_class(a.first));
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    std::vector<std::pair<mpq_class, unsigned>> segs;
    for (size_t i = 0; i + 1 < hull.size(); i++) {
        auto const & a = hull[i];
        auto const & b = hull[i + 1];
        mpq_class slope(mpz_class(a.second) - mpz_class(b.second),
                        mpz_class(b.first) - mpz_class(a.first));
        slope.canonicalize();
        segs.push_back({slope, b.first - a.first});
    }
    return segs;
}

residual_quadratic_t residual_quadratic(padic_ctx const & ctx, local_poly const & phi)
{
    unsigned const n = phi.degree();
    if (n < 2 || n % 2 != 0)
        throw shape_violation("residual_quadratic: degree must be even and >= 2");
    BM_REQUIRE(lp_is_monic(ctx, phi), "residual_quadratic: input not monic");
    /* phi = x^n + c_1 x^(n-1) + ... + c_n; storage index j holds c_(n-j) */
    if (zq_val(ctx, phi.c[0]) != 2)
        throw shape_violation("residual_quadratic: ord(c_n) != 2");
    for (unsigned j = 1; j < n; j++) {
        unsigned long const need = (j < n / 2) ? 2 : 1; /* c_(n-j): index > n/2 iff j < n/2 */
        if (zq_val(ctx, phi.c[j]) < need)
            throw shape_violation("residual_quadratic: coefficient valuation pattern fails");
    }

    fq const mid = zq_to_fq(ctx, zq_shift_down(ctx, phi.c[n / 2], 1));
    fq const cst = zq_to_fq(ctx, zq_shift_down(ctx, phi.c[0], 2));
    fq_poly q(3, fq(ctx.dk, 0));
    q[0] = cst;
    q[1] = mid;
    q[2][0] = 1;

    auto roots = fqp_roots(ctx, q);
    quad_class cls;
    if (roots.empty())
        cls = quad_class::irreducible;
    else if (roots.size() == 1)
        cls = quad_class::inseparable;
    else
        cls = quad_class::split_separable;
    return {q, cls};
}

mpz_class disc_int_poly(std::vector<mpz_class> const & ascending)
{
    unsigned const n = unsigned(ascending.size()) - 1;
    BM_REQUIRE(n >= 1 && ascending[n] == 1, "disc_int_poly: monic input required");
    /* Res(f, f') via the Sylvester matrix, then disc = (-1)^(n(n-1)/2) Res */
    std::vector<mpz_class> der(n);
    for (unsigned i = 1; i <= n; i++)
        der[i - 1] = ascending[i] * i;
    unsigned const m = n - 1;
    int_mat syl(n + m, n + m);
    for (unsigned r = 0; r < m; r++)
        for (unsigned i = 0; i <= n; i++)
            syl(r, r + (n - i)) = ascending[i];
    for (unsigned r = 0; r < n; r++)
        for (unsigned i = 0; i <= m; i++)
            syl(m + r, r + (m - i)) = der[i];
    mpz_class res = det(syl);
    if (((n * (n - 1)) / 2) % 2 == 1)
        res = -res;
    return res;
}

} // namespace bassmonoid
