#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "localpoly.hpp"

using namespace bassmonoid;

static local_poly poly(padic_ctx const & ctx, std::vector<long> asc)
{
    std::vector<mpz_class> v(asc.begin(), asc.end());
    return lp_from_integers(ctx, v);
}

TEST_CASE("make_unramified: scan oracle") {
    /* (2,1) -> y */
    CHECK(make_unramified(2, 1) == std::vector<mpz_class>{0});
    /* (2,2): the only monic irreducible quadratic mod 2 is y^2+y+1 */
    CHECK(make_unramified(2, 2) == std::vector<mpz_class>{1, 1});
    /* (3,2): scan the 9 monic quadratics y^2 + b y + c in ascending (b, c)
     * order with a root-existence oracle; first rootless one wins. */
    std::vector<std::pair<long, long>> ordered;
    for (long b = 0; b < 3; b++)
        for (long c = 0; c < 3; c++)
            ordered.push_back({b, c});
    std::pair<long, long> first{-1, -1};
    for (auto [b, c] : ordered) {
        bool has_root = false;
        for (long y = 0; y < 3; y++)
            if ((y * y + b * y + c) % 3 == 0)
                has_root = true;
        if (!has_root) {
            first = {b, c};
            break;
        }
    }
    CHECK(first == std::pair<long, long>{0, 1}); /* y^2 + 1 */
    CHECK(make_unramified(3, 2) == std::vector<mpz_class>{1, 0});
}

TEST_CASE("hensel_split: x^2-2 over Q_2 stays whole") {
    padic_ctx ctx(2, 12, 1);
    auto f = poly(ctx, {-2, 0, 1});
    auto parts = hensel_split(ctx, f);
    REQUIRE(parts.size() == 1);
    CHECK(lp_cmp(ctx, parts[0], f) == 0);
}

TEST_CASE("hensel_split: x^2-3x+2 over Q_5 splits into lifts of x-1, x-2") {
    padic_ctx ctx(5, 10, 1);
    auto f = poly(ctx, {2, -3, 1});
    auto parts = hensel_split(ctx, f);
    REQUIRE(parts.size() == 2);
    /* product check mod 5^N */
    auto prod = lp_mul(ctx, parts[0], parts[1]);
    CHECK(lp_cmp(ctx, prod, f) == 0);
    /* each factor is monic linear with root = 1 or 2 mod 5 */
    std::vector<long> roots;
    for (auto const & g : parts) {
        REQUIRE(g.degree() == 1);
        CHECK(lp_is_monic(ctx, g));
        mpz_class r = (ctx.pN - g.c[0][0]) % 5;
        roots.push_back(r.get_si());
        /* the lifted root is an exact root mod 5^N */
        zq root = zq_sub(ctx, zq_zero(ctx), g.c[0]);
        CHECK(zq_is_zero(lp_eval(ctx, f, root)));
    }
    std::sort(roots.begin(), roots.end());
    CHECK(roots == std::vector<long>{1, 2});
}

TEST_CASE("hensel_split: x^3-x over Q_5 gives three linear factors") {
    padic_ctx ctx(5, 8, 1);
    auto f = poly(ctx, {0, -1, 0, 1});
    auto parts = hensel_split(ctx, f);
    REQUIRE(parts.size() == 3);
    local_poly prod = parts[0];
    for (size_t i = 1; i < parts.size(); i++)
        prod = lp_mul(ctx, prod, parts[i]);
    CHECK(lp_cmp(ctx, prod, f) == 0);
    for (auto const & g : parts)
        CHECK(g.degree() == 1);
}

TEST_CASE("hensel_split: residuals pairwise coprime; higher precision refines") {
    padic_ctx ctx(3, 9, 1);
    /* (x^2-3)(x-1)(x+1) = (x^2-3)(x^2-1) = x^4 - 4x^2 + 3 */
    auto f = poly(ctx, {3, 0, -4, 0, 1});
    auto parts = hensel_split(ctx, f);
    REQUIRE(parts.size() == 3); /* residuals x^2, x-1, x+1 */
    for (size_t i = 0; i < parts.size(); i++)
        for (size_t j = i + 1; j < parts.size(); j++) {
            auto g = fqp_gcd(ctx, lp_to_fq(ctx, parts[i]), lp_to_fq(ctx, parts[j]));
            CHECK(fqp_degree(g) == 0);
        }
    /* rerun at doubled precision: same residual partition (compare mod 3^9) */
    padic_ctx ctx2(3, 18, 1);
    auto f2 = poly(ctx2, {3, 0, -4, 0, 1});
    auto parts2 = hensel_split(ctx2, f2);
    REQUIRE(parts2.size() == parts.size());
    for (size_t i = 0; i < parts.size(); i++) {
        REQUIRE(parts2[i].c.size() == parts[i].c.size());
        for (size_t j = 0; j < parts[i].c.size(); j++)
            CHECK(parts2[i].c[j][0] % ctx.pN == parts[i].c[j][0]);
    }
}

TEST_CASE("newton_polygon: spec examples") {
    padic_ctx ctx(2, 12, 1);
    /* x^2 - 2: hull of (0,1),(2,0): one slope 1/2, length 2 */
    auto segs = newton_polygon(ctx, poly(ctx, {-2, 0, 1}));
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].first == mpq_class(1, 2));
    CHECK(segs[0].second == 2);

    /* x^5 + 2x + 4: hull of {(0,2),(1,1),(5,0)}: slope 1 length 1, then
     * slope 1/4 length 4 (hull order, steepest first) */
    segs = newton_polygon(ctx, poly(ctx, {4, 2, 0, 0, 0, 1}));
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].first == mpq_class(1));
    CHECK(segs[0].second == 1);
    CHECK(segs[1].first == mpq_class(1, 4));
    CHECK(segs[1].second == 4);

    /* unit constant term: single slope 0 */
    segs = newton_polygon(ctx, poly(ctx, {3, 6, 1}));
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].first == 0);
    CHECK(segs[0].second == 2);

    /* multiplicities sum to the degree */
    auto f = poly(ctx, {8, 2, 4, 1});
    unsigned total = 0;
    for (auto const & s : newton_polygon(ctx, f))
        total += s.second;
    CHECK(total == 3);

    CHECK_THROWS_AS(newton_polygon(ctx, poly(ctx, {0, 0, 1})), zero_constant_term);
}

TEST_CASE("newton_polygon: slopes of a product = multiset union of slopes") {
    padic_ctx ctx(3, 14, 1);
    auto a = poly(ctx, {-3, 0, 1});  /* slope 1/2 x2 */
    auto b = poly(ctx, {9, -1, 1});  /* c0=9, c1 unit: slopes 2 and 0 */
    auto ab = lp_mul(ctx, a, b);
    auto sa = newton_polygon(ctx, a);
    auto sb = newton_polygon(ctx, b);
    auto sab = newton_polygon(ctx, ab);
    /* flatten to multisets of (slope, 1) */
    std::multiset<std::pair<mpq_class, unsigned>> u, v;
    auto add = [](std::multiset<std::pair<mpq_class, unsigned>> & m, auto const & segs) {
        for (auto const & s : segs)
            for (unsigned i = 0; i < s.second; i++)
                m.insert({s.first, 1});
    };
    add(u, sa);
    add(u, sb);
    add(v, sab);
    CHECK(u == v);
}

TEST_CASE("residual_quadratic: spec examples") {
    {
        padic_ctx ctx(2, 10, 1);
        auto rq = residual_quadratic(ctx, poly(ctx, {4, 0, 2, 0, 1})); /* x^4+2x^2+4 */
        CHECK(rq.classification == quad_class::irreducible);
        /* phi_2 = y^2 + y + 1: no root in F_2 by exhaustion */
        for (long y = 0; y < 2; y++)
            CHECK((y * y + y + 1) % 2 != 0);
        CHECK(rq.poly[0][0] == 1);
        CHECK(rq.poly[1][0] == 1);
    }
    {
        padic_ctx ctx(2, 10, 1);
        auto rq = residual_quadratic(ctx, poly(ctx, {4, 0, 0, 0, 1})); /* x^4+4 */
        CHECK(rq.classification == quad_class::inseparable);
        /* phi_2 = y^2+1 = (y+1)^2 over F_2 */
        CHECK(rq.poly[1][0] == 0);
        CHECK(rq.poly[0][0] == 1);
    }
    {
        padic_ctx ctx(3, 10, 1);
        auto rq = residual_quadratic(ctx, poly(ctx, {9, 0, 3, 0, 1})); /* x^4+3x^2+9 */
        CHECK(rq.classification == quad_class::inseparable);
        /* phi_2 = y^2+y+1 = (y-1)^2 over F_3: root test */
        long roots = 0;
        for (long y = 0; y < 3; y++)
            if ((y * y + y + 1) % 3 == 0)
                roots++;
        CHECK(roots == 1);
    }
    {
        padic_ctx ctx(3, 10, 1);
        CHECK_THROWS_AS(residual_quadratic(ctx, poly(ctx, {3, 0, 3, 0, 1})), shape_violation);
        CHECK_THROWS_AS(residual_quadratic(ctx, poly(ctx, {9, 0, 3, 1})), shape_violation);
    }
}

TEST_CASE("factor_fq: multiplicities and inseparable powers") {
    padic_ctx ctx(2, 6, 1);
    /* (x^2+x+1)^2 * x^3 over F_2 */
    fq_poly quad = {{mpz_class(1)}, {mpz_class(1)}, {mpz_class(1)}};
    fq_poly f = fqp_mul(ctx, quad, quad);
    fq_poly x3 = {{mpz_class(0)}, {mpz_class(0)}, {mpz_class(0)}, {mpz_class(1)}};
    f = fqp_mul(ctx, f, x3);
    auto fac = factor_fq(ctx, f);
    REQUIRE(fac.size() == 2);
    /* sorted by degree: x first, then the quadratic */
    CHECK(fqp_degree(fac[0].first) == 1);
    CHECK(fac[0].second == 3);
    CHECK(fqp_degree(fac[1].first) == 2);
    CHECK(fac[1].second == 2);
}

TEST_CASE("disc_int_poly") {
    /* disc(x^2+bx+c) = b^2-4c */
    CHECK(disc_int_poly({-3, 0, 1}) == 12);
    CHECK(disc_int_poly({2, -3, 1}) == 1);
    /* disc(x^3+px+q) = -4p^3-27q^2 */
    CHECK(disc_int_poly({-1, 3, 0, 1}) == -4 * 27 - 27);
    CHECK(disc_int_poly({-9, 0, 0, 1}) == -27 * 81);
}
