#include "doctest.h"

#include <set>
#include <tuple>
#include <vector>

#include "bassorbit.hpp"

using namespace bassmonoid;

static local_order make(long p, unsigned long prec, std::vector<long> asc)
{
    padic_ctx ctx(p, prec, 1);
    std::vector<mpz_class> v(asc.begin(), asc.end());
    return order_from_polynomial(ctx, lp_from_integers(ctx, v));
}

TEST_CASE("split_decomposition: x^2 - 5x over Q_5") {
    local_order r = make(5, 14, {0, -5, 1});
    max_order_info mo = maximal_order(r);
    auto sd = split_decomposition(r, mo);
    CHECK(sd.r1 == 1);
    CHECK(sd.r2 == 1);
    CHECK(sd.s == 1);
    /* factors (T, T - 5) after normalization, in canonical order */
    CHECK(sd.f1.degree() == 1);
    CHECK(sd.f2.degree() == 1);
    /* one factor has root 0, the other root 5 (compared mod 25) */
    auto root_mod25 = [](mpz_class const & c0) {
        mpz_class r = (25 - c0 % 25) % 25;
        return r.get_si();
    };
    std::multiset<long> roots = {root_mod25(sd.f1.c[0][0]), root_mod25(sd.f2.c[0][0])};
    CHECK(roots == std::multiset<long>{0, 5});
}

TEST_CASE("split_decomposition: (x-2)(x-6) over Q_2 has s = 2") {
    local_order r = make(2, 16, {12, -8, 1});
    max_order_info mo = maximal_order(r);
    auto sd = split_decomposition(r, mo);
    CHECK(sd.s == 2); /* v(6 - 2) = 2 */
    invariant_bundle b = invariants(r, mo);
    CHECK(b.S_K == 2);
    CHECK(b.f_pair == std::vector<unsigned long>{2, 2});
}

TEST_CASE("split_decomposition rejects domains") {
    local_order r = make(2, 12, {-2, 0, 1});
    max_order_info mo = maximal_order(r);
    CHECK_THROWS_AS(split_decomposition(r, mo), is_domain);
}

TEST_CASE("overorders_bass: maximal order") {
    local_order r = make(2, 12, {-2, 0, 1});
    max_order_info mo = maximal_order(r);
    auto oo = overorders_bass(r, mo);
    REQUIRE(oo.size() == 1);
    CHECK(oo[0].l == mo.m);
    CHECK(oo[0].unit_idx == 1);
}

TEST_CASE("overorders_bass: Z_3[9 sqrt 3] chain") {
    local_order r = make(3, 16, {-243, 0, 1});
    max_order_info mo = maximal_order(r);
    auto oo = overorders_bass(r, mo);
    REQUIRE(oo.size() == 3);
    CHECK(oo[0].s_k == 2);
    CHECK(oo[0].f_exp == 4);
    CHECK(oo[1].s_k == 1);
    CHECK(oo[1].f_exp == 2);
    CHECK(oo[2].s_k == 0);
    CHECK(oo[2].f_exp == 0);
    CHECK(oo[0].l == r.L);
    CHECK(oo[2].l == mo.m);
    /* the middle order is O_K[3 sqrt 3] = span{1, x/3} (x = 9 sqrt 3) */
    int_mat g(2, 2);
    g(0, 0) = 3;
    g(1, 1) = 1;
    lattice mid = lattice_from_generators(2, g, 3, r.amb->alg);
    CHECK(oo[1].l == mid);
    /* unit indices 9, 3, 1 */
    CHECK(oo[0].unit_idx == 9);
    CHECK(oo[1].unit_idx == 3);
    CHECK(oo[2].unit_idx == 1);
}

TEST_CASE("overorders_bass: split s=1 has exactly two overorders") {
    local_order r = make(5, 14, {0, -5, 1});
    max_order_info mo = maximal_order(r);
    auto oo = overorders_bass(r, mo);
    REQUIRE(oo.size() == 2);
    CHECK(oo[0].l == r.L);
    CHECK(oo[1].l == mo.m);
    CHECK(oo[0].f_pair == std::vector<unsigned long>{1, 1});
}

TEST_CASE("class_monoid_size") {
    {
        local_order r = make(2, 12, {-2, 0, 1});
        CHECK(class_monoid_size(r, maximal_order(r)) == 1);
    }
    {
        local_order r = make(3, 16, {-243, 0, 1});
        CHECK(class_monoid_size(r, maximal_order(r)) == 3);
    }
    {
        local_order r = make(5, 14, {0, -5, 1});
        CHECK(class_monoid_size(r, maximal_order(r)) == 2);
    }
}

TEST_CASE("orbital_integral: closed forms") {
    {
        local_order r = make(2, 12, {-2, 0, 1});
        CHECK(orbital_integral(r, maximal_order(r)).lambda_count == 1);
    }
    {
        /* S=2, d_R=1, kappa-index 1: 9 + 3 + 1 = 13 */
        local_order r = make(3, 16, {-243, 0, 1});
        CHECK(orbital_integral(r, maximal_order(r)).lambda_count == 13);
    }
    {
        /* Z_2[2u]: S=1, d_R=1, kappa-index 2: 2 + 2*1 = 4 */
        local_order r = make(2, 12, {4, 2, 1});
        CHECK(orbital_integral(r, maximal_order(r)).lambda_count == 4);
    }
    {
        /* split s=1 over Q_5: q^{S_K} with q = 5 */
        local_order r = make(5, 14, {0, -5, 1});
        CHECK(orbital_integral(r, maximal_order(r)).lambda_count == 5);
    }
}

TEST_CASE("mass_check: unit-index sums match the closed form") {
    for (auto [p, prec, poly] : std::vector<std::tuple<long, unsigned long, std::vector<long>>>{
             {2, 12, {-2, 0, 1}},
             {3, 16, {-243, 0, 1}},
             {2, 12, {4, 2, 1}},
             {5, 14, {0, -5, 1}},
             {3, 16, {36, -15, 1}}, /* (x-3)(x-12): split s = 2 */
         }) {
        local_order r = make(p, prec, poly);
        max_order_info mo = maximal_order(r);
        auto rep = mass_check(r, mo);
        CHECK(rep.equal);
    }
    /* split s=2, q=p: unit indices q^{s-k-1}(q-1) sum with 1 to q^2 */
    local_order r = make(3, 16, {36, -15, 1});
    max_order_info mo = maximal_order(r);
    auto rep = mass_check(r, mo);
    REQUIRE(rep.per_overorder.size() == 3);
    CHECK(rep.per_overorder[0] == 6); /* q^1 (q-1) */
    CHECK(rep.per_overorder[1] == 2); /* q^0 (q-1) */
    CHECK(rep.per_overorder[2] == 1);
    CHECK(rep.lambda_closed == 9);
}

TEST_CASE("relsercon and invariant chain on Bass examples") {
    for (auto [p, prec, poly] : std::vector<std::tuple<long, unsigned long, std::vector<long>>>{
             {3, 16, {-243, 0, 1}},
             {2, 12, {4, 2, 1}},
             {3, 16, {-9, 0, 0, 1}},
         }) {
        local_order r = make(p, prec, poly);
        max_order_info mo = maximal_order(r);
        invariant_bundle b = invariants(r, mo);
        /* f(R) = 2 S_K(R) / [kappa_E : kappa_R] */
        CHECK(b.f * b.kappa_index == 2 * b.S_K);
        if (r.L != mo.m) {
            /* u <= f <= e S <= n f; 1 <= u <= e; 1 <= f */
            CHECK(b.u <= b.f);
            CHECK(b.f <= (unsigned long)b.e * b.S);
            CHECK((unsigned long)b.e * b.S <= (unsigned long)(b.e * b.d) * b.f);
            CHECK(b.u >= 1);
            CHECK(b.u <= b.e);
            CHECK(b.f >= 1);
        }
    }
}

TEST_CASE("geometric_orbital") {
    {
        /* maximal quadratic over Q_3: (q-1)/q */
        local_order r = make(3, 12, {-3, 0, 1});
        auto so = geometric_orbital(r, maximal_order(r));
        CHECK(so == mpq_class(2, 3));
    }
    {
        /* Z_3[9 sqrt 3]: frozen after the first computation; the identity
         * lambda * #GL_n = SO * q^S (q^2-1) q^{n^2-2} is checked exactly */
        local_order r = make(3, 16, {-243, 0, 1});
        max_order_info mo = maximal_order(r);
        auto so = geometric_orbital(r, mo);
        CHECK(so == mpq_class(26, 27));
        mpz_class const q = 3;
        mpz_class const gl2 = (q * q - 1) * (q * q - q);
        /* q^S (q^2-1) q^{n^2-2} with S = 2, n = 2 */
        mpq_class const rhs = so * mpq_class(q * q * (q * q - 1) * q * q);
        CHECK(mpq_class(13) * gl2 == rhs);
    }
    {
        local_order r = make(5, 14, {0, -5, 1});
        max_order_info mo = maximal_order(r);
        CHECK_THROWS_AS(geometric_orbital(order_from_basis(r.amb, mo.m), mo), not_monogenic);
    }
}
