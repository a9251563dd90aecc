#include "doctest.h"

#include <set>
#include <vector>

#include "bassorbit.hpp"
#include "oracle.hpp"

using namespace bassmonoid;

static local_order make(long p, unsigned long prec, std::vector<long> asc)
{
    padic_ctx ctx(p, prec, 1);
    std::vector<mpz_class> v(asc.begin(), asc.end());
    return order_from_polynomial(ctx, lp_from_integers(ctx, v));
}

TEST_CASE("brute_overorders: trivial quotient") {
    local_order r = make(2, 12, {-2, 0, 1});
    max_order_info mo = maximal_order(r);
    auto oo = brute_overorders(r.amb->alg, r.L, mo.m);
    REQUIRE(oo.size() == 1);
    CHECK(oo[0] == r.L);
}

TEST_CASE("brute_overorders: Z_3[9 sqrt 3] finds 3 rings, matches closed form") {
    local_order r = make(3, 16, {-243, 0, 1});
    max_order_info mo = maximal_order(r);
    auto brute = brute_overorders(r.amb->alg, r.L, mo.m);
    CHECK(brute.size() == 3);
    auto closed = overorders_bass(r, mo);
    std::set<lattice> a(brute.begin(), brute.end());
    std::set<lattice> b;
    for (auto const & e : closed)
        b.insert(e.l);
    CHECK(a == b);
}

TEST_CASE("brute_overorders: split s=1 over Q_5") {
    local_order r = make(5, 14, {0, -5, 1});
    max_order_info mo = maximal_order(r);
    auto brute = brute_overorders(r.amb->alg, r.L, mo.m);
    CHECK(brute.size() == 2);
    auto closed = overorders_bass(r, mo);
    std::set<lattice> a(brute.begin(), brute.end()), b;
    for (auto const & e : closed)
        b.insert(e.l);
    CHECK(a == b);
}

TEST_CASE("brute_ideal_classes: maximal order has a single class") {
    local_order r = make(2, 12, {-2, 0, 1});
    max_order_info mo = maximal_order(r);
    CHECK(brute_ideal_classes(r, mo, 2) == 1);
}

TEST_CASE("brute_ideal_classes: Z_3[9 sqrt 3] -> 3 (= S_K + 1)") {
    local_order r = make(3, 16, {-243, 0, 1});
    max_order_info mo = maximal_order(r);
    CHECK(brute_ideal_classes(r, mo, 4) == 3);
    CHECK(class_monoid_size(r, mo) == 3);
}

TEST_CASE("brute_ideal_classes: split s=1 -> 2") {
    local_order r = make(5, 14, {0, -5, 1});
    max_order_info mo = maximal_order(r);
    CHECK(brute_ideal_classes(r, mo, 2) == 2);
}

TEST_CASE("brute_unit_index: exhaustion matches the lattice formula") {
    {
        local_order r = make(3, 16, {-243, 0, 1});
        max_order_info mo = maximal_order(r);
        CHECK(brute_unit_index(*r.amb, mo.m, mo, 5) == 1);
        CHECK(brute_unit_index(*r.amb, r.L, mo, 5) == 9);
    }
    {
        local_order r = make(2, 12, {4, 2, 1});
        max_order_info mo = maximal_order(r);
        CHECK(brute_unit_index(*r.amb, r.L, mo, 2) == 3);
    }
}

TEST_CASE("oracle depth stability") {
    /* the counts must not change when the depth grows */
    local_order r = make(3, 18, {-243, 0, 1});
    max_order_info mo = maximal_order(r);
    CHECK(brute_ideal_classes(r, mo, 4) == brute_ideal_classes(r, mo, 5));
    CHECK(brute_unit_index(*r.amb, r.L, mo, 5) == brute_unit_index(*r.amb, r.L, mo, 6));
}

TEST_CASE("search space cap is enforced") {
    local_order r = make(3, 16, {-243, 0, 1});
    max_order_info mo = maximal_order(r);
    oracle_caps caps;
    caps.max_candidates = 2;
    CHECK_THROWS_AS(brute_ideal_classes(r, mo, 4, caps), search_space_too_large);
}
