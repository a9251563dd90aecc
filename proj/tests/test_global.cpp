#include "doctest.h"

#include <set>
#include <vector>

#include "globalorder.hpp"
#include "oracle.hpp"

using namespace bassmonoid;

static std::vector<mpz_class> zpoly(std::vector<long> asc)
{
    return std::vector<mpz_class>(asc.begin(), asc.end());
}

TEST_CASE("factor_int_poly and irreducibility") {
    CHECK(is_irreducible_int_poly(zpoly({1, 0, 1})));
    CHECK(is_irreducible_int_poly(zpoly({64, 0, 1})));
    CHECK(!is_irreducible_int_poly(zpoly({0, -5, 1})));
    CHECK(!is_irreducible_int_poly(zpoly({-1, 0, 1})));
    auto f = factor_int_poly(zpoly({-6, 11, -6, 1})); /* (x-1)(x-2)(x-3) */
    REQUIRE(f.size() == 3);
    for (auto const & g : f)
        CHECK(g.size() == 2);
    /* x^4-4 = (x^2-2)(x^2+2) */
    auto f2 = factor_int_poly(zpoly({-4, 0, 0, 0, 1}));
    REQUIRE(f2.size() == 2);
    CHECK(f2[0].size() == 3);
    /* repeated factors are rejected as non-reduced */
    CHECK_THROWS_AS(factor_int_poly(zpoly({1, 2, 1})), not_reduced);
}

TEST_CASE("factor_integer") {
    auto f = factor_integer(mpz_class(-975));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<mpz_class, unsigned>{3, 1});
    CHECK(f[1] == std::pair<mpz_class, unsigned>{5, 2});
    CHECK(f[2] == std::pair<mpz_class, unsigned>{13, 1});
}

TEST_CASE("global_from_polynomial: x^2+1 is maximal") {
    auto g = global_from_polynomial(zpoly({1, 0, 1}));
    CHECK(g.disc_r == -4);
    CHECK(g.index == 1);
    CHECK(g.bad_primes.empty());
    CHECK(count_nontrivial_classes(g) == 1);
    auto oo = overorders_global(g);
    REQUIRE(oo.size() == 1);
    CHECK(oo[0].l == g.max_lattice);
}

TEST_CASE("global_from_polynomial: Z[8i]") {
    auto g = global_from_polynomial(zpoly({64, 0, 1}));
    CHECK(g.disc_r == -256);
    CHECK(g.index == 8);
    CHECK(g.disc_oe == -4);
    CHECK(g.bad_primes == std::vector<mpz_class>{2});

    auto pieces = localize(g, 2);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].mo.is_domain());
    CHECK(pieces[0].inv.e == 2);
    CHECK(pieces[0].inv.d == 1);
    CHECK(pieces[0].inv.S_K == 3);
    CHECK(pieces[0].inv.f == 6); /* = 2l, l = 3 */
    CHECK(pieces[0].bass.bass);

    auto cd = conductor_factorization(g);
    REQUIRE(cd.entries.size() == 1);
    CHECK(cd.entries[0].kind == conductor_entry::kind_t::kappa_one);
    CHECK(cd.entries[0].s_k == 3);

    CHECK(count_nontrivial_classes(g) == 4);

    auto oo = overorders_global(g);
    REQUIRE(oo.size() == 4);
    /* Z[i], Z[2i], Z[4i], Z[8i] as lattices: span{1, 2^k i} */
    std::set<lattice> got;
    for (auto const & e : oo)
        got.insert(e.l);
    std::set<lattice> want;
    for (long k = 0; k < 4; k++) {
        /* Z[2^k i] = Z + (2^k/8) x Z in the power basis of x^2 + 64 */
        int_mat b(2, 2);
        b(0, 0) = 8;
        b(1, 1) = 1 << k;
        want.insert(lattice_from_generators(2, b, 8));
    }
    CHECK(got == want);
}

TEST_CASE("global: Z[5i] has a split prime over 5") {
    auto g = global_from_polynomial(zpoly({25, 0, 1}));
    CHECK(g.index == 5);
    CHECK(g.bad_primes == std::vector<mpz_class>{5});
    auto pieces = localize(g, 5);
    REQUIRE(pieces.size() == 1);
    CHECK(!pieces[0].mo.is_domain());
    CHECK(pieces[0].mo.r == 2);
    CHECK(pieces[0].inv.S_K == 1);
    auto cd = conductor_factorization(g);
    REQUIRE(cd.entries.size() == 1);
    CHECK(cd.entries[0].kind == conductor_entry::kind_t::split);
    CHECK(cd.entries[0].s_k == 1);
    CHECK(count_nontrivial_classes(g) == 2);
    auto oo = overorders_global(g);
    REQUIRE(oo.size() == 2);
}

TEST_CASE("global: brute-force subring counts confirm the product formula") {
    for (auto [poly, expect] : std::vector<std::pair<std::vector<long>, long>>{
             {{64, 0, 1}, 4},
             {{25, 0, 1}, 2},
             {{225, 0, 1}, 4}, /* Z[15i]: p=3 inert (kappa 2), p=5 split */
         }) {
        auto g = global_from_polynomial(zpoly(poly));
        auto brute = brute_overorders(g.alg, g.l, g.max_lattice);
        CHECK(mpz_class(brute.size()) == count_nontrivial_classes(g));
        /* and the constructed overorders are exactly the brute-force set */
        auto oo = overorders_global(g);
        std::set<lattice> a(brute.begin(), brute.end()), b;
        for (auto const & e : oo)
            b.insert(e.l);
        CHECK(a == b);
    }
}

TEST_CASE("global: re-localized overorders match the local chains") {
    auto g = global_from_polynomial(zpoly({64, 0, 1}));
    auto pieces = localize(g, 2);
    auto const & piece = pieces[0];
    auto local_chain = overorders_bass(piece.ord, piece.mo);
    auto oo = overorders_global(g);
    REQUIRE(oo.size() == local_chain.size());
    std::set<lattice> a, b;
    for (auto const & e : oo)
        a.insert(localize_lattice(g, piece, e.l));
    for (auto const & e : local_chain)
        b.insert(e.l);
    CHECK(a == b);
}

TEST_CASE("global: norm identity |N(f(R))| = |disc_R/disc_OE|") {
    for (auto poly : std::vector<std::vector<long>>{{64, 0, 1}, {25, 0, 1}, {225, 0, 1}}) {
        auto g = global_from_polynomial(zpoly(poly));
        mpz_class lhs = 1;
        for (auto const & p : g.bad_primes)
            for (auto const & piece : localize(g, p)) {
                mpz_class qw;
                mpz_pow_ui(qw.get_mpz_t(), p.get_mpz_t(), piece.inv.d_R);
                mpz_class t;
                mpz_pow_ui(t.get_mpz_t(), qw.get_mpz_t(), 2 * piece.inv.S_K);
                lhs *= t;
            }
        mpz_class rhs = g.disc_r / g.disc_oe;
        if (rhs < 0)
            rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("global: conductor reconstruction equals (R : O_E)") {
    auto g = global_from_polynomial(zpoly({64, 0, 1}));
    lattice cglob = colon_lattice(g.l, g.max_lattice, g.alg);
    /* rebuild from the factorization: preimage of rad^f at each entry */
    auto cd = conductor_factorization(g);
    lattice rebuilt = g.max_lattice;
    for (auto const & e : cd.entries) {
        auto pieces = localize(g, e.p);
        auto const & piece = pieces[e.w_index];
        unsigned long fexp = e.kind == conductor_entry::kind_t::kappa_one ? 2 * e.s_k : e.s_k;
        lattice target = lattice_power(piece.mo.rad, fexp, piece.ord.amb->alg);
        rebuilt = preimage_of_local(g, piece, target, rebuilt);
    }
    CHECK(rebuilt == cglob);
}

TEST_CASE("global: non-monogenic input Z + 2*Z[i] (lattice route)") {
    /* R = Z + 2 Z[i] inside Q(i): S_K = 1 at p = 2 */
    int_mat b(2, 2);
    b(0, 0) = 1;
    b(1, 1) = 2;
    auto g = global_from_lattice(zpoly({1, 0, 1}), lattice_from_generators(2, b, 1));
    CHECK(!g.power_basis);
    CHECK(g.index == 2);
    CHECK(count_nontrivial_classes(g) == 2);
    auto brute = brute_overorders(g.alg, g.l, g.max_lattice);
    CHECK(brute.size() == 2);
}

TEST_CASE("global: reducible input is rejected") {
    CHECK_THROWS_AS(global_from_polynomial(zpoly({0, -5, 1})), reducible);
}

TEST_CASE("localize at a good prime: maximal, inert, S = 0") {
    auto g = global_from_polynomial(zpoly({1, 0, 1}));
    auto pieces = localize(g, 3);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].mo.is_domain());
    CHECK(pieces[0].inv.S == 0);
    CHECK(pieces[0].inv.d == 2);
    CHECK(pieces[0].inv.e == 1);
    CHECK(pieces[0].ord.L == pieces[0].mo.m);
}
