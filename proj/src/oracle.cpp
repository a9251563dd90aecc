#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace bassmonoid {

finite_quotient make_finite_quotient(lattice const & sup, lattice const & sub)
{
    BM_REQUIRE(contains(sup, sub), "finite_quotient: sub not inside sup");
    unsigned const n = sup.n;
    int_mat c(n, n);
    for (unsigned j = 0; j < n; j++) {
        std::vector<mpz_class> col(n);
        for (unsigned i = 0; i < n; i++)
            col[i] = sub.basis(i, j);
        auto x = coords_in(sup, col, sub.den);
        for (unsigned i = 0; i < n; i++)
            c(i, j) = x[i];
    }
    finite_quotient q;
    q.sup = sup;
    q.sub = sub;
    int_mat u;
    q.divisors = snf_divisors_left(c, u);
    /* sup/sub = sum Z/d_i with generators the columns of U^{-1} (in sup
     * coordinates): sub = sup * U^{-1} * diag(d) * (unimodular) */
    q.gen_basis = inverse_unimodular(u);
    q.to_gen = u;
    q.size = 1;
    for (auto const & d : q.divisors)
        q.size *= d;
    return q;
}

std::vector<mpz_class> fq_rep(finite_quotient const & q, mpz_class idx)
{
    unsigned const n = q.sup.n;
    std::vector<mpz_class> coords(n, 0);
    for (unsigned i = 0; i < n; i++) {
        mpz_class const d = q.divisors[i];
        if (d == 1)
            continue;
        mpz_class digit = idx % d;
        idx /= d;
        for (unsigned r = 0; r < n; r++)
            coords[r] += digit * q.gen_basis(r, i);
    }
    return mat_vec(q.sup.basis, coords); /* over q.sup.den */
}

std::vector<mpz_class> fq_canon(finite_quotient const & q, std::vector<mpz_class> const & v,
                                mpz_class const & vden)
{
    auto coords = coords_in(q.sup, v, vden);
    /* express in the generator basis and reduce mod the divisors */
    auto g = mat_vec(q.to_gen, coords);
    std::vector<mpz_class> out(q.divisors.size());
    for (size_t i = 0; i < q.divisors.size(); i++)
        mpz_fdiv_r(out[i].get_mpz_t(), g[i].get_mpz_t(), q.divisors[i].get_mpz_t());
    return out;
}

/* enumerate all lattices between sub and sup: column HNF matrices H in the
 * Smith generator basis with pivot(j) | d_j and entries above reduced */
namespace {

struct between_enum {
    finite_quotient q;
    mult_table const * alg;
    oracle_caps caps;
    unsigned long visited = 0;

    std::vector<unsigned> active; /* indices with divisor > 1 */
    int_mat h;                    /* k x k work matrix */

    void run(std::function<void(lattice const &)> const & f)
    {
        for (unsigned i = 0; i < q.divisors.size(); i++)
            if (q.divisors[i] != 1)
                active.push_back(i);
        unsigned const k = unsigned(active.size());
        /* count the candidates before doing any lattice work: sum over
         * pivot profiles of the product of the above-pivot ranges */
        {
            mpz_class total = 0;
            std::vector<std::vector<mpz_class>> divs(k);
            for (unsigned i = 0; i < k; i++) {
                mpz_class const d = q.divisors[active[i]];
                for (mpz_class piv = 1; piv <= d; piv++)
                    if (d % piv == 0)
                        divs[i].push_back(piv);
            }
            /* entries above pivot(c) range over pivot(r) for each r < c,
             * so a profile contributes prod_r pivot_r^(k-1-r) leaves */
            std::function<void(unsigned, mpz_class)> count = [&](unsigned col, mpz_class acc) {
                if (total > caps.max_candidates)
                    return;
                if (col == k) {
                    total += acc;
                    return;
                }
                for (auto const & piv : divs[col]) {
                    mpz_class scale = 1;
                    for (unsigned t = 0; t + col + 1 < k; t++)
                        scale *= piv;
                    count(col + 1, acc * scale);
                }
            };
            count(0, 1);
            if (total > caps.max_candidates)
                throw search_space_too_large();
        }
        h = int_mat(k, k);
        rec(0, f);
    }

    /* column-HNF matrices with pivot(j) | d_j and above-pivot entries
     * reduced mod the row pivots; every between-lattice arises (possibly
     * more than once, since span(H) + sub can coincide for different H) */
    void rec(unsigned col, std::function<void(lattice const &)> const & f)
    {
        unsigned const k = unsigned(active.size());
        if (col == k) {
            emit(f);
            return;
        }
        mpz_class const d = q.divisors[active[col]];
        for (mpz_class piv = 1; piv <= d; piv++) {
            if (d % piv != 0)
                continue;
            h(col, col) = piv;
            std::vector<mpz_class> val(col, 0);
            for (;;) {
                for (unsigned r = 0; r < col; r++)
                    h(r, col) = val[r];
                if (++visited > caps.max_candidates)
                    throw search_space_too_large();
                rec(col + 1, f);
                unsigned r = 0;
                while (r < col && ++val[r] >= h(r, r)) {
                    val[r] = 0;
                    r++;
                }
                if (r == col)
                    break;
            }
        }
    }

    void emit(std::function<void(lattice const &)> const & f)
    {
        unsigned const n = q.sup.n;
        unsigned const k = unsigned(active.size());
        /* columns: sub generators plus H columns mapped through the Smith
         * generator basis, over the lcm of the two denominators */
        int_mat gens(n, n + k);
        mpz_class dd;
        mpz_lcm(dd.get_mpz_t(), q.sup.den.get_mpz_t(), q.sub.den.get_mpz_t());
        mpz_class const s_sub = dd / q.sub.den, s_sup = dd / q.sup.den;
        for (unsigned j = 0; j < n; j++)
            for (unsigned i = 0; i < n; i++)
                gens(i, j) = q.sub.basis(i, j) * s_sub;
        for (unsigned j = 0; j < k; j++) {
            /* ambient vector of sum_r h(r, j) * gen_{active[r]} */
            std::vector<mpz_class> coords(n, 0);
            for (unsigned r = 0; r < k; r++)
                if (h(r, j) != 0)
                    for (unsigned t = 0; t < n; t++)
                        coords[t] += h(r, j) * q.gen_basis(t, active[r]);
            auto av = mat_vec(q.sup.basis, coords);
            for (unsigned i = 0; i < n; i++)
                gens(i, n + j) = av[i] * s_sup;
        }
        lattice l = alg->modulus != 0 ? lattice_from_generators(n, gens, dd, *alg)
                                      : lattice_from_generators(n, gens, dd);
        f(l);
    }
};

} // namespace

std::vector<lattice> brute_overorders(mult_table const & alg, lattice const & r,
                                      lattice const & m, oracle_caps const & caps)
{
    finite_quotient q = make_finite_quotient(m, r);
    std::set<lattice> found;
    between_enum be;
    be.q = q;
    be.alg = &alg;
    be.caps = caps;
    be.run([&](lattice const & l) {
        if (product_closure(l, alg))
            found.insert(l);
    });
    return std::vector<lattice>(found.begin(), found.end());
}

/* scale a lattice by an ambient element given as vec/den */
static lattice scale_by(mult_table const & alg, lattice const & l,
                        std::vector<mpz_class> const & z, mpz_class const & zden)
{
    return lattice_scale(l, z, zden, alg);
}

/* inverse of an invertible ambient element, as (vec, den) */
static void invert_element(mult_table const & alg, std::vector<mpz_class> const & z,
                           mpz_class const & zden, std::vector<mpz_class> & w, mpz_class & wden)
{
    int_mat mz = alg.mul_matrix(z);
    /* z^{-1} = zden * adj(mz) * 1 / det */
    int_mat adj;
    mpz_class d;
    adjugate(mz, adj, d);
    BM_REQUIRE(d != 0, "invert_element: zero divisor");
    w = mat_vec(adj, alg.one);
    for (auto & e : w)
        e *= zden;
    wden = d;
    if (wden < 0) {
        wden = -wden;
        for (auto & e : w)
            e = -e;
    }
}

mpz_class brute_ideal_classes(local_order const & r, max_order_info const & mo,
                              unsigned long depth, oracle_caps const & caps)
{
    local_ambient const & amb = *r.amb;

    /* per-component uniformizer scalers sigma_i = 1 - e_i + e_i pi_i */
    std::vector<std::pair<std::vector<mpz_class>, mpz_class>> scalers;
    for (unsigned ci = 0; ci < mo.r; ci++) {
        std::vector<mpz_class> piv;
        bool ok = false;
        for (unsigned j = 0; j < amb.n && !ok; j++) {
            std::vector<mpz_class> col(amb.n);
            for (unsigned i = 0; i < amb.n; i++)
                col[i] = mo.rad.basis(i, j);
            if (ord_component_or_inf(amb, mo, ci, col, mo.rad.den) == 1) {
                piv = col;
                ok = true;
            }
        }
        BM_REQUIRE(ok, "no component uniformizer among radical generators");
        auto const & [ev, ed] = mo.idem[ci];
        /* sigma = (1 - e) + e*pi over den = ed * rad.den */
        auto epi = amb.alg.mul(ev, piv);
        mpz_class const den = ed * mo.rad.den;
        std::vector<mpz_class> sig(amb.n);
        for (unsigned t = 0; t < amb.n; t++) {
            sig[t] = (amb.alg.one[t] * ed - ev[t]) * mo.rad.den + epi[t];
            mpz_fdiv_r(sig[t].get_mpz_t(), sig[t].get_mpz_t(), amb.alg.modulus.get_mpz_t());
        }
        scalers.push_back({sig, den});
    }

    auto count_at_depth = [&](unsigned long dep) -> mpz_class {
        lattice const pwin = lattice_power(mo.rad, dep, amb.alg);
        finite_quotient q = make_finite_quotient(mo.m, pwin);
        if (q.size > caps.max_candidates)
            throw search_space_too_large("ideal class window too large");

        /* R-stable lattices in the window */
        std::vector<lattice> stable;
        between_enum be;
        be.q = q;
        be.alg = &amb.alg;
        be.caps = caps;
        be.run([&](lattice const & l) {
            /* closure under multiplication by the generators of R */
            for (unsigned j = 0; j < amb.n; j++) {
                std::vector<mpz_class> rj(amb.n);
                for (unsigned i = 0; i < amb.n; i++)
                    rj[i] = r.L.basis(i, j);
                for (unsigned k2 = 0; k2 < amb.n; k2++) {
                    std::vector<mpz_class> ck(amb.n);
                    for (unsigned i = 0; i < amb.n; i++)
                        ck[i] = l.basis(i, k2);
                    if (!member(l, amb.alg.mul(rj, ck), r.L.den * l.den))
                        return;
                }
            }
            stable.push_back(l);
        });

        /* normalize each lattice: push up by sigma^{-1} while inside M */
        std::vector<std::pair<std::vector<mpz_class>, mpz_class>> inv_scalers;
        for (auto const & [sv, sden] : scalers) {
            std::vector<mpz_class> iv;
            mpz_class ivden;
            invert_element(amb.alg, sv, sden, iv, ivden);
            inv_scalers.push_back({iv, ivden});
        }
        auto normalize = [&](lattice l) {
            for (;;) {
                bool moved = false;
                for (auto const & [iv, ivden] : inv_scalers) {
                    lattice up = scale_by(amb.alg, l, iv, ivden);
                    if (contains(mo.m, up)) {
                        l = up;
                        moved = true;
                    }
                }
                if (!moved)
                    return l;
            }
        };

        std::map<lattice, unsigned> norm_index;
        std::vector<lattice> norms;
        std::vector<unsigned> cls(stable.size());
        for (size_t i = 0; i < stable.size(); i++) {
            lattice nl = normalize(stable[i]);
            auto it = norm_index.find(nl);
            if (it == norm_index.end()) {
                norm_index[nl] = unsigned(norms.size());
                norms.push_back(nl);
                cls[i] = unsigned(norms.size() - 1);
            } else
                cls[i] = it->second;
        }

        /* unit orbits on the normalized forms. The unit group modulo
         * 1 + rad^dep is generated by the unit residues of M/rad together
         * with 1 + (basis of rad^k), k < dep, so a generator BFS replaces
         * the full residue sweep. */
        std::vector<unsigned> parent(norms.size());
        for (size_t i = 0; i < parent.size(); i++)
            parent[i] = unsigned(i);
        std::function<unsigned(unsigned)> find = [&](unsigned x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        mult_table tm = order_mult_table(mo.m, amb.alg);
        std::vector<std::pair<std::vector<mpz_class>, mpz_class>> unit_gens;
        {
            finite_quotient q1 = make_finite_quotient(mo.m, mo.rad);
            if (q1.size > caps.max_candidates)
                throw search_space_too_large("residue ring too large");
            for (mpz_class idx = 0; idx < q1.size; idx++) {
                auto uv = fq_rep(q1, idx);
                auto uc = coords_in(mo.m, uv, mo.m.den);
                if (rank_mod_p(tm.mul_matrix(uc), amb.ctx.p, nullptr) == amb.n)
                    unit_gens.push_back({uv, mo.m.den});
            }
            lattice rk = mo.rad;
            for (unsigned long k = 1; k < dep; k++) {
                for (unsigned j = 0; j < amb.n; j++) {
                    std::vector<mpz_class> v(amb.n);
                    for (unsigned i = 0; i < amb.n; i++)
                        v[i] = amb.alg.one[i] * rk.den + rk.basis(i, j);
                    unit_gens.push_back({v, rk.den});
                }
                rk = lattice_product(rk, mo.rad, amb.alg);
            }
        }
        for (auto const & [uv, uden] : unit_gens)
            for (size_t i = 0; i < norms.size(); i++) {
                lattice ul = scale_by(amb.alg, norms[i], uv, uden);
                auto it = norm_index.find(ul);
                if (it == norm_index.end())
                    continue;
                unsigned a = find(unsigned(i)), b = find(it->second);
                if (a != b)
                    parent[a] = b;
            }
        std::set<unsigned> classes;
        for (size_t i = 0; i < norms.size(); i++)
            classes.insert(find(unsigned(i)));
        return mpz_class(classes.size());
    };

    mpz_class c1 = count_at_depth(depth);
    mpz_class c2 = count_at_depth(depth + 1);
    if (c1 == c2)
        return c1;
    mpz_class c3 = count_at_depth(depth + 2);
    if (c2 == c3)
        return c2;
    throw depth_too_small("brute_ideal_classes: counts keep changing with depth");
}

mpz_class brute_unit_index(local_ambient const & amb, lattice const & o,
                           max_order_info const & mo, unsigned long depth,
                           oracle_caps const & caps)
{
    lattice const pwin = lattice_power(mo.rad, depth, amb.alg);
    finite_quotient qm = make_finite_quotient(mo.m, pwin);
    if (qm.size > caps.max_candidates)
        throw search_space_too_large("unit index window too large");
    mult_table tm = order_mult_table(mo.m, amb.alg);

    auto is_unit = [&](std::vector<mpz_class> const & v, mpz_class const & vden) {
        auto c = coords_in(mo.m, v, vden);
        return rank_mod_p(tm.mul_matrix(c), amb.ctx.p, nullptr) == amb.n;
    };

    mpz_class all_units = 0;
    for (mpz_class idx = 0; idx < qm.size; idx++)
        if (is_unit(fq_rep(qm, idx), qm.sup.den))
            all_units++;

    /* image of O^x: distinct canonical residues of units of O */
    lattice const pwo = lattice_intersect(o, pwin, amb.alg);
    finite_quotient qo = make_finite_quotient(o, pwo);
    if (qo.size > caps.max_candidates)
        throw search_space_too_large("unit index window too large");
    std::set<std::vector<mpz_class>> image;
    for (mpz_class idx = 0; idx < qo.size; idx++) {
        auto v = fq_rep(qo, idx);
        if (!is_unit(v, qo.sup.den))
            continue;
        image.insert(fq_canon(qm, v, qo.sup.den));
    }
    mpz_class const img((unsigned long)image.size());
    BM_REQUIRE(img != 0, "brute_unit_index: empty unit image");
    BM_REQUIRE(all_units % img == 0, "brute_unit_index: image does not divide");
    return all_units / img;
}

} // namespace bassmonoid
