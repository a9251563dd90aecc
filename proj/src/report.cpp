#include "report.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace bassmonoid {

std::vector<mpz_class> parse_poly(std::string const & text)
{
    /* JSON array form, constant first */
    size_t start = text.find_first_not_of(" \t");
    if (start != std::string::npos && text[start] == '[') {
        auto j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded() || !j.is_array() || j.empty())
            throw std::invalid_argument("malformed coefficient array");
        std::vector<mpz_class> asc;
        for (auto const & e : j) {
            if (e.is_number_integer())
                asc.push_back(mpz_class((long)e.get<long long>()));
            else if (e.is_string())
                asc.push_back(mpz_class(e.get<std::string>()));
            else
                throw std::invalid_argument("coefficients must be integers");
        }
        while (asc.size() > 1 && asc.back() == 0)
            asc.pop_back();
        return asc;
    }

    /* sum of terms c*x^k over a single variable x */
    std::map<unsigned long, mpz_class> terms;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace((unsigned char)text[i]))
            i++;
    };
    skip_ws();
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        skip_ws();
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            i++;
        } else if (!first)
            throw std::invalid_argument("expected '+' or '-' between terms");
        first = false;
        skip_ws();
        std::string digits;
        while (i < text.size() && std::isdigit((unsigned char)text[i]))
            digits += text[i++];
        mpz_class coef = digits.empty() ? mpz_class(1) : mpz_class(digits);
        coef *= sign;
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            i++;
            skip_ws();
        }
        unsigned long expo = 0;
        if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
            i++;
            expo = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                i++;
                skip_ws();
                std::string ed;
                while (i < text.size() && std::isdigit((unsigned char)text[i]))
                    ed += text[i++];
                if (ed.empty())
                    throw std::invalid_argument("missing exponent after '^'");
                expo = std::stoul(ed);
            }
        } else if (digits.empty())
            throw std::invalid_argument("empty term");
        terms[expo] += coef;
        skip_ws();
    }
    if (terms.empty())
        throw std::invalid_argument("empty polynomial");
    unsigned long const deg = terms.rbegin()->first;
    std::vector<mpz_class> asc(deg + 1, 0);
    for (auto const & [e, c] : terms)
        asc[e] = c;
    while (asc.size() > 1 && asc.back() == 0)
        asc.pop_back();
    return asc;
}

std::string poly_to_string(std::vector<mpz_class> const & asc)
{
    std::ostringstream os;
    bool first = true;
    for (size_t ii = asc.size(); ii-- > 0;) {
        if (asc[ii] == 0 && asc.size() > 1)
            continue;
        mpz_class c = asc[ii];
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        mpz_class a = c < 0 ? mpz_class(-c) : c;
        if (a != 1 || ii == 0)
            os << a.get_str();
        if (ii >= 1) {
            os << "x";
            if (ii > 1)
                os << "^" << ii;
        }
    }
    return os.str();
}

ordered_json lattice_json(lattice const & l)
{
    ordered_json j;
    j["denominator"] = l.den.get_str();
    ordered_json rows = ordered_json::array();
    for (unsigned i = 0; i < l.n; i++) {
        ordered_json row = ordered_json::array();
        for (unsigned c = 0; c < l.n; c++)
            row.push_back(l.basis(i, c).get_str());
        rows.push_back(row);
    }
    j["hnf_basis"] = rows;
    return j;
}

static char const * branch_name(bass_branch b)
{
    switch (b) {
    case bass_branch::maximal: return "maximal";
    case bass_branch::u2_kappa1: return "u=2, kappa_E = kappa_R";
    case bass_branch::u1_kappa2: return "u=1, [kappa_E:kappa_R] = 2";
    case bass_branch::split: return "split";
    default: return "none";
    }
}

ordered_json local_block(local_order const & ord, max_order_info const & mo,
                         std::optional<local_poly> const & phi_w, report_options const & opt)
{
    local_ambient const & amb = *ord.amb;
    ordered_json j;
    if (phi_w)
        j["phi_w"] = lp_to_string(amb.ctx, *phi_w);
    j["domain"] = mo.is_domain();
    invariant_bundle inv = invariants(ord, mo);
    {
        ordered_json ji;
        ji["S"] = std::to_string(inv.S);
        ji["S_K"] = std::to_string(inv.S_K);
        ji["d_R"] = inv.d_R;
        if (mo.is_domain()) {
            ji["u"] = std::to_string(inv.u);
            ji["f"] = std::to_string(inv.f);
            ji["e"] = inv.e;
            ji["d"] = inv.d;
            ji["kappa_index"] = inv.kappa_index;
        } else {
            ordered_json fp = ordered_json::array();
            for (auto v : inv.f_pair)
                fp.push_back(std::to_string(v));
            ji["f_pair"] = fp;
            ordered_json comps = ordered_json::array();
            for (unsigned i = 0; i < mo.r; i++)
                comps.push_back({{"e", mo.comp_e(i)}, {"d", mo.comp_d[i]}});
            ji["components"] = comps;
        }
        j["invariants"] = ji;
    }
    bass_witness w = is_bass(ord, mo);
    j["bass"] = {{"is_bass", w.bass}, {"branch", branch_name(w.branch)}};
    if (!w.bass) {
        j["bass"]["m_dim"] = std::to_string(w.m_dim);
        return j;
    }

    if (!mo.is_domain() && ord.amb->phi) {
        auto sd = split_decomposition(ord, mo);
        ordered_json js;
        js["factor_1"] = lp_to_string(sd.tctx, sd.f1);
        js["factor_2"] = lp_to_string(sd.tctx, sd.f2);
        js["shift"] = zq_to_string(sd.tctx, sd.shift);
        js["dvr_ranks"] = {sd.r1, sd.r2};
        js["s"] = std::to_string(sd.s);
        j["split"] = js;
    }

    auto chain = overorders_bass(ord, mo);
    ordered_json jo = ordered_json::array();
    for (auto const & e : chain) {
        ordered_json je;
        je["S_K"] = std::to_string(e.s_k);
        if (mo.is_domain())
            je["f"] = std::to_string(e.f_exp);
        else {
            ordered_json fp = ordered_json::array();
            for (auto v : e.f_pair)
                fp.push_back(std::to_string(v));
            je["f_pair"] = fp;
        }
        je["unit_index"] = e.unit_idx.get_str();
        je["lattice"] = lattice_json(e.l);
        jo.push_back(je);
    }
    j["overorders"] = jo;
    orbital_result orb = orbital_integral(ord, mo);
    j["class_monoid_size"] = orb.class_monoid.get_str();
    j["orbital"] = {{"lambda", orb.lambda_count.get_str()}};
    if (ord.amb->phi && ord.L == standard_lattice(amb.n)) {
        mpq_class so = geometric_orbital(ord, mo);
        j["geometric_orbital"] = {
            {"numerator", so.get_num().get_str()},
            {"denominator", so.get_den().get_str()},
            {"characteristic_assumption", "char(F) = 0 or char(F) > n; carries no content in exact arithmetic"},
        };
    }
    {
        auto mc = mass_check(ord, mo);
        ordered_json jm;
        jm["lambda_closed_form"] = mc.lambda_closed.get_str();
        jm["unit_index_sum"] = mc.unit_sum.get_str();
        jm["equal"] = mc.equal;
        j["mass_check"] = jm;
    }

    if (opt.verify) {
        ordered_json jv;
        oracle_caps caps{opt.max_search};
        try {
            auto brute = brute_overorders(amb.alg, ord.L, mo.m, caps);
            std::set<lattice> a(brute.begin(), brute.end()), b;
            for (auto const & e : chain)
                b.insert(e.l);
            jv["brute_overorders"] = {{"count", brute.size()}, {"matches", a == b}};
        } catch (search_space_too_large const & e) {
            jv["brute_overorders"] = {{"skipped", e.what()}};
        }
        try {
            unsigned long depth = std::max<unsigned long>(2, inv.f + 1);
            mpz_class cls = brute_ideal_classes(ord, mo, depth, caps);
            jv["brute_ideal_classes"] = {{"count", cls.get_str()},
                                         {"matches", cls == orb.class_monoid}};
        } catch (search_space_too_large const & e) {
            jv["brute_ideal_classes"] = {{"skipped", e.what()}};
        }
        try {
            unsigned long depth = std::max<unsigned long>(2, inv.f + 1);
            mpz_class u_brute = brute_unit_index(amb, ord.L, mo, depth, caps);
            jv["brute_unit_index"] = {{"count", u_brute.get_str()},
                                      {"matches", u_brute == unit_index(amb, ord.L, mo)}};
        } catch (search_space_too_large const & e) {
            jv["brute_unit_index"] = {{"skipped", e.what()}};
        }
        j["verification"] = jv;
    }
    return j;
}

ordered_json local_report(std::vector<mpz_class> const & poly, mpz_class const & p,
                          report_options const & opt)
{
    mpz_class const disc = disc_int_poly(poly);
    if (disc == 0)
        throw not_reduced("polynomial has a repeated factor");
    mpz_class scratch;
    unsigned long const v = mpz_remove(scratch.get_mpz_t(), disc.get_mpz_t(), p.get_mpz_t());

    return with_precision_retry(2 * v + 4, [&](unsigned long prec) {
        padic_ctx ctx(p, prec, 1);
        auto parts = hensel_split(ctx, lp_from_integers(ctx, poly));
        ordered_json j;
        j["input"] = {{"poly", poly_to_string(poly)}, {"prime", p.get_str()}};
        j["precision"] = prec;
        ordered_json blocks = ordered_json::array();
        for (auto const & phi_w : parts) {
            local_order ord = order_from_polynomial(ctx, phi_w);
            max_order_info mo = maximal_order(ord);
            blocks.push_back(local_block(ord, mo, phi_w, opt));
        }
        j["completions"] = blocks;
        return j;
    });
}

ordered_json global_report(global_order const & g, report_options const & opt)
{
    ordered_json j;
    j["input"] = {{"poly", poly_to_string(g.field_poly)}, {"power_basis", g.power_basis}};
    j["disc_R"] = g.disc_r.get_str();
    j["disc_OE"] = g.disc_oe.get_str();
    j["index"] = g.index.get_str();
    {
        ordered_json bp = ordered_json::array();
        for (auto const & p : g.bad_primes)
            bp.push_back(p.get_str());
        j["bad_primes"] = bp;
    }
    j["maximal_order"] = lattice_json(g.max_lattice);

    ordered_json locals = ordered_json::array();
    for (auto const & p : g.bad_primes) {
        ordered_json jp;
        jp["p"] = p.get_str();
        ordered_json ws = ordered_json::array();
        for (auto const & piece : localize(g, p))
            ws.push_back(local_block(piece.ord, piece.mo, piece.phi_w, opt));
        jp["completions"] = ws;
        locals.push_back(jp);
    }
    j["local"] = locals;

    auto cd = conductor_factorization(g);
    {
        ordered_json entries = ordered_json::array();
        for (auto const & e : cd.entries) {
            ordered_json je;
            je["p"] = e.p.get_str();
            je["w"] = e.w_index;
            switch (e.kind) {
            case conductor_entry::kind_t::kappa_one:
                je["kind"] = "p (kappa index 1)";
                je["l"] = std::to_string(e.s_k);
                je["ideal_exponent"] = std::to_string(2 * e.s_k);
                break;
            case conductor_entry::kind_t::kappa_two:
                je["kind"] = "q (kappa index 2)";
                je["m"] = std::to_string(e.s_k);
                je["ideal_exponent"] = std::to_string(e.s_k);
                break;
            case conductor_entry::kind_t::split:
                je["kind"] = "split pair";
                je["n"] = std::to_string(e.s_k);
                je["ideal_exponent"] = std::to_string(e.s_k);
                break;
            }
            entries.push_back(je);
        }
        j["conductor_factorization"] = entries;
    }
    j["count_nontrivial_classes"] = count_nontrivial_classes(g).get_str();
    {
        /* norm identity */
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
        j["norm_identity"] = {{"prod_q_2SK", lhs.get_str()},
                              {"disc_ratio", rhs.get_str()},
                              {"equal", lhs == rhs}};
    }
    {
        ordered_json jo = ordered_json::array();
        for (auto const & e : overorders_global(g)) {
            ordered_json je;
            ordered_json ex = ordered_json::array();
            for (auto v : e.exponents)
                ex.push_back(std::to_string(v));
            je["exponents"] = ex;
            je["lattice"] = lattice_json(e.l);
            jo.push_back(je);
        }
        j["overorders"] = jo;
    }
    if (opt.verify) {
        ordered_json jv;
        oracle_caps caps{opt.max_search};
        try {
            auto brute = brute_overorders(g.alg, g.l, g.max_lattice, caps);
            jv["brute_global_subrings"] = {
                {"count", brute.size()},
                {"matches", mpz_class(brute.size()) == count_nontrivial_classes(g)}};
        } catch (search_space_too_large const & e) {
            jv["brute_global_subrings"] = {{"skipped", e.what()}};
        }
        j["verification"] = jv;
    }
    return j;
}

} // namespace bassmonoid
