#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "report.hpp"
#include "verify.hpp"

using namespace bassmonoid;

namespace {

constexpr int exit_parse = 2;
constexpr int exit_not_bass = 3;
constexpr int exit_precision = 4;
constexpr int exit_violation = 5;

void emit_error(std::string const & kind, std::string const & detail)
{
    ordered_json j;
    j["error"] = kind;
    j["detail"] = detail;
    std::cerr << j.dump(2) << "\n";
}

void write_report(ordered_json const & j, std::string const & out_path)
{
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        emit_error("IOError", "cannot open " + out_path);
        std::exit(1);
    }
    out << j.dump(2) << "\n";
}

std::vector<mpz_class> parse_poly_or_exit(std::string const & text)
{
    try {
        auto poly = parse_poly(text);
        if (poly.size() < 2) {
            emit_error("ParseError", "polynomial must have degree >= 1");
            std::exit(exit_parse);
        }
        if (poly.back() != 1) {
            emit_error("ParseError", "polynomial must be monic");
            std::exit(exit_parse);
        }
        return poly;
    } catch (std::exception const & e) {
        emit_error("ParseError", e.what());
        std::exit(exit_parse);
    }
}

mpz_class parse_prime_or_exit(std::string const & text)
{
    try {
        mpz_class p(text);
        if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0) {
            emit_error("ParseError", "--prime must be a prime number");
            std::exit(exit_parse);
        }
        return p;
    } catch (std::exception const &) {
        emit_error("ParseError", "cannot parse prime '" + text + "'");
        std::exit(exit_parse);
    }
}

struct common_flags {
    std::string precision = "auto";
    bool verify = false;
    unsigned long max_search = 1'000'000;
    std::string json_out;
};

void add_common(CLI::App * cmd, common_flags & f)
{
    cmd->add_option("--precision", f.precision, "working precision exponent N, or 'auto'");
    cmd->add_flag("--verify", f.verify, "run the brute-force oracle cross-checks");
    cmd->add_option("--max-search", f.max_search, "oracle candidate cap");
    cmd->add_option("--json-out", f.json_out, "write the JSON report to a file");
}

int run_guarded(std::function<void()> const & body)
{
    try {
        body();
        return 0;
    } catch (not_bass const & e) {
        emit_error("NotBass", e.what());
        return exit_not_bass;
    } catch (precision_exhausted const & e) {
        emit_error("PrecisionExhausted", e.what());
        return exit_precision;
    } catch (reducible const & e) {
        emit_error("Reducible", e.what());
        return exit_parse;
    } catch (not_reduced const & e) {
        emit_error("NotReduced", e.what());
        return exit_parse;
    } catch (error const & e) {
        emit_error("Error", e.what());
        return 1;
    }
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"exact invariants, overorders and orbital integrals of Bass orders"};
    app.require_subcommand(1);

    /* --- local --- */
    auto * local_cmd = app.add_subcommand("local", "analyze Z_p[x]/(phi) at a prime");
    std::string local_poly_text, local_prime_text;
    bool allow_reducible = false;
    common_flags lf;
    local_cmd->add_option("--poly", local_poly_text, "monic integer polynomial in x")->required();
    local_cmd->add_option("--prime", local_prime_text, "rational prime p")->required();
    local_cmd->add_flag("--allow-reducible-local", allow_reducible,
                        "accept polynomials that are reducible over Z");
    add_common(local_cmd, lf);

    /* --- global --- */
    auto * global_cmd = app.add_subcommand("global", "analyze the order Z[x]/(phi)");
    std::string global_poly_text, basis_text;
    common_flags gf;
    global_cmd->add_option("--poly", global_poly_text, "monic integer polynomial in x")
        ->required();
    global_cmd->add_option("--basis", basis_text,
                           "order given by a basis: [den, [col], [col], ...] in the power basis");
    add_common(global_cmd, gf);

    /* --- verify --- */
    auto * verify_cmd = app.add_subcommand("verify", "run all identities over a corpus");
    std::string corpus_path;
    common_flags vf;
    verify_cmd->add_option("corpus", corpus_path, "corpus file ('-' = stdin)")->required();
    add_common(verify_cmd, vf);

    CLI11_PARSE(app, argc, argv);

    if (local_cmd->parsed()) {
        auto poly = parse_poly_or_exit(local_poly_text);
        mpz_class p = parse_prime_or_exit(local_prime_text);
        if (!allow_reducible && !is_irreducible_int_poly(poly)) {
            emit_error("Reducible",
                       "polynomial is reducible over Z; split shapes are reachable via "
                       "`global` or --allow-reducible-local");
            return exit_parse;
        }
        return run_guarded([&] {
            report_options opt{lf.verify, lf.max_search};
            ordered_json rep;
            if (lf.precision == "auto")
                rep = local_report(poly, p, opt);
            else {
                unsigned long const prec = std::stoul(lf.precision);
                padic_ctx ctx(p, prec, 1);
                rep["input"] = {{"poly", poly_to_string(poly)}, {"prime", p.get_str()}};
                rep["precision"] = prec;
                ordered_json blocks = ordered_json::array();
                for (auto const & phi_w : hensel_split(ctx, lp_from_integers(ctx, poly))) {
                    local_order ord = order_from_polynomial(ctx, phi_w);
                    max_order_info mo = maximal_order(ord);
                    blocks.push_back(local_block(ord, mo, phi_w, opt));
                }
                rep["completions"] = blocks;
            }
            /* a non-Bass completion is a hard error for the local command */
            for (auto const & b : rep["completions"])
                if (!b["bass"]["is_bass"].get<bool>()) {
                    write_report(rep, lf.json_out);
                    ordered_json err;
                    err["error"] = "NotBass";
                    err["witness"] = b["bass"];
                    std::cerr << err.dump(2) << "\n";
                    std::exit(exit_not_bass);
                }
            write_report(rep, lf.json_out);
        });
    }

    if (global_cmd->parsed()) {
        auto poly = parse_poly_or_exit(global_poly_text);
        return run_guarded([&] {
            global_order g;
            if (basis_text.empty())
                g = global_from_polynomial(poly);
            else {
                auto j = nlohmann::json::parse(basis_text, nullptr, false);
                if (j.is_discarded() || !j.is_array() || j.size() != poly.size())
                    throw error("malformed --basis (want [den, col, ..., col])");
                unsigned const n = unsigned(poly.size()) - 1;
                mpz_class den(j[0].is_string() ? mpz_class(j[0].get<std::string>())
                                               : mpz_class((long)j[0].get<long long>()));
                int_mat b(n, n);
                for (unsigned c = 0; c < n; c++)
                    for (unsigned i = 0; i < n; i++) {
                        auto const & e = j[c + 1][i];
                        b(i, c) = e.is_string() ? mpz_class(e.get<std::string>())
                                                : mpz_class((long)e.get<long long>());
                    }
                g = global_from_lattice(poly, lattice_from_generators(n, b, den));
            }
            report_options opt{gf.verify, gf.max_search};
            write_report(global_report(g, opt), gf.json_out);
        });
    }

    /* verify */
    std::istream * in = &std::cin;
    std::ifstream file;
    if (corpus_path != "-") {
        file.open(corpus_path);
        if (!file) {
            emit_error("IOError", "cannot open corpus " + corpus_path);
            return 1;
        }
        in = &file;
    }
    oracle_caps caps{vf.max_search};
    unsigned entries = 0, failures = 0;
    std::vector<std::string> all_violations;
    std::string line;
    while (std::getline(*in, line)) {
        auto const hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        while (!line.empty() && std::isspace((unsigned char)line.back()))
            line.pop_back();
        size_t start = 0;
        while (start < line.size() && std::isspace((unsigned char)line[start]))
            start++;
        line = line.substr(start);
        if (line.empty())
            continue;
        entries++;
        verify_result r;
        int rc = run_guarded([&] {
            auto const at = line.find('@');
            if (at == std::string::npos) {
                r = verify_global_entry(parse_poly(line), caps, vf.verify || true);
            } else {
                auto poly = parse_poly(line.substr(0, at));
                mpz_class p(line.substr(at + 1));
                r = verify_local_entry(poly, p, caps, vf.verify || true);
            }
        });
        if (rc != 0) {
            failures++;
            all_violations.push_back(line + ": pipeline error (exit " + std::to_string(rc) + ")");
            continue;
        }
        for (auto const & s : r.skipped)
            std::cerr << "skipped: " << s << "\n";
        if (!r.passed()) {
            failures++;
            for (auto const & v : r.violations)
                all_violations.push_back(v);
        }
    }
    ordered_json summary;
    summary["entries"] = entries;
    summary["failures"] = failures;
    summary["violations"] = all_violations;
    write_report(summary, vf.json_out);
    return failures ? exit_violation : 0;
}
