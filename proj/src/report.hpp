#ifndef BASSMONOID_REPORT_HPP_
#define BASSMONOID_REPORT_HPP_

#include <string>

#include "json.hpp"

#include "globalorder.hpp"
#include "oracle.hpp"

namespace bassmonoid {

using ordered_json = nlohmann::ordered_json;

struct report_options {
    bool verify = false;
    unsigned long max_search = 1'000'000;
};

/* "x^2-243", "x^2 + 2x + 4", "[4, 2, 1]" (constant first) -> ascending
 * coefficients; throws std::invalid_argument on malformed input */
std::vector<mpz_class> parse_poly(std::string const & text);
std::string poly_to_string(std::vector<mpz_class> const & asc);

ordered_json lattice_json(lattice const & l);

/* full per-completion block: invariants, Bass witness, overorders with
 * unit indices, orbital values, optional oracle verification */
ordered_json local_block(local_order const & ord, max_order_info const & mo,
                         std::optional<local_poly> const & phi_w, report_options const & opt);

ordered_json local_report(std::vector<mpz_class> const & poly, mpz_class const & p,
                          report_options const & opt);

ordered_json global_report(global_order const & g, report_options const & opt);

} // namespace bassmonoid

#endif /* BASSMONOID_REPORT_HPP_ */
