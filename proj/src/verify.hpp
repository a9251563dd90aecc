#ifndef BASSMONOID_VERIFY_HPP_
#define BASSMONOID_VERIFY_HPP_

#include <string>
#include <vector>

#include "globalorder.hpp"
#include "oracle.hpp"

namespace bassmonoid {

/* Identity checks behind `verify` and the acceptance suite. Each function
 * returns human-readable violation messages (empty = pass) and reports
 * non-Bass entries through `skipped` instead of failing. */
struct verify_result {
    std::vector<std::string> violations;
    std::vector<std::string> skipped;
    bool passed() const { return violations.empty(); }
};

verify_result verify_local_entry(std::vector<mpz_class> const & poly, mpz_class const & p,
                                 oracle_caps const & caps = {}, bool run_oracles = true);

verify_result verify_global_entry(std::vector<mpz_class> const & poly,
                                  oracle_caps const & caps = {}, bool run_oracles = true);

/* identity checks on an already-built local order (used for corpus entries
 * constructed from explicit bases) */
verify_result verify_local_order(local_order const & ord, max_order_info const & mo,
                                 oracle_caps const & caps = {}, bool run_oracles = true);

/* p-valuation of the discriminant of a local lattice order (trace form) */
unsigned long local_disc_valuation(local_ambient const & amb, lattice const & l);

} // namespace bassmonoid

#endif /* BASSMONOID_VERIFY_HPP_ */
