#ifndef BASSMONOID_ERRORS_HPP_
#define BASSMONOID_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bassmonoid {

struct error : std::runtime_error {
    explicit error(std::string const & what) : std::runtime_error(what) {}
};

struct rank_deficient : error {
    explicit rank_deficient(std::string const & w = "matrix columns do not span full rank")
        : error(w) {}
};

struct precision_exhausted : error {
    explicit precision_exhausted(std::string const & w = "p-adic precision exhausted")
        : error(w) {}
};

struct zero_constant_term : error {
    explicit zero_constant_term(std::string const & w = "polynomial has zero constant term")
        : error(w) {}
};

struct shape_violation : error {
    explicit shape_violation(std::string const & w) : error(w) {}
};

struct not_reduced : error {
    explicit not_reduced(std::string const & w = "order is not reduced") : error(w) {}
};

struct not_bass : error {
    explicit not_bass(std::string const & w = "order is not Bass") : error(w) {}
};

struct is_domain : error {
    explicit is_domain(std::string const & w = "order is an integral domain") : error(w) {}
};

struct not_monogenic : error {
    explicit not_monogenic(std::string const & w = "order has no defining polynomial") : error(w) {}
};

struct reducible : error {
    explicit reducible(std::string const & w = "polynomial is reducible") : error(w) {}
};

struct search_space_too_large : error {
    explicit search_space_too_large(std::string const & w = "oracle search space exceeds cap")
        : error(w) {}
};

struct depth_too_small : error {
    explicit depth_too_small(std::string const & w = "oracle depth too small") : error(w) {}
};

/* Internal invariant failures. These indicate a bug, not bad input. */
struct internal_error : error {
    explicit internal_error(std::string const & w) : error(w) {}
};

#define BM_REQUIRE(cond, msg)                                                  \
    do {                                                                       \
        if (!(cond))                                                           \
            throw ::bassmonoid::internal_error(std::string(msg) + " [" #cond "]"); \
    } while (0)

} // namespace bassmonoid

#endif /* BASSMONOID_ERRORS_HPP_ */
