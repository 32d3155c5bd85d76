#ifndef QQ_ERRORS_HPP
#define QQ_ERRORS_HPP

#include <stdexcept>

namespace qq {

// Input asks for a quantity outside its dynamical regime (e.g. g(t) where
// the fourth orbit point has left (2_a, -2_a)).
struct RegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

// A root finder failed: no bracket, or the tolerance was not reached.
struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qq

#endif
