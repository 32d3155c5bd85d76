#ifndef QQ_FAMILY_HPP
#define QQ_FAMILY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qq {

/// One parameter point of the family f_a(x) = -|x|^alpha + a in its four
/// charts. The rescaled orbit convention divides by 1_a = a, so the second
/// orbit point is two_resc = 1 - b with b = a^(alpha-1). The abar and tcoord
/// charts exist only for two_resc in (-1, 0), i.e. a in (1, a_escape).
struct Parameterization {
    double alpha = 0;
    double a = 0;
    double b = 0;
    double two_resc = 0;
    std::optional<double> abar;    // coord((0,1), |two_resc|)
    std::optional<double> tcoord;  // coord((1,-1), two_resc)
};

Parameterization param_from_a(double alpha, double a);
Parameterization param_from_abar(double alpha, double abar);

/// Parameter where two_resc = -1, i.e. 2^(1/(alpha-1)).
double a_escape(double alpha);

enum class OrbitStatus { complete, escaped, hit_critical };

const char* orbit_status_name(OrbitStatus s);

/// Rescaled post-critical orbit y_0 = 0, y_1 = 1, y_{n+1} = 1 - b|y_n|^alpha.
/// Iteration runs to n_max unless the orbit escapes past the repelling
/// negative fixed point -s_star, after which it is monotone to -inf.
/// A critical hit (|y_n| <= c_tol) is recorded but does not stop iteration.
struct Orbit {
    double alpha = 0;
    double a = 0;
    double b = 0;
    double c_tol = 0;
    std::vector<double> y;
    OrbitStatus status = OrbitStatus::complete;
    int event_index = -1;  // first critical hit or the escape index

    /// Raw (unrescaled) orbit point x_n = a * y_n.
    double raw(std::size_t n) const { return a * y[n]; }
};

Orbit iterate(double alpha, double a, int n_max, double c_tol = 1e-9);

/// Magnitude of the repelling negative fixed point in rescaled coordinates:
/// the positive root of b s^alpha - s - 1 = 0.
double escape_threshold(double alpha, double b);

/// R/L/C itinerary of y_1, y_2, ...; C (|y_n| <= c_tol) terminates the
/// sequence, escape yields the prefix with the status surfaced.
struct KneadingSequence {
    std::string symbols;
    double c_tolerance = 0;
    OrbitStatus orbit_status = OrbitStatus::complete;
    int event_index = -1;
};

KneadingSequence kneading(double alpha, double a, int n_max, double c_tol = 1e-9);

} // namespace qq

#endif
