#include "qq/family.hpp"

#include <cmath>
#include <stdexcept>

#include "qq/poincare.hpp"

namespace qq {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 1.0))
        throw std::domain_error("alpha must exceed 1");
}

} // namespace

Parameterization param_from_a(double alpha, double a) {
    require_alpha(alpha);
    if (!(a > 0.0))
        throw std::domain_error("parameter a must be positive");
    Parameterization par;
    par.alpha = alpha;
    par.a = a;
    par.b = pow_pos(a, alpha - 1.0);
    par.two_resc = 1.0 - par.b;
    if (par.two_resc > -1.0 && par.two_resc < 0.0) {
        const double m = -par.two_resc;  // |2_a| in (0,1)
        par.abar = std::log(m / (1.0 - m));
        par.tcoord = std::log((1.0 - par.two_resc) / (1.0 + par.two_resc));
    }
    return par;
}

Parameterization param_from_abar(double alpha, double abar) {
    require_alpha(alpha);
    if (std::isnan(abar) || std::isinf(abar))
        throw std::domain_error("abar must be finite");
    const double m = sigmoid(abar);  // |2_a|
    const double b = 1.0 + m;
    Parameterization par;
    par.alpha = alpha;
    par.b = b;
    par.two_resc = -m;
    par.a = pow_pos(b, 1.0 / (alpha - 1.0));
    par.abar = abar;
    par.tcoord = std::log(b / (2.0 - b));
    return par;
}

double a_escape(double alpha) {
    require_alpha(alpha);
    return pow_pos(2.0, 1.0 / (alpha - 1.0));
}

const char* orbit_status_name(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::complete: return "complete";
        case OrbitStatus::escaped: return "escaped";
        case OrbitStatus::hit_critical: return "hit_critical";
    }
    return "unknown";
}

double escape_threshold(double alpha, double b) {
    require_alpha(alpha);
    if (!(b > 0.0))
        throw std::domain_error("escape_threshold: b must be positive");
    // g(s) = b s^alpha - s - 1; g(0) = -1 and g grows without bound.
    auto g = [&](double s) { return b * pow_pos(s, alpha) - s - 1.0; };
    double hi = 3.0 + 2.0 / (b * (alpha - 1.0));
    for (int k = 0; k < 200 && g(hi) <= 0.0; ++k)
        hi *= 2.0;
    double lo = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        if (g(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-13 * hi)
            break;
    }
    return 0.5 * (lo + hi);
}

Orbit iterate(double alpha, double a, int n_max, double c_tol) {
    require_alpha(alpha);
    if (!(a > 0.0))
        throw std::domain_error("parameter a must be positive");
    if (n_max < 1 || n_max > 64)
        throw std::domain_error("n_max must be in [1, 64]");
    if (!(c_tol >= 0.0))
        throw std::domain_error("c_tol must be nonnegative");

    Orbit orb;
    orb.alpha = alpha;
    orb.a = a;
    orb.b = pow_pos(a, alpha - 1.0);
    orb.c_tol = c_tol;
    orb.y.reserve(static_cast<std::size_t>(n_max) + 1);
    orb.y.push_back(0.0);

    // s_star >= 1 whenever b <= 2, so the threshold is only needed once an
    // iterate drops below -1 (or immediately when b > 2).
    double s_star = -1.0;
    auto escaped_past = [&](double y) {
        if (y >= 0.0)
            return false;
        if (orb.b <= 2.0 && y >= -1.0)
            return false;
        if (s_star < 0.0)
            s_star = escape_threshold(alpha, orb.b);
        return y < -s_star;
    };

    for (int n = 1; n <= n_max; ++n) {
        const double prev = orb.y.back();
        const double y = 1.0 - orb.b * pow_abs(prev, alpha);
        orb.y.push_back(y);
        if (escaped_past(y)) {
            orb.status = OrbitStatus::escaped;
            orb.event_index = n;
            return orb;
        }
        if (orb.event_index < 0 && std::fabs(y) <= c_tol) {
            orb.status = OrbitStatus::hit_critical;
            orb.event_index = n;
        }
    }
    return orb;
}

KneadingSequence kneading(double alpha, double a, int n_max, double c_tol) {
    const Orbit orb = iterate(alpha, a, n_max, c_tol);
    KneadingSequence seq;
    seq.c_tolerance = c_tol;
    seq.orbit_status = orb.status;
    seq.event_index = orb.event_index;
    for (std::size_t n = 1; n < orb.y.size(); ++n) {
        const double y = orb.y[n];
        if (std::fabs(y) <= c_tol) {
            seq.symbols += 'C';
            break;
        }
        seq.symbols += (y > 0.0) ? 'R' : 'L';
    }
    return seq;
}

} // namespace qq
