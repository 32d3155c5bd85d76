#ifndef QQ_POINCARE_HPP
#define QQ_POINCARE_HPP

#include <stdexcept>

namespace qq {

/// Oriented open interval (p, q). The origin endpoint p is always finite;
/// the target endpoint q may be +/-infinity (at most one infinite endpoint).
/// Decreasing orientation (p > q), e.g. (1, -1), is first class: interiority
/// and coordinates are orientation-aware.
struct OrientedInterval {
    double p;
    double q;

    OrientedInterval(double p_, double q_);

    bool finite() const;

    /// Strict interiority in the interval's orientation.
    bool contains(double x) const;
};

/// Poincare coordinate of x in (p, q): ln((x-p)/(q-x)) for finite intervals,
/// ln(x-p) for q = +inf and ln|x-p| for q = -inf. Strictly monotone from the
/// interior onto the reals (finite case). Throws std::domain_error when x is
/// not interior (resp. on the wrong side of p).
double coord(const OrientedInterval& I, double x);

/// Inverse chart, finite intervals only; total on the reals.
double coord_inv(const OrientedInterval& I, double t);

/// Length of (p, q) in the dt/t metric on (0, inf): |ln(q/p)|. Symmetric and
/// scale invariant; requires p, q > 0.
double nonlinearity(double p, double q);

/// x^alpha as exp(alpha ln x) for x > 0, with 0^alpha = 0.
double pow_pos(double x, double alpha);

/// |x|^alpha.
double pow_abs(double x, double alpha);

/// The map h(x) = x^alpha read in the coordinates of I and of its image
/// interval (p^alpha, q^alpha). Requires alpha > 1 and I strictly inside
/// (0, inf); both orientations are accepted. Strictly increasing in t and
/// expanding: hbar(t2) - hbar(t1) >= t2 - t1.
double hbar(double alpha, const OrientedInterval& I, double t);

/// coord(h(I), h(x)) - coord(I, x); the absolute value is the push strength.
double push_at(double alpha, const OrientedInterval& I, double x);

/// Limits of hbar(t) - t as t -> -inf (minus) and t -> +inf (plus).
/// minus <= plus for every admissible domain.
struct PushLimits {
    double minus;
    double plus;
};

/// Closed-form limit pushes of h on (p, q), 0 < p < q; both values depend on
/// alpha and nonlinearity(p, q) only.
PushLimits push_limits(double alpha, double p, double q);

/// Logistic function 1/(1+e^-t), evaluated without overflow; the finite
/// inverse chart is p + (q-p)*sigmoid(t).
double sigmoid(double t);

} // namespace qq

#endif
