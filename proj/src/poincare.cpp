#include "qq/poincare.hpp"

#include <cmath>
#include <string>

namespace qq {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::domain_error(what);
}

// ln(e^u - 1) for u > 0 without overflow or cancellation.
double ln_expm1(double u) {
    if (u < 0.5)
        return std::log(std::expm1(u));
    return u + std::log1p(-std::exp(-u));
}

// ln(x^a - p^a) for 0 < p < x, given d = x - p exactly; the direct
// subtraction of the powers cancels catastrophically when d is tiny.
double ln_pow_gap(double alpha, double p, double d) {
    return alpha * std::log(p) + ln_expm1(alpha * std::log1p(d / p));
}

// hbar for an increasing domain 0 < p < q.
double hbar_increasing(double alpha, double p, double q, double t) {
    const double w = q - p;
    const double dxp = w * sigmoid(t);   // x - p
    const double dqx = w * sigmoid(-t);  // q - x
    const double x = p + dxp;
    return ln_pow_gap(alpha, p, dxp) - ln_pow_gap(alpha, x, dqx);
}

void require_positive_domain(double alpha, const OrientedInterval& I) {
    if (!(alpha > 1.0))
        fail("alpha must exceed 1");
    if (!I.finite() || !(I.p > 0.0) || !(I.q > 0.0))
        fail("domain interval must lie inside (0, inf)");
}

} // namespace

double sigmoid(double t) {
    if (t >= 0.0)
        return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

OrientedInterval::OrientedInterval(double p_, double q_) : p(p_), q(q_) {
    if (std::isnan(p) || std::isnan(q))
        fail("interval endpoints must not be NaN");
    if (std::isinf(p))
        fail("origin endpoint must be finite");
    if (p == q)
        fail("interval endpoints must be distinct");
}

bool OrientedInterval::finite() const {
    return !std::isinf(q);
}

bool OrientedInterval::contains(double x) const {
    if (q == HUGE_VAL)
        return x > p;
    if (q == -HUGE_VAL)
        return x < p;
    return (x - p) * (q - x) > 0.0;
}

double coord(const OrientedInterval& I, double x) {
    if (!I.contains(x))
        fail("coord: point not interior to the oriented interval");
    if (I.q == HUGE_VAL)
        return std::log(x - I.p);
    if (I.q == -HUGE_VAL)
        return std::log(I.p - x);
    return std::log((x - I.p) / (I.q - x));
}

double coord_inv(const OrientedInterval& I, double t) {
    if (!I.finite())
        fail("coord_inv: interval must have finite endpoints");
    return I.p + (I.q - I.p) * sigmoid(t);
}

double nonlinearity(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0))
        fail("nonlinearity: endpoints must be positive");
    return std::fabs(std::log(q / p));
}

double pow_pos(double x, double alpha) {
    if (x == 0.0)
        return 0.0;
    if (!(x > 0.0))
        fail("pow_pos: base must be nonnegative");
    return std::exp(alpha * std::log(x));
}

double pow_abs(double x, double alpha) {
    return pow_pos(std::fabs(x), alpha);
}

double hbar(double alpha, const OrientedInterval& I, double t) {
    require_positive_domain(alpha, I);
    if (I.p < I.q)
        return hbar_increasing(alpha, I.p, I.q, t);
    return -hbar_increasing(alpha, I.q, I.p, -t);
}

double push_at(double alpha, const OrientedInterval& I, double x) {
    require_positive_domain(alpha, I);
    if (!I.contains(x))
        fail("push_at: point not interior to the domain interval");
    // image coordinate minus domain coordinate, with the power gaps kept in
    // log form
    const double dxp = x - I.p;
    const double dqx = I.q - x;
    double image;
    if (I.p < I.q)
        image = ln_pow_gap(alpha, I.p, dxp) - ln_pow_gap(alpha, x, dqx);
    else
        image = -(ln_pow_gap(alpha, I.q, -dqx) - ln_pow_gap(alpha, x, -dxp));
    return image - std::log(dxp / dqx);
}

PushLimits push_limits(double alpha, double p, double q) {
    if (!(alpha > 1.0))
        fail("alpha must exceed 1");
    if (!(0.0 < p) || !(p < q) || std::isinf(q))
        fail("push_limits: need 0 < p < q finite");
    const double lam = std::log(q / p);
    const double la = std::log(alpha);
    PushLimits lim;
    lim.minus = la + ln_expm1(lam) - ln_expm1(alpha * lam);
    lim.plus = -la - (alpha - 1.0) * lam - ln_expm1(lam) + ln_expm1(alpha * lam);
    return lim;
}

} // namespace qq
