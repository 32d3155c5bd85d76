#include <doctest.h>

#include <cmath>

#include "qq/poincare.hpp"
#include "qq/rng.hpp"

using namespace qq;

namespace {
const double kInf = HUGE_VAL;
}

TEST_CASE("interval construction and interiority") {
    CHECK_THROWS_AS(OrientedInterval(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(OrientedInterval(kInf, 1.0), std::domain_error);
    CHECK_THROWS_AS(OrientedInterval(0.0, NAN), std::domain_error);

    const OrientedInterval incr(0.0, 1.0);
    CHECK(incr.contains(0.5));
    CHECK_FALSE(incr.contains(0.0));
    CHECK_FALSE(incr.contains(1.5));

    const OrientedInterval decr(1.0, -1.0);
    CHECK(decr.contains(0.0));
    CHECK(decr.contains(-0.999));
    CHECK_FALSE(decr.contains(1.5));

    CHECK(OrientedInterval(0.0, -kInf).contains(-3.0));
    CHECK_FALSE(OrientedInterval(0.0, -kInf).contains(3.0));
}

TEST_CASE("coord: basic values") {
    CHECK(coord(OrientedInterval(0.0, 1.0), 0.5) == 0.0);
    // ln((x-1)/(-1-x)) at x = -0.2 is ln 1.5
    CHECK(std::fabs(coord(OrientedInterval(1.0, -1.0), -0.2) - std::log(1.5)) < 1e-15);
    CHECK(std::fabs(coord(OrientedInterval(0.0, -kInf), -2.0) - std::log(2.0)) < 1e-15);
    CHECK(std::fabs(coord(OrientedInterval(-2.0, 1.0), 0.0) - std::log(2.0)) < 1e-15);
    CHECK(std::fabs(coord(OrientedInterval(1.0, kInf), 3.5) - std::log(2.5)) < 1e-15);

    CHECK_THROWS_AS(coord(OrientedInterval(0.0, 1.0), 2.0), std::domain_error);
    CHECK_THROWS_AS(coord(OrientedInterval(0.0, 1.0), 0.0), std::domain_error);
    CHECK_THROWS_AS(coord(OrientedInterval(0.0, -kInf), 1.0), std::domain_error);
    CHECK_THROWS_AS(coord(OrientedInterval(0.0, kInf), -1.0), std::domain_error);
}

TEST_CASE("coord_inv: basic values and roundtrip") {
    CHECK(coord_inv(OrientedInterval(0.0, 1.0), 0.0) == 0.5);
    CHECK(std::fabs(coord_inv(OrientedInterval(-2.0, 1.0), std::log(2.0)) - 0.0) < 1e-15);
    const double x = coord_inv(OrientedInterval(0.0, 1.0), 10.0);
    CHECK(std::fabs(coord(OrientedInterval(0.0, 1.0), x) - 10.0) < 1e-12);
    CHECK_THROWS_AS(coord_inv(OrientedInterval(0.0, kInf), 1.0), std::domain_error);
}

TEST_CASE("coord/coord_inv roundtrip over random intervals") {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        SampleRng rng(41, i);
        const double p = (rng.uniform01() < 0.5 ? -1 : 1) * std::exp(rng.uniform(-3, 3));
        double q = (rng.uniform01() < 0.5 ? -1 : 1) * std::exp(rng.uniform(-3, 3));
        if (q == p) continue;
        const OrientedInterval I(p, q);
        const double x = coord_inv(I, rng.uniform(-30, 30));
        const double x2 = coord_inv(I, coord(I, x));
        worst = std::max(worst, std::fabs(x2 - x) /
                                    std::max(std::fabs(x), 1e-8 * (std::fabs(p) + std::fabs(q))));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("orientation antisymmetry") {
    for (int i = 0; i < 10000; ++i) {
        SampleRng rng(42, i);
        const double p = rng.uniform(-5, 5);
        const double q = rng.uniform(-5, 5);
        if (p == q) continue;
        const OrientedInterval I(p, q), J(q, p);
        const double x = coord_inv(I, rng.uniform(-20, 20));
        CHECK(std::fabs(coord(I, x) + coord(J, x)) < 1e-12);
    }
}

TEST_CASE("nonlinearity") {
    CHECK(std::fabs(nonlinearity(1.0, std::exp(1.0)) - 1.0) < 1e-15);
    CHECK(nonlinearity(2.5, 2.5) == 0.0);
    CHECK(std::fabs(nonlinearity(2.0, 6.0) - nonlinearity(1.0, 3.0)) < 1e-15);
    CHECK(nonlinearity(3.0, 1.0) == nonlinearity(1.0, 3.0));
    CHECK_THROWS_AS(nonlinearity(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(nonlinearity(1.0, -2.0), std::domain_error);
}

TEST_CASE("hbar: fixed values") {
    // coord_inv((1,2), 0) = 1.5, squared = 2.25, coord((1,4), 2.25) = ln(5/7)
    CHECK(std::fabs(hbar(2.0, OrientedInterval(1.0, 2.0), 0.0) - (-0.3364722366212129)) <
          1e-14);
    // at the far ends hbar(t) - t equals the limit pushes
    CHECK(std::fabs(hbar(2.0, OrientedInterval(1.0, 2.0), 40.0) - 40.0 - std::log(0.75)) <
          1e-10);
    CHECK(std::fabs(hbar(2.0, OrientedInterval(1.0, 2.0), -40.0) + 40.0 -
                    std::log(2.0 / 3.0)) < 1e-10);
    CHECK_THROWS_AS(hbar(2.0, OrientedInterval(-1.0, 2.0), 0.0), std::domain_error);
    CHECK_THROWS_AS(hbar(1.0, OrientedInterval(1.0, 2.0), 0.0), std::domain_error);
}

TEST_CASE("hbar: alpha near 1 degenerates to the identity") {
    for (const double t : {-3.0, 0.0, 2.0}) {
        CHECK(std::fabs(hbar(1.0 + 1e-9, OrientedInterval(0.5, 4.0), t) - t) < 1e-6);
    }
}

TEST_CASE("hbar: orientation-reversed domain") {
    // hbar on (q, p) is -hbar on (p, q) at -t
    const OrientedInterval fwd(1.0, 2.0), rev(2.0, 1.0);
    for (const double t : {-2.0, 0.0, 1.5}) {
        CHECK(std::fabs(hbar(2.3, rev, t) + hbar(2.3, fwd, -t)) < 1e-13);
    }
}

TEST_CASE("hbar: expansion property") {
    double worst = 1.0;
    for (int i = 0; i < 10000; ++i) {
        SampleRng rng(43, i);
        const double alpha = 1.0 + std::exp(rng.uniform(std::log(0.02), std::log(4.0)));
        const double p = std::exp(rng.uniform(-3, 3));
        const double q = p * std::exp(std::exp(rng.uniform(std::log(1e-3), std::log(10.0))));
        double t1 = rng.uniform(-30, 30), t2 = rng.uniform(-30, 30);
        if (t1 > t2) std::swap(t1, t2);
        const OrientedInterval I(p, q);
        worst = std::min(worst, (hbar(alpha, I, t2) - hbar(alpha, I, t1)) - (t2 - t1));
    }
    CHECK(worst >= -1e-12);
}

TEST_CASE("push_at: fixed value and invariances") {
    const OrientedInterval I(1.0, 2.0);
    CHECK(std::fabs(push_at(2.0, I, 1.5) - (-0.3364722366212129)) < 1e-14);
    CHECK(std::fabs(push_at(2.0, I, 1.5) -
                    (hbar(2.0, I, coord(I, 1.5)) - coord(I, 1.5))) < 1e-13);
    CHECK_THROWS_AS(push_at(2.0, I, 2.5), std::domain_error);

    for (int i = 0; i < 5000; ++i) {
        SampleRng rng(44, i);
        const double alpha = 1.0 + std::exp(rng.uniform(std::log(0.02), std::log(4.0)));
        const double p = std::exp(rng.uniform(-3, 3));
        const double q = p * std::exp(std::exp(rng.uniform(std::log(1e-3), std::log(10.0))));
        const OrientedInterval J(p, q);
        const double x = coord_inv(J, rng.uniform(-8, 8));
        const double s = std::exp(rng.uniform(-6, 6));
        // homogeneity: the push only depends on ratios
        CHECK(std::fabs(push_at(alpha, J, x) -
                        push_at(alpha, OrientedInterval(s * p, s * q), s * x)) < 1e-10);
        // strength formula via the limit pushes of the two subintervals
        const double formula = push_limits(alpha, x, q).minus + push_limits(alpha, p, x).plus;
        CHECK(std::fabs(std::fabs(push_at(alpha, J, x)) - std::fabs(formula)) < 1e-10);
    }
}

TEST_CASE("push_at: log-symmetric point strength equals limit-push sum") {
    // q/x = x/p; the formula holds there like everywhere else
    for (const double alpha : {1.3, 2.0, 3.7}) {
        const double p = 0.7, x = 1.4, q = 2.8;
        const double strength = std::fabs(push_at(alpha, OrientedInterval(p, q), x));
        const double formula =
            std::fabs(push_limits(alpha, x, q).minus + push_limits(alpha, p, x).plus);
        CHECK(std::fabs(strength - formula) < 1e-12);
    }
}

TEST_CASE("push_limits: fixed values, homogeneity, degenerate limit") {
    const PushLimits lim = push_limits(2.0, 1.0, 2.0);
    CHECK(std::fabs(lim.minus - std::log(2.0 / 3.0)) < 1e-14);
    CHECK(std::fabs(lim.plus - std::log(0.75)) < 1e-14);

    for (int i = 0; i < 2000; ++i) {
        SampleRng rng(45, i);
        const double alpha = 1.0 + std::exp(rng.uniform(std::log(0.02), std::log(4.0)));
        const double p = std::exp(rng.uniform(-3, 3));
        const double q = p * std::exp(std::exp(rng.uniform(std::log(1e-3), std::log(10.0))));
        const double s = std::exp(rng.uniform(-6, 6));
        const PushLimits a = push_limits(alpha, p, q);
        const PushLimits b = push_limits(alpha, s * p, s * q);
        CHECK(std::fabs(a.minus - b.minus) < 1e-12);
        CHECK(std::fabs(a.plus - b.plus) < 1e-12);
        CHECK(a.minus <= a.plus + 1e-12);
    }

    // q -> p: both limits vanish
    const PushLimits tiny = push_limits(3.0, 1.0, 1.0 + 1e-9);
    CHECK(std::fabs(tiny.minus) < 1e-8);
    CHECK(std::fabs(tiny.plus) < 1e-8);

    CHECK_THROWS_AS(push_limits(2.0, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(push_limits(2.0, -1.0, 1.0), std::domain_error);
}

TEST_CASE("pow_pos") {
    CHECK(pow_pos(0.0, 2.5) == 0.0);
    CHECK(pow_pos(1.0, 77.7) == 1.0);
    CHECK(std::fabs(pow_pos(2.0, 0.5) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::fabs(pow_abs(-2.0, 2.0) - 4.0) < 1e-14);
    CHECK_THROWS_AS(pow_pos(-1.0, 2.0), std::domain_error);
}
