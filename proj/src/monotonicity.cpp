#include "qq/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qq/family.hpp"
#include "qq/poincare.hpp"
#include "qq/rng.hpp"
#include "qq/solver.hpp"

namespace qq {

namespace {

constexpr double kGapFloor = 1e-10;      // below this a gap is rounding noise
constexpr double kRatioCeil = 1.0 - 1e-12;  // 1 - r below resolution: junk
constexpr double kRegimeMargin = 1e-4;   // required distance to abar(a_rlrc)

void require_n_max(int n_max) {
    if (n_max < 0 || n_max > 12)
        throw std::domain_error("n_max must be in [0, 12]");
}

// RLRL... prefix: odd points positive, even points negative.
void require_rlrl_prefix(const Orbit& orb) {
    if (orb.status == OrbitStatus::escaped)
        throw RegimeError("orbit escaped; parameter not in the RLRL regime");
    for (std::size_t n = 1; n < orb.y.size(); ++n) {
        const double y = orb.y[n];
        if ((n % 2 == 1) ? !(y > 0.0) : !(y < 0.0))
            throw RegimeError("kneading prefix is not RLRL...");
    }
}

double abar_rlrc_boundary(double alpha) {
    return find_superstable(alpha, Target::RLRC).abar;
}

} // namespace

RatioSeries ratio_series(double alpha, double a, int n_max) {
    require_n_max(n_max);
    const Parameterization par = param_from_a(alpha, a);
    if (!par.abar)
        throw RegimeError("parameter outside (1, a_escape); abar chart undefined");
    const int len = 2 * n_max + 5;
    const Orbit orb = iterate(alpha, a, len, 0.0);
    require_rlrl_prefix(orb);

    RatioSeries rs;
    rs.alpha = alpha;
    rs.a = a;
    rs.abar = *par.abar;
    rs.n_max = n_max;
    for (int n = 0; n <= n_max; ++n) {
        const double den = std::fabs(orb.y[2 * n + 2] - orb.y[2 * n]);
        const double r = std::fabs(orb.y[2 * n + 4] - orb.y[2 * n + 2]) / den;
        if (den < kGapFloor || r >= kRatioCeil) {
            rs.truncated_evens = true;
            break;
        }
        rs.evens.push_back(r);
    }
    for (int n = 0; n <= n_max; ++n) {
        const double den = std::fabs(orb.y[2 * n + 3] - orb.y[2 * n + 1]);
        const double r = std::fabs(orb.y[2 * n + 5] - orb.y[2 * n + 3]) / den;
        if (den < kGapFloor || r >= kRatioCeil) {
            rs.truncated_odds = true;
            break;
        }
        rs.odds.push_back(r);
    }
    return rs;
}

RatioMonotonicityReport ratio_monotonicity_check(double alpha,
                                                 const std::vector<double>& abar_grid,
                                                 int n_max) {
    require_n_max(n_max);
    if (abar_grid.empty())
        throw std::domain_error("abar grid must not be empty");
    for (std::size_t i = 0; i + 1 < abar_grid.size(); ++i)
        if (!(abar_grid[i + 1] - abar_grid[i] >= 1e-6))
            throw std::domain_error("abar grid must increase with spacing >= 1e-6");
    const double boundary = abar_rlrc_boundary(alpha) - kRegimeMargin;
    if (abar_grid.back() > boundary)
        throw std::domain_error("abar grid exceeds abar(a_rlrc) - 1e-4");

    RatioMonotonicityReport rep;
    rep.alpha = alpha;
    rep.n_max = n_max;
    rep.abar_grid = abar_grid;
    for (const double ab : abar_grid) {
        const double a = param_from_abar(alpha, ab).a;
        rep.series.push_back(ratio_series(alpha, a, n_max));
    }

    rep.min_increase = std::numeric_limits<double>::infinity();
    auto compare = [&](const std::vector<double>& lo, const std::vector<double>& hi,
                       const char* parity, std::size_t pair_index) {
        const std::size_t m = std::min(lo.size(), hi.size());
        for (std::size_t n = 0; n < m; ++n) {
            ++rep.comparisons;
            const double inc = hi[n] - lo[n];
            rep.min_increase = std::min(rep.min_increase, inc);
            if (!(inc > 0.0))
                rep.failures.push_back("r^" + std::to_string(n) + "_" + parity +
                                       " not increasing between abar=" +
                                       fmt17(abar_grid[pair_index]) + " and abar=" +
                                       fmt17(abar_grid[pair_index + 1]));
        }
    };
    for (std::size_t i = 0; i + 1 < rep.series.size(); ++i) {
        compare(rep.series[i].evens, rep.series[i + 1].evens, "e", i);
        compare(rep.series[i].odds, rep.series[i + 1].odds, "o", i);
    }
    rep.vacuous = rep.comparisons == 0;
    rep.pass = rep.failures.empty();
    return rep;
}

DiscrepancyReport discrepancy_check(double alpha, double abar, double abar_prime, int n_max) {
    require_n_max(n_max);
    const double boundary = abar_rlrc_boundary(alpha) - kRegimeMargin;
    if (abar > boundary || abar_prime > boundary)
        throw std::domain_error("abar pair exceeds abar(a_rlrc) - 1e-4");

    const Parameterization lo = param_from_abar(alpha, abar);
    const Parameterization hi = param_from_abar(alpha, abar_prime);
    const int len = n_max + 4;
    const Orbit orb_lo = iterate(alpha, lo.a, len, 0.0);
    const Orbit orb_hi = iterate(alpha, hi.a, len, 0.0);
    require_rlrl_prefix(orb_lo);
    require_rlrl_prefix(orb_hi);

    DiscrepancyReport rep;
    rep.alpha = alpha;
    rep.abar = abar;
    rep.abar_prime = abar_prime;
    rep.degenerate = abar == abar_prime;
    rep.delta_t = *hi.tcoord - *lo.tcoord;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= n_max; ++n) {
        const double gap_lo = std::fabs(orb_lo.y[n + 2] - orb_lo.y[n]);
        const double gap_hi = std::fabs(orb_hi.y[n + 2] - orb_hi.y[n]);
        if (gap_lo < kGapFloor || gap_hi < kGapFloor) {
            rep.truncated = true;
            break;
        }
        const double c_lo =
            coord(OrientedInterval(orb_lo.y[n + 2], orb_lo.y[n]), orb_lo.y[n + 4]);
        const double c_hi =
            coord(OrientedInterval(orb_hi.y[n + 2], orb_hi.y[n]), orb_hi.y[n + 4]);
        DiscrepancyEntry e;
        e.n = n;
        e.lhs = c_hi - c_lo;
        e.margin = e.lhs - rep.delta_t;
        rep.min_margin = std::min(rep.min_margin, e.margin);
        rep.per_n.push_back(e);
    }
    rep.pass = !rep.per_n.empty();
    for (const DiscrepancyEntry& e : rep.per_n)
        if (!(e.margin > 0.0))
            rep.pass = false;
    return rep;
}

int lemma_margin_bucket(double margin) {
    if (!(margin > 0.0)) return 0;
    if (margin <= 1e-6) return 1;
    if (margin <= 1e-3) return 2;
    if (margin <= 1e-1) return 3;
    if (margin <= 1.0) return 4;
    return 5;
}

LemmaReport lemma_osemka_check(long samples, std::uint64_t seed) {
    if (samples < 1)
        throw std::domain_error("samples must be at least 1");

    LemmaReport rep;
    rep.samples = samples;
    rep.seed = seed;
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.max_margin = -std::numeric_limits<double>::infinity();
    rep.min_condition_slack = std::numeric_limits<double>::infinity();

    long rejected = 0;
    const OrientedInterval base(0.0, -1.0);
    for (long i = 0; i < samples; ++i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        const int mode = static_cast<int>(i % 4);  // see LemmaReport::subsuite
        const bool exact = mode == 1 || mode == 3;
        const bool z_zero = mode == 2 || mode == 3;

        LemmaSample s{};
        double di = 0, slack2 = 0;
        bool ok = false;
        for (int attempt = 0; attempt < 10000; ++attempt) {
            double ux = rng.uniform(-6.0, 6.0);
            double uxt = rng.uniform(-6.0, 6.0);
            if (ux == uxt) { ++rejected; continue; }
            if (uxt < ux) std::swap(ux, uxt);
            s.x = coord_inv(base, ux);
            s.x_tilde = coord_inv(base, uxt);
            di = coord(base, s.x_tilde) - coord(base, s.x);

            s.y = coord_inv(OrientedInterval(0.0, -s.x), rng.uniform(-20.0, 20.0));
            slack2 = exact ? 0.0 : rng.exponential(0.5);
            const double th2 = coord(OrientedInterval(s.x, 1.0), s.y) + di + slack2;
            s.y_tilde = coord_inv(OrientedInterval(s.x_tilde, 1.0), th2);
            if (!(s.y_tilde > 0.0 && s.y_tilde < -s.x_tilde)) { ++rejected; continue; }

            s.z = z_zero ? 0.0
                         : coord_inv(OrientedInterval(s.y, 0.0), rng.uniform(-20.0, 20.0));
            s.slack_iii = exact ? 0.0 : rng.exponential(0.5);
            const double th3_base =
                coord(OrientedInterval(s.y, s.x), s.z) +
                (coord(OrientedInterval(0.0, -s.x_tilde), s.y_tilde) -
                 coord(OrientedInterval(0.0, -s.x), s.y)) +
                std::log((s.y_tilde - s.x_tilde) / (s.y - s.x)) -
                ((coord(OrientedInterval(s.x_tilde, 1.0), s.y_tilde) -
                  coord(OrientedInterval(s.x, 1.0), s.y)) -
                 di);
            s.z_tilde = coord_inv(OrientedInterval(s.y_tilde, s.x_tilde),
                                  th3_base + s.slack_iii);
            if (!(s.z_tilde > -s.y_tilde && s.z_tilde < s.y_tilde)) { ++rejected; continue; }

            // re-verify (ii) and (iii) against freshly computed threshold
            // points; the comparison happens in point space because reading
            // a coordinate back near a chart endpoint is ill-conditioned
            const double y_min = coord_inv(OrientedInterval(s.x_tilde, 1.0),
                                           coord(OrientedInterval(s.x, 1.0), s.y) + di);
            const double rv2 = (s.y_tilde - y_min) / (1.0 - s.x_tilde);
            // the (y~, x~) chart decreases in value: at or above the
            // threshold coordinate means at or below the threshold point
            const double z_max = coord_inv(OrientedInterval(s.y_tilde, s.x_tilde), th3_base);
            const double rv3 = (z_max - s.z_tilde) / (s.y_tilde - s.x_tilde);
            rep.min_condition_slack = std::min(rep.min_condition_slack, std::min(rv2, rv3));

            s.conclusion_margin = coord(OrientedInterval(s.y_tilde, -s.y_tilde), s.z_tilde) -
                                  coord(OrientedInterval(s.y, -s.y), s.z);
            ok = true;
            break;
        }
        if (!ok) {
            const double rate =
                static_cast<double>(rejected) / static_cast<double>(rejected + i + 1);
            throw std::runtime_error(
                "lemma sampler: rejection budget exhausted (rejection rate " +
                fmt17(rate) + ")");
        }

        ++rep.subsuite[static_cast<std::size_t>(mode)];
        ++rep.histogram[static_cast<std::size_t>(lemma_margin_bucket(s.conclusion_margin))];
        if (!(s.conclusion_margin > 0.0))
            ++rep.violations;
        rep.min_margin = std::min(rep.min_margin, s.conclusion_margin);
        rep.max_margin = std::max(rep.max_margin, s.conclusion_margin);
        if (rep.worst.size() < 4) {
            rep.worst.push_back(s);
            std::sort(rep.worst.begin(), rep.worst.end(),
                      [](const LemmaSample& l, const LemmaSample& r) {
                          return l.conclusion_margin < r.conclusion_margin;
                      });
        } else if (s.conclusion_margin < rep.worst.back().conclusion_margin) {
            rep.worst.back() = s;
            std::sort(rep.worst.begin(), rep.worst.end(),
                      [](const LemmaSample& l, const LemmaSample& r) {
                          return l.conclusion_margin < r.conclusion_margin;
                      });
        }
    }
    rep.rejection_rate =
        static_cast<double>(rejected) / static_cast<double>(rejected + samples);
    rep.pass = rep.violations == 0 && rep.min_condition_slack >= -1e-12;
    return rep;
}

namespace {

// Sampling ranges for the identity suite. Base points live at chart
// coordinate [-6, 6] and interior draws at [-6, 6]; the composed charts then
// stay within coordinate ~13 of their endpoints, which keeps the identities
// below the 1e-10 tolerance in double arithmetic.
constexpr double kBaseLo = -6.0, kBaseHi = 6.0;

double draw_alpha(SampleRng& rng) {
    return 1.0 + std::exp(rng.uniform(std::log(0.02), std::log(4.0)));
}

double draw_lambda(SampleRng& rng) {
    return std::exp(rng.uniform(std::log(1e-3), std::log(10.0)));
}

struct Worst {
    double dev = -std::numeric_limits<double>::infinity();
    void update(double d) { dev = std::max(dev, d); }
};

using CheckFn = double (*)(SampleRng&);

double check_prop21(SampleRng& rng) {
    const double x = -std::exp(rng.uniform(kBaseLo, kBaseHi));
    return std::fabs(coord(OrientedInterval(0.0, -HUGE_VAL), x) -
                     coord(OrientedInterval(x, 1.0), 0.0));
}

double check_prop22(SampleRng& rng) {
    const double x = -sigmoid(rng.uniform(kBaseLo, kBaseHi));
    const double c = coord_inv(OrientedInterval(x, 1.0), coord(OrientedInterval(0.0, -1.0), x));
    return std::fabs(coord(OrientedInterval(1.0, -1.0), x) -
                     coord(OrientedInterval(x, -x), c));
}

double check_prop23(SampleRng& rng) {
    const double x = -std::exp(rng.uniform(kBaseLo, kBaseHi));
    const double xt = -std::exp(rng.uniform(kBaseLo, kBaseHi));
    const double y = coord_inv(OrientedInterval(x, 0.0), rng.uniform(kBaseLo, kBaseHi));
    const OrientedInterval to_minus_inf(0.0, -HUGE_VAL);
    const double dtheta = coord(to_minus_inf, xt) - coord(to_minus_inf, x);
    const double c = coord_inv(OrientedInterval(xt, 1.0),
                               coord(OrientedInterval(x, 1.0), y) + dtheta);
    const OrientedInterval one_minus_inf(1.0, -HUGE_VAL);
    const double lhs = coord(OrientedInterval(xt, 0.0), c) - coord(OrientedInterval(x, 0.0), y);
    const double rhs = coord(one_minus_inf, xt) - coord(one_minus_inf, x);
    return std::fabs(lhs - rhs);
}

double check_prop24(SampleRng& rng) {
    const double x = -sigmoid(rng.uniform(kBaseLo, kBaseHi));
    const double xt = -sigmoid(rng.uniform(kBaseLo, kBaseHi));
    const double y = coord_inv(OrientedInterval(x, -x), rng.uniform(kBaseLo, kBaseHi));
    const OrientedInterval zero_minus_one(0.0, -1.0);
    const OrientedInterval one_minus_one(1.0, -1.0);
    const double dtheta = coord(zero_minus_one, xt) - coord(zero_minus_one, x);
    const double dt = coord(one_minus_one, xt) - coord(one_minus_one, x);
    const double c = coord_inv(OrientedInterval(xt, 1.0),
                               coord(OrientedInterval(x, 1.0), y) + dtheta);
    return std::fabs(coord(OrientedInterval(xt, -xt), c) -
                     coord(OrientedInterval(x, -x), y) - dt);
}

double check_prop25(SampleRng& rng) {
    const double x = sigmoid(rng.uniform(kBaseLo, kBaseHi));
    const double xp = sigmoid(rng.uniform(kBaseLo, kBaseHi));
    const double y = coord_inv(OrientedInterval(x, 1.0), rng.uniform(kBaseLo, kBaseHi));
    const double yp = coord_inv(OrientedInterval(xp, 1.0), coord(OrientedInterval(x, 1.0), y));
    const OrientedInterval one_zero(1.0, 0.0);
    const double lhs = coord(one_zero, xp) - coord(one_zero, x);
    const double rhs = coord(OrientedInterval(yp, 0.0), xp) - coord(OrientedInterval(y, 0.0), x);
    return std::fabs(lhs - rhs);
}

double check_roundtrip(SampleRng& rng) {
    const double p = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * std::exp(rng.uniform(-3.0, 3.0));
    double q = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * std::exp(rng.uniform(-3.0, 3.0));
    if (q == p)
        q += 1.0;
    const OrientedInterval I(p, q);
    const double x = coord_inv(I, rng.uniform(-30.0, 30.0));
    const double x2 = coord_inv(I, coord(I, x));
    return std::fabs(x2 - x) / std::max(std::fabs(x), 1e-8 * (std::fabs(p) + std::fabs(q)));
}

double check_antisymmetry(SampleRng& rng) {
    const double p = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * std::exp(rng.uniform(-3.0, 3.0));
    double q = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * std::exp(rng.uniform(-3.0, 3.0));
    if (q == p)
        q += 1.0;
    const OrientedInterval I(p, q);
    const double x = coord_inv(I, rng.uniform(-30.0, 30.0));
    return std::fabs(coord(I, x) + coord(OrientedInterval(q, p), x));
}

// slack of hbar(t2)-hbar(t1) >= t2-t1; negated so that larger = worse
double check_expansion(SampleRng& rng) {
    const double alpha = draw_alpha(rng);
    const double p = std::exp(rng.uniform(-3.0, 3.0));
    const OrientedInterval I(p, p * std::exp(draw_lambda(rng)));
    double t1 = rng.uniform(-30.0, 30.0);
    double t2 = rng.uniform(-30.0, 30.0);
    if (t1 > t2) std::swap(t1, t2);
    return -((hbar(alpha, I, t2) - hbar(alpha, I, t1)) - (t2 - t1));
}

double check_starylemat(SampleRng& rng) {
    const double alpha = draw_alpha(rng);
    const double q = sigmoid(rng.uniform(kBaseLo, kBaseHi));
    const double qt = sigmoid(rng.uniform(kBaseLo, kBaseHi));
    const OrientedInterval unit(0.0, 1.0);
    const double lhs = push_limits(alpha, q, 1.0).minus - push_limits(alpha, qt, 1.0).minus;
    const double rhs = (coord(unit, pow_pos(q, alpha)) - coord(unit, pow_pos(qt, alpha))) -
                       (coord(unit, q) - coord(unit, qt));
    return std::fabs(lhs - rhs);
}

double check_push_strength(SampleRng& rng) {
    const double alpha = draw_alpha(rng);
    const double p = std::exp(rng.uniform(-3.0, 3.0));
    const double q = p * std::exp(draw_lambda(rng));
    const OrientedInterval I(p, q);
    const double x = coord_inv(I, rng.uniform(-8.0, 8.0));
    const double strength = std::fabs(push_at(alpha, I, x));
    const double formula =
        std::fabs(push_limits(alpha, x, q).minus + push_limits(alpha, p, x).plus);
    return std::fabs(strength - formula);
}

double check_push_scale(SampleRng& rng) {
    const double alpha = draw_alpha(rng);
    const double p = std::exp(rng.uniform(-3.0, 3.0));
    const double q = p * std::exp(draw_lambda(rng));
    const OrientedInterval I(p, q);
    const double x = coord_inv(I, rng.uniform(-8.0, 8.0));
    const double s = std::exp(rng.uniform(-6.0, 6.0));
    return std::fabs(push_at(alpha, I, x) -
                     push_at(alpha, OrientedInterval(s * p, s * q), s * x));
}

double check_push_limits_finite(SampleRng& rng) {
    const double alpha = draw_alpha(rng);
    const double p = std::exp(rng.uniform(-3.0, 3.0));
    const double q = p * std::exp(draw_lambda(rng));
    const OrientedInterval I(p, q);
    const PushLimits lim = push_limits(alpha, p, q);
    const double at_minus = hbar(alpha, I, -40.0) + 40.0;
    const double at_plus = hbar(alpha, I, 40.0) - 40.0;
    return std::max(std::fabs(at_minus - lim.minus), std::fabs(at_plus - lim.plus));
}

double check_push_limits_order(SampleRng& rng) {
    const double alpha = draw_alpha(rng);
    const double p = std::exp(rng.uniform(-3.0, 3.0));
    const PushLimits lim = push_limits(alpha, p, p * std::exp(draw_lambda(rng)));
    return -(lim.plus - lim.minus);
}

// strength at a fixed coordinate is nondecreasing in the nonlinearity
double check_push_monotone_domain(SampleRng& rng) {
    const double alpha = draw_alpha(rng);
    const double t = rng.uniform(-8.0, 8.0);
    double l1 = draw_lambda(rng);
    double l2 = draw_lambda(rng);
    if (l1 > l2) std::swap(l1, l2);
    const double s1 = std::fabs(hbar(alpha, OrientedInterval(1.0, std::exp(l1)), t) - t);
    const double s2 = std::fabs(hbar(alpha, OrientedInterval(1.0, std::exp(l2)), t) - t);
    return -(s2 - s1);
}

// strength decays toward the endpoint the push points away from
double check_push_monotone_coordinate(SampleRng& rng) {
    const double alpha = draw_alpha(rng);
    const OrientedInterval I(1.0, std::exp(draw_lambda(rng)));
    double t1 = rng.uniform(-30.0, 30.0);
    double t2 = rng.uniform(-30.0, 30.0);
    if (t1 > t2) std::swap(t1, t2);
    const double s1 = std::fabs(hbar(alpha, I, t1) - t1);
    const double s2 = std::fabs(hbar(alpha, I, t2) - t2);
    return -(s1 - s2);
}

struct CheckSpec {
    const char* name;
    CheckFn fn;
    const char* metric;
    double tol;  // pass iff worst value <= tol
};

} // namespace

SuiteReport proposition_suite(long samples, std::uint64_t seed, double tol) {
    if (samples < 1)
        throw std::domain_error("samples must be at least 1");
    if (!(tol > 0.0))
        throw std::domain_error("tol must be positive");

    const CheckSpec specs[] = {
        {"prop_2_1", check_prop21, "max_abs_dev", 1e-12},
        {"prop_2_2", check_prop22, "max_abs_dev", tol},
        {"prop_2_3", check_prop23, "max_abs_dev", tol},
        {"prop_2_4", check_prop24, "max_abs_dev", tol},
        {"prop_2_5", check_prop25, "max_abs_dev", tol},
        {"roundtrip_coord_inv", check_roundtrip, "max_rel_dev", 1e-12},
        {"orientation_antisymmetry", check_antisymmetry, "max_abs_dev", 1e-12},
        {"hbar_expansion", check_expansion, "max_neg_slack", 1e-12},
        {"starylemat", check_starylemat, "max_abs_dev", tol},
        {"push_strength_formula", check_push_strength, "max_abs_dev", tol},
        {"push_scale_invariance", check_push_scale, "max_abs_dev", tol},
        {"push_limits_finite_eval", check_push_limits_finite, "max_abs_dev", tol},
        {"push_limits_order", check_push_limits_order, "max_neg_slack", 1e-12},
        {"push_monotone_domain", check_push_monotone_domain, "max_neg_slack", 1e-12},
        {"push_monotone_coordinate", check_push_monotone_coordinate, "max_neg_slack", 1e-12},
    };

    SuiteReport rep;
    rep.suite = "props";
    rep.seed = seed;
    rep.samples = samples;
    rep.tol = tol;
    std::uint64_t check_id = 0;
    for (const CheckSpec& spec : specs) {
        Worst w;
        for (long i = 0; i < samples; ++i) {
            SampleRng rng(seed, (check_id << 32) | static_cast<std::uint64_t>(i));
            w.update(spec.fn(rng));
        }
        CheckResult r;
        r.suite = "props";
        r.name = spec.name;
        r.metric = spec.metric;
        r.value = w.dev;
        r.tolerance = spec.tol;
        r.samples = samples;
        r.pass = w.dev <= spec.tol;
        rep.checks.push_back(std::move(r));
        ++check_id;
    }
    return rep;
}

} // namespace qq
