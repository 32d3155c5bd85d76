#include "qq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qq/poincare.hpp"

namespace qq {

namespace {

constexpr double kScanAbarLo = -16.0;
constexpr double kScanAbarHi = 16.0;
constexpr int kScanPoints = 512;
constexpr int kMaxBisection = 200;

void require_alpha(double alpha) {
    if (!(alpha > 1.0))
        throw std::domain_error("alpha must exceed 1");
}

// Orbit of length `period` for the parameter given in the abar chart;
// c_tol = 0 so the status never interferes with the raw values.
Orbit orbit_at_abar(double alpha, double abar, int period) {
    const Parameterization par = param_from_abar(alpha, abar);
    return iterate(alpha, par.a, period, 0.0);
}

// Sign itinerary matches the target's strict prefix (R/L of y_1..y_{p-1});
// a point exactly at 0 fails the prefix.
bool prefix_matches(const Orbit& orb, Target target) {
    const char* sym = target_symbols(target);
    const int period = target_period(target);
    if (static_cast<int>(orb.y.size()) <= period)
        return false;
    for (int n = 1; n < period; ++n) {
        const double y = orb.y[static_cast<std::size_t>(n)];
        if (sym[n - 1] == 'R' ? !(y > 0.0) : !(y < 0.0))
            return false;
    }
    return true;
}

double critical_return(const Orbit& orb, int period) {
    return orb.y[static_cast<std::size_t>(period)];
}

SolveResult bisect_target(double alpha, Target target, double tol, double abar_lo_scan,
                          double abar_hi_scan) {
    const int period = target_period(target);

    // Bracket scan: uniform in abar (a-space compresses the sign changes
    // near a_escape). Both bracket endpoints must carry the kneading prefix.
    double lo = 0, hi = 0, flo = 0;
    bool have_prev = false, found = false;
    double prev_ab = 0, prev_f = 0;
    for (int i = 0; i < kScanPoints; ++i) {
        const double ab =
            abar_lo_scan + (abar_hi_scan - abar_lo_scan) * i / (kScanPoints - 1.0);
        const Orbit orb = orbit_at_abar(alpha, ab, period);
        if (orb.status == OrbitStatus::escaped || !prefix_matches(orb, target)) {
            have_prev = false;
            continue;
        }
        const double f = critical_return(orb, period);
        if (have_prev && ((prev_f < 0.0) != (f < 0.0))) {
            lo = prev_ab;
            hi = ab;
            flo = prev_f;
            found = true;
            break;
        }
        have_prev = true;
        prev_ab = ab;
        prev_f = f;
    }
    if (!found)
        throw SolveError(std::string("no sign-change bracket found for ") +
                         target_symbols(target) + " while scanning abar in [" +
                         std::to_string(abar_lo_scan) + ", " + std::to_string(abar_hi_scan) +
                         "] with " + std::to_string(kScanPoints) + " points");

    SolveResult res;
    res.alpha = alpha;
    res.target = target;
    res.bracket_lo = param_from_abar(alpha, lo).a;
    res.bracket_hi = param_from_abar(alpha, hi).a;

    double mid = lo, fmid = flo;
    int iters = 0;
    bool converged = false;
    while (iters < kMaxBisection) {
        mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            converged = std::fabs(fmid) <= tol;
            break;
        }
        ++iters;
        fmid = critical_return(orbit_at_abar(alpha, mid, period), period);
        if (std::fabs(fmid) <= tol) {
            converged = true;
            break;
        }
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    if (!converged)
        throw SolveError(std::string("tolerance not reached for ") + target_symbols(target) +
                         " after " + std::to_string(iters) + " bisection steps");

    const Parameterization par = param_from_abar(alpha, mid);
    res.a = par.a;
    res.abar = mid;
    res.residual = std::fabs(fmid);
    res.iterations = iters;

    const KneadingSequence seq = kneading(alpha, res.a, period, 10.0 * tol);
    if (seq.symbols != target_symbols(target))
        throw SolveError(std::string("located parameter has kneading ") + seq.symbols +
                         ", expected " + target_symbols(target));
    return res;
}

} // namespace

const char* target_symbols(Target t) {
    switch (t) {
        case Target::RC: return "RC";
        case Target::RLRC: return "RLRC";
        case Target::RLRRRLRC: return "RLRRRLRC";
    }
    return "";
}

int target_period(Target t) {
    switch (t) {
        case Target::RC: return 2;
        case Target::RLRC: return 4;
        case Target::RLRRRLRC: return 8;
    }
    return 0;
}

std::optional<Target> parse_target(std::string_view s) {
    if (s == "RC") return Target::RC;
    if (s == "RLRC") return Target::RLRC;
    if (s == "RLRRRLRC") return Target::RLRRRLRC;
    return std::nullopt;
}

GSample g_of_t(double alpha, double tcoord) {
    require_alpha(alpha);
    if (!(tcoord > 0.0))
        throw std::domain_error("g_of_t: tcoord must be positive");
    const double two = coord_inv(OrientedInterval(1.0, -1.0), tcoord);
    const double b = 1.0 - two;
    const double a = pow_pos(b, 1.0 / (alpha - 1.0));
    const Orbit orb = iterate(alpha, a, 4, 0.0);
    const double y3 = orb.y[3], y4 = orb.y[4];
    if (!(y3 > 0.0 && y3 < 1.0))
        throw RegimeError("g_of_t: third orbit point left (0, 1)");
    if (!(std::fabs(y4) < -orb.y[2]))
        throw RegimeError("g_of_t: fourth orbit point left (2_a, -2_a)");
    GSample s;
    s.tcoord = tcoord;
    s.a = a;
    s.g = coord(OrientedInterval(orb.y[2], -orb.y[2]), y4);
    return s;
}

GScan g_derivative_scan(double alpha, double t_lo, double t_hi, int steps) {
    require_alpha(alpha);
    if (steps < 2)
        throw std::domain_error("g_derivative_scan: steps must be at least 2");
    if (!(t_lo < t_hi))
        throw std::domain_error("g_derivative_scan: need t_lo < t_hi");
    GScan scan;
    scan.t.reserve(steps);
    scan.g.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (steps - 1.0);
        scan.t.push_back(t);
        scan.g.push_back(g_of_t(alpha, t).g);
    }
    scan.min_slope = std::numeric_limits<double>::infinity();
    scan.max_slope = -std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < steps; ++i) {
        const double s = (scan.g[i + 1] - scan.g[i]) / (scan.t[i + 1] - scan.t[i]);
        scan.slope.push_back(s);
        scan.min_slope = std::min(scan.min_slope, s);
        scan.max_slope = std::max(scan.max_slope, s);
    }
    scan.all_slopes_above_one = scan.min_slope > 1.0;
    return scan;
}

std::pair<double, double> rlrl_t_range(double alpha, double margin_frac) {
    const SolveResult rlrc = find_superstable(alpha, Target::RLRC);
    const double t1 = *param_from_a(alpha, rlrc.a).tcoord;
    return {margin_frac * t1, (1.0 - margin_frac) * t1};
}

TauGammaScan tau_gamma_scan(double alpha, int n_samples) {
    require_alpha(alpha);
    if (n_samples < 2)
        throw std::domain_error("tau_gamma_scan: need at least 2 samples");
    const SolveResult rlrc = find_superstable(alpha, Target::RLRC);
    const SolveResult rlr3 = find_superstable(alpha, Target::RLRRRLRC);
    // tau degenerates at a_rlrc where (4_a, -4_a) collapses, hence the margin
    const double ab_lo = rlrc.abar + 1e-4;
    const double ab_hi = rlr3.abar;

    TauGammaScan scan;
    scan.requested = n_samples;
    for (int i = 0; i < n_samples; ++i) {
        const double ab = ab_lo + (ab_hi - ab_lo) * i / (n_samples - 1.0);
        const Parameterization par = param_from_abar(alpha, ab);
        const Orbit orb = iterate(alpha, par.a, 8, 0.0);
        const double y2 = orb.y[2], y4 = orb.y[4], y8 = orb.y[8];
        if (!(y4 > 0.0 && std::fabs(y4) < -y2 && std::fabs(y8) < y4)) {
            ++scan.dropped;
            continue;
        }
        const double gamma = coord(OrientedInterval(y2, -y2), y4);
        const double tau = coord(OrientedInterval(y4, -y4), y8);
        // the solved endpoint carries tau = O(residual); keep it
        if (!(gamma > 0.0) || tau > 1e-9) {
            ++scan.dropped;
            continue;
        }
        scan.samples.push_back({ab, par.a, tau, gamma});
    }
    std::sort(scan.samples.begin(), scan.samples.end(),
              [](const TauGammaSample& l, const TauGammaSample& r) { return l.tau < r.tau; });
    scan.strictly_increasing = scan.samples.size() >= 2;
    scan.min_slope = std::numeric_limits<double>::infinity();
    scan.max_slope = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < scan.samples.size(); ++i) {
        const double dg = scan.samples[i + 1].gamma - scan.samples[i].gamma;
        const double dt = scan.samples[i + 1].tau - scan.samples[i].tau;
        if (!(dg > 0.0))
            scan.strictly_increasing = false;
        const double s = dg / dt;
        scan.min_slope = std::min(scan.min_slope, s);
        scan.max_slope = std::max(scan.max_slope, s);
    }
    return scan;
}

SolveResult find_superstable(double alpha, Target target, double tol) {
    require_alpha(alpha);
    if (!(tol >= 1e-14))
        throw std::domain_error("tol must be at least 1e-14");

    if (target == Target::RC) {
        // a^alpha = a at a = 1 for every alpha, exactly
        SolveResult res;
        res.alpha = alpha;
        res.target = Target::RC;
        res.a = 1.0;
        res.abar = -std::numeric_limits<double>::infinity();
        res.residual = std::fabs(iterate(alpha, 1.0, 2, 0.0).y[2]);
        res.bracket_lo = 1.0;
        res.bracket_hi = 1.0;
        res.iterations = 0;
        return res;
    }

    if (target == Target::RLRC)
        return bisect_target(alpha, target, tol, kScanAbarLo, kScanAbarHi);

    const SolveResult rlrc = bisect_target(alpha, Target::RLRC, tol, kScanAbarLo, kScanAbarHi);
    return bisect_target(alpha, target, tol, rlrc.abar + 1e-6, kScanAbarHi);
}

std::vector<SweepRow> sweep_alpha(const std::vector<double>& alphas, Target target, double tol) {
    std::vector<SweepRow> rows;
    rows.reserve(alphas.size());
    for (const double alpha : alphas) {
        SweepRow row;
        row.alpha = alpha;
        try {
            row.result = find_superstable(alpha, target, tol);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

RegimeBounds regime_bounds(double alpha) {
    RegimeBounds rb;
    rb.alpha = alpha;
    rb.a_escape = a_escape(alpha);
    rb.a_rlrc = find_superstable(alpha, Target::RLRC).a;
    rb.a_rlrrrlrc = find_superstable(alpha, Target::RLRRRLRC).a;
    return rb;
}

SignChangeWitness uniqueness_witness(double alpha, Target target, int grid_points) {
    require_alpha(alpha);
    if (target == Target::RC)
        throw std::domain_error("uniqueness_witness: target must be RLRC or RLRRRLRC");
    if (grid_points < 2)
        throw std::domain_error("uniqueness_witness: need at least 2 grid points");

    double lo = 1.0 + 1e-6;
    const double hi = a_escape(alpha) - 1e-6;
    if (target == Target::RLRRRLRC)
        lo = find_superstable(alpha, Target::RLRC).a + 1e-6;

    const int period = target_period(target);
    SignChangeWitness w;
    w.alpha = alpha;
    w.target = target;
    w.grid_points = grid_points;
    w.prefix_matches = 0;
    w.sign_changes = 0;
    // sign changes are counted along the subsequence of prefix-matching
    // points, including across prefix-invalid gaps
    bool have_prev = false;
    bool prev_neg = false;
    for (int i = 0; i < grid_points; ++i) {
        const double a = lo + (hi - lo) * i / (grid_points - 1.0);
        const Orbit orb = iterate(alpha, a, period, 0.0);
        if (orb.status == OrbitStatus::escaped || !prefix_matches(orb, target))
            continue;
        ++w.prefix_matches;
        const bool neg = critical_return(orb, period) < 0.0;
        if (have_prev && neg != prev_neg)
            ++w.sign_changes;
        have_prev = true;
        prev_neg = neg;
    }
    return w;
}

} // namespace qq
