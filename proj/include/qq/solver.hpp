#ifndef QQ_SOLVER_HPP
#define QQ_SOLVER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qq/errors.hpp"
#include "qq/family.hpp"

namespace qq {

enum class Target { RC, RLRC, RLRRRLRC };

const char* target_symbols(Target t);
int target_period(Target t);
std::optional<Target> parse_target(std::string_view s);

/// g(t) = coord((2_a, -2_a), 4_a) with t = coord((1,-1), 2_a) > 0; defined
/// while 3_a stays in (0,1) and 4_a stays interior to (2_a, -2_a). Strictly
/// increasing with slope above 1; its unique zero is the RLRC super-sink.
struct GSample {
    double tcoord;
    double g;
    double a;
};

GSample g_of_t(double alpha, double tcoord);

struct GScan {
    std::vector<double> t;
    std::vector<double> g;
    std::vector<double> slope;  // secant slopes, size() - 1 entries
    bool all_slopes_above_one = false;
    double min_slope = 0;
    double max_slope = 0;
};

GScan g_derivative_scan(double alpha, double t_lo, double t_hi, int steps);

/// Interior of the RLRL regime (0, t_rlrc) in the t chart, shrunk by
/// margin_frac of its length on each side.
std::pair<double, double> rlrl_t_range(double alpha, double margin_frac = 1e-3);

/// tau = coord((4_a, -4_a), 8_a), gamma = coord((2_a, -2_a), 4_a), sampled
/// over a in (a_rlrc, a_rlrrrlrc]; recorded only where gamma > 0 and
/// tau <= 0 (tau = 0 marks the RLRRRLRC super-sink).
struct TauGammaSample {
    double abar;
    double a;
    double tau;
    double gamma;
};

struct TauGammaScan {
    std::vector<TauGammaSample> samples;  // sorted by tau
    int requested = 0;
    int dropped = 0;
    bool strictly_increasing = false;
    double min_slope = 0;
    double max_slope = 0;
};

TauGammaScan tau_gamma_scan(double alpha, int n_samples);

struct SolveResult {
    double alpha = 0;
    Target target = Target::RC;
    double a = 0;
    double abar = 0;      // -inf at the RC solution a = 1
    double residual = 0;  // |y_period| at the located parameter
    double bracket_lo = 0;
    double bracket_hi = 0;
    int iterations = 0;
};

/// Locates the unique super-stable parameter for the target kneading by
/// sign-change bisection on the rescaled critical-return value. RC is the
/// analytic solution a = 1. Throws SolveError if no bracket is found or the
/// tolerance is not reached within 200 bisection steps.
SolveResult find_superstable(double alpha, Target target, double tol = 1e-13);

struct SweepRow {
    double alpha = 0;
    std::optional<SolveResult> result;
    std::string error;
};

/// One row per alpha; failures are recorded per row and the sweep continues.
std::vector<SweepRow> sweep_alpha(const std::vector<double>& alphas, Target target,
                                  double tol = 1e-13);

struct RegimeBounds {
    double alpha;
    double a_escape;
    double a_rlrc;
    double a_rlrrrlrc;
};

RegimeBounds regime_bounds(double alpha);

/// Counts sign changes of the rescaled critical-return value over a uniform
/// a-grid restricted to the target's kneading prefix; uniqueness of the
/// super-sink means exactly one.
struct SignChangeWitness {
    double alpha;
    Target target;
    int grid_points;
    int prefix_matches;
    int sign_changes;
};

SignChangeWitness uniqueness_witness(double alpha, Target target, int grid_points = 1000);

} // namespace qq

#endif
