#ifndef QQ_MONOTONICITY_HPP
#define QQ_MONOTONICITY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qq/errors.hpp"
#include "qq/report.hpp"

namespace qq {

/// Ratios of consecutive same-parity post-critical gaps in the RLRL regime:
/// evens[n] = |y_{2n+4} - y_{2n+2}| / |y_{2n+2} - y_{2n}|, odds likewise one
/// index up. A gap below 1e-10 truncates the series at that n (the ratios
/// past it would be rounding noise).
struct RatioSeries {
    double alpha = 0;
    double a = 0;
    double abar = 0;
    int n_max = 0;
    std::vector<double> evens;
    std::vector<double> odds;
    bool truncated_evens = false;
    bool truncated_odds = false;
};

RatioSeries ratio_series(double alpha, double a, int n_max);

struct RatioMonotonicityReport {
    double alpha = 0;
    int n_max = 0;
    std::vector<double> abar_grid;
    std::vector<RatioSeries> series;
    bool pass = false;
    bool vacuous = false;  // fewer than two grid points
    long comparisons = 0;
    double min_increase = 0;
    std::vector<std::string> failures;
};

/// Checks that every defined r^n_e and r^n_o strictly increases across
/// consecutive grid points. The grid must be strictly increasing, spaced at
/// least 1e-6 apart and stay below abar(a_rlrc) - 1e-4.
RatioMonotonicityReport ratio_monotonicity_check(double alpha,
                                                 const std::vector<double>& abar_grid,
                                                 int n_max);

struct DiscrepancyEntry {
    int n;
    double lhs;     // coordinate discrepancy of the (n+4)-th point
    double margin;  // lhs - delta_t
};

struct DiscrepancyReport {
    double alpha = 0;
    double abar = 0;
    double abar_prime = 0;
    double delta_t = 0;
    std::vector<DiscrepancyEntry> per_n;
    bool truncated = false;   // a degenerate gap stopped the series early
    bool degenerate = false;  // abar == abar_prime
    bool pass = false;        // every margin strictly positive
    double min_margin = 0;
};

DiscrepancyReport discrepancy_check(double alpha, double abar, double abar_prime, int n_max);

/// One hypothesis-satisfying instance of the two-triple coordinate lemma:
/// (x, y, z) and the tilde triple, with the condition-(iii) slack used when
/// placing z_tilde and the resulting conclusion margin
/// coord((y~,-y~), z~) - coord((y,-y), z).
struct LemmaSample {
    double x, y, z;
    double x_tilde, y_tilde, z_tilde;
    double slack_iii;
    double conclusion_margin;
};

struct LemmaReport {
    long samples = 0;
    std::uint64_t seed = 0;
    long violations = 0;
    double min_margin = 0;
    double max_margin = 0;
    double rejection_rate = 0;          // rejected draws / total draws
    double min_condition_slack = 0;     // re-verified (ii)/(iii) slack
    std::array<long, 4> subsuite = {};  // random, exact-threshold, z=0, z=0+exact
    std::array<long, 6> histogram = {}; // margin buckets, see lemma_margin_bucket
    std::vector<LemmaSample> worst;     // smallest-margin samples (up to 4)
    bool pass = false;
};

int lemma_margin_bucket(double margin);

LemmaReport lemma_osemka_check(long samples, std::uint64_t seed);

/// Runs every chart identity and push property with the given sample budget;
/// identity checks use `tol`, roundtrips 1e-12, monotonicity slacks 1e-12.
SuiteReport proposition_suite(long samples, std::uint64_t seed, double tol = 1e-10);

} // namespace qq

#endif
