#ifndef QQ_REPORT_HPP
#define QQ_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qq {

inline constexpr const char* kToolName = "qqlab";
inline constexpr const char* kToolVersion = "0.1.0";

/// One verification check: `value` is the observed metric (a max deviation,
/// a min margin, a count, ...) compared against `tolerance` by the check
/// itself; `pass` records the outcome.
struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string metric;
    double value = 0;
    double tolerance = 0;
    long samples = 0;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    long samples = 0;
    double tol = 0;
    std::vector<CheckResult> checks;

    bool pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
};

/// Shortest text that still round-trips a double exactly (17 significant
/// digits); reports and CSV tables use this everywhere.
std::string fmt17(double v);

} // namespace qq

#endif
