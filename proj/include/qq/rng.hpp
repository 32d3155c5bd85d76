#ifndef QQ_RNG_HPP
#define QQ_RNG_HPP

#include <cmath>
#include <cstdint>

namespace qq {

// Counter-based random stream (splitmix64). Every (seed, stream) pair is an
// independent deterministic sequence, so per-sample draws never depend on
// evaluation order or scheduling.
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // uniform in [0, 1)
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    double exponential(double mean) {
        // -mean * ln(1-u); u < 1 so the log argument is positive
        return -mean * std::log1p(-uniform01());
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ULL;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBULL;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t state_;
};

} // namespace qq

#endif
