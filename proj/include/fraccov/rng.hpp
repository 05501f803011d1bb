#ifndef FRACCOV_RNG_HPP
#define FRACCOV_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace fraccov {

// Seeded standard-normal sampler. mt19937_64 is fully specified by the
// standard and Box-Muller is implemented here, so a given seed produces the
// same stream on every platform and standard library. The generator name is
// echoed into output metadata wherever draws are consumed.
class GaussianSampler {
public:
    static constexpr const char* name = "mt19937_64-boxmuller";

    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0,1] so log(u1) is finite; u2 in [0,1)
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    double uniform01() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace fraccov

#endif
