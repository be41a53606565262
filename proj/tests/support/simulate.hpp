#pragma once

// Seeded generators for simulation-based tests. std::normal_distribution is
// implementation-defined, so normals come from Box-Muller over the fully
// specified mt19937_64 engine to keep frozen Monte Carlo counts portable.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace acapm::testing {

class Gaussian {
public:
    explicit Gaussian(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        // 53 random bits in (0, 1).
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    std::vector<double> draw(std::size_t n, double mean = 0.0, double sd = 1.0) {
        std::vector<double> out(n);
        for (double& v : out) v = mean + sd * (*this)();
        return out;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct CapmSample {
    std::vector<double> market;
    std::vector<double> asset;
};

/// asset = alpha + beta * market + sigma * z with normal market returns.
inline CapmSample simulate_capm(Gaussian& g, std::size_t n, double alpha, double beta,
                                double sigma, double market_mean = 0.01,
                                double market_sd = 0.05) {
    CapmSample s;
    s.market = g.draw(n, market_mean, market_sd);
    s.asset.resize(n);
    for (std::size_t t = 0; t < n; ++t) s.asset[t] = alpha + beta * s.market[t] + sigma * g();
    return s;
}

}  // namespace acapm::testing
