// Shared oracles and generators for the test suites. Everything here is
// computed independently of the library's expression paths: different
// algebraic arrangements, brute-force grids, plain finite differences.

#pragma once

#include <cmath>
#include <random>
#include <utility>

#include "twr/channel.hpp"
#include "twr/rates.hpp"

namespace testutil {

// Jammer-free secrecy rates evaluated on a deliberately different route:
// the effective SNRs are expanded to a single rational expression and the
// capacities use log1p instead of log2(1 + x).
inline double nojam_c1s_oracle(double p1, double p2, double pr, double g1, double g2,
                               double sigma2, double bandwidth) {
    const double total = p1 * g1 + p2 * g2 + sigma2;
    const double snr_main = p1 * g1 * pr * g2 / (sigma2 * (pr * g2 + total));
    const double snr_eave = p1 * g1 / (sigma2 + p2 * g2);
    const double rate =
        0.5 * bandwidth * (std::log1p(snr_main) - std::log1p(snr_eave)) / std::log(2.0);
    return rate > 0.0 ? rate : 0.0;
}

inline double nojam_c2s_oracle(double p1, double p2, double pr, double g1, double g2,
                               double sigma2, double bandwidth) {
    return nojam_c1s_oracle(p2, p1, pr, g2, g1, sigma2, bandwidth);
}

// Dense-grid argmax over [lo, hi]; ties keep the smaller argument.
template <class F>
std::pair<double, double> grid_argmax(F&& f, double lo, double hi, int points) {
    double best_x = lo;
    double best_value = f(lo);
    for (int i = 1; i < points; ++i) {
        const double x = lo + (hi - lo) * i / (points - 1);
        const double value = f(x);
        if (value > best_value) {
            best_value = value;
            best_x = x;
        }
    }
    return {best_x, best_value};
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// A price just under the strongest jammer's shut-out level, so the game
// starts with an open market: the best-value jammer trades while every
// other one is clearly overpriced.
inline double market_opening_price(const twr::ChannelGains& gains,
                                   const twr::PowerAllocation& base,
                                   const twr::SystemConfig& config, double margin = 0.9) {
    const double s0 = twr::secrecy_rates(base, gains, config).secrecy_sum();
    const double h = 1e-6 * config.power_cap;
    double strongest = 0.0;
    for (std::size_t i = 0; i < gains.jammer_count(); ++i) {
        twr::PowerAllocation probe = base;
        probe.pj[i] += h;
        const double slope =
            (twr::secrecy_rates(probe, gains, config).secrecy_sum() - s0) / h;
        strongest = std::max(strongest, config.rate_gain * slope);
    }
    return margin * strongest;
}

// Random positive instances for property tests.
struct InstanceGen {
    std::mt19937_64 rng;

    explicit InstanceGen(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    twr::ChannelGains gains(std::size_t jammers) {
        twr::ChannelGains g;
        g.g_s1r = log_uniform(0.01, 5.0);
        g.g_s2r = log_uniform(0.01, 5.0);
        for (std::size_t i = 0; i < jammers; ++i) g.g_jr.push_back(log_uniform(0.01, 5.0));
        return g;
    }

    twr::PowerAllocation powers(std::size_t jammers, double p_max) {
        twr::PowerAllocation p;
        p.p1 = uniform(0.05 * p_max, p_max);
        p.p2 = uniform(0.05 * p_max, p_max);
        p.pr = uniform(0.05 * p_max, p_max);
        for (std::size_t i = 0; i < jammers; ++i) p.pj.push_back(uniform(0.0, p_max));
        return p;
    }
};

}  // namespace testutil
