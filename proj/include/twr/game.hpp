// Source-jammer pricing game: the sources buy jamming power to raise
// their secrecy rate, each jammer asks a price per unit power.
//
// The sources' side is solved exactly by numerical maximization of the
// utility over each jammer's power in [0, p_max] (the stationarity
// condition is a degree-8 polynomial whose closed form is useless in
// practice). The jammer side iterates a price-update map whose fixed
// point makes each jammer's revenue stationary; the two sides alternate
// until neither prices nor purchases move.

#pragma once

#include <cstddef>
#include <vector>

#include "twr/channel.hpp"
#include "twr/rates.hpp"

namespace twr {

// Per-jammer prices and payment/cost balance exponents (each >= 1).
struct Market {
    std::vector<double> prices;
    std::vector<double> cost_exponents;

    static Market uniform(std::size_t jammer_count, double price, double cost_exponent = 1.0) {
        return Market{std::vector<double>(jammer_count, price),
                      std::vector<double>(jammer_count, cost_exponent)};
    }

    bool operator==(const Market&) const = default;
};

// Constants of the source-utility expression written as a function of the
// jamming powers alone: the legitimate-link factors (a, t) and the
// relay-reception factors (b, l) per jammer.
struct UtilityCoefficients {
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    std::vector<double> t1;
    std::vector<double> t2;
    std::vector<double> l1;
    std::vector<double> l2;
};

// Closed-form single-jammer solution valid when the received jamming
// power dominates both source signals and the noise.
struct HighInterferenceApprox {
    double d1 = 0.0;      // coefficient of the 1/p term of the expanded utility
    double p_star = 0.0;  // clipped closed-form optimum in [0, p_max]
    bool in_regime = false;     // ratio checks passed (advisory)
    bool participates = false;  // expansion-form coefficient positive
};

struct PriceUpdateResult {
    double price = 0.0;
    bool fallback = false;  // boundary/flat-demand probing was used
};

struct StackelbergOptions {
    double damping = 0.5;  // weight of the update target vs the old price
    double tol = 1e-6;     // relative convergence threshold
    int max_iterations = 500;
    double inner_tol = 1e-8;    // purchase-vector fixed point per price round
    int inner_max_cycles = 200;
    bool verify_equilibrium = true;

    bool operator==(const StackelbergOptions&) const = default;
};

struct GameTrace {
    // entry 0 is the initial market with its best responses; one entry
    // is appended per price-update round
    std::vector<std::vector<double>> price_history;
    std::vector<std::vector<double>> power_history;
    std::vector<double> source_utility_history;
    std::vector<std::vector<double>> jammer_utility_history;
    bool converged = false;
    bool equilibrium_verified = false;
    int iterations = 0;

    const std::vector<double>& final_prices() const { return price_history.back(); }
    const std::vector<double>& final_powers() const { return power_history.back(); }
};

// U_s = a * (c1s + c2s) - sum_i m_i * pj_i
double source_utility(const PowerAllocation& powers, const ChannelGains& gains,
                      const Market& market, const SystemConfig& config);

// Settled purchase vector under fixed prices: per-jammer best responses in
// index order, repeated until the vector reproduces itself.
PowerAllocation source_best_responses(const ChannelGains& gains, const Market& market,
                                      const PowerAllocation& base, const SystemConfig& config,
                                      const StackelbergOptions& options = {});

// Throws std::domain_error when a defining denominator (p1, p2, pr, g1, g2)
// is zero.
UtilityCoefficients utility_coefficients(const PowerAllocation& powers,
                                         const ChannelGains& gains,
                                         const SystemConfig& config);

// argmax over pj[jammer] in [0, p_max] of U_s, everything else held fixed.
// Ties between candidates resolve toward the higher utility, then the
// smaller power, so a useless jammer gets exactly 0.
double source_best_response(std::size_t jammer, const ChannelGains& gains, const Market& market,
                            const PowerAllocation& fixed, const SystemConfig& config);

// Requires exactly one jammer. The two sign conventions of the expanded
// utility (E/p - m*p from the expansion itself, -D/p - m*p with D = -E
// from the collected form) disagree whenever jamming is beneficial; the
// optimum is therefore gated on the expansion-form coefficient E > 0 and
// uses the magnitude |d1| = |E| under the square root.
HighInterferenceApprox high_interference_best_response(const ChannelGains& gains,
                                                       const Market& market,
                                                       const PowerAllocation& fixed,
                                                       const SystemConfig& config);

// U_i = m_i * p^(c_i)
double jammer_utility(std::size_t jammer, const Market& market, double power);

// Revenue-stationarity target price -p / (c * dp/dm), with dp/dm by
// central difference. Boundary or flat demand falls back to +-5%
// probing toward higher jammer utility (price unchanged when neither
// direction helps).
PriceUpdateResult price_update(std::size_t jammer, const Market& market,
                               const ChannelGains& gains, const PowerAllocation& fixed,
                               const SystemConfig& config);

// Alternate cyclic source best responses and damped price updates until
// both stall. base_powers fixes (p1, p2, pr); its pj entries seed the
// purchase vector. A run that exhausts max_iterations reports
// converged = false rather than pretending.
GameTrace run_stackelberg(const ChannelGains& gains, const SystemConfig& config,
                          const Market& market_init, const PowerAllocation& base_powers,
                          const StackelbergOptions& options = {});

}  // namespace twr
