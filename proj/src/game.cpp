#include "twr/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twr/optimize.hpp"

namespace twr {

namespace {

constexpr double kFlatDemandSlope = -1e-12;  // quotient above this counts as flat
constexpr double kProbeStep = 0.05;          // fallback price probe, +-5%
constexpr double kDeviationRelTol = 1e-4;    // equilibrium verification slack

void check_market(const Market& market, std::size_t jammer_count) {
    if (market.prices.size() != jammer_count || market.cost_exponents.size() != jammer_count)
        throw std::invalid_argument("market vectors must match the jammer count");
    for (double m : market.prices)
        if (!(m >= 0.0)) throw std::invalid_argument("prices must be >= 0");
    for (double c : market.cost_exponents)
        if (!(c >= 1.0)) throw std::invalid_argument("cost exponents must be >= 1");
}

double relative_change(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale <= 1e-12) return 0.0;
    return std::abs(a - b) / scale;
}

// Definition check at a converged point: no unilateral deviation on a
// local grid may improve its owner's utility by more than the slack.
// Sources probe each purchase over [0, p_max]; jammers probe prices over
// a half-to-double band with the demand response recomputed.
bool verify_equilibrium(const PowerAllocation& eq_powers, const Market& market,
                        const ChannelGains& gains, const SystemConfig& config) {
    const std::size_t n = gains.jammer_count();
    const double us_eq = source_utility(eq_powers, gains, market, config);
    const double us_scale = std::max(std::abs(us_eq), 1e-12);

    constexpr int kPowerGrid = 65;
    PowerAllocation probe = eq_powers;
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < kPowerGrid; ++k) {
            probe.pj[i] = config.power_cap * k / (kPowerGrid - 1);
            const double us = source_utility(probe, gains, market, config);
            if ((us - us_eq) / us_scale > kDeviationRelTol) return false;
        }
        probe.pj[i] = eq_powers.pj[i];
    }

    constexpr int kPriceGrid = 17;
    for (std::size_t i = 0; i < n; ++i) {
        const double m_eq = market.prices[i];
        if (m_eq <= 0.0) continue;
        const double u_eq = jammer_utility(i, market, eq_powers.pj[i]);
        const double u_scale = std::max(std::abs(u_eq), 1e-12);
        for (int k = 0; k < kPriceGrid; ++k) {
            const double factor = std::exp2(-1.0 + 2.0 * k / (kPriceGrid - 1));
            Market deviated = market;
            deviated.prices[i] = m_eq * factor;
            const double p = source_best_response(i, gains, deviated, eq_powers, config);
            const double u = jammer_utility(i, deviated, p);
            if ((u - u_eq) / u_scale > kDeviationRelTol) return false;
        }
    }
    return true;
}

}  // namespace

double source_utility(const PowerAllocation& powers, const ChannelGains& gains,
                      const Market& market, const SystemConfig& config) {
    check_market(market, gains.jammer_count());
    const RateReport report = secrecy_rates(powers, gains, config);
    double cost = 0.0;
    for (std::size_t i = 0; i < powers.pj.size(); ++i) cost += market.prices[i] * powers.pj[i];
    return config.rate_gain * report.secrecy_sum() - cost;
}

UtilityCoefficients utility_coefficients(const PowerAllocation& powers,
                                         const ChannelGains& gains,
                                         const SystemConfig& config) {
    if (!(powers.p1 > 0.0) || !(powers.p2 > 0.0))
        throw std::domain_error("utility_coefficients: source powers must be > 0");
    const LegitimateSnrs snrs = legitimate_snrs(powers, gains, config);  // checks pr, gains

    const double sigma2 = config.noise_power;
    const double s1 = powers.p1 * gains.g_s1r;
    const double s2 = powers.p2 * gains.g_s2r;

    UtilityCoefficients out;
    out.a1 = (sigma2 + snrs.k1) / s1;
    out.a2 = (sigma2 + snrs.k2) / s2;
    out.b1 = (sigma2 + s2) / s1;
    out.b2 = (sigma2 + s1) / s2;
    const std::size_t n = gains.jammer_count();
    out.t1.reserve(n);
    out.t2.reserve(n);
    out.l1.reserve(n);
    out.l2.reserve(n);
    for (double gj : gains.g_jr) {
        out.t1.push_back(sigma2 * gj / (powers.pr * powers.p1 * gains.g_s2r * gains.g_s1r));
        out.t2.push_back(sigma2 * gj / (powers.pr * powers.p2 * gains.g_s2r * gains.g_s1r));
        out.l1.push_back(gj / s1);
        out.l2.push_back(gj / s2);
    }
    return out;
}

PowerAllocation source_best_responses(const ChannelGains& gains, const Market& market,
                                      const PowerAllocation& base, const SystemConfig& config,
                                      const StackelbergOptions& options) {
    const std::size_t n = gains.jammer_count();
    check_market(market, n);

    PowerAllocation work = base;
    if (work.pj.empty()) work.pj.assign(n, 0.0);
    if (work.pj.size() != n)
        throw std::invalid_argument("source_best_responses: jamming power vector size mismatch");

    // The responses are deterministic, so a stable context reproduces
    // itself exactly and the loop exits with delta == 0.
    for (int cycle = 0; cycle < options.inner_max_cycles; ++cycle) {
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double next = source_best_response(i, gains, market, work, config);
            delta = std::max(delta, std::abs(next - work.pj[i]) / config.power_cap);
            work.pj[i] = next;
        }
        if (delta < options.inner_tol) break;
    }
    return work;
}

double source_best_response(std::size_t jammer, const ChannelGains& gains, const Market& market,
                            const PowerAllocation& fixed, const SystemConfig& config) {
    check_market(market, gains.jammer_count());
    if (jammer >= gains.jammer_count())
        throw std::invalid_argument("source_best_response: jammer index out of range");

    PowerAllocation work = fixed;
    auto utility_of = [&](double p) {
        work.pj[jammer] = p;
        return source_utility(work, gains, market, config);
    };
    return scan_golden_max(utility_of, config.power_cap).x;
}

HighInterferenceApprox high_interference_best_response(const ChannelGains& gains,
                                                       const Market& market,
                                                       const PowerAllocation& fixed,
                                                       const SystemConfig& config) {
    if (gains.jammer_count() != 1)
        throw std::invalid_argument("high-interference solution requires exactly one jammer");
    check_market(market, 1);

    const double sigma2 = config.noise_power;
    const double s1 = fixed.p1 * gains.g_s1r;
    const double s2 = fixed.p2 * gains.g_s2r;
    const double gj = gains.g_jr[0];
    const double jam = fixed.pj.empty() ? 0.0 : fixed.pj[0] * gj;

    HighInterferenceApprox out;
    out.in_regime = jam > 0.0 && sigma2 / s1 <= 0.01 && sigma2 / s2 <= 0.01 &&
                    sigma2 / jam <= 0.01 && s1 / jam <= 0.01 && s2 / jam <= 0.01;

    // coefficient of 1/p in the expanded utility
    const double expansion =
        0.5 * config.rate_gain * config.bandwidth *
        ((fixed.pr * gains.g_s2r / sigma2 - 1.0) * s1 / gj +
         (fixed.pr * gains.g_s1r / sigma2 - 1.0) * s2 / gj);
    out.d1 = -expansion;  // collected-form coefficient carries the opposite sign
    out.participates = expansion > 0.0;
    out.p_star = out.participates
                     ? std::min(std::sqrt(std::abs(out.d1) / market.prices[0]), config.power_cap)
                     : 0.0;
    return out;
}

double jammer_utility(std::size_t jammer, const Market& market, double power) {
    if (jammer >= market.prices.size())
        throw std::invalid_argument("jammer_utility: jammer index out of range");
    if (!(power >= 0.0)) throw std::invalid_argument("jammer_utility: power must be >= 0");
    return market.prices[jammer] * std::pow(power, market.cost_exponents[jammer]);
}

PriceUpdateResult price_update(std::size_t jammer, const Market& market,
                               const ChannelGains& gains, const PowerAllocation& fixed,
                               const SystemConfig& config) {
    check_market(market, gains.jammer_count());
    const double m = market.prices[jammer];
    const double c = market.cost_exponents[jammer];

    auto demand_at = [&](double price) {
        Market probe = market;
        probe.prices[jammer] = price;
        return source_best_response(jammer, gains, probe, fixed, config);
    };

    const double p0 = demand_at(m);
    const bool boundary = !(p0 > 0.0) || !(p0 < config.power_cap);

    if (!boundary) {
        const double h = std::max(1e-4 * m, 1e-8);
        const double lo = std::max(m - h, 0.0);
        const double hi = m + h;
        const double quotient = (demand_at(hi) - demand_at(lo)) / (hi - lo);
        if (quotient < kFlatDemandSlope) return {-p0 / (c * quotient), false};
    }

    // Probe a 5% move either way and keep the price when neither raises
    // the jammer's utility (a shut-out jammer far from the market stays put).
    const double u_now = m * std::pow(p0, c);
    const double up = m * (1.0 + kProbeStep);
    const double dn = m * (1.0 - kProbeStep);
    const double u_up = up * std::pow(demand_at(up), c);
    const double u_dn = dn * std::pow(demand_at(dn), c);

    double chosen = m;
    double best = u_now;
    if (u_dn > best) {
        best = u_dn;
        chosen = dn;
    }
    if (u_up > best) {
        best = u_up;
        chosen = up;
    }
    return {chosen, true};
}

GameTrace run_stackelberg(const ChannelGains& gains, const SystemConfig& config,
                          const Market& market_init, const PowerAllocation& base_powers,
                          const StackelbergOptions& options) {
    const std::size_t n = gains.jammer_count();
    check_market(market_init, n);
    config.validate();

    PowerAllocation work = base_powers;
    if (work.pj.empty()) work.pj.assign(n, 0.0);
    if (work.pj.size() != n)
        throw std::invalid_argument("run_stackelberg: base jamming powers must match jammer count");

    Market market = market_init;
    GameTrace trace;

    auto record = [&]() {
        trace.price_history.push_back(market.prices);
        trace.power_history.push_back(work.pj);
        trace.source_utility_history.push_back(source_utility(work, gains, market, config));
        std::vector<double> uj(n);
        for (std::size_t i = 0; i < n; ++i) uj[i] = jammer_utility(i, market, work.pj[i]);
        trace.jammer_utility_history.push_back(std::move(uj));
    };

    work = source_best_responses(gains, market, work, config, options);
    record();

    if (n == 0) {
        trace.converged = true;
        trace.equilibrium_verified = true;
        return trace;
    }

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        std::vector<double> next_prices(n);
        double price_delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const PriceUpdateResult upd = price_update(i, market, gains, work, config);
            next_prices[i] = upd.fallback
                                 ? upd.price
                                 : (1.0 - options.damping) * market.prices[i] +
                                       options.damping * upd.price;
            price_delta = std::max(price_delta, relative_change(market.prices[i], next_prices[i]));
        }
        market.prices = next_prices;

        const std::vector<double> previous = work.pj;
        work = source_best_responses(gains, market, work, config, options);
        double power_delta = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            power_delta = std::max(power_delta, relative_change(previous[i], work.pj[i]));

        trace.iterations = iter;
        record();

        if (price_delta < options.tol && power_delta < options.tol) {
            trace.converged = true;
            break;
        }
    }

    if (trace.converged && options.verify_equilibrium)
        trace.equilibrium_verified = verify_equilibrium(work, market, gains, config);
    return trace;
}

}  // namespace twr
