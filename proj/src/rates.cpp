#include "twr/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace twr {

namespace {

void check_dimensions(const PowerAllocation& powers, const ChannelGains& gains) {
    if (powers.pj.size() != gains.g_jr.size())
        throw std::invalid_argument("jamming power vector length does not match jammer count");
}

// sum_i pj_i * gj_i, the raw jamming power received at the relay
double jam_power_at_relay(const PowerAllocation& powers, const ChannelGains& gains) {
    double sum = 0.0;
    for (std::size_t i = 0; i < powers.pj.size(); ++i) sum += powers.pj[i] * gains.g_jr[i];
    return sum;
}

double half_log2_1p(double snr, double bandwidth) {
    return 0.5 * bandwidth * std::log2(1.0 + snr);
}

}  // namespace

double beta_factor(const PowerAllocation& powers, const ChannelGains& gains,
                   const SystemConfig& config) {
    check_dimensions(powers, gains);
    const double received = powers.p1 * gains.g_s1r + powers.p2 * gains.g_s2r +
                            jam_power_at_relay(powers, gains) + config.noise_power;
    return 1.0 / std::sqrt(received);
}

EavesdropperCapacities eavesdropper_capacities(const PowerAllocation& powers,
                                               const ChannelGains& gains,
                                               const SystemConfig& config) {
    check_dimensions(powers, gains);
    const double jam = jam_power_at_relay(powers, gains);
    const double s1 = powers.p1 * gains.g_s1r;
    const double s2 = powers.p2 * gains.g_s2r;
    EavesdropperCapacities caps;
    caps.c1m = half_log2_1p(s1 / (config.noise_power + s2 + jam), config.bandwidth);
    caps.c2m = half_log2_1p(s2 / (config.noise_power + s1 + jam), config.bandwidth);
    return caps;
}

LegitimateSnrs legitimate_snrs(const PowerAllocation& powers, const ChannelGains& gains,
                               const SystemConfig& config) {
    check_dimensions(powers, gains);
    if (!(powers.pr > 0.0)) throw std::domain_error("legitimate_snrs: relay power must be > 0");
    if (!(gains.g_s1r > 0.0) || !(gains.g_s2r > 0.0))
        throw std::domain_error("legitimate_snrs: source-relay gains must be > 0");

    const double sigma2 = config.noise_power;
    const double s1 = powers.p1 * gains.g_s1r;
    const double s2 = powers.p2 * gains.g_s2r;
    const double total = s1 + s2 + sigma2;

    LegitimateSnrs out;
    out.k1 = sigma2 * total / (powers.pr * gains.g_s2r);
    out.k2 = sigma2 * total / (powers.pr * gains.g_s1r);

    // Jamming leaks into the legitimate links only through the relay's
    // amplified noise, attenuated by pr * g of the receiving side's link.
    double jam1 = 0.0;
    double jam2 = 0.0;
    for (std::size_t i = 0; i < powers.pj.size(); ++i) {
        jam1 += sigma2 * gains.g_jr[i] / (powers.pr * gains.g_s2r) * powers.pj[i];
        jam2 += sigma2 * gains.g_jr[i] / (powers.pr * gains.g_s1r) * powers.pj[i];
    }
    out.gamma1 = s1 / (sigma2 + out.k1 + jam1);
    out.gamma2 = s2 / (sigma2 + out.k2 + jam2);
    return out;
}

RateReport secrecy_rates(const PowerAllocation& powers, const ChannelGains& gains,
                         const SystemConfig& config) {
    const LegitimateSnrs snrs = legitimate_snrs(powers, gains, config);
    const EavesdropperCapacities caps = eavesdropper_capacities(powers, gains, config);

    RateReport report;
    report.beta = beta_factor(powers, gains, config);
    report.k1 = snrs.k1;
    report.k2 = snrs.k2;
    report.gamma1 = snrs.gamma1;
    report.gamma2 = snrs.gamma2;
    report.c1 = half_log2_1p(snrs.gamma1, config.bandwidth);
    report.c2 = half_log2_1p(snrs.gamma2, config.bandwidth);
    report.c1m = caps.c1m;
    report.c2m = caps.c2m;
    report.c1s = std::max(report.c1 - report.c1m, 0.0);
    report.c2s = std::max(report.c2 - report.c2m, 0.0);
    return report;
}

}  // namespace twr
