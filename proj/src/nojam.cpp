#include "twr/nojam.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "twr/optimize.hpp"

namespace twr {

namespace {

constexpr double kEqualGainRelTol = 1e-12;
constexpr double kSearchFloorScale = 1e-6;  // lower end of the p1/p2 bracket
constexpr double kSearchTolScale = 1e-9;

void check_gains(const ChannelGains& gains) {
    if (!(gains.g_s1r > 0.0) || !(gains.g_s2r > 0.0))
        throw std::domain_error("no-jammer analysis requires positive source-relay gains");
}

}  // namespace

bool feasible_nonzero_secrecy(const ChannelGains& gains, const SystemConfig& config) {
    check_gains(gains);
    const double lhs = (gains.g_s1r + gains.g_s2r) / (gains.g_s1r * gains.g_s2r);
    return lhs < config.power_cap / config.noise_power;
}

FTildeValue f_tilde(const PowerAllocation& powers, const ChannelGains& gains,
                    const SystemConfig& config) {
    check_gains(gains);
    const double sigma2 = config.noise_power;
    const double s1 = powers.p1 * gains.g_s1r;
    const double s2 = powers.p2 * gains.g_s2r;
    const double total = s1 + s2 + sigma2;
    const double k1 = sigma2 * total / (powers.pr * gains.g_s2r);
    const double k2 = sigma2 * total / (powers.pr * gains.g_s1r);

    FTildeValue out;
    out.value = ((1.0 + s1 / (sigma2 + k1)) * (1.0 + s2 / (sigma2 + k2))) /
                ((1.0 + s1 / (sigma2 + s2)) * (1.0 + s2 / (sigma2 + s1)));
    // Outside k1 < s2 && k2 < s1 at least one one-way secrecy rate is zero.
    out.clipped = !(k1 < s2 && k2 < s1);
    return out;
}

double no_jam_secrecy_sum(const PowerAllocation& powers, const ChannelGains& gains,
                          const SystemConfig& config) {
    const double log_f = std::log2(f_tilde(powers, gains, config).value);
    return 0.5 * config.bandwidth * std::max(log_f, 0.0);
}

NoJamOptimum optimize_no_jammer(const ChannelGains& gains, const SystemConfig& config,
                                bool best_effort) {
    check_gains(gains);
    config.validate();
    const double p_max = config.power_cap;

    if (!feasible_nonzero_secrecy(gains, config)) {
        if (!best_effort) {
            std::ostringstream msg;
            msg << "no positive secrecy rate within the power cap: (g1+g2)/(g1*g2) = "
                << (gains.g_s1r + gains.g_s2r) / (gains.g_s1r * gains.g_s2r)
                << " >= p_max/sigma^2 = " << config.power_cap / config.noise_power;
            throw std::domain_error(msg.str());
        }
        NoJamOptimum degenerate;
        degenerate.p1_opt = degenerate.p2_opt = degenerate.pr_opt = p_max;
        degenerate.secrecy_sum = 0.0;
        degenerate.feasible = false;
        degenerate.case_tag = gains.g_s1r > gains.g_s2r   ? ChannelCase::g1_greater
                              : gains.g_s1r < gains.g_s2r ? ChannelCase::g2_greater
                                                          : ChannelCase::equal;
        return degenerate;
    }

    NoJamOptimum opt;
    opt.pr_opt = p_max;  // the objective is increasing in pr

    const double diff = gains.g_s1r - gains.g_s2r;
    const double scale = std::max(gains.g_s1r, gains.g_s2r);
    if (std::abs(diff) <= kEqualGainRelTol * scale) {
        opt.case_tag = ChannelCase::equal;
        opt.p1_opt = p_max;
        opt.p2_opt = p_max;
    } else if (diff > 0.0) {
        // stronger link transmits less; search its power, cap the other
        opt.case_tag = ChannelCase::g1_greater;
        opt.p2_opt = p_max;
        auto objective = [&](double p1) {
            return f_tilde({p1, p_max, p_max, {}}, gains, config).value;
        };
        const ScalarMax best = golden_section_max(objective, kSearchFloorScale * p_max, p_max,
                                                  kSearchTolScale * p_max);
        opt.p1_opt = objective(p_max) >= best.value ? p_max : best.x;
    } else {
        opt.case_tag = ChannelCase::g2_greater;
        opt.p1_opt = p_max;
        auto objective = [&](double p2) {
            return f_tilde({p_max, p2, p_max, {}}, gains, config).value;
        };
        const ScalarMax best = golden_section_max(objective, kSearchFloorScale * p_max, p_max,
                                                  kSearchTolScale * p_max);
        opt.p2_opt = objective(p_max) >= best.value ? p_max : best.x;
    }

    opt.secrecy_sum =
        no_jam_secrecy_sum({opt.p1_opt, opt.p2_opt, opt.pr_opt, {}}, gains, config);
    return opt;
}

}  // namespace twr
