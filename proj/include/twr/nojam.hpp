// Jammer-free analysis: feasibility of a non-zero secrecy rate and the
// optimal (p1, p2, pr) allocation.
//
// Without jammers the secrecy sum reduces to (W/2) * (log2 F)^+ for a
// rational function F of the three powers. F is increasing in pr, so the
// relay always transmits at the cap; the remaining 1-D search over the
// weaker-constrained source power is solved by golden section.

#pragma once

#include "twr/channel.hpp"
#include "twr/rates.hpp"

namespace twr {

enum class ChannelCase {
    g1_greater,  // source 1 has the stronger relay link
    g2_greater,
    equal,
};

struct FTildeValue {
    double value = 0.0;  // the objective F itself, not its logarithm
    bool clipped = false;  // true where either one-way secrecy rate is zero
};

struct NoJamOptimum {
    double p1_opt = 0.0;
    double p2_opt = 0.0;
    double pr_opt = 0.0;
    double secrecy_sum = 0.0;
    ChannelCase case_tag = ChannelCase::equal;
    bool feasible = true;
};

// True iff (g1+g2)/(g1*g2) < p_max/sigma^2, i.e. the power caps admit an
// allocation with both one-way secrecy rates positive.
// Throws std::domain_error for a zero gain.
bool feasible_nonzero_secrecy(const ChannelGains& gains, const SystemConfig& config);

// The secrecy-sum objective; jamming powers in `powers` are ignored.
FTildeValue f_tilde(const PowerAllocation& powers, const ChannelGains& gains,
                    const SystemConfig& config);

// (W/2) * (log2 F)^+, the jammer-free secrecy sum in rate units.
double no_jam_secrecy_sum(const PowerAllocation& powers, const ChannelGains& gains,
                          const SystemConfig& config);

// Optimal allocation. Infeasible channels throw std::domain_error naming
// the violated condition, unless best_effort is set, in which case the
// result carries feasible = false, powers at the cap and zero rate.
NoJamOptimum optimize_no_jammer(const ChannelGains& gains, const SystemConfig& config,
                                bool best_effort = false);

}  // namespace twr
