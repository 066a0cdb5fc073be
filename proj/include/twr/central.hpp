// Centralized baseline: maximize the secrecy sum over all jamming powers
// with full channel knowledge, ignoring prices.

#pragma once

#include <vector>

#include "twr/channel.hpp"
#include "twr/rates.hpp"

namespace twr {

struct CentralOptimum {
    std::vector<double> pj_opt;
    double secrecy_sum = 0.0;
};

// Cyclic coordinate ascent over [0, p_max]^N, each coordinate solved by
// the same scan-plus-golden-section scheme as the game's best response,
// restarted from four initial points (all-zero, all-cap, two seeded
// random vectors). The jamming entries of source_powers are ignored.
CentralOptimum centralized_optimize(const ChannelGains& gains,
                                    const PowerAllocation& source_powers,
                                    const SystemConfig& config);

}  // namespace twr
