#include "twr/central.hpp"

#include <algorithm>
#include <cmath>

#include "twr/optimize.hpp"
#include "twr/rng.hpp"

namespace twr {

namespace {

constexpr int kMaxCycles = 200;
constexpr double kCycleImprovementTol = 1e-10;
constexpr std::uint64_t kRestartSeeds[2] = {0x5EED0001ULL, 0x5EED0002ULL};

double ascend_from(PowerAllocation& work, const ChannelGains& gains,
                   const SystemConfig& config) {
    auto objective = [&]() { return secrecy_rates(work, gains, config).secrecy_sum(); };
    double current = objective();
    for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
        const double before = current;
        for (std::size_t i = 0; i < work.pj.size(); ++i) {
            auto slice = [&](double p) {
                work.pj[i] = p;
                return objective();
            };
            const ScalarMax best = scan_golden_max(slice, config.power_cap);
            work.pj[i] = best.x;
            current = best.value;
        }
        if (current - before < kCycleImprovementTol) break;
    }
    return current;
}

}  // namespace

CentralOptimum centralized_optimize(const ChannelGains& gains,
                                    const PowerAllocation& source_powers,
                                    const SystemConfig& config) {
    const std::size_t n = gains.jammer_count();
    PowerAllocation work = source_powers;
    work.pj.assign(n, 0.0);

    CentralOptimum best;
    best.pj_opt.assign(n, 0.0);
    best.secrecy_sum = secrecy_rates(work, gains, config).secrecy_sum();
    if (n == 0) return best;

    std::vector<std::vector<double>> starts;
    starts.emplace_back(n, 0.0);
    starts.emplace_back(n, config.power_cap);
    for (std::uint64_t seed : kRestartSeeds) {
        SplitMix64 rng(seed);
        std::vector<double> start(n);
        for (double& p : start) p = rng.next_uniform() * config.power_cap;
        starts.push_back(std::move(start));
    }

    for (const auto& start : starts) {
        work.pj = start;
        const double value = ascend_from(work, gains, config);
        if (value > best.secrecy_sum) {
            best.secrecy_sum = value;
            best.pj_opt = work.pj;
        }
    }
    return best;
}

}  // namespace twr
