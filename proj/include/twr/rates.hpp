// Closed-form SNR, capacity, and secrecy-rate expressions for one frame.
//
// The relay amplifies the superposition of both source signals and all
// jamming signals by beta and rebroadcasts with power pr. Each source
// subtracts its own signal and the (known) jamming signals, so jamming
// reaches the legitimate links only through the relay's noise
// amplification, while it hits the relay's own reception at full strength.
// That asymmetry is what makes buying jamming power worthwhile.
//
// All rates are in bits (base-2 logarithms) and carry the half-duplex
// factor W/2. Secrecy rates are clipped at zero.

#pragma once

#include <vector>

#include "twr/channel.hpp"

namespace twr {

struct PowerAllocation {
    double p1 = 0.0;
    double p2 = 0.0;
    double pr = 0.0;
    std::vector<double> pj;  // one entry per jammer
};

// Every intermediate of the rate computation, so each expression can be
// tested in isolation.
struct RateReport {
    double beta = 0.0;    // relay power-normalization factor
    double k1 = 0.0;      // effective relay-noise power seen from S1->S2
    double k2 = 0.0;
    double gamma1 = 0.0;  // post-cancellation SNR of the S1->S2 link
    double gamma2 = 0.0;
    double c1 = 0.0;      // legitimate capacities
    double c2 = 0.0;
    double c1m = 0.0;     // relay (eavesdropper) capacities
    double c2m = 0.0;
    double c1s = 0.0;     // secrecy rates, (c - cm)^+
    double c2s = 0.0;

    double secrecy_sum() const { return c1s + c2s; }
};

struct EavesdropperCapacities {
    double c1m = 0.0;
    double c2m = 0.0;
};

struct LegitimateSnrs {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
};

// beta = (p1 g1 + p2 g2 + sum_i pj_i gj_i + sigma^2)^(-1/2)
double beta_factor(const PowerAllocation& powers, const ChannelGains& gains,
                   const SystemConfig& config);

// Relay capacities toward each source's signal under a matched filter,
// treating the other source and all jammers as interference.
EavesdropperCapacities eavesdropper_capacities(const PowerAllocation& powers,
                                               const ChannelGains& gains,
                                               const SystemConfig& config);

// Post-cancellation link SNRs. Throws std::domain_error when pr or a
// source-relay gain is zero (the relay link is unusable).
LegitimateSnrs legitimate_snrs(const PowerAllocation& powers, const ChannelGains& gains,
                               const SystemConfig& config);

// Full report; with an empty/zero jamming vector this reproduces the
// jammer-free expressions on the identical floating-point path.
RateReport secrecy_rates(const PowerAllocation& powers, const ChannelGains& gains,
                         const SystemConfig& config);

}  // namespace twr
