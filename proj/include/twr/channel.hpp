// Node geometry, path loss, and seeded Rayleigh fading realizations.
//
// A scenario is two sources exchanging data through a single relay in the
// plane, optionally assisted by friendly jammers. Only channel *power*
// gains enter any rate expression, so fading is sampled directly as a
// unit-mean exponential factor on top of the distance^-alpha path loss.

#pragma once

#include <cstdint>
#include <vector>

namespace twr {

struct NodePosition {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const NodePosition&) const = default;
};

double distance(const NodePosition& a, const NodePosition& b);

// Global physical constants shared by every module.
struct SystemConfig {
    double noise_power = 0.01;       // sigma^2
    double bandwidth = 1.0;          // W
    double power_cap = 10.0;         // p_max, per-node transmit limit
    double pathloss_exponent = 2.0;  // alpha
    double rate_gain = 1.0;          // a, economic gain per unit secrecy rate

    // Throws std::invalid_argument when a field is out of range.
    void validate() const;

    bool operator==(const SystemConfig&) const = default;
};

struct Topology {
    NodePosition source1{-1.0, 0.0};
    NodePosition source2{1.0, 0.0};
    NodePosition relay{0.0, 0.0};
    std::vector<NodePosition> jammers;

    // Throws std::invalid_argument if any node sits on top of the relay.
    void validate() const;

    bool operator==(const Topology&) const = default;
};

// Realized power gains toward the relay for one fading frame.
struct ChannelGains {
    double g_s1r = 0.0;
    double g_s2r = 0.0;
    std::vector<double> g_jr;

    std::size_t jammer_count() const { return g_jr.size(); }
};

enum class Fading {
    rayleigh,  // gain = d^-alpha * Exp(1)
    unit,      // gain = d^-alpha, for deterministic experiments
};

// Mean power gain d^-alpha. Throws std::domain_error for d <= 0.
double path_loss_gain(double dist, double exponent);

// One fading frame for the whole topology. Per-node draws come from
// sub-streams of `seed`, so a node's gain does not depend on how many
// jammers follow it in the list.
ChannelGains sample_gains(const Topology& topology, const SystemConfig& config,
                          std::uint64_t seed, Fading fading);

}  // namespace twr
