#include "twr/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "twr/rng.hpp"

namespace twr {

double distance(const NodePosition& a, const NodePosition& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void SystemConfig::validate() const {
    if (!(noise_power > 0.0)) throw std::invalid_argument("noise_power must be > 0");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
    if (!(power_cap > 0.0)) throw std::invalid_argument("power_cap must be > 0");
    if (!(pathloss_exponent >= 0.0)) throw std::invalid_argument("pathloss_exponent must be >= 0");
    if (!(rate_gain >= 0.0)) throw std::invalid_argument("rate_gain must be >= 0");
}

void Topology::validate() const {
    auto check = [&](const NodePosition& node, const char* name) {
        if (!(distance(node, relay) > 0.0))
            throw std::invalid_argument(std::string(name) + " is co-located with the relay");
    };
    check(source1, "source1");
    check(source2, "source2");
    for (std::size_t i = 0; i < jammers.size(); ++i)
        check(jammers[i], ("jammer " + std::to_string(i)).c_str());
}

double path_loss_gain(double dist, double exponent) {
    if (!(dist > 0.0)) throw std::domain_error("path_loss_gain: distance must be > 0");
    return std::pow(dist, -exponent);
}

namespace {

double one_gain(const NodePosition& node, const NodePosition& relay, double exponent,
                std::uint64_t seed, std::uint64_t node_index, Fading fading) {
    const double mean = path_loss_gain(distance(node, relay), exponent);
    if (fading == Fading::unit) return mean;
    SplitMix64 rng(derive_seed(seed, node_index));
    return mean * rng.next_exponential();
}

}  // namespace

ChannelGains sample_gains(const Topology& topology, const SystemConfig& config,
                          std::uint64_t seed, Fading fading) {
    config.validate();
    topology.validate();
    const double alpha = config.pathloss_exponent;

    ChannelGains gains;
    gains.g_s1r = one_gain(topology.source1, topology.relay, alpha, seed, 0, fading);
    gains.g_s2r = one_gain(topology.source2, topology.relay, alpha, seed, 1, fading);
    gains.g_jr.reserve(topology.jammers.size());
    for (std::size_t i = 0; i < topology.jammers.size(); ++i)
        gains.g_jr.push_back(one_gain(topology.jammers[i], topology.relay, alpha, seed, 2 + i, fading));
    return gains;
}

}  // namespace twr
