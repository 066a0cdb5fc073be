// Experiment definitions, sweep execution, and CSV emission.
//
// An experiment is described by a flat key = value file (see README for
// the schema), runs deterministically from its seed, and produces a
// rectangular numeric table. Sweep points are independent, so the runner
// can evaluate them on all cores; rows are always assembled in sweep
// order and the output is byte-identical whether or not OpenMP is used.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "twr/channel.hpp"
#include "twr/game.hpp"

namespace twr {

inline constexpr const char* kToolVersion = "twrsec 0.1.0";

enum class ExperimentKind {
    nojam_surface,          // secrecy sum over a (p1, p2) grid, no jammers
    secrecy_vs_jampower,    // single-jammer power sweep
    demand_vs_price,        // bought power vs asked price, single jammer
    two_jammer_price_grid,  // purchases and utilities over a price grid
    rate_vs_num_jammers,    // fade-averaged optimal secrecy vs jammer count
    central_vs_distributed, // baseline vs game equilibrium across rate gains
};

const char* experiment_name(ExperimentKind kind);
const std::vector<ExperimentKind>& all_experiments();

enum class AxisScale { linear, log };

struct SweepAxis {
    std::string variable;
    double min = 0.0;
    double max = 0.0;
    int steps = 2;
    AxisScale scale = AxisScale::linear;

    double at(int index) const;

    bool operator==(const SweepAxis&) const = default;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::secrecy_vs_jampower;
    Topology topology;
    SystemConfig config;
    std::vector<SweepAxis> sweep;  // one or two axes, depending on the kind
    std::uint64_t seed = 1;
    Fading fading = Fading::rayleigh;
    Market market_defaults;
    StackelbergOptions game;
    bool require_convergence = false;
    int mc_draws = 200;

    bool operator==(const ExperimentSpec&) const = default;
};

// Malformed or inconsistent spec files.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A run that violated a numerical demand of the spec (e.g. a game that
// must converge but did not).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parse the key = value schema; `origin` names the source in errors.
// Missing keys fall back to the documented defaults, per-experiment axis
// defaults included.
ExperimentSpec parse_spec(const std::string& text, const std::string& origin);
ExperimentSpec load_spec(const std::string& path);

// Canonical textual form; parse_spec(serialize_spec(s)) == s.
std::string serialize_spec(const ExperimentSpec& spec);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<double> cells;  // row-major
    std::size_t row_count = 0;
    std::vector<std::string> metadata;  // emitted as '#'-prefixed lines

    double at(std::size_t row, std::size_t col) const { return cells[row * columns.size() + col]; }
};

struct RunOptions {
    bool parallel = true;
    bool quiet = true;
};

ResultTable run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

// Header row plus one line per row; 17 significant digits, '.' decimal
// separator, LF endings. Metadata precedes the header as '# ' comments.
std::string to_csv(const ResultTable& table);

// Sub-seed for Monte Carlo draw `index` of a run seeded with `master`.
std::uint64_t point_seed(std::uint64_t master, std::uint64_t index);

// A jammer is sufficiently effective when, acting alone with some power
// in (0, p_max], it reaches the same optimal secrecy sum as the whole
// jammer set acting together.
bool jammer_sufficiently_effective(const ChannelGains& gains,
                                   const PowerAllocation& source_powers,
                                   const SystemConfig& config, std::size_t jammer);

}  // namespace twr
