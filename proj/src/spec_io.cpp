// Parsing, validation, and canonical serialization of experiment files.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#include "twr/experiment.hpp"

namespace twr {

namespace {

struct KindName {
    ExperimentKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::nojam_surface, "nojam_surface"},
    {ExperimentKind::secrecy_vs_jampower, "secrecy_vs_jampower"},
    {ExperimentKind::demand_vs_price, "demand_vs_price"},
    {ExperimentKind::two_jammer_price_grid, "two_jammer_price_grid"},
    {ExperimentKind::rate_vs_num_jammers, "rate_vs_num_jammers"},
    {ExperimentKind::central_vs_distributed, "central_vs_distributed"},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    throw SpecError(origin + ":" + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view v, const std::string& origin, int line) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        fail(origin, line, "malformed number '" + std::string(v) + "'");
    return out;
}

std::uint64_t parse_u64(std::string_view v, const std::string& origin, int line) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        fail(origin, line, "malformed unsigned integer '" + std::string(v) + "'");
    return out;
}

int parse_int(std::string_view v, const std::string& origin, int line) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        fail(origin, line, "malformed integer '" + std::string(v) + "'");
    return out;
}

bool parse_bool(std::string_view v, const std::string& origin, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    fail(origin, line, "expected 'true' or 'false', got '" + std::string(v) + "'");
}

std::vector<double> parse_list(std::string_view v, const std::string& origin, int line) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < v.size()) {
        while (pos < v.size() && v[pos] == ' ') ++pos;
        std::size_t end = pos;
        while (end < v.size() && v[end] != ' ') ++end;
        if (end > pos) out.push_back(parse_double(v.substr(pos, end - pos), origin, line));
        pos = end;
    }
    return out;
}

NodePosition parse_position(std::string_view v, const std::string& origin, int line) {
    const std::vector<double> coords = parse_list(v, origin, line);
    if (coords.size() != 2) fail(origin, line, "expected 'x y' coordinates");
    return {coords[0], coords[1]};
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += format_double(values[i]);
    }
    return out;
}

// Expected axis layout per experiment; {} entries mean "depends on the
// loaded config/topology" and are resolved in default_axes.
std::vector<std::string> axis_variables(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::nojam_surface: return {"p1", "p2"};
        case ExperimentKind::secrecy_vs_jampower: return {"jam_power"};
        case ExperimentKind::demand_vs_price: return {"price"};
        case ExperimentKind::two_jammer_price_grid: return {"price1", "price2"};
        case ExperimentKind::rate_vs_num_jammers: return {"n_jammers"};
        case ExperimentKind::central_vs_distributed: return {"rate_gain"};
    }
    throw SpecError("unhandled experiment kind");
}

std::vector<SweepAxis> default_axes(const ExperimentSpec& spec) {
    const double p_max = spec.config.power_cap;
    const int pool = static_cast<int>(spec.topology.jammers.size());
    switch (spec.kind) {
        case ExperimentKind::nojam_surface:
            return {{"p1", 0.0, p_max, 50, AxisScale::linear},
                    {"p2", 0.0, p_max, 50, AxisScale::linear}};
        case ExperimentKind::secrecy_vs_jampower:
            return {{"jam_power", 0.0, p_max, 101, AxisScale::linear}};
        case ExperimentKind::demand_vs_price:
            return {{"price", 0.01, 100.0, 40, AxisScale::log}};
        case ExperimentKind::two_jammer_price_grid:
            return {{"price1", 0.01, 100.0, 40, AxisScale::log},
                    {"price2", 0.01, 100.0, 40, AxisScale::log}};
        case ExperimentKind::rate_vs_num_jammers:
            return {{"n_jammers", 1.0, static_cast<double>(pool), std::max(pool, 2),
                     AxisScale::linear}};
        case ExperimentKind::central_vs_distributed:
            return {{"rate_gain", 1.0, 1000.0, 4, AxisScale::log}};
    }
    throw SpecError("unhandled experiment kind");
}

std::size_t required_jammers(ExperimentKind kind, std::size_t pool) {
    switch (kind) {
        case ExperimentKind::nojam_surface: return 0;
        case ExperimentKind::secrecy_vs_jampower: return 1;
        case ExperimentKind::demand_vs_price: return 1;
        case ExperimentKind::two_jammer_price_grid: return 2;
        case ExperimentKind::rate_vs_num_jammers: return std::max<std::size_t>(pool, 2);
        case ExperimentKind::central_vs_distributed: return std::max<std::size_t>(pool, 1);
    }
    return 0;
}

void validate_spec(const ExperimentSpec& spec) {
    spec.config.validate();
    spec.topology.validate();

    const std::size_t pool = spec.topology.jammers.size();
    const std::size_t required = required_jammers(spec.kind, pool);
    if (pool != required) {
        std::ostringstream msg;
        msg << experiment_name(spec.kind) << " needs " << required << " jammer(s), topology has "
            << pool;
        throw SpecError(msg.str());
    }

    const std::vector<std::string> expected = axis_variables(spec.kind);
    if (spec.sweep.size() != expected.size())
        throw SpecError(std::string(experiment_name(spec.kind)) + " needs " +
                        std::to_string(expected.size()) + " sweep axis(es)");
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const SweepAxis& axis = spec.sweep[i];
        if (axis.variable != expected[i])
            throw SpecError("axis " + std::to_string(i + 1) + " of " +
                            experiment_name(spec.kind) + " must sweep '" + expected[i] +
                            "', got '" + axis.variable + "'");
        if (axis.steps < 2) throw SpecError("sweep steps must be >= 2");
        if (!(axis.min <= axis.max)) throw SpecError("sweep min must be <= max");
        if (axis.scale == AxisScale::log && !(axis.min > 0.0))
            throw SpecError("log-scale sweep requires min > 0");
        const bool power_axis =
            axis.variable == "p1" || axis.variable == "p2" || axis.variable == "jam_power";
        if (power_axis && (axis.min < 0.0 || axis.max > spec.config.power_cap))
            throw SpecError("power sweep '" + axis.variable + "' must stay within [0, " +
                            format_double(spec.config.power_cap) + "]");
        if (axis.variable == "n_jammers") {
            if (axis.min != std::floor(axis.min) || axis.max != std::floor(axis.max))
                throw SpecError("n_jammers bounds must be integers");
            if (axis.min < 1.0 || axis.max > static_cast<double>(pool))
                throw SpecError("n_jammers must stay within [1, jammer pool size]");
            if (axis.steps != static_cast<int>(axis.max - axis.min) + 1)
                throw SpecError("n_jammers sweep must step by 1");
        }
    }

    if (spec.market_defaults.prices.size() != pool ||
        spec.market_defaults.cost_exponents.size() != pool)
        throw SpecError("market vectors must have one entry per jammer");
    for (double m : spec.market_defaults.prices)
        if (!(m >= 0.0)) throw SpecError("market prices must be >= 0");
    for (double c : spec.market_defaults.cost_exponents)
        if (!(c >= 1.0)) throw SpecError("market cost exponents must be >= 1");

    if (!(spec.game.damping > 0.0 && spec.game.damping <= 1.0))
        throw SpecError("game.damping must be in (0, 1]");
    if (!(spec.game.tol > 0.0)) throw SpecError("game.tol must be > 0");
    if (spec.game.max_iterations < 1) throw SpecError("game.max_iterations must be >= 1");
    if (spec.mc_draws < 1) throw SpecError("mc.draws must be >= 1");
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
    for (const KindName& entry : kKindNames)
        if (entry.kind == kind) return entry.name;
    return "unknown";
}

const std::vector<ExperimentKind>& all_experiments() {
    static const std::vector<ExperimentKind> kinds = [] {
        std::vector<ExperimentKind> out;
        for (const KindName& entry : kKindNames) out.push_back(entry.kind);
        return out;
    }();
    return kinds;
}

double SweepAxis::at(int index) const {
    if (index <= 0) return min;
    if (index >= steps - 1) return max;
    const double t = static_cast<double>(index) / (steps - 1);
    if (scale == AxisScale::log) return std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
    return min + t * (max - min);
}

struct AxisOverride {
    std::optional<std::string> variable;
    std::optional<double> min;
    std::optional<double> max;
    std::optional<int> steps;
    std::optional<AxisScale> scale;

    bool any() const { return variable || min || max || steps || scale; }

    SweepAxis apply(SweepAxis axis) const {
        if (variable) axis.variable = *variable;
        if (min) axis.min = *min;
        if (max) axis.max = *max;
        if (steps) axis.steps = *steps;
        if (scale) axis.scale = *scale;
        return axis;
    }
};

ExperimentSpec parse_spec(const std::string& text, const std::string& origin) {
    ExperimentSpec spec;
    spec.topology.jammers.clear();

    bool kind_seen = false;
    bool market_prices_seen = false;
    bool market_exponents_seen = false;
    AxisOverride axes[2];

    std::istringstream stream(text);
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        std::string_view sv(raw);
        if (const std::size_t hash = sv.find('#'); hash != std::string_view::npos)
            sv = sv.substr(0, hash);
        sv = trim(sv);
        if (sv.empty()) continue;

        const std::size_t eq = sv.find('=');
        if (eq == std::string_view::npos) fail(origin, line, "expected 'key = value'");
        const std::string key(trim(sv.substr(0, eq)));
        const std::string_view value = trim(sv.substr(eq + 1));
        if (value.empty()) fail(origin, line, "missing value for '" + key + "'");

        if (key == "experiment") {
            bool found = false;
            for (const KindName& entry : kKindNames) {
                if (value == entry.name) {
                    spec.kind = entry.kind;
                    found = true;
                    break;
                }
            }
            if (!found) fail(origin, line, "unknown experiment '" + std::string(value) + "'");
            kind_seen = true;
        } else if (key == "seed") {
            spec.seed = parse_u64(value, origin, line);
        } else if (key == "fading") {
            if (value == "rayleigh") spec.fading = Fading::rayleigh;
            else if (value == "unit") spec.fading = Fading::unit;
            else fail(origin, line, "fading must be 'rayleigh' or 'unit'");
        } else if (key == "config.noise_power") {
            spec.config.noise_power = parse_double(value, origin, line);
        } else if (key == "config.bandwidth") {
            spec.config.bandwidth = parse_double(value, origin, line);
        } else if (key == "config.power_cap") {
            spec.config.power_cap = parse_double(value, origin, line);
        } else if (key == "config.pathloss_exponent") {
            spec.config.pathloss_exponent = parse_double(value, origin, line);
        } else if (key == "config.rate_gain") {
            spec.config.rate_gain = parse_double(value, origin, line);
        } else if (key == "topology.source1") {
            spec.topology.source1 = parse_position(value, origin, line);
        } else if (key == "topology.source2") {
            spec.topology.source2 = parse_position(value, origin, line);
        } else if (key == "topology.relay") {
            spec.topology.relay = parse_position(value, origin, line);
        } else if (key == "topology.jammer") {
            spec.topology.jammers.push_back(parse_position(value, origin, line));
        } else if (key.rfind("sweep", 0) == 0) {
            std::size_t axis_index = 0;
            std::string_view rest(key);
            rest.remove_prefix(5);
            if (rest.rfind("2.", 0) == 0) {
                axis_index = 1;
                rest.remove_prefix(2);
            } else if (rest.rfind(".", 0) == 0) {
                rest.remove_prefix(1);
            } else {
                fail(origin, line, "unknown key '" + key + "'");
            }
            AxisOverride& axis = axes[axis_index];
            if (rest == "variable") axis.variable = std::string(value);
            else if (rest == "min") axis.min = parse_double(value, origin, line);
            else if (rest == "max") axis.max = parse_double(value, origin, line);
            else if (rest == "steps") axis.steps = parse_int(value, origin, line);
            else if (rest == "scale") {
                if (value == "linear") axis.scale = AxisScale::linear;
                else if (value == "log") axis.scale = AxisScale::log;
                else fail(origin, line, "scale must be 'linear' or 'log'");
            } else {
                fail(origin, line, "unknown key '" + key + "'");
            }
        } else if (key == "market.prices") {
            spec.market_defaults.prices = parse_list(value, origin, line);
            market_prices_seen = true;
        } else if (key == "market.cost_exponents") {
            spec.market_defaults.cost_exponents = parse_list(value, origin, line);
            market_exponents_seen = true;
        } else if (key == "game.damping") {
            spec.game.damping = parse_double(value, origin, line);
        } else if (key == "game.tol") {
            spec.game.tol = parse_double(value, origin, line);
        } else if (key == "game.max_iterations") {
            spec.game.max_iterations = parse_int(value, origin, line);
        } else if (key == "game.inner_tol") {
            spec.game.inner_tol = parse_double(value, origin, line);
        } else if (key == "game.inner_max_cycles") {
            spec.game.inner_max_cycles = parse_int(value, origin, line);
        } else if (key == "game.verify_equilibrium") {
            spec.game.verify_equilibrium = parse_bool(value, origin, line);
        } else if (key == "game.require_convergence") {
            spec.require_convergence = parse_bool(value, origin, line);
        } else if (key == "mc.draws") {
            spec.mc_draws = parse_int(value, origin, line);
        } else {
            fail(origin, line, "unknown key '" + key + "'");
        }
    }

    if (!kind_seen) throw SpecError(origin + ": missing 'experiment' key");

    const std::vector<SweepAxis> defaults = default_axes(spec);
    if (axes[1].any() && defaults.size() < 2)
        throw SpecError(origin + ": " + experiment_name(spec.kind) + " has no second sweep axis");
    spec.sweep.clear();
    for (std::size_t i = 0; i < defaults.size(); ++i) spec.sweep.push_back(axes[i].apply(defaults[i]));

    const std::size_t pool = spec.topology.jammers.size();
    if (!market_prices_seen) spec.market_defaults.prices.assign(pool, 1.0);
    if (!market_exponents_seen) spec.market_defaults.cost_exponents.assign(pool, 1.0);

    try {
        validate_spec(spec);
    } catch (const SpecError& err) {
        throw SpecError(origin + ": " + err.what());
    }
    return spec;
}

ExperimentSpec load_spec(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw SpecError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_spec(buffer.str(), path);
}

std::string serialize_spec(const ExperimentSpec& spec) {
    std::ostringstream out;
    out << "experiment = " << experiment_name(spec.kind) << '\n';
    out << "seed = " << spec.seed << '\n';
    out << "fading = " << (spec.fading == Fading::rayleigh ? "rayleigh" : "unit") << '\n';
    out << "config.noise_power = " << format_double(spec.config.noise_power) << '\n';
    out << "config.bandwidth = " << format_double(spec.config.bandwidth) << '\n';
    out << "config.power_cap = " << format_double(spec.config.power_cap) << '\n';
    out << "config.pathloss_exponent = " << format_double(spec.config.pathloss_exponent) << '\n';
    out << "config.rate_gain = " << format_double(spec.config.rate_gain) << '\n';
    auto position = [&](const char* key, const NodePosition& p) {
        out << key << " = " << format_double(p.x) << ' ' << format_double(p.y) << '\n';
    };
    position("topology.source1", spec.topology.source1);
    position("topology.source2", spec.topology.source2);
    position("topology.relay", spec.topology.relay);
    for (const NodePosition& jammer : spec.topology.jammers) position("topology.jammer", jammer);
    for (std::size_t i = 0; i < spec.sweep.size(); ++i) {
        const std::string prefix = i == 0 ? "sweep." : "sweep2.";
        const SweepAxis& axis = spec.sweep[i];
        out << prefix << "variable = " << axis.variable << '\n';
        out << prefix << "min = " << format_double(axis.min) << '\n';
        out << prefix << "max = " << format_double(axis.max) << '\n';
        out << prefix << "steps = " << axis.steps << '\n';
        out << prefix << "scale = " << (axis.scale == AxisScale::log ? "log" : "linear") << '\n';
    }
    if (!spec.market_defaults.prices.empty()) {
        out << "market.prices = " << format_list(spec.market_defaults.prices) << '\n';
        out << "market.cost_exponents = " << format_list(spec.market_defaults.cost_exponents)
            << '\n';
    }
    out << "game.damping = " << format_double(spec.game.damping) << '\n';
    out << "game.tol = " << format_double(spec.game.tol) << '\n';
    out << "game.max_iterations = " << spec.game.max_iterations << '\n';
    out << "game.inner_tol = " << format_double(spec.game.inner_tol) << '\n';
    out << "game.inner_max_cycles = " << spec.game.inner_max_cycles << '\n';
    out << "game.verify_equilibrium = " << (spec.game.verify_equilibrium ? "true" : "false")
        << '\n';
    out << "game.require_convergence = " << (spec.require_convergence ? "true" : "false") << '\n';
    out << "mc.draws = " << spec.mc_draws << '\n';
    return out.str();
}

}  // namespace twr
