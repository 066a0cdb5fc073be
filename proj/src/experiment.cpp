#include "twr/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "twr/central.hpp"
#include "twr/nojam.hpp"
#include "twr/rng.hpp"

namespace twr {

namespace {

const char* case_name(ChannelCase c) {
    switch (c) {
        case ChannelCase::g1_greater: return "g1_greater";
        case ChannelCase::g2_greater: return "g2_greater";
        case ChannelCase::equal: return "equal";
    }
    return "unknown";
}

std::string format_cell(double v) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::string format_short(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

// Evaluates all points, parallel when OpenMP is enabled, and surfaces the
// first failure annotated with its sweep position. Each point writes only
// its own slots, so thread count never changes the result.
void for_each_point(std::size_t count, bool parallel, const std::function<void(std::size_t)>& body,
                    const std::function<std::string(std::size_t)>& describe) {
    std::vector<std::string> errors(count);
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(i)] = e.what();
            }
        }
    } else
#endif
    {
        (void)parallel;
        for (std::size_t i = 0; i < count; ++i) {
            try {
                body(i);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    }
    for (std::size_t i = 0; i < count; ++i)
        if (!errors[i].empty()) throw NumericalError(describe(i) + ": " + errors[i]);
}

ResultTable make_table(const ExperimentSpec& spec, std::vector<std::string> columns,
                       std::size_t rows) {
    ResultTable table;
    table.columns = std::move(columns);
    table.row_count = rows;
    table.cells.assign(rows * table.columns.size(), 0.0);
    table.metadata.emplace_back(kToolVersion);
    table.metadata.emplace_back("seed: " + std::to_string(spec.seed));
    std::istringstream spec_lines(serialize_spec(spec));
    std::string line;
    while (std::getline(spec_lines, line)) table.metadata.emplace_back("spec: " + line);
    return table;
}

void set_row(ResultTable& table, std::size_t row, std::initializer_list<double> values) {
    std::size_t col = 0;
    for (double v : values) table.cells[row * table.columns.size() + col++] = v;
}

PowerAllocation capped_powers(const SystemConfig& config, std::size_t jammer_count) {
    return PowerAllocation{config.power_cap, config.power_cap, config.power_cap,
                           std::vector<double>(jammer_count, 0.0)};
}

bool solo_reaches_joint_optimum(const ChannelGains& gains, const PowerAllocation& source_powers,
                                const SystemConfig& config, std::size_t jammer,
                                double joint_secrecy) {
    ChannelGains solo;
    solo.g_s1r = gains.g_s1r;
    solo.g_s2r = gains.g_s2r;
    solo.g_jr = {gains.g_jr[jammer]};
    const CentralOptimum one = centralized_optimize(solo, source_powers, config);
    const double tol = 1e-9 * std::max(1.0, std::abs(joint_secrecy));
    return one.pj_opt[0] > 0.0 && one.secrecy_sum >= joint_secrecy - tol;
}

ResultTable run_nojam_surface(const ExperimentSpec& spec, const RunOptions& options) {
    const ChannelGains gains = sample_gains(spec.topology, spec.config, spec.seed, spec.fading);
    const SweepAxis& axis1 = spec.sweep[0];
    const SweepAxis& axis2 = spec.sweep[1];
    const std::size_t rows = static_cast<std::size_t>(axis1.steps) * axis2.steps;

    ResultTable table = make_table(spec, {"p1", "p2", "c1s", "c2s", "secrecy_sum"}, rows);
    table.metadata.emplace_back("gains: g_s1r=" + format_short(gains.g_s1r) +
                                " g_s2r=" + format_short(gains.g_s2r));
    const NoJamOptimum opt = optimize_no_jammer(gains, spec.config, /*best_effort=*/true);
    table.metadata.emplace_back(
        "nojam_optimum: p1=" + format_short(opt.p1_opt) + " p2=" + format_short(opt.p2_opt) +
        " pr=" + format_short(opt.pr_opt) + " secrecy_sum=" + format_short(opt.secrecy_sum) +
        " case=" + case_name(opt.case_tag) + (opt.feasible ? "" : " infeasible"));

    for_each_point(
        rows, options.parallel,
        [&](std::size_t idx) {
            const int i1 = static_cast<int>(idx) / axis2.steps;
            const int i2 = static_cast<int>(idx) % axis2.steps;
            const PowerAllocation powers{axis1.at(i1), axis2.at(i2), spec.config.power_cap, {}};
            const RateReport report = secrecy_rates(powers, gains, spec.config);
            set_row(table, idx,
                    {powers.p1, powers.p2, report.c1s, report.c2s, report.secrecy_sum()});
        },
        [&](std::size_t idx) {
            return "p1=" + format_short(axis1.at(static_cast<int>(idx) / axis2.steps)) +
                   " p2=" + format_short(axis2.at(static_cast<int>(idx) % axis2.steps));
        });
    return table;
}

ResultTable run_secrecy_vs_jampower(const ExperimentSpec& spec, const RunOptions& options) {
    const ChannelGains gains = sample_gains(spec.topology, spec.config, spec.seed, spec.fading);
    const SweepAxis& axis = spec.sweep[0];
    ResultTable table =
        make_table(spec, {"jam_power", "c1s", "c2s", "secrecy_sum"}, axis.steps);

    for_each_point(
        axis.steps, options.parallel,
        [&](std::size_t idx) {
            PowerAllocation powers = capped_powers(spec.config, 1);
            powers.pj[0] = axis.at(static_cast<int>(idx));
            const RateReport report = secrecy_rates(powers, gains, spec.config);
            set_row(table, idx, {powers.pj[0], report.c1s, report.c2s, report.secrecy_sum()});
        },
        [&](std::size_t idx) { return "jam_power=" + format_short(axis.at(static_cast<int>(idx))); });
    return table;
}

ResultTable run_demand_vs_price(const ExperimentSpec& spec, const RunOptions& options) {
    const ChannelGains gains = sample_gains(spec.topology, spec.config, spec.seed, spec.fading);
    const SweepAxis& axis = spec.sweep[0];
    ResultTable table = make_table(
        spec, {"price", "bought_power", "secrecy_sum", "source_utility"}, axis.steps);

    for_each_point(
        axis.steps, options.parallel,
        [&](std::size_t idx) {
            Market market = spec.market_defaults;
            market.prices[0] = axis.at(static_cast<int>(idx));
            PowerAllocation powers = capped_powers(spec.config, 1);
            powers.pj[0] = source_best_response(0, gains, market, powers, spec.config);
            const RateReport report = secrecy_rates(powers, gains, spec.config);
            set_row(table, idx, {market.prices[0], powers.pj[0], report.secrecy_sum(),
                                 source_utility(powers, gains, market, spec.config)});
        },
        [&](std::size_t idx) { return "price=" + format_short(axis.at(static_cast<int>(idx))); });
    return table;
}

ResultTable run_two_jammer_price_grid(const ExperimentSpec& spec, const RunOptions& options) {
    const ChannelGains gains = sample_gains(spec.topology, spec.config, spec.seed, spec.fading);
    const SweepAxis& axis1 = spec.sweep[0];
    const SweepAxis& axis2 = spec.sweep[1];
    const std::size_t rows = static_cast<std::size_t>(axis1.steps) * axis2.steps;
    ResultTable table = make_table(spec,
                                   {"price1", "price2", "pj1", "pj2", "secrecy_sum",
                                    "source_utility", "jammer1_utility", "jammer2_utility"},
                                   rows);

    for_each_point(
        rows, options.parallel,
        [&](std::size_t idx) {
            Market market = spec.market_defaults;
            market.prices[0] = axis1.at(static_cast<int>(idx) / axis2.steps);
            market.prices[1] = axis2.at(static_cast<int>(idx) % axis2.steps);
            const PowerAllocation settled = source_best_responses(
                gains, market, capped_powers(spec.config, 2), spec.config, spec.game);
            const RateReport report = secrecy_rates(settled, gains, spec.config);
            set_row(table, idx,
                    {market.prices[0], market.prices[1], settled.pj[0], settled.pj[1],
                     report.secrecy_sum(), source_utility(settled, gains, market, spec.config),
                     jammer_utility(0, market, settled.pj[0]),
                     jammer_utility(1, market, settled.pj[1])});
        },
        [&](std::size_t idx) {
            return "price1=" + format_short(axis1.at(static_cast<int>(idx) / axis2.steps)) +
                   " price2=" + format_short(axis2.at(static_cast<int>(idx) % axis2.steps));
        });
    return table;
}

ResultTable run_rate_vs_num_jammers(const ExperimentSpec& spec, const RunOptions& options) {
    const SweepAxis& axis = spec.sweep[0];
    const int points = axis.steps;
    // unit fading draws are all identical, one is enough
    const int draws = spec.fading == Fading::unit ? 1 : spec.mc_draws;
    const std::size_t items = static_cast<std::size_t>(points) * draws;

    std::vector<double> secrecy(items, 0.0);
    std::vector<double> sufficient(items, 0.0);

    for_each_point(
        items, options.parallel,
        [&](std::size_t idx) {
            const int point = static_cast<int>(idx) / draws;
            const int draw = static_cast<int>(idx) % draws;
            const int n = static_cast<int>(axis.at(point));

            Topology prefix = spec.topology;
            prefix.jammers.resize(n);
            const ChannelGains gains =
                sample_gains(prefix, spec.config, point_seed(spec.seed, draw), spec.fading);
            const PowerAllocation base = capped_powers(spec.config, n);
            const CentralOptimum central = centralized_optimize(gains, base, spec.config);
            secrecy[idx] = central.secrecy_sum;

            int count = 0;
            for (int j = 0; j < n; ++j)
                if (solo_reaches_joint_optimum(gains, base, spec.config, j, central.secrecy_sum))
                    ++count;
            sufficient[idx] = count;
        },
        [&](std::size_t idx) {
            return "n_jammers=" + format_short(axis.at(static_cast<int>(idx) / draws)) +
                   " draw=" + std::to_string(static_cast<int>(idx) % draws);
        });

    ResultTable table =
        make_table(spec, {"n_jammers", "mean_secrecy_sum", "mean_sufficient_count"}, points);
    for (int p = 0; p < points; ++p) {
        double sum = 0.0;
        double suff = 0.0;
        for (int d = 0; d < draws; ++d) {
            sum += secrecy[static_cast<std::size_t>(p) * draws + d];
            suff += sufficient[static_cast<std::size_t>(p) * draws + d];
        }
        set_row(table, p, {axis.at(p), sum / draws, suff / draws});
    }
    return table;
}

ResultTable run_central_vs_distributed(const ExperimentSpec& spec, const RunOptions& options) {
    const SweepAxis& axis = spec.sweep[0];
    const int points = axis.steps;
    const int draws = spec.fading == Fading::unit ? 1 : spec.mc_draws;
    const std::size_t items = static_cast<std::size_t>(points) * draws;
    const std::size_t n = spec.topology.jammers.size();

    std::vector<double> central_val(items, 0.0);
    std::vector<double> distributed_val(items, 0.0);
    std::vector<char> converged(items, 0);

    for_each_point(
        items, options.parallel,
        [&](std::size_t idx) {
            const int point = static_cast<int>(idx) / draws;
            const int draw = static_cast<int>(idx) % draws;

            SystemConfig config = spec.config;
            config.rate_gain = axis.at(point);
            // channels depend on the draw only, so every rate-gain point
            // sees the same fading realizations
            const ChannelGains gains =
                sample_gains(spec.topology, config, point_seed(spec.seed, draw), spec.fading);
            const PowerAllocation base = capped_powers(config, n);

            central_val[idx] = centralized_optimize(gains, base, config).secrecy_sum;
            const GameTrace trace =
                run_stackelberg(gains, config, spec.market_defaults, base, spec.game);
            converged[idx] = trace.converged ? 1 : 0;
            if (trace.converged) {
                PowerAllocation eq = base;
                eq.pj = trace.final_powers();
                distributed_val[idx] = secrecy_rates(eq, gains, config).secrecy_sum();
            }
        },
        [&](std::size_t idx) {
            return "rate_gain=" + format_short(axis.at(static_cast<int>(idx) / draws)) +
                   " draw=" + std::to_string(static_cast<int>(idx) % draws);
        });

    // A draw is excluded everywhere if its game failed to converge at any
    // rate gain, so every row averages the same channel set and the gap
    // column is comparable across the sweep.
    std::vector<char> usable(draws, 1);
    for (int p = 0; p < points; ++p) {
        for (int d = 0; d < draws; ++d) {
            const std::size_t idx = static_cast<std::size_t>(p) * draws + d;
            if (converged[idx]) continue;
            if (spec.require_convergence)
                throw NumericalError("game did not converge at rate_gain=" +
                                     format_short(axis.at(p)) + " draw=" + std::to_string(d));
            if (usable[d] && !options.quiet)
                std::fprintf(stderr, "excluding draw %d (non-converged at rate_gain=%s)\n", d,
                             format_short(axis.at(p)).c_str());
            usable[d] = 0;
        }
    }
    int used = 0;
    for (int d = 0; d < draws; ++d) used += usable[d];

    ResultTable table = make_table(spec,
                                   {"rate_gain", "central_mean", "distributed_mean",
                                    "gap_rel_mean", "n_draws", "n_converged", "n_used"},
                                   points);
    for (int p = 0; p < points; ++p) {
        double central_sum = 0.0;
        double distributed_sum = 0.0;
        double gap_sum = 0.0;
        int ok = 0;
        for (int d = 0; d < draws; ++d) {
            const std::size_t idx = static_cast<std::size_t>(p) * draws + d;
            if (converged[idx]) ++ok;
            if (!usable[d]) continue;
            central_sum += central_val[idx];
            distributed_sum += distributed_val[idx];
            if (central_val[idx] > 0.0)
                gap_sum += (central_val[idx] - distributed_val[idx]) / central_val[idx];
        }
        const double denom = used > 0 ? used : 1.0;
        set_row(table, p,
                {axis.at(p), central_sum / denom, distributed_sum / denom, gap_sum / denom,
                 static_cast<double>(draws), static_cast<double>(ok),
                 static_cast<double>(used)});
    }
    return table;
}

}  // namespace

std::uint64_t point_seed(std::uint64_t master, std::uint64_t index) {
    return derive_seed(master, index);
}

bool jammer_sufficiently_effective(const ChannelGains& gains,
                                   const PowerAllocation& source_powers,
                                   const SystemConfig& config, std::size_t jammer) {
    if (jammer >= gains.jammer_count())
        throw std::invalid_argument("jammer_sufficiently_effective: index out of range");
    const CentralOptimum all = centralized_optimize(gains, source_powers, config);
    return solo_reaches_joint_optimum(gains, source_powers, config, jammer, all.secrecy_sum);
}

ResultTable run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
    // re-parse the canonical form so hand-built specs get the same
    // validation as loaded ones
    const ExperimentSpec checked = parse_spec(serialize_spec(spec), "spec");

    const auto start = std::chrono::steady_clock::now();
    if (!options.quiet)
        std::fprintf(stderr, "running %s (seed %llu)\n", experiment_name(checked.kind),
                     static_cast<unsigned long long>(checked.seed));

    ResultTable table;
    switch (checked.kind) {
        case ExperimentKind::nojam_surface: table = run_nojam_surface(checked, options); break;
        case ExperimentKind::secrecy_vs_jampower:
            table = run_secrecy_vs_jampower(checked, options);
            break;
        case ExperimentKind::demand_vs_price: table = run_demand_vs_price(checked, options); break;
        case ExperimentKind::two_jammer_price_grid:
            table = run_two_jammer_price_grid(checked, options);
            break;
        case ExperimentKind::rate_vs_num_jammers:
            table = run_rate_vs_num_jammers(checked, options);
            break;
        case ExperimentKind::central_vs_distributed:
            table = run_central_vs_distributed(checked, options);
            break;
    }

    if (!options.quiet) {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::fprintf(stderr, "done: %zu row(s) in %.2f s\n", table.row_count, seconds);
    }
    return table;
}

std::string to_csv(const ResultTable& table) {
    std::string out;
    for (const std::string& line : table.metadata) {
        out += "# ";
        out += line;
        out += '\n';
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < table.row_count; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out += ',';
            out += format_cell(table.at(r, c));
        }
        out += '\n';
    }
    return out;
}

}  // namespace twr
