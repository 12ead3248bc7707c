#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

#include "qdc/capacity.hpp"
#include "qdc/errors.hpp"
#include "qdc/hamiltonian.hpp"
#include "qdc/params.hpp"

namespace qdc {

/// Default axis windows. Coupling axes start above zero so the
/// zero-field, zero-coupling corner never produces an all-zero operator.
inline constexpr double kDefaultJMin = 0.05;
inline constexpr double kDefaultJMax = 4.0;
inline constexpr double kDefaultAlphaMin = 0.05;
inline constexpr double kDefaultAlphaMax = 2.0;
inline constexpr double kDefaultGammaMin = 0.0;
inline constexpr double kDefaultGammaMax = 1.0;

enum class SweepMode {
    grid_j_alpha,
    line_j,
    grid_gamma_alpha,
    field_average_line,
};

inline std::string sweep_mode_name(SweepMode mode) {
    switch (mode) {
        case SweepMode::grid_j_alpha: return "grid_j_alpha";
        case SweepMode::line_j: return "line_j";
        case SweepMode::grid_gamma_alpha: return "grid_gamma_alpha";
        case SweepMode::field_average_line: return "field_average_line";
    }
    throw ContractViolation("sweep_mode_name: unhandled mode");
}

inline SweepMode sweep_mode_from_name(std::string_view name) {
    if (name == "grid_j_alpha") return SweepMode::grid_j_alpha;
    if (name == "line_j") return SweepMode::line_j;
    if (name == "grid_gamma_alpha") return SweepMode::grid_gamma_alpha;
    if (name == "field_average_line") return SweepMode::field_average_line;
    throw ConfigError("mode: unknown value '" + std::string(name) + "'");
}

/// Inclusive endpoint grid: steps evenly spaced values from start to stop.
struct SweepRange {
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
};

/// Full description of one sweep. `ranges` holds the swept axes keyed by
/// parameter name (j, alpha, gamma); `fixed` holds the remaining
/// parameters. A missing fixed `h` means every point is averaged over
/// the transverse-field grid h_i = i / m_field_samples.
struct SweepConfig {
    int n_sites = 10;
    SweepMode mode = SweepMode::grid_j_alpha;
    std::map<std::string, double> fixed;
    std::map<std::string, SweepRange> ranges;
    std::string output_path;
    int parallel_workers = 1;
    int m_field_samples = 100;
};

/// Swept axis names in row-major order: the first entry is the
/// outermost (slowest varying) axis of the emitted record list.
inline std::vector<std::string> swept_axes(const SweepConfig& config) {
    switch (config.mode) {
        case SweepMode::grid_j_alpha: return {"j", "alpha"};
        case SweepMode::line_j: return {"j"};
        case SweepMode::grid_gamma_alpha: return {"gamma", "alpha"};
        case SweepMode::field_average_line: {
            std::vector<std::string> axes;
            for (const auto& [key, range] : config.ranges) axes.push_back(key);
            return axes;
        }
    }
    throw ContractViolation("swept_axes: unhandled mode");
}

/// True when the records of this sweep average the multiport rate over
/// the transverse-field grid instead of using one fixed field value.
inline bool field_averaged(const SweepConfig& config) {
    return config.mode == SweepMode::field_average_line ||
           config.fixed.count("h") == 0;
}

inline void validate_config(const SweepConfig& config) {
    if (config.n_sites < 3 || config.n_sites > kMaxDenseSites) {
        throw ConfigError("n_sites: must be between 3 and " +
                          std::to_string(kMaxDenseSites));
    }
    if (config.parallel_workers < 1) {
        throw ConfigError("parallel_workers: must be at least 1");
    }
    if (config.m_field_samples < 1) {
        throw ConfigError("m_field_samples: must be at least 1");
    }

    std::vector<std::string> axes;
    if (config.mode == SweepMode::field_average_line) {
        if (config.fixed.count("h")) {
            throw ConfigError("fixed.h: not allowed when averaging over the field");
        }
        for (const auto& [key, range] : config.ranges) {
            if (key != "j" && key != "alpha" && key != "gamma") {
                throw ConfigError("ranges." + key + ": not a sweepable axis");
            }
            axes.push_back(key);
        }
        if (axes.size() != 1) {
            throw ConfigError("ranges: field-averaged line needs exactly one swept axis");
        }
    } else {
        axes = swept_axes(config);
        for (const std::string& axis : axes) {
            if (config.ranges.count(axis) == 0) {
                throw ConfigError("ranges." + axis + ": missing");
            }
        }
        for (const auto& [key, range] : config.ranges) {
            if (std::find(axes.begin(), axes.end(), key) == axes.end()) {
                throw ConfigError("ranges." + key + ": not swept in this mode");
            }
        }
    }
    for (const auto& [key, range] : config.ranges) {
        if (range.steps < 2) {
            throw ConfigError("ranges." + key + ".steps: need at least 2");
        }
        if (!std::isfinite(range.start) || !std::isfinite(range.stop)) {
            throw ConfigError("ranges." + key + ": start and stop must be finite");
        }
    }
    for (const char* name : {"j", "alpha", "gamma"}) {
        const std::string axis(name);
        const bool swept = std::find(axes.begin(), axes.end(), axis) != axes.end();
        const bool present = config.fixed.count(axis) != 0;
        if (swept && present) {
            throw ConfigError("fixed." + axis + ": also listed as a swept range");
        }
        if (!swept && !present) {
            throw ConfigError("fixed." + axis + ": missing");
        }
    }
    for (const auto& [key, value] : config.fixed) {
        if (key != "j" && key != "alpha" && key != "gamma" && key != "h") {
            throw ConfigError("fixed." + key + ": unknown parameter name");
        }
        if (!std::isfinite(value)) {
            throw ConfigError("fixed." + key + ": must be finite");
        }
    }
}

/// Evenly spaced values with both endpoints exact.
inline std::vector<double> grid_values(const SweepRange& range) {
    if (range.steps < 2) {
        throw InputError("grid_values: need at least 2 steps");
    }
    std::vector<double> values(static_cast<std::size_t>(range.steps));
    const double width = range.stop - range.start;
    for (int i = 0; i < range.steps; ++i) {
        values[static_cast<std::size_t>(i)] =
            range.start + width * static_cast<double>(i) /
                              static_cast<double>(range.steps - 1);
    }
    values.back() = range.stop;
    return values;
}

namespace detail {

inline void set_axis(SpinChainParams& params, const std::string& axis, double value) {
    if (axis == "j") {
        params.j = value;
    } else if (axis == "alpha") {
        params.alpha = value;
    } else if (axis == "gamma") {
        params.gamma = value;
    } else if (axis == "h") {
        params.h = value;
    } else {
        throw ConfigError(axis + ": unknown parameter name");
    }
}

/// Row-major point list of a validated config. Points hold the fixed
/// values plus the swept axis values; the field of averaged sweeps is
/// left at zero and filled in per sample.
struct SweepPlan {
    std::vector<SpinChainParams> points;
    bool averaged = false;
};

inline SweepPlan build_plan(const SweepConfig& config) {
    SweepPlan plan;
    plan.averaged = field_averaged(config);

    SpinChainParams base;
    base.n_sites = config.n_sites;
    base.j = 0.0;
    base.alpha = 0.0;
    base.gamma = 0.0;
    base.h = 0.0;
    for (const auto& [key, value] : config.fixed) set_axis(base, key, value);

    const std::vector<std::string> axes = swept_axes(config);
    std::vector<std::vector<double>> values;
    std::size_t total = 1;
    for (const std::string& axis : axes) {
        values.push_back(grid_values(config.ranges.at(axis)));
        total *= values.back().size();
    }

    plan.points.reserve(total);
    for (std::size_t p = 0; p < total; ++p) {
        SpinChainParams params = base;
        std::size_t rem = p;
        for (std::size_t a = axes.size(); a-- > 0;) {
            set_axis(params, axes[a], values[a][rem % values[a].size()]);
            rem /= values[a].size();
        }
        plan.points.push_back(params);
    }
    return plan;
}

} // namespace detail

/// capacity_record that never throws: any failure yields a record with
/// `failed` set, NaN rates, and the error text in `diagnostic`.
inline CapacityRecord compute_point(const SpinChainParams& params,
                                    double degeneracy_tol = kDefaultDegeneracyTol) {
    try {
        return capacity_record(params, degeneracy_tol);
    } catch (const std::exception& err) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        CapacityRecord rec;
        rec.params = params;
        rec.c_single_nn = nan;
        rec.c_multiport = nan;
        rec.c_exclusion = nan;
        rec.classical_capacity =
            params.n_sites >= 2
                ? classical_capacity(
                      multiport_channel(params.n_sites, params.n_sites))
                : nan;
        rec.failed = true;
        rec.diagnostic = err.what();
        return rec;
    }
}

/// Runs every point of the config and returns the records in row-major
/// order over the swept axes. Tasks are independent; with more than one
/// worker they run on a thread pool and land in preallocated slots, so
/// the result is identical for every worker count. Failed points are
/// returned as failed records, never as exceptions.
inline std::vector<CapacityRecord> run_sweep(const SweepConfig& config) {
    validate_config(config);
    const detail::SweepPlan plan = detail::build_plan(config);
    const std::size_t n_points = plan.points.size();
    const std::size_t m = static_cast<std::size_t>(config.m_field_samples);
    const std::size_t n_tasks = plan.averaged ? n_points * m : n_points;

    std::vector<CapacityRecord> slots(n_tasks);
    auto run_task = [&](std::size_t task) {
        SpinChainParams params;
        if (plan.averaged) {
            params = plan.points[task / m];
            params.h = static_cast<double>(task % m + 1) / static_cast<double>(m);
        } else {
            params = plan.points[task];
        }
        slots[task] = compute_point(params);
    };

    const std::size_t workers =
        std::min(static_cast<std::size_t>(config.parallel_workers), n_tasks);
    if (workers <= 1) {
        for (std::size_t task = 0; task < n_tasks; ++task) run_task(task);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t task = next.fetch_add(1);
                    if (task >= n_tasks) return;
                    run_task(task);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    if (!plan.averaged) return slots;

    std::vector<CapacityRecord> records;
    records.reserve(n_points);
    for (std::size_t p = 0; p < n_points; ++p) {
        const std::vector<CapacityRecord> samples(
            slots.begin() + static_cast<std::ptrdiff_t>(p * m),
            slots.begin() + static_cast<std::ptrdiff_t>((p + 1) * m));
        records.push_back(reduce_field_samples(plan.points[p], samples));
    }
    return records;
}

/// Locale-independent rendering with 12 significant digits; non-finite
/// values render as nan/inf.
inline std::string format_csv_float(double value) {
    std::array<char, 48> buffer;
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(),
                                      value, std::chars_format::general, 12);
    if (result.ec != std::errc{}) {
        throw ContractViolation("format_csv_float: conversion failed");
    }
    return std::string(buffer.data(), result.ptr);
}

inline const char* kCsvHeader =
    "n_sites,J,alpha,gamma,h,c_single_nn,c_multiport,c_exclusion,"
    "c_classical,npt_nn,ground_degenerate,avg_mode";

/// Writes the records as UTF-8 CSV, one row per record in list order.
/// Output is byte-identical for identical record lists.
inline void emit_csv(const std::vector<CapacityRecord>& records,
                     const std::string& path) {
    if (records.empty()) {
        throw InputError("emit_csv: no records");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("emit_csv: cannot open " + path);
    }
    std::string line;
    line.reserve(256);
    out << kCsvHeader << '\n';
    for (const CapacityRecord& rec : records) {
        line.clear();
        line += std::to_string(rec.params.n_sites);
        line += ',';
        line += format_csv_float(rec.params.j);
        line += ',';
        line += format_csv_float(rec.params.alpha);
        line += ',';
        line += format_csv_float(rec.params.gamma);
        line += ',';
        line += format_csv_float(rec.params.h);
        line += ',';
        line += format_csv_float(rec.c_single_nn);
        line += ',';
        line += format_csv_float(rec.c_multiport);
        line += ',';
        line += format_csv_float(rec.c_exclusion);
        line += ',';
        line += format_csv_float(rec.classical_capacity);
        line += ',';
        line += rec.npt_nn ? '1' : '0';
        line += ',';
        line += rec.ground_degenerate ? '1' : '0';
        line += ',';
        line += rec.averaged ? '1' : '0';
        line += '\n';
        out << line;
    }
    out.flush();
    if (!out) {
        throw IoError("emit_csv: write failed for " + path);
    }
}

namespace detail {

inline std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return std::string();
    const auto last = text.find_last_not_of(" \t\r");
    return std::string(text.substr(first, last - first + 1));
}

} // namespace detail

/// Reads a flat key=value file. `#` starts a comment, blank lines are
/// skipped, whitespace around keys and values is trimmed, and a repeated
/// key keeps its last value.
inline std::map<std::string, std::string> read_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path);
    }
    std::map<std::string, std::string> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = detail::trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key=value");
        }
        const std::string key = detail::trim(stripped.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        entries[key] = detail::trim(stripped.substr(eq + 1));
    }
    return entries;
}

inline double parse_double(const std::string& text, const std::string& field) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw ConfigError(field + ": not a number '" + text + "'");
    }
    return value;
}

inline int parse_int(const std::string& text, const std::string& field) {
    int value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw ConfigError(field + ": not an integer '" + text + "'");
    }
    return value;
}

/// Preset configs behind the `reproduce` command, one entry per panel.
/// Records of all panels are meant to be concatenated into one CSV, in
/// the returned order.
inline std::vector<SweepConfig> figure_configs(int figure) {
    constexpr int kGridSteps = 20;
    constexpr int kLineSteps = 40;
    const SweepRange j_grid{kDefaultJMin, kDefaultJMax, kGridSteps};
    const SweepRange j_line{kDefaultJMin, kDefaultJMax, kLineSteps};
    const SweepRange alpha_grid{kDefaultAlphaMin, kDefaultAlphaMax, kGridSteps};
    const SweepRange gamma_grid{kDefaultGammaMin, kDefaultGammaMax, kGridSteps};

    std::vector<SweepConfig> configs;
    switch (figure) {
        case 1:
        case 2: {
            // Rate surfaces over (J, alpha), one panel per (gamma, h) pair.
            for (const auto& [gamma, h] : std::vector<std::pair<double, double>>{
                     {0.0, 0.4}, {0.0, 0.9}, {0.7, 0.4}, {0.7, 0.9}}) {
                SweepConfig config;
                config.mode = SweepMode::grid_j_alpha;
                config.ranges = {{"j", j_grid}, {"alpha", alpha_grid}};
                config.fixed = {{"gamma", gamma}, {"h", h}};
                configs.push_back(config);
            }
            return configs;
        }
        case 3: {
            // Multiport rate against J, panels over (alpha, gamma), one
            // line per field strength.
            for (const auto& [alpha, gamma] : std::vector<std::pair<double, double>>{
                     {0.6, 0.0}, {0.6, 0.7}, {1.8, 0.0}, {1.8, 0.7}}) {
                for (const double h : {0.0, 0.4, 0.9}) {
                    SweepConfig config;
                    config.mode = SweepMode::line_j;
                    config.ranges = {{"j", j_line}};
                    config.fixed = {{"alpha", alpha}, {"gamma", gamma}, {"h", h}};
                    configs.push_back(config);
                }
            }
            return configs;
        }
        case 4: {
            // Field-averaged rate against J, panels over gamma, one line
            // per alpha.
            for (const double gamma : {0.0, 0.7}) {
                for (const double alpha : {0.6, 1.8}) {
                    SweepConfig config;
                    config.mode = SweepMode::field_average_line;
                    config.ranges = {{"j", j_line}};
                    config.fixed = {{"alpha", alpha}, {"gamma", gamma}};
                    configs.push_back(config);
                }
            }
            return configs;
        }
        case 5: {
            // Field-averaged rate surface over (gamma, alpha) at fixed J.
            SweepConfig config;
            config.mode = SweepMode::grid_gamma_alpha;
            config.ranges = {{"gamma", gamma_grid}, {"alpha", alpha_grid}};
            config.fixed = {{"j", 0.6}};
            configs.push_back(config);
            return configs;
        }
        default:
            throw ConfigError("figure: must be between 1 and 5");
    }
}

} // namespace qdc
