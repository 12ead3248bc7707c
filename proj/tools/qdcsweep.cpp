// Command-line front end for the sweep engine: four sweep modes plus
// built-in figure presets, all emitting one CSV per invocation.
//
// Exit codes: 0 on success, 1 on configuration or I/O errors, 2 when at
// least one sweep point failed numerically (the CSV is still written,
// with failed rows carrying NaN rates).

#include <cstdlib>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdc/qdc.hpp"

namespace {

/// Option values plus their CLI11 handles for one subcommand. The
/// handles let the resolver tell apart "flag given" from "default", so
/// config-file values fill only the gaps the command line left.
struct CliValues {
    int n = 10;
    double j = 0.6;
    double alpha = 0.6;
    double gamma = 0.0;
    double h = 0.4;
    int steps = 20;
    std::string out;
    int workers = 1;
    int m_samples = 100;
    std::string config_path;

    CLI::Option* n_opt = nullptr;
    CLI::Option* j_opt = nullptr;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* gamma_opt = nullptr;
    CLI::Option* h_opt = nullptr;
    CLI::Option* steps_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* workers_opt = nullptr;
    CLI::Option* m_opt = nullptr;
    CLI::Option* config_opt = nullptr;

    std::set<std::string> file_keys;
};

struct AxisFlags {
    bool j = false;
    bool alpha = false;
    bool gamma = false;
    bool h = false;
};

CliValues& add_common(CLI::App* cmd, std::vector<std::unique_ptr<CliValues>>& storage,
                      const AxisFlags& axes, int default_steps,
                      bool with_config = true) {
    storage.push_back(std::make_unique<CliValues>());
    CliValues& cli = *storage.back();
    cli.steps = default_steps;

    // Long-form help only: the default -h short flag would collide with
    // the --h field option.
    cmd->set_help_flag("--help", "print this help message and exit");

    cli.n_opt = cmd->add_option("--n", cli.n, "chain length (3 to 14)")
                    ->capture_default_str();
    if (axes.j) {
        cli.j_opt = cmd->add_option("--j", cli.j, "two-site coupling strength")
                        ->capture_default_str();
        cli.file_keys.insert("j");
    }
    if (axes.alpha) {
        cli.alpha_opt = cmd->add_option("--alpha", cli.alpha,
                                        "chiral three-site coupling strength")
                            ->capture_default_str();
        cli.file_keys.insert("alpha");
    }
    if (axes.gamma) {
        cli.gamma_opt = cmd->add_option("--gamma", cli.gamma, "coupling anisotropy")
                            ->capture_default_str();
        cli.file_keys.insert("gamma");
    }
    if (axes.h) {
        cli.h_opt = cmd->add_option(
            "--h", cli.h,
            "transverse field; omit to average each point over the field grid");
        cli.file_keys.insert("h");
    }
    cli.steps_opt = cmd->add_option("--steps", cli.steps, "points per swept axis")
                        ->capture_default_str();
    cli.out_opt = cmd->add_option("--out", cli.out, "output CSV path");
    cli.workers_opt = cmd->add_option(
        "--workers", cli.workers,
        "worker threads (QDC_WORKERS applies when this flag is absent)");
    cli.m_opt = cmd->add_option("--m-field-samples", cli.m_samples,
                                "field grid size for averaged points")
                    ->capture_default_str();
    if (with_config) {
        cli.config_opt = cmd->add_option(
            "--config", cli.config_path,
            "key=value file supplying defaults for flags not given here");
    }

    cli.file_keys.insert({"n", "steps", "out", "workers", "m-field-samples"});
    return cli;
}

std::map<std::string, std::string> file_entries(const CliValues& cli) {
    if (cli.config_opt == nullptr || cli.config_opt->count() == 0) return {};
    const auto entries = qdc::read_key_values(cli.config_path);
    for (const auto& [key, value] : entries) {
        if (cli.file_keys.count(key) == 0) {
            throw qdc::ConfigError("config key '" + key +
                                   "': unknown for this command");
        }
    }
    return entries;
}

double resolve_double(const CLI::Option* opt, double current,
                      const std::map<std::string, std::string>& file,
                      const std::string& key) {
    if (opt != nullptr && opt->count() > 0) return current;
    const auto it = file.find(key);
    if (it != file.end()) return qdc::parse_double(it->second, key);
    return current;
}

int resolve_int(const CLI::Option* opt, int current,
                const std::map<std::string, std::string>& file,
                const std::string& key) {
    if (opt != nullptr && opt->count() > 0) return current;
    const auto it = file.find(key);
    if (it != file.end()) return qdc::parse_int(it->second, key);
    return current;
}

std::string resolve_string(const CLI::Option* opt, const std::string& current,
                           const std::map<std::string, std::string>& file,
                           const std::string& key) {
    if (opt != nullptr && opt->count() > 0) return current;
    const auto it = file.find(key);
    if (it != file.end()) return it->second;
    return current;
}

bool resolved_present(const CLI::Option* opt,
                      const std::map<std::string, std::string>& file,
                      const std::string& key) {
    return (opt != nullptr && opt->count() > 0) || file.count(key) > 0;
}

int resolve_workers(const CliValues& cli,
                    const std::map<std::string, std::string>& file) {
    if (cli.workers_opt != nullptr && cli.workers_opt->count() > 0) {
        return cli.workers;
    }
    const auto it = file.find("workers");
    if (it != file.end()) return qdc::parse_int(it->second, "workers");
    if (const char* env = std::getenv("QDC_WORKERS")) {
        return qdc::parse_int(env, "QDC_WORKERS");
    }
    return 1;
}

qdc::SweepConfig config_from(const CliValues& cli, qdc::SweepMode mode) {
    const auto file = file_entries(cli);

    qdc::SweepConfig config;
    config.mode = mode;
    config.n_sites = resolve_int(cli.n_opt, cli.n, file, "n");
    config.parallel_workers = resolve_workers(cli, file);
    config.m_field_samples = resolve_int(cli.m_opt, cli.m_samples, file, "m-field-samples");
    config.output_path = resolve_string(cli.out_opt, cli.out, file, "out");
    if (config.output_path.empty()) {
        throw qdc::ConfigError("out: missing (pass --out or set out= in the config file)");
    }

    const int steps = resolve_int(cli.steps_opt, cli.steps, file, "steps");
    const qdc::SweepRange j_range{qdc::kDefaultJMin, qdc::kDefaultJMax, steps};
    const qdc::SweepRange alpha_range{qdc::kDefaultAlphaMin, qdc::kDefaultAlphaMax, steps};
    const qdc::SweepRange gamma_range{qdc::kDefaultGammaMin, qdc::kDefaultGammaMax, steps};

    const bool h_given = resolved_present(cli.h_opt, file, "h");
    switch (mode) {
        case qdc::SweepMode::grid_j_alpha:
            config.ranges = {{"j", j_range}, {"alpha", alpha_range}};
            config.fixed["gamma"] = resolve_double(cli.gamma_opt, cli.gamma, file, "gamma");
            break;
        case qdc::SweepMode::line_j:
            config.ranges = {{"j", j_range}};
            config.fixed["alpha"] = resolve_double(cli.alpha_opt, cli.alpha, file, "alpha");
            config.fixed["gamma"] = resolve_double(cli.gamma_opt, cli.gamma, file, "gamma");
            break;
        case qdc::SweepMode::grid_gamma_alpha:
            config.ranges = {{"gamma", gamma_range}, {"alpha", alpha_range}};
            config.fixed["j"] = resolve_double(cli.j_opt, cli.j, file, "j");
            break;
        case qdc::SweepMode::field_average_line:
            config.ranges = {{"j", j_range}};
            config.fixed["alpha"] = resolve_double(cli.alpha_opt, cli.alpha, file, "alpha");
            config.fixed["gamma"] = resolve_double(cli.gamma_opt, cli.gamma, file, "gamma");
            break;
    }
    if (mode != qdc::SweepMode::field_average_line && h_given) {
        config.fixed["h"] = resolve_double(cli.h_opt, cli.h, file, "h");
    }
    return config;
}

int parse_figure(const std::string& text) {
    std::string digits = text;
    if (digits.rfind("fig", 0) == 0) digits = digits.substr(3);
    return qdc::parse_int(digits, "figure");
}

std::size_t config_points(const qdc::SweepConfig& config) {
    std::size_t total = 1;
    for (const auto& [key, range] : config.ranges) {
        total *= static_cast<std::size_t>(range.steps);
    }
    return total;
}

int execute(const std::vector<qdc::SweepConfig>& configs,
            const std::string& out_path) {
    std::vector<qdc::CapacityRecord> records;
    for (const qdc::SweepConfig& config : configs) {
        qdc::validate_config(config);
        std::cerr << "running " << qdc::sweep_mode_name(config.mode) << ": "
                  << config_points(config) << " points";
        if (qdc::field_averaged(config)) {
            std::cerr << " x " << config.m_field_samples << " field samples";
        }
        std::cerr << '\n';
        std::vector<qdc::CapacityRecord> part = qdc::run_sweep(config);
        records.insert(records.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
    }
    qdc::emit_csv(records, out_path);

    std::size_t failures = 0;
    for (const qdc::CapacityRecord& rec : records) {
        if (!rec.failed) continue;
        ++failures;
        std::cerr << "failed point: n=" << rec.params.n_sites
                  << " j=" << rec.params.j << " alpha=" << rec.params.alpha
                  << " gamma=" << rec.params.gamma << " h=" << rec.params.h
                  << ": " << rec.diagnostic << '\n';
    }
    std::cout << "wrote " << records.size() << " records to " << out_path;
    if (failures > 0) std::cout << " (" << failures << " failed)";
    std::cout << '\n';
    return failures > 0 ? 2 : 0;
}

} // namespace

int main(int argc, char** argv) {
    // One BLAS thread per worker keeps every eigensolve deterministic;
    // parallelism comes from the sweep worker pool instead.
    setenv("OPENBLAS_NUM_THREADS", "1", 1);

    CLI::App app{"Ground-state dense coding rate sweeps for a spin-1/2 ring "
                 "with two-site and chiral three-site couplings in a "
                 "transverse field"};
    app.require_subcommand(1);
    std::vector<std::unique_ptr<CliValues>> storage;

    CLI::App* grid_ja = app.add_subcommand(
        "grid-ja", "sweep a (J, alpha) grid at fixed gamma, fixed or averaged field");
    CliValues& grid_ja_cli =
        add_common(grid_ja, storage, {.j = false, .alpha = false, .gamma = true, .h = true}, 20);

    CLI::App* line_j = app.add_subcommand(
        "line-j", "sweep J at fixed alpha and gamma, fixed or averaged field");
    CliValues& line_j_cli =
        add_common(line_j, storage, {.j = false, .alpha = true, .gamma = true, .h = true}, 40);

    CLI::App* grid_ga = app.add_subcommand(
        "grid-ga", "sweep a (gamma, alpha) grid at fixed J, fixed or averaged field");
    CliValues& grid_ga_cli =
        add_common(grid_ga, storage, {.j = true, .alpha = false, .gamma = false, .h = true}, 20);

    CLI::App* avg_h = app.add_subcommand(
        "avg-h", "sweep J with every point averaged over the field grid");
    CliValues& avg_h_cli =
        add_common(avg_h, storage, {.j = false, .alpha = true, .gamma = true, .h = false}, 40);

    CLI::App* reproduce = app.add_subcommand(
        "reproduce", "run a built-in figure preset (fig1 to fig5)");
    std::string figure_arg;
    reproduce->add_option("figure", figure_arg, "preset name, fig1 to fig5")
        ->required();
    CliValues& reproduce_cli = add_common(
        reproduce, storage, {.j = false, .alpha = false, .gamma = false, .h = false},
        0, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (grid_ja->parsed()) {
            const qdc::SweepConfig config =
                config_from(grid_ja_cli, qdc::SweepMode::grid_j_alpha);
            return execute({config}, config.output_path);
        }
        if (line_j->parsed()) {
            const qdc::SweepConfig config =
                config_from(line_j_cli, qdc::SweepMode::line_j);
            return execute({config}, config.output_path);
        }
        if (grid_ga->parsed()) {
            const qdc::SweepConfig config =
                config_from(grid_ga_cli, qdc::SweepMode::grid_gamma_alpha);
            return execute({config}, config.output_path);
        }
        if (avg_h->parsed()) {
            const qdc::SweepConfig config =
                config_from(avg_h_cli, qdc::SweepMode::field_average_line);
            return execute({config}, config.output_path);
        }
        if (reproduce->parsed()) {
            const std::map<std::string, std::string> no_file;
            std::vector<qdc::SweepConfig> configs =
                qdc::figure_configs(parse_figure(figure_arg));
            const std::string out = reproduce_cli.out;
            if (out.empty()) {
                throw qdc::ConfigError("out: missing (pass --out)");
            }
            for (qdc::SweepConfig& config : configs) {
                config.n_sites = resolve_int(reproduce_cli.n_opt, reproduce_cli.n,
                                             no_file, "n");
                config.parallel_workers = resolve_workers(reproduce_cli, no_file);
                config.m_field_samples = resolve_int(
                    reproduce_cli.m_opt, reproduce_cli.m_samples, no_file, "m-field-samples");
                if (reproduce_cli.steps_opt->count() > 0) {
                    for (auto& [key, range] : config.ranges) {
                        range.steps = reproduce_cli.steps;
                    }
                }
            }
            return execute(configs, out);
        }
        throw qdc::ConfigError("no command selected");
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
