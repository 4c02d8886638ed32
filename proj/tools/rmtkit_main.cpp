// rmtkit: noise filtering for correlation matrices of annual growth panels.
//
// Subcommands: analyze, nullsim, cluster, rolling, gen-synthetic.
// Exit codes: 0 success, 1 data/validation error, 2 config error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmtkit/config.hpp"
#include "rmtkit/report.hpp"
#include "rmtkit/rmt.hpp"
#include "rmtkit/synthetic.hpp"
#include "rmtkit/version.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct CommonOpts {
    std::string config_path;
    std::string period;
    std::string countries;
    std::string mode;
    std::string out_dir = ".";
    std::string format = "json";
    int trials = -1;
    std::int64_t seed = -1;
    int threads = 1;
    bool seed_set = false;
};

rmtkit::AnalysisInputs load_with_overrides(const CommonOpts& opts) {
    rmtkit::AnalysisInputs inputs = rmtkit::load_inputs(opts.config_path);
    if (opts.trials >= 0) {
        if (opts.trials < 1) throw rmtkit::ConfigError("--trials must be positive");
        inputs.config.null_trials = opts.trials;
    }
    if (opts.seed_set) inputs.config.master_seed = static_cast<std::uint64_t>(opts.seed);
    if (!opts.mode.empty())
        inputs.config.clustering_mode = rmtkit::parse_clustering_mode(opts.mode);
    if (!opts.countries.empty()) {
        auto subset = split_commas(opts.countries);
        for (auto& [name, spec] : inputs.config.periods) spec.country_subset = subset;
        if (inputs.config.rolling) inputs.config.rolling->countries = subset;
    }
    inputs.provenance = rmtkit::make_provenance(inputs.config_bytes, inputs.data_bytes,
                                                inputs.config.master_seed);
    return inputs;
}

std::string out_path(const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    return (fs::path(out_dir) / name).string();
}

int cmd_analyze(const CommonOpts& opts) {
    auto inputs = load_with_overrides(opts);
    auto analysis = rmtkit::analyze_period(inputs, opts.period, opts.out_dir, opts.threads);
    std::cout << rmtkit::period_summary_text(analysis);

    if (opts.format == "csv") {
        std::string path = out_path(opts.out_dir, opts.period + "_spectrum.csv");
        rmtkit::write_text_file(path, rmtkit::spectrum_csv(analysis));
        std::cout << "wrote " << path << "\n";
    } else {
        std::string path = out_path(opts.out_dir, opts.period + "_report.json");
        rmtkit::write_text_file(path, rmtkit::period_report_json(analysis, inputs.provenance));
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

int cmd_nullsim(int n, int t, const CommonOpts& opts) {
    rmtkit::NullSimConfig config;
    config.n = n;
    config.t = t;
    config.trials = opts.trials >= 0 ? opts.trials : 10000;
    config.master_seed = opts.seed_set ? static_cast<std::uint64_t>(opts.seed) : 0;
    auto out = rmtkit::run_nullsim(config, opts.threads);
    std::cout << out.summary_text;

    std::string path = out_path(opts.out_dir, rmtkit::null_cache_filename(config));
    rmtkit::save_null_cache(path, out.result);
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_cluster(const CommonOpts& opts) {
    auto inputs = load_with_overrides(opts);
    auto out = rmtkit::cluster_period(inputs, opts.period, inputs.config.clustering_mode);

    std::string base = opts.period + "_dendrogram";
    std::string json_path = out_path(opts.out_dir, base + ".json");
    std::string newick_path = out_path(opts.out_dir, base + ".nwk");
    std::string svg_path = out_path(opts.out_dir, base + ".svg");
    rmtkit::write_text_file(json_path, out.json);
    rmtkit::write_text_file(newick_path, out.newick);
    rmtkit::write_text_file(svg_path, out.svg);
    std::cout << out.newick;
    std::cout << "wrote " << json_path << ", " << newick_path << ", " << svg_path << "\n";
    return 0;
}

int cmd_rolling(const CommonOpts& opts, int window_override, bool skip_invalid) {
    auto inputs = load_with_overrides(opts);
    if (window_override > 0) {
        if (!inputs.config.rolling)
            throw rmtkit::ConfigError("--window given but the config has no [rolling] section");
        inputs.config.rolling->window_len = window_override;
    }
    auto out = rmtkit::run_rolling(inputs, skip_invalid);
    for (const auto& warning : out.warnings) std::cerr << "warning: " << warning << "\n";

    std::string csv_path = out_path(opts.out_dir, "rolling.csv");
    std::string svg_path = out_path(opts.out_dir, "rolling.svg");
    rmtkit::write_text_file(csv_path, out.csv);
    rmtkit::write_text_file(svg_path, out.svg);
    std::cout << out.csv;
    std::cout << "wrote " << csv_path << ", " << svg_path << "\n";
    return 0;
}

struct GenOpts {
    std::string countries;
    std::string loadings;
    double loading = 1.0;
    double noise_sd = 1.0;
    double factor_sd = 1.0;
    double base_level = 100.0;
    int start_year = 0;
    int end_year = 0;
    std::int64_t seed = 0;
    std::string out_file;
};

int cmd_gen_synthetic(const GenOpts& gen, const std::string& out_dir) {
    rmtkit::FactorModelSpec spec;
    spec.countries = split_commas(gen.countries);
    if (gen.loadings.empty()) {
        spec.loadings.assign(spec.countries.size(), gen.loading);
    } else {
        for (const auto& item : split_commas(gen.loadings)) {
            try {
                spec.loadings.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw rmtkit::ConfigError("bad loading value '" + item + "'");
            }
        }
    }
    spec.noise_sd = gen.noise_sd;
    spec.factor_sd = gen.factor_sd;
    spec.base_level = gen.base_level;
    spec.start_year = gen.start_year;
    spec.end_year = gen.end_year;
    spec.seed = static_cast<std::uint64_t>(gen.seed);

    auto panel = rmtkit::gen_synthetic_panel(spec);
    std::string path = gen.out_file.empty() ? out_path(out_dir, "synthetic_panel.csv")
                                            : gen.out_file;
    if (auto parent = fs::path(path).parent_path(); !parent.empty())
        fs::create_directories(parent);
    rmtkit::write_text_file(path, rmtkit::serialize_panel_csv(panel));
    std::cout << "wrote " << path << " (" << panel.country_count() << " countries, levels "
              << panel.years.front() << "-" << panel.years.back() << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-matrix noise filtering for correlation matrices of annual growth panels"};
    app.set_version_flag("--version", std::string("rmtkit ") + rmtkit::kVersion);
    app.require_subcommand(1);

    CommonOpts opts;
    int null_n = 0, null_t = 0;
    int window_override = 0;
    bool skip_invalid = false;
    GenOpts gen;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* config_opt = cmd->add_option("--config", opts.config_path, "analysis config file");
        if (needs_config) config_opt->required();
        cmd->add_option("--out-dir", opts.out_dir, "directory for emitted files");
        cmd->add_option("--seed", opts.seed, "master seed override")
            ->each([&](const std::string&) { opts.seed_set = true; });
        cmd->add_option("--threads", opts.threads, "worker threads for the null ensemble")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* analyze = app.add_subcommand("analyze", "spectrum of one configured period");
    add_common(analyze, true);
    analyze->add_option("--period", opts.period, "period name from the config")->required();
    analyze->add_option("--countries", opts.countries, "comma-separated country subset override");
    analyze->add_option("--trials", opts.trials, "null ensemble trials override");
    analyze->add_option("--mode", opts.mode, "clustering mode override")
        ->check(CLI::IsMember({"corr-rows", "corr-metric"}));
    analyze->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* nullsim = app.add_subcommand("nullsim", "largest-eigenvalue null distribution");
    add_common(nullsim, false);
    nullsim->add_option("--n", null_n, "series count")->required();
    nullsim->add_option("--t", null_t, "observations per series")->required();
    nullsim->add_option("--trials", opts.trials, "number of random trials");

    CLI::App* cluster = app.add_subcommand("cluster", "dendrogram of one configured period");
    add_common(cluster, true);
    cluster->add_option("--period", opts.period, "period name from the config")->required();
    cluster->add_option("--countries", opts.countries, "comma-separated country subset override");
    cluster->add_option("--mode", opts.mode, "clustering mode override")
        ->check(CLI::IsMember({"corr-rows", "corr-metric"}));

    CLI::App* rolling = app.add_subcommand("rolling", "sliding-window info-fraction scan");
    add_common(rolling, true);
    rolling->add_option("--window", window_override, "window length override (years)");
    rolling->add_option("--countries", opts.countries, "comma-separated country subset override");
    rolling->add_flag("--skip-invalid", skip_invalid,
                      "omit windows that straddle exclusions instead of failing");

    CLI::App* gen_cmd = app.add_subcommand("gen-synthetic", "factor-model level panel generator");
    gen_cmd->add_option("--countries", gen.countries, "comma-separated country codes")->required();
    gen_cmd->add_option("--start", gen.start_year, "first growth year")->required();
    gen_cmd->add_option("--end", gen.end_year, "last growth year")->required();
    gen_cmd->add_option("--loadings", gen.loadings, "comma-separated per-country factor loadings");
    gen_cmd->add_option("--loading", gen.loading, "single loading applied to every country");
    gen_cmd->add_option("--noise-sd", gen.noise_sd, "idiosyncratic shock sd (percent)");
    gen_cmd->add_option("--factor-sd", gen.factor_sd, "common factor sd (percent)");
    gen_cmd->add_option("--base", gen.base_level, "level in the year before the first growth year");
    gen_cmd->add_option("--seed", gen.seed, "generator seed");
    gen_cmd->add_option("--out", gen.out_file, "output CSV path");
    gen_cmd->add_option("--out-dir", opts.out_dir, "directory for the default output name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(opts);
        if (app.got_subcommand(nullsim)) return cmd_nullsim(null_n, null_t, opts);
        if (app.got_subcommand(cluster)) return cmd_cluster(opts);
        if (app.got_subcommand(rolling)) return cmd_rolling(opts, window_override, skip_invalid);
        if (app.got_subcommand(gen_cmd)) return cmd_gen_synthetic(gen, opts.out_dir);
    } catch (const rmtkit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const rmtkit::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
