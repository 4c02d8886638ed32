#include "rmtkit/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rmtkit/svg.hpp"
#include "rmtkit/version.hpp"
#include "text_util.hpp"

namespace rmtkit {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

namespace {

std::string hash_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace

Provenance make_provenance(std::string_view config_bytes, std::string_view data_bytes,
                           std::uint64_t master_seed) {
    Provenance p;
    p.tool_version = kVersion;
    p.master_seed = master_seed;
    p.config_hash = hash_hex(fnv1a64(config_bytes));
    p.data_hash = hash_hex(fnv1a64(data_bytes));
    p.combined_hash = hash_hex(fnv1a64(p.config_hash + ":" + p.data_hash));
    return p;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << content;
}

AnalysisInputs load_inputs(const std::string& config_path) {
    AnalysisInputs inputs;
    try {
        inputs.config_bytes = read_text_file(config_path);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
    inputs.config = parse_analysis_config(inputs.config_bytes);

    std::filesystem::path data_path(inputs.config.data_path);
    if (data_path.is_relative())
        data_path = std::filesystem::path(config_path).parent_path() / data_path;
    inputs.data_bytes = read_text_file(data_path.string());
    inputs.panel = parse_panel_csv(inputs.data_bytes);
    inputs.growth = growth_rates(inputs.panel);
    inputs.provenance =
        make_provenance(inputs.config_bytes, inputs.data_bytes, inputs.config.master_seed);
    return inputs;
}

namespace {

DistanceMatrix period_distances(const CorrelationMatrix& corr, ClusteringMode mode) {
    return mode == ClusteringMode::CorrRows ? corr_rows_to_distances(corr)
                                            : corr_to_metric_distance(corr);
}

std::string classification_word(const EigenFlags& f) {
    if (f.above_theoretical && f.above_simulated) return "above theoretical+simulated";
    if (f.above_theoretical) return "above theoretical";
    if (f.within_noise_band) return "within noise";
    return "below noise band";
}

nlohmann::ordered_json provenance_json(const Provenance& p) {
    return {{"tool_version", p.tool_version},
            {"master_seed", p.master_seed},
            {"config_hash", p.config_hash},
            {"data_hash", p.data_hash},
            {"combined_hash", p.combined_hash}};
}

} // namespace

PeriodAnalysis analyze_period(const AnalysisInputs& inputs, const std::string& period_name,
                              const std::string& cache_dir, int threads) {
    PeriodAnalysis analysis;
    analysis.period_name = period_name;
    analysis.spec = inputs.config.period(period_name);

    GrowthPanel window;
    try {
        window = select_window(inputs.growth, analysis.spec, /*allow_gaps=*/false);
    } catch (const DataError& e) {
        throw DataError("period '" + period_name + "': " + e.what());
    }
    analysis.countries = window.countries;
    analysis.observations = window.year_count();

    auto corr = correlation_matrix(window);
    auto decomp = eigen_symmetric(corr.base);

    NullSimConfig null_config;
    null_config.n = window.country_count();
    null_config.t = window.year_count();
    null_config.trials = inputs.config.null_trials;
    null_config.master_seed = inputs.config.master_seed;

    bool have_null = false;
    if (!cache_dir.empty()) {
        std::filesystem::create_directories(cache_dir);
        std::string cache_path =
            (std::filesystem::path(cache_dir) / null_cache_filename(null_config)).string();
        if (auto cached = load_null_cache(cache_path, null_config)) {
            analysis.null_result = std::move(*cached);
            have_null = true;
        } else {
            analysis.null_result = simulate_null(null_config, threads);
            save_null_cache(cache_path, analysis.null_result);
            have_null = true;
        }
    }
    if (!have_null) analysis.null_result = simulate_null(null_config, threads);

    analysis.spectrum = classify_spectrum(decomp, analysis.null_result.theoretical,
                                          &analysis.null_result);
    analysis.dendrogram =
        agnes_average(period_distances(corr, inputs.config.clustering_mode));
    return analysis;
}

std::string period_report_json(const PeriodAnalysis& analysis, const Provenance& provenance) {
    nlohmann::ordered_json doc;
    doc["period"] = analysis.period_name;
    doc["window"] = {{"start", analysis.spec.start_year}, {"end", analysis.spec.end_year}};
    doc["countries"] = analysis.countries;
    doc["observations"] = analysis.observations;

    const SpectrumReport& s = analysis.spectrum;
    doc["eigenvalues"] = s.eigenvalues;
    doc["ipr"] = s.iprs;
    doc["participation_numbers"] = s.participation_numbers;
    doc["info_fraction"] = s.information_fraction;
    doc["bounds"] = {{"q", s.bounds.q},
                     {"sigma2", s.bounds.sigma2},
                     {"lambda_min", s.bounds.lambda_min},
                     {"lambda_max", s.bounds.lambda_max}};
    doc["flags"] = nlohmann::ordered_json::array();
    for (const auto& f : s.flags)
        doc["flags"].push_back({{"above_theoretical", f.above_theoretical},
                                {"above_simulated", f.above_simulated},
                                {"within_noise_band", f.within_noise_band}});

    const NullSimResult& null_result = analysis.null_result;
    doc["null"] = {{"trials", null_result.config.trials},
                   {"master_seed", null_result.config.master_seed},
                   {"empirical_max", null_result.empirical_max},
                   {"count_above_theoretical", null_result.count_above_theoretical},
                   {"quantiles",
                    {{"p50", sample_quantile(null_result.max_eigenvalues, 0.50)},
                     {"p95", sample_quantile(null_result.max_eigenvalues, 0.95)},
                     {"p99", sample_quantile(null_result.max_eigenvalues, 0.99)}}}};

    doc["dendrogram"] = {{"labels", analysis.dendrogram.labels},
                         {"merges", nlohmann::ordered_json::array()}};
    for (const auto& m : analysis.dendrogram.merges)
        doc["dendrogram"]["merges"].push_back(
            {{"left", m.left}, {"right", m.right}, {"height", m.height}});

    doc["provenance"] = provenance_json(provenance);
    return doc.dump(2) + "\n";
}

std::string spectrum_csv(const PeriodAnalysis& analysis) {
    std::string out =
        "rank,eigenvalue,ipr,participation_number,above_theoretical,above_simulated,"
        "within_noise_band\n";
    const SpectrumReport& s = analysis.spectrum;
    for (size_t k = 0; k < s.eigenvalues.size(); ++k) {
        out += std::to_string(k + 1);
        out += ',';
        out += format_double(s.eigenvalues[k]);
        out += ',';
        out += format_double(s.iprs[k]);
        out += ',';
        out += format_double(s.participation_numbers[k]);
        out += ',';
        out += s.flags[k].above_theoretical ? "1" : "0";
        out += ',';
        out += s.flags[k].above_simulated ? "1" : "0";
        out += ',';
        out += s.flags[k].within_noise_band ? "1" : "0";
        out += '\n';
    }
    return out;
}

std::string period_summary_text(const PeriodAnalysis& analysis) {
    const SpectrumReport& s = analysis.spectrum;
    const NullSimResult& null_result = analysis.null_result;
    std::string out;
    out += "period " + analysis.period_name + ": " + std::to_string(analysis.spec.start_year) +
           "-" + std::to_string(analysis.spec.end_year) + ", " +
           std::to_string(analysis.countries.size()) + " countries, " +
           std::to_string(analysis.observations) + " observations\n";
    out += "noise bounds: q=" + format_fixed(s.bounds.q, 4) + ", lambda in [" +
           format_fixed(s.bounds.lambda_min, 4) + ", " + format_fixed(s.bounds.lambda_max, 4) +
           "]\n";
    out += "null ensemble: " + std::to_string(null_result.config.trials) + " trials, seed " +
           std::to_string(null_result.config.master_seed) + ", max " +
           format_fixed(null_result.empirical_max, 4) + ", " +
           std::to_string(null_result.count_above_theoretical) + " above theoretical\n";
    out += "info fraction lambda_1/N = " + format_fixed(s.information_fraction, 4) + "\n";
    out += "rank  eigenvalue  part.number  classification\n";
    for (size_t k = 0; k < s.eigenvalues.size(); ++k) {
        char line[128];
        std::snprintf(line, sizeof(line), "%4zu  %10.4f  %11.2f  %s\n", k + 1, s.eigenvalues[k],
                      s.participation_numbers[k], classification_word(s.flags[k]).c_str());
        out += line;
    }
    return out;
}

ClusterOutput cluster_period(const AnalysisInputs& inputs, const std::string& period_name,
                             ClusteringMode mode) {
    const PeriodSpec& spec = inputs.config.period(period_name);
    GrowthPanel window;
    try {
        window = select_window(inputs.growth, spec, /*allow_gaps=*/false);
    } catch (const DataError& e) {
        throw DataError("period '" + period_name + "': " + e.what());
    }
    auto corr = correlation_matrix(window);

    ClusterOutput out;
    out.dendrogram = agnes_average(period_distances(corr, mode));
    out.json = dendrogram_json(out.dendrogram);
    out.newick = to_newick(out.dendrogram) + "\n";
    out.svg = svg_dendrogram(out.dendrogram,
                             period_name + " " + std::to_string(spec.start_year) + "-" +
                                 std::to_string(spec.end_year) + " average-linkage clustering (" +
                                 clustering_mode_name(mode) + ")");
    return out;
}

RollingOutput run_rolling(const AnalysisInputs& inputs, bool skip_invalid) {
    if (!inputs.config.rolling)
        throw ConfigError("config has no [rolling] section");
    const RollingConfig& rolling = *inputs.config.rolling;

    RollingOutput out;
    out.points = rolling_info_fraction(inputs.growth, rolling, skip_invalid, &out.warnings);
    out.csv = rolling_csv(out.points);
    int n_countries = rolling.countries.empty() ? inputs.growth.country_count()
                                                : static_cast<int>(rolling.countries.size());
    out.svg = svg_rolling(out.points, n_countries,
                          "rolling info fraction, window " + std::to_string(rolling.window_len) +
                              ", " + std::to_string(rolling.start_year) + "-" +
                              std::to_string(rolling.end_year) + " (" +
                              std::to_string(n_countries) + " countries)");
    return out;
}

NullSimOutput run_nullsim(const NullSimConfig& config, int threads) {
    NullSimOutput out;
    out.result = simulate_null(config, threads);
    out.cache_json = null_cache_json(out.result);

    const NullSimResult& r = out.result;
    out.summary_text =
        "null ensemble n=" + std::to_string(config.n) + " t=" + std::to_string(config.t) +
        " trials=" + std::to_string(config.trials) + " seed=" +
        std::to_string(config.master_seed) + "\n" +
        "theoretical lambda_max " + format_fixed(r.theoretical.lambda_max, 4) +
        ", empirical max " + format_fixed(r.empirical_max, 4) + "\n" +
        std::to_string(r.count_above_theoretical) + " of " + std::to_string(config.trials) +
        " trials above the theoretical bound\n" +
        "quantiles: p50 " + format_fixed(sample_quantile(r.max_eigenvalues, 0.50), 4) +
        ", p95 " + format_fixed(sample_quantile(r.max_eigenvalues, 0.95), 4) +
        ", p99 " + format_fixed(sample_quantile(r.max_eigenvalues, 0.99), 4) + "\n";
    return out;
}

} // namespace rmtkit
