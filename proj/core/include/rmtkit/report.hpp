#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rmtkit/cluster.hpp"
#include "rmtkit/config.hpp"
#include "rmtkit/matrix.hpp"
#include "rmtkit/panel.hpp"
#include "rmtkit/rmt.hpp"
#include "rmtkit/rolling.hpp"

namespace rmtkit {

/// FNV-1a over raw bytes; used to fingerprint config and data files.
std::uint64_t fnv1a64(std::string_view bytes);

/// Reproducibility fingerprint carried in every emitted report.
struct Provenance {
    std::string tool_version;
    std::uint64_t master_seed = 0;
    std::string config_hash;     // hex fnv1a64 of the config file bytes
    std::string data_hash;       // hex fnv1a64 of the data file bytes
    std::string combined_hash;   // hex fnv1a64 over both digests
};

Provenance make_provenance(std::string_view config_bytes, std::string_view data_bytes,
                           std::uint64_t master_seed);

/// Everything a command needs, loaded once: raw bytes (for hashing), the
/// parsed config, and the level/growth panels. The data path in the config
/// is resolved relative to the config file's directory.
struct AnalysisInputs {
    AnalysisConfig config;
    std::string config_bytes;
    std::string data_bytes;
    LevelPanel panel;
    GrowthPanel growth;
    Provenance provenance;
};

AnalysisInputs load_inputs(const std::string& config_path);

/// Period spectrum analysis: window selection, correlation, spectrum,
/// noise-bound classification against a fresh or cached null ensemble.
struct PeriodAnalysis {
    std::string period_name;
    PeriodSpec spec;
    std::vector<std::string> countries;
    int observations = 0;
    SpectrumReport spectrum;
    NullSimResult null_result;
    Dendrogram dendrogram;   // clustering of the same window, configured mode
};

/// Runs the analysis for one configured period. When cache_dir is non-empty
/// the null ensemble is loaded from it if a matching cache file exists and is
/// written there otherwise.
PeriodAnalysis analyze_period(const AnalysisInputs& inputs, const std::string& period_name,
                              const std::string& cache_dir = "", int threads = 1);

std::string period_report_json(const PeriodAnalysis& analysis, const Provenance& provenance);
std::string spectrum_csv(const PeriodAnalysis& analysis);
std::string period_summary_text(const PeriodAnalysis& analysis);

/// Clustering outputs for one period.
struct ClusterOutput {
    Dendrogram dendrogram;
    std::string json;
    std::string newick;
    std::string svg;
};

ClusterOutput cluster_period(const AnalysisInputs& inputs, const std::string& period_name,
                             ClusteringMode mode);

/// Rolling scan outputs.
struct RollingOutput {
    std::vector<RollingPoint> points;
    std::vector<std::string> warnings;
    std::string csv;
    std::string svg;
};

RollingOutput run_rolling(const AnalysisInputs& inputs, bool skip_invalid);

/// Null-ensemble run plus its cache document and a printable summary.
struct NullSimOutput {
    NullSimResult result;
    std::string cache_json;
    std::string summary_text;
};

NullSimOutput run_nullsim(const NullSimConfig& config, int threads = 1);

/// Plain file helpers shared by the CLI and tests.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

} // namespace rmtkit
