#include "rmtkit/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "rng.hpp"

namespace rmtkit {

MpBounds mp_bounds_from_q(double q) {
    if (!(q >= 1.0)) throw DataError("aspect ratio q must be >= 1, got " + std::to_string(q));
    MpBounds b;
    b.q = q;
    b.sigma2 = 1.0;
    double inv_sqrt_q = 1.0 / std::sqrt(q);
    b.lambda_max = b.sigma2 * (1.0 + inv_sqrt_q) * (1.0 + inv_sqrt_q);
    b.lambda_min = b.sigma2 * (1.0 - inv_sqrt_q) * (1.0 - inv_sqrt_q);
    return b;
}

MpBounds mp_bounds(int n, int t) {
    if (n < 2) throw DataError("need at least 2 series for noise bounds");
    if (t < n)
        throw DataError("need t >= n (q >= 1), got n=" + std::to_string(n) +
                        " t=" + std::to_string(t));
    return mp_bounds_from_q(static_cast<double>(t) / static_cast<double>(n));
}

double mp_density(double lambda, const MpBounds& bounds) {
    if (lambda <= bounds.lambda_min || lambda >= bounds.lambda_max) return 0.0;
    double radicand = (bounds.lambda_max - lambda) * (lambda - bounds.lambda_min);
    return bounds.q / (2.0 * 3.141592653589793238462643383279502884) * std::sqrt(radicand) /
           lambda;
}

namespace {

void check_null_config(const NullSimConfig& config) {
    if (config.n < 2) throw DataError("null simulation needs n >= 2");
    if (config.t < config.n) throw DataError("null simulation needs t >= n");
    if (config.trials < 1) throw DataError("null simulation needs at least 1 trial");
}

CorrelationMatrix null_trial_correlation(const NullSimConfig& config, int trial) {
    NormalSampler normal(mix_seed(config.master_seed, static_cast<std::uint64_t>(trial)));
    RealGrid grid(config.t, config.n);
    for (int r = 0; r < config.t; ++r)
        for (int c = 0; c < config.n; ++c) grid.at(r, c) = normal();
    return correlation_from_grid(standardize_columns(grid), {});
}

} // namespace

EigenDecomposition null_trial_spectrum(const NullSimConfig& config, int trial) {
    check_null_config(config);
    return eigen_symmetric(null_trial_correlation(config, trial).base);
}

double null_trial_max_eigenvalue(const NullSimConfig& config, int trial) {
    auto decomp = null_trial_spectrum(config, trial);
    // trace conservation: each trial's eigenvalues must sum to n
    double sum = std::accumulate(decomp.eigenvalues.begin(), decomp.eigenvalues.end(), 0.0);
    if (std::abs(sum - config.n) > 1e-8)
        throw DataError("null trial spectrum sums to " + std::to_string(sum) +
                        " instead of n=" + std::to_string(config.n));
    return decomp.eigenvalues.front();
}

NullSimResult simulate_null(const NullSimConfig& config, int threads) {
    check_null_config(config);
    NullSimResult result;
    result.config = config;
    result.theoretical = mp_bounds(config.n, config.t);
    result.max_eigenvalues.assign(config.trials, 0.0);

    int workers = std::max(1, threads);
    if (workers == 1) {
        for (int k = 0; k < config.trials; ++k)
            result.max_eigenvalues[k] = null_trial_max_eigenvalue(config, k);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int k = w; k < config.trials; k += workers)
                    result.max_eigenvalues[k] = null_trial_max_eigenvalue(config, k);
            });
        }
        for (auto& th : pool) th.join();
    }

    result.empirical_max =
        *std::max_element(result.max_eigenvalues.begin(), result.max_eigenvalues.end());
    result.count_above_theoretical = static_cast<int>(
        std::count_if(result.max_eigenvalues.begin(), result.max_eigenvalues.end(),
                      [&](double v) { return v > result.theoretical.lambda_max; }));
    return result;
}

double sample_quantile(std::vector<double> values, double p) {
    if (values.empty()) throw DataError("quantile of empty sample");
    p = std::clamp(p, 0.0, 1.0);
    std::sort(values.begin(), values.end());
    double h = (values.size() - 1) * p;
    size_t lo = static_cast<size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double ipr(std::span<const double> v) {
    if (v.empty()) throw DataError("ipr of empty vector");
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-8)
        throw DataError("ipr requires a unit vector, got norm " + std::to_string(std::sqrt(norm2)));
    double sum4 = 0.0;
    for (double x : v) sum4 += x * x * x * x;
    return sum4;
}

double participation_number(std::span<const double> v) { return 1.0 / ipr(v); }

double info_fraction(const EigenDecomposition& decomp) {
    if (decomp.eigenvalues.empty()) throw DataError("empty decomposition");
    return decomp.eigenvalues.front() / static_cast<double>(decomp.n());
}

SpectrumReport classify_spectrum(const EigenDecomposition& decomp, const MpBounds& bounds,
                                 const NullSimResult* null_result) {
    if (decomp.eigenvalues.empty()) throw DataError("empty decomposition");
    if (null_result) {
        if (null_result->config.n != decomp.n())
            throw DataError("null ensemble is for n=" + std::to_string(null_result->config.n) +
                            " but spectrum has n=" + std::to_string(decomp.n()));
        if (std::abs(null_result->theoretical.lambda_max - bounds.lambda_max) > 1e-9)
            throw DataError("null ensemble bounds disagree with the supplied bounds");
    }

    SpectrumReport report;
    report.eigenvalues = decomp.eigenvalues;
    report.bounds = bounds;
    if (null_result) report.simulated_max = null_result->empirical_max;
    report.information_fraction = info_fraction(decomp);
    for (int k = 0; k < decomp.n(); ++k) {
        double i = ipr(decomp.eigenvectors[k]);
        report.iprs.push_back(i);
        report.participation_numbers.push_back(1.0 / i);
        EigenFlags f;
        double lambda = decomp.eigenvalues[k];
        f.above_theoretical = lambda > bounds.lambda_max;
        f.above_simulated = null_result && lambda > null_result->empirical_max;
        f.within_noise_band = lambda >= bounds.lambda_min && lambda <= bounds.lambda_max;
        report.flags.push_back(f);
    }
    return report;
}

// ---- null-distribution cache ----

std::string null_cache_filename(const NullSimConfig& config) {
    return "null_n" + std::to_string(config.n) + "_t" + std::to_string(config.t) + "_trials" +
           std::to_string(config.trials) + "_seed" + std::to_string(config.master_seed) + ".json";
}

std::string null_cache_json(const NullSimResult& result) {
    nlohmann::ordered_json doc;
    doc["n"] = result.config.n;
    doc["t"] = result.config.t;
    doc["trials"] = result.config.trials;
    doc["master_seed"] = result.config.master_seed;
    doc["theoretical_lambda_max"] = result.theoretical.lambda_max;
    doc["empirical_max"] = result.empirical_max;
    doc["count_above_theoretical"] = result.count_above_theoretical;
    doc["quantiles"] = {{"p50", sample_quantile(result.max_eigenvalues, 0.50)},
                        {"p95", sample_quantile(result.max_eigenvalues, 0.95)},
                        {"p99", sample_quantile(result.max_eigenvalues, 0.99)}};
    doc["max_eigenvalues"] = result.max_eigenvalues;
    return doc.dump(2) + "\n";
}

void save_null_cache(const std::string& path, const NullSimResult& result) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open '" + tmp + "' for writing");
        out << null_cache_json(result);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw DataError("cannot atomically replace '" + path + "': " + ec.message());
}

std::optional<NullSimResult> load_null_cache(const std::string& path,
                                             const NullSimConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed null cache '" + path + "': " + e.what());
    }
    try {
        NullSimResult result;
        result.config.n = doc.at("n").get<int>();
        result.config.t = doc.at("t").get<int>();
        result.config.trials = doc.at("trials").get<int>();
        result.config.master_seed = doc.at("master_seed").get<std::uint64_t>();
        if (result.config.n != config.n || result.config.t != config.t ||
            result.config.trials != config.trials ||
            result.config.master_seed != config.master_seed)
            return std::nullopt;
        result.theoretical = mp_bounds(result.config.n, result.config.t);
        result.empirical_max = doc.at("empirical_max").get<double>();
        result.count_above_theoretical = doc.at("count_above_theoretical").get<int>();
        result.max_eigenvalues = doc.at("max_eigenvalues").get<std::vector<double>>();
        if (static_cast<int>(result.max_eigenvalues.size()) != result.config.trials)
            throw DataError("null cache '" + path + "' trial list length mismatch");
        return result;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("null cache '" + path + "' is missing fields: " + e.what());
    }
}

} // namespace rmtkit
