#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmtkit/error.hpp"
#include "rmtkit/matrix.hpp"

namespace rmtkit {

/// Support of the limiting eigenvalue density of a random correlation matrix
/// at aspect ratio q = T/N >= 1 and variance sigma2:
///   lambda_max = sigma2 * (1 + 1/sqrt(q))^2
///   lambda_min = sigma2 * (1 - 1/sqrt(q))^2
struct MpBounds {
    double q = 1.0;
    double sigma2 = 1.0;
    double lambda_min = 0.0;
    double lambda_max = 4.0;
};

/// Bounds from an arbitrary aspect ratio q >= 1.
MpBounds mp_bounds_from_q(double q);

/// Bounds for an N-series, T-observation panel. Requires t >= n >= 2.
MpBounds mp_bounds(int n, int t);

/// Limiting eigenvalue density at lambda:
///   (q / 2 pi) * sqrt((lambda_max - lambda)(lambda - lambda_min)) / lambda
/// inside the open support interval, exactly 0 outside and at the endpoints.
double mp_density(double lambda, const MpBounds& bounds);

/// Monte Carlo null ensemble description. Each trial draws a t x n grid of
/// independent standard normals, standardizes columns, forms the correlation
/// matrix and records its largest eigenvalue.
struct NullSimConfig {
    int n = 0;
    int t = 0;
    int trials = 10000;
    std::uint64_t master_seed = 0;
};

struct NullSimResult {
    NullSimConfig config;
    std::vector<double> max_eigenvalues;   // one per trial, in trial order
    double empirical_max = 0.0;
    int count_above_theoretical = 0;       // strict inequality against theoretical.lambda_max
    MpBounds theoretical;
};

/// Largest eigenvalue of the null trial with the given index. Per-trial
/// seeding is counter-based (a stable mix of master_seed and the trial index),
/// so any execution order or worker count reproduces the same value.
double null_trial_max_eigenvalue(const NullSimConfig& config, int trial);

/// Full spectrum of one null trial; the production path keeps only the top of it.
EigenDecomposition null_trial_spectrum(const NullSimConfig& config, int trial);

/// Run the whole ensemble. `threads` is an execution knob only: results are
/// identical for any value of it.
NullSimResult simulate_null(const NullSimConfig& config, int threads = 1);

/// Linear-interpolation quantile of a sample (0 <= p <= 1).
double sample_quantile(std::vector<double> values, double p);

/// Inverse participation ratio of a normalized eigenvector: sum of fourth
/// powers of components, in [1/N, 1]. Requires ||v|| = 1 within 1e-8.
double ipr(std::span<const double> v);

/// Reciprocal of ipr: the effective number of contributing series, in [1, N].
double participation_number(std::span<const double> v);

/// Share of total variance carried by the leading eigenmode: eigenvalues[0] / N.
double info_fraction(const EigenDecomposition& decomp);

/// Classification of one eigenvalue against the noise bounds.
struct EigenFlags {
    bool above_theoretical = false;   // lambda > theoretical lambda_max
    bool above_simulated = false;     // lambda > null empirical max (when a null is given)
    bool within_noise_band = false;   // lambda_min <= lambda <= lambda_max
};

/// Per-spectrum summary: eigenvalues with IPR / participation numbers,
/// the leading-mode information fraction, and noise-band flags.
struct SpectrumReport {
    std::vector<double> eigenvalues;
    std::vector<double> iprs;
    std::vector<double> participation_numbers;
    double information_fraction = 0.0;
    std::vector<EigenFlags> flags;
    MpBounds bounds;
    std::optional<double> simulated_max;
};

/// Flag each eigenvalue against the theoretical bounds and, when provided,
/// the simulated null maximum. Throws DataError when the null ensemble's
/// dimensions do not match the decomposition.
SpectrumReport classify_spectrum(const EigenDecomposition& decomp, const MpBounds& bounds,
                                 const NullSimResult* null_result = nullptr);

/// Cache file name for a null ensemble, stable in the key (n, t, trials, seed).
std::string null_cache_filename(const NullSimConfig& config);

/// Write the ensemble as JSON (atomically: temp file then rename).
void save_null_cache(const std::string& path, const NullSimResult& result);

/// Parsed JSON form of save_null_cache's output.
std::string null_cache_json(const NullSimResult& result);

/// Read a cache file back; returns nullopt when the file is absent or its
/// key does not match `config`. Throws DataError on a malformed file.
std::optional<NullSimResult> load_null_cache(const std::string& path,
                                             const NullSimConfig& config);

} // namespace rmtkit
