#pragma once

#include "backfrac/config.hpp"
#include "backfrac/forward.hpp"
#include "backfrac/param.hpp"
#include "backfrac/spectral.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace backfrac::harness {

inline constexpr const char* kVersion = "1.0";

enum class Preset { Example1, Example2, Example3 };

std::string preset_name(Preset p);
Preset preset_from_name(const std::string& name);

struct ExperimentConfig {
    Preset preset = Preset::Example1;
    double gamma = 0.5;
    double T = 1.0;
    std::vector<double> noise_levels = {0.1, 0.2, 0.4, 0.8, 1.6, 3.2};
    bool noise_absolute = false;  // false: percent of ||u(T)||, true: absolute L2 norm
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    param::RegConfig reg;
    std::size_t n_fwd = 0;  // forward truncation N_p; 0 = preset default
    std::size_t n_inv = 0;  // inverse truncation N_i; 0 = preset default
    int grid_1d = 201;
    int grid_2d = 101;
    bool analytic_coeffs = true;
    std::vector<double> t_samples = {0.0};
    std::string out_dir = ".";

    void finalize();  // fills preset-dependent defaults, validates
};

struct RunRecord {
    std::string preset;
    double gamma = 0, T = 0, b = 0, p = 0, tau = 0;
    std::string rule;
    double noise_level = 0;  // as configured (percent unless absolute)
    bool noise_absolute = false;
    double eps = 0;  // absolute noise norm
    std::uint64_t seed = 0;
    double alpha = 0;
    std::vector<std::pair<double, double>> errors;  // (t, e_r percent)
    double wall_ms = 0;

    double e_r0() const;  // e_r at t = 0
};

struct SummaryRecord {
    double p = 0;
    double noise_level = 0;
    double eps = 0;
    double mean_e_r0 = 0;
    double std_e_r0 = 0;  // sample std over seeds (0 for a single seed)
    std::size_t n_seeds = 0;
};

struct ExperimentReport {
    ExperimentConfig cfg;
    std::vector<RunRecord> runs;

    std::vector<SummaryRecord> summaries() const;  // grouped by (p, noise level)
    // Deterministic body: all non-'#' lines are a pure function of the
    // config; wall-clock data lives on the '# generated' comment line.
    void write_csv(std::ostream& out) const;
    void write_csv_file(const std::string& path) const;
};

// One full experiment: for each (noise level, seed) build forward data, add
// noise, choose alpha by the configured rule, backward-solve at the sampled
// times, record errors.
ExperimentReport run_preset(const ExperimentConfig& cfg);

// Table-1 style grid: p in {1,2,3} x configured noise levels, a priori rule.
ExperimentReport table1(ExperimentConfig cfg);

// Error profile over a time grid (Figure-3 style data).
ExperimentReport profile_in_time(ExperimentConfig cfg);

struct RateResult {
    double slope = 0;
    ExperimentReport report;
};

// Sweeps the configured noise levels and fits the slope of log mean e_r(0)
// against log eps.
RateResult rate_sweep(const ExperimentConfig& cfg);

// Plot-ready fields for a single run: the noisy datum, the reconstruction
// v_alpha(t) and the exact solution u(t) at the sampled times, plus the
// coefficient-level objects for exact assertions.
struct ReconstructionData {
    double eps = 0;
    double alpha = 0;
    spectral::GridField noisy;
    spectral::SpectralCoeffs data_coeffs;  // projection of the noisy datum, n_inv modes
    std::vector<std::pair<double, spectral::GridField>> reconstruction;
    std::vector<std::pair<double, spectral::SpectralCoeffs>> solution_coeffs;
    std::vector<std::pair<double, spectral::GridField>> exact;
};

ReconstructionData reconstruct(const ExperimentConfig& cfg, double noise_level,
                               std::uint64_t seed);

// Apply a parsed TOML table ([problem], [regularization], [noise], [output])
// on top of the defaults in `cfg`.
void apply_config_table(const config::Table& table, ExperimentConfig& cfg);

}  // namespace backfrac::harness
