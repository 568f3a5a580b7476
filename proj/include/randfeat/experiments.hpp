#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "randfeat/analysis.hpp"
#include "randfeat/baselines.hpp"
#include "randfeat/heat.hpp"
#include "randfeat/model.hpp"

namespace randfeat {

/// One (class, m, N, seed) record of the benchmark pipeline.
struct ExperimentRow {
    std::string model_class;
    int m = 1;
    int N = 0;
    int J = 0;
    std::uint64_t seed = 0;
    double train_err = 0.0;
    double test_err = 0.0;
    double wall_seconds = 0.0;
    double op_units = 0.0;
};

/// CSV schema: class,m,N,J,seed,train_err,test_err,wall_seconds,op_units
void write_report_csv(const std::string& path, const std::vector<ExperimentRow>& rows);
std::string report_csv_text(const std::vector<ExperimentRow>& rows);

double median(std::vector<double> values);

/// Ordered parallel map; cell outputs land in caller-indexed slots, so results
/// do not depend on scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

// ---------------------------------------------------------------------------

struct HeatExperimentConfig {
    std::vector<std::string> classes{"rtf", "rn_tanh", "det_trig", "det_tanh"};
    std::vector<int> dims{1, 5};
    std::vector<int> feature_counts{10, 50, 200};
    int J = 20000;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    double train_fraction = 0.8;
    int epochs = 300;
    AdamConfig adam{};
    int batch = 500;
    int threads = 2;
    double slice_halfwidth = 8.0;
    int slice_points = 161;
};

struct HeatSlice {
    int m = 1;
    std::vector<double> u1;
    std::vector<double> truth;
    std::map<std::string, std::vector<double>> model_values;
};

struct HeatTrace {
    std::string model_class;
    int m = 1;
    int N = 0;
    std::uint64_t seed = 0;
    std::vector<EpochRecord> trace;
};

struct HeatExperimentResult {
    std::vector<ExperimentRow> rows;
    std::vector<HeatSlice> slices;
    std::vector<HeatTrace> traces;  // deterministic classes only
};

/// The full benchmark grid: shared per-(m, seed) data split into train/test,
/// random models solved by least squares, deterministic counterparts trained
/// with Adam, slice evaluations along u1 -> (u1, 0.5, ..., 0.5).
HeatExperimentResult run_heat_experiment(const HeatExperimentConfig& config);
void write_heat_outputs(const HeatExperimentResult& result, const std::string& out_dir);

// ---------------------------------------------------------------------------

struct RateExperimentConfig {
    int m = 1;
    std::vector<int> feature_counts{32, 64, 128, 256, 512, 1024};
    int J = 10000;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int test_samples = 10000;
    int threads = 2;
};

struct RateExperimentResult {
    std::vector<ExperimentRow> rows;
    std::vector<std::pair<double, double>> medians;  // (N, median test error)
    RateFit fit{};
};

/// Trig model on the Gaussian bump, t_1 frequencies, Gaussian weight; the
/// log-log slope of the median test error against N.
RateExperimentResult run_rate_experiment(const RateExperimentConfig& config);
void write_rate_outputs(const RateExperimentResult& result, const std::string& out_dir);

// ---------------------------------------------------------------------------

struct GeneralizationConfig {
    int m = 1;
    int fixed_N = 100;
    std::vector<int> J_values{500, 2000, 8000};
    int fixed_J = 500;
    std::vector<int> N_values{25, 100, 400};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int test_samples = 10000;
    int threads = 2;
};

struct GeneralizationResult {
    std::vector<ExperimentRow> j_axis_rows;
    std::vector<ExperimentRow> n_axis_rows;
    std::vector<std::pair<int, double>> j_axis_medians;
    std::vector<std::pair<int, double>> n_axis_medians;
};

/// Two-axis experiment: error against the sample count at fixed N, and
/// against the feature count at fixed J.
GeneralizationResult run_generalization_experiment(const GeneralizationConfig& config);
void write_generalization_outputs(const GeneralizationResult& result,
                                  const std::string& out_dir);

// ---------------------------------------------------------------------------

struct CodConfig {
    std::vector<int> dims{1, 2, 4, 8};
    double epsilon = 0.05;
    int J = 20000;
    int N_cap = 2048;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    double train_fraction = 0.8;
    int threads = 2;
    std::string model_class = "rtf";  // or "rn_tanh"
};

struct CodRow {
    int m = 1;
    int N_needed = 0;
    double achieved_error = 0.0;
    bool condition_holds = false;
};

struct CodResult {
    std::vector<CodRow> rows;
    RateFit fit{};  // log N_needed against log m
};

/// For each dimension, bisect over the feature count until the median test
/// error on the heat benchmark drops below epsilon. Throws BudgetExceeded
/// when the cap is insufficient.
CodResult cod_scaling_check(const CodConfig& config);
void write_cod_outputs(const CodResult& result, const std::string& out_dir);

// ---------------------------------------------------------------------------

struct ConstantsConfig {
    double zeta1 = 1.0;
    double zeta2 = 2.0;
    int reconstruction_stages = 3;
};

struct ConstantsResult {
    double cf_quadrature = 0.0;
    double cf_closed_form = 0.0;
    double product_weight_gamma0 = 0.0;
    double product_weight_gaussian = 0.0;
    double product_weight_closed_form = 0.0;
    std::vector<std::pair<int, double>> admissibility;  // (m, |C_m|)
    double lower_bound_constant = 0.0;  // fitted at m = 1
    bool lower_bound_holds = false;     // checked at m = 2, 3
    std::array<double, 3> reconstruction_u{{-1.0, 0.0, 1.0}};
    // reconstruction_values[stage][i]: nested quadrature domains, increasing
    std::vector<std::array<double, 3>> reconstruction_values;
    std::array<double, 3> reconstruction_truth{};
    double barron_ridgelet_bound = 0.0;
};

/// Quadrature evaluation of the constant pipeline on the Gaussian bump
/// with tanh activation and the default bump profile.
ConstantsResult run_constants_experiment(const ConstantsConfig& config);
void write_constants_outputs(const ConstantsResult& result, const std::string& out_dir);

// ---------------------------------------------------------------------------

/// Unit estimate for one Adam step of a deterministic model (forward and
/// backward passes plus the per-parameter update).
double deterministic_step_units(BaselineVariant variant, int m, int N, int batch);

}  // namespace randfeat
