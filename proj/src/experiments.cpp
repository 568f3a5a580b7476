#include "randfeat/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "randfeat/distributions.hpp"
#include "randfeat/errors.hpp"

namespace randfeat {

namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

std::uint64_t cell_key(std::uint64_t seed, int m) {
    return detail::mix64(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(m));
}

}  // namespace

double median(std::vector<double> values) {
    assert(!values.empty());
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

std::string report_csv_text(const std::vector<ExperimentRow>& rows) {
    std::ostringstream out;
    out << "class,m,N,J,seed,train_err,test_err,wall_seconds,op_units\n";
    for (const auto& r : rows) {
        out << r.model_class << "," << r.m << "," << r.N << "," << r.J << "," << r.seed
            << "," << fmt(r.train_err) << "," << fmt(r.test_err) << ","
            << fmt(r.wall_seconds) << "," << fmt(r.op_units) << "\n";
    }
    return out.str();
}

void write_report_csv(const std::string& path, const std::vector<ExperimentRow>& rows) {
    std::ofstream out(path);
    if (!out) throw SerializationError("cannot open " + path);
    out << report_csv_text(rows);
}

double deterministic_step_units(BaselineVariant variant, int m, int N, int batch) {
    const double B = batch;
    const double params = variant == BaselineVariant::Trig
                              ? static_cast<double>(N) * m + 2.0 * N
                              : static_cast<double>(N) * (m + 1) + N;
    // forward: inner products + activations + readout; backward: mirrored
    // products; Adam: a handful of elementary ops per parameter
    const double forward = 2.0 * B * N * m + 2.0 * B * N;
    const double backward = 4.0 * B * N * m + 4.0 * B * N;
    return forward + backward + 10.0 * params;
}

// ---------------------------------------------------------------------------
// heat benchmark

namespace {

struct HeatCell {
    std::string model_class;
    int m, N;
    std::uint64_t seed;
};

struct TrainedCell {
    ExperimentRow row;
    // slice evaluator if this cell feeds the slice plot
    std::function<double(const Eigen::VectorXd&)> eval;
    std::vector<EpochRecord> trace;  // deterministic classes only
};

TrainedCell run_heat_cell(const HeatCell& cell, const HeatExperimentConfig& config) {
    const HeatProblem problem = HeatProblem::benchmark_config(cell.m);
    const Target target = heat_target(problem);

    // identical data for every class and N at fixed (m, seed)
    SeededStream data_stream(cell_key(cell.seed, cell.m), kStreamData);
    const Eigen::MatrixXd X = sample_gaussian_weight(cell.m, data_stream, config.J);
    const int J_train = static_cast<int>(config.train_fraction * config.J);
    const Eigen::MatrixXd X_train = X.leftCols(J_train);
    const Eigen::MatrixXd X_test = X.rightCols(config.J - J_train);

    TrainedCell out;
    out.row.model_class = cell.model_class;
    out.row.m = cell.m;
    out.row.N = cell.N;
    out.row.J = config.J;
    out.row.seed = cell.seed;

    if (cell.model_class == "rtf" || cell.model_class == "rn_tanh") {
        SobolevFitSpec spec = SobolevFitSpec::l2(cell.m);
        TrainOptions options;
        options.fixed_data = X_train;
        RandomFeatureModel model;
        if (cell.model_class == "rtf") {
            model = train_random_feature_model(FeatureFamily::trig(cell.m), cell.N,
                                               InitDistribution::student_t(cell.m), target,
                                               J_train, spec, cell.seed, options);
        } else {
            model = train_random_nn(cell.N, InitDistribution::student_t_pair(cell.m),
                                    target, J_train, spec, Activation::tanh(), cell.seed,
                                    options);
        }
        out.row.train_err = empirical_l2_error(model, target, X_train);
        out.row.test_err = empirical_l2_error(model, target, X_test);
        out.row.wall_seconds = model.wall_seconds;
        out.row.op_units = model.ledger.total();
        out.eval = [model = std::move(model)](const Eigen::VectorXd& u) {
            return model.evaluate(u)[0];
        };
    } else if (cell.model_class == "det_trig" || cell.model_class == "det_tanh") {
        const BaselineVariant variant = cell.model_class == "det_trig"
                                            ? BaselineVariant::Trig
                                            : BaselineVariant::TanhNN;
        Eigen::RowVectorXd y_train(J_train);
        for (int j = 0; j < J_train; ++j) y_train[j] = heat_solution(problem, X_train.col(j));
        Eigen::RowVectorXd y_test(X_test.cols());
        for (int j = 0; j < X_test.cols(); ++j) y_test[j] = heat_solution(problem, X_test.col(j));

        auto result = train_deterministic(variant, cell.N, X_train, y_train, X_test,
                                          y_test, config.epochs, config.adam,
                                          config.batch, cell.seed);
        out.trace = result.trace;
        out.row.train_err = rms_error(result.model, X_train, y_train);
        out.row.test_err = rms_error(result.model, X_test, y_test);
        out.row.wall_seconds = result.wall_seconds;
        const double steps_per_epoch = std::floor(static_cast<double>(J_train) / config.batch);
        out.row.op_units = cell.N +
                           config.epochs * steps_per_epoch *
                               deterministic_step_units(variant, cell.m, cell.N,
                                                        config.batch);
        out.eval = [model = std::move(result.model)](const Eigen::VectorXd& u) {
            return model.evaluate(u);
        };
    } else {
        throw ConfigError("unknown model class: " + cell.model_class);
    }
    return out;
}

}  // namespace

HeatExperimentResult run_heat_experiment(const HeatExperimentConfig& config) {
    std::vector<HeatCell> cells;
    for (const auto& cls : config.classes) {
        for (int m : config.dims) {
            for (int N : config.feature_counts) {
                for (std::uint64_t seed : config.seeds) {
                    cells.push_back({cls, m, N, seed});
                }
            }
        }
    }

    const int max_N = *std::max_element(config.feature_counts.begin(),
                                        config.feature_counts.end());
    HeatExperimentResult result;
    result.rows.resize(cells.size());
    for (int m : config.dims) {
        HeatSlice slice;
        slice.m = m;
        for (int i = 0; i < config.slice_points; ++i) {
            slice.u1.push_back(-config.slice_halfwidth +
                               2.0 * config.slice_halfwidth * i /
                                   (config.slice_points - 1));
        }
        const HeatProblem problem = HeatProblem::benchmark_config(m);
        for (double u1 : slice.u1) {
            Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 0.5);
            u[0] = u1;
            slice.truth.push_back(heat_solution(problem, u));
        }
        result.slices.push_back(std::move(slice));
    }

    std::mutex slice_mutex;
    std::vector<HeatTrace> traces(cells.size());
    parallel_for(static_cast<int>(cells.size()), config.threads, [&](int i) {
        const HeatCell& cell = cells[static_cast<size_t>(i)];
        TrainedCell trained = run_heat_cell(cell, config);
        result.rows[static_cast<size_t>(i)] = trained.row;
        if (!trained.trace.empty()) {
            traces[static_cast<size_t>(i)] =
                HeatTrace{cell.model_class, cell.m, cell.N, cell.seed,
                          std::move(trained.trace)};
        }
        // the slice plot shows the largest model of the first seed
        if (cell.N == max_N && cell.seed == config.seeds.front()) {
            std::vector<double> values;
            for (auto& slice : result.slices) {
                if (slice.m != cell.m) continue;
                values.clear();
                values.reserve(slice.u1.size());
                for (double u1 : slice.u1) {
                    Eigen::VectorXd u = Eigen::VectorXd::Constant(cell.m, 0.5);
                    u[0] = u1;
                    values.push_back(trained.eval(u));
                }
                std::lock_guard<std::mutex> lock(slice_mutex);
                slice.model_values[cell.model_class] = values;
            }
        }
    });
    for (auto& trace : traces) {
        if (!trace.trace.empty()) result.traces.push_back(std::move(trace));
    }
    return result;
}

void write_heat_outputs(const HeatExperimentResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_report_csv(out_dir + "/results.csv", result.rows);
    for (const auto& slice : result.slices) {
        std::ofstream out(out_dir + "/slice_m" + std::to_string(slice.m) + ".csv");
        if (!out) throw SerializationError("cannot write slice csv");
        out << "u1,truth";
        for (const auto& [cls, values] : slice.model_values) out << "," << cls;
        out << "\n";
        for (size_t i = 0; i < slice.u1.size(); ++i) {
            out << fmt(slice.u1[i]) << "," << fmt(slice.truth[i]);
            for (const auto& [cls, values] : slice.model_values) out << "," << fmt(values[i]);
            out << "\n";
        }
    }
    for (const auto& trace : result.traces) {
        write_trace_csv(out_dir + "/trace_" + trace.model_class + "_m" +
                            std::to_string(trace.m) + "_N" + std::to_string(trace.N) +
                            "_s" + std::to_string(trace.seed) + ".csv",
                        trace.trace);
    }
    // plot-ready companion script, no plotting dependency in the core
    std::ofstream gp(out_dir + "/plot_slices.gp");
    gp << "set datafile separator ','\nset key autotitle columnhead\n";
    for (const auto& slice : result.slices) {
        gp << "set title 'heat slice m=" << slice.m << "'\n"
           << "plot for [col=2:" << 2 + slice.model_values.size() << "] 'slice_m"
           << slice.m << ".csv' using 1:col with lines\npause -1\n";
    }
}

// ---------------------------------------------------------------------------
// rate experiment

namespace {

/// Trig-on-Gaussian training cell shared by the rate and generalization runs.
ExperimentRow run_trig_gaussian_cell(int m, int N, int J, std::uint64_t seed,
                                     int test_samples) {
    const Target target = Target::gaussian_bump(m);
    SobolevFitSpec spec = SobolevFitSpec::l2(m);
    RandomFeatureModel model =
        train_random_feature_model(FeatureFamily::trig(m), N,
                                   InitDistribution::student_t(m), target, J, spec, seed);
    SeededStream test_stream(seed, kStreamTest);
    const Eigen::MatrixXd X_test = sample_gaussian_weight(m, test_stream, test_samples);

    ExperimentRow row;
    row.model_class = "rtf";
    row.m = m;
    row.N = N;
    row.J = J;
    row.seed = seed;
    row.test_err = empirical_l2_error(model, target, X_test);
    // the trainer drew its data from (seed, data stream); redraw the same
    SeededStream data_stream(seed, kStreamData);
    row.train_err =
        empirical_l2_error(model, target, sample_gaussian_weight(m, data_stream, J));
    row.wall_seconds = model.wall_seconds;
    row.op_units = model.ledger.total();
    return row;
}

}  // namespace

RateExperimentResult run_rate_experiment(const RateExperimentConfig& config) {
    struct Cell {
        int N;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (int N : config.feature_counts) {
        for (std::uint64_t seed : config.seeds) cells.push_back({N, seed});
    }
    RateExperimentResult result;
    result.rows.resize(cells.size());
    parallel_for(static_cast<int>(cells.size()), config.threads, [&](int i) {
        const Cell& cell = cells[static_cast<size_t>(i)];
        // the rate statement concerns the N-sample Fourier-readout
        // representation of the target; a least-squares fit sits at the
        // normal-equation precision floor long before N grows, so the
        // representation itself is what gets measured
        const Target target = Target::gaussian_bump(config.m);
        auto f_hat = [m = config.m](const Eigen::VectorXd& theta) {
            return std::complex<double>(
                std::pow(2.0 * M_PI, 0.5 * m) * std::exp(-0.5 * theta.squaredNorm()),
                0.0);
        };
        const auto start = std::chrono::steady_clock::now();
        const RandomFeatureModel model = barron_trig_model(
            config.m, cell.N, InitDistribution::student_t(config.m), f_hat, cell.seed);
        SeededStream test_stream(cell.seed, kStreamTest);
        const Eigen::MatrixXd X_test =
            sample_gaussian_weight(config.m, test_stream, config.test_samples);
        ExperimentRow row;
        row.model_class = "rtf_fourier_readout";
        row.m = config.m;
        row.N = cell.N;
        row.J = config.test_samples;
        row.seed = cell.seed;
        row.test_err = empirical_l2_error(model, target, X_test);
        row.train_err = 0.0;
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        row.op_units = model.ledger.total();
        result.rows[static_cast<size_t>(i)] = row;
    });
    for (int N : config.feature_counts) {
        std::vector<double> errors;
        for (const auto& row : result.rows) {
            if (row.N == N) errors.push_back(row.test_err);
        }
        result.medians.emplace_back(static_cast<double>(N), median(errors));
    }
    result.fit = fit_rate(result.medians);
    return result;
}

void write_rate_outputs(const RateExperimentResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_report_csv(out_dir + "/results.csv", result.rows);
    std::ofstream out(out_dir + "/medians.csv");
    out << "N,median_test_err\n";
    for (const auto& [n, err] : result.medians) out << n << "," << fmt(err) << "\n";
    std::ofstream summary(out_dir + "/rate_summary.txt");
    summary << "log-log slope: " << result.fit.slope << "\n"
            << "intercept:     " << result.fit.intercept << "\n"
            << "R^2:           " << result.fit.r_squared << "\n";
}

// ---------------------------------------------------------------------------
// generalization experiment

GeneralizationResult run_generalization_experiment(const GeneralizationConfig& config) {
    struct Cell {
        bool j_axis;
        int N, J;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (int J : config.J_values) {
        for (std::uint64_t seed : config.seeds) {
            cells.push_back({true, config.fixed_N, J, seed});
        }
    }
    for (int N : config.N_values) {
        for (std::uint64_t seed : config.seeds) {
            cells.push_back({false, N, config.fixed_J, seed});
        }
    }
    std::vector<ExperimentRow> rows(cells.size());
    parallel_for(static_cast<int>(cells.size()), config.threads, [&](int i) {
        const Cell& cell = cells[static_cast<size_t>(i)];
        rows[static_cast<size_t>(i)] = run_trig_gaussian_cell(
            config.m, cell.N, cell.J, cell.seed, config.test_samples);
    });

    GeneralizationResult result;
    for (size_t i = 0; i < cells.size(); ++i) {
        (cells[i].j_axis ? result.j_axis_rows : result.n_axis_rows).push_back(rows[i]);
    }
    for (int J : config.J_values) {
        std::vector<double> errors;
        for (const auto& row : result.j_axis_rows) {
            if (row.J == J) errors.push_back(row.test_err);
        }
        result.j_axis_medians.emplace_back(J, median(errors));
    }
    for (int N : config.N_values) {
        std::vector<double> errors;
        for (const auto& row : result.n_axis_rows) {
            if (row.N == N) errors.push_back(row.test_err);
        }
        result.n_axis_medians.emplace_back(N, median(errors));
    }
    return result;
}

void write_generalization_outputs(const GeneralizationResult& result,
                                  const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_report_csv(out_dir + "/j_axis.csv", result.j_axis_rows);
    write_report_csv(out_dir + "/n_axis.csv", result.n_axis_rows);
    std::ofstream out(out_dir + "/medians.csv");
    out << "axis,value,median_test_err\n";
    for (const auto& [J, err] : result.j_axis_medians) {
        out << "J," << J << "," << fmt(err) << "\n";
    }
    for (const auto& [N, err] : result.n_axis_medians) {
        out << "N," << N << "," << fmt(err) << "\n";
    }
}

// ---------------------------------------------------------------------------
// curse-of-dimensionality scaling

namespace {

double cod_median_error(int m, int N, const CodConfig& config) {
    std::vector<double> errors(config.seeds.size());
    parallel_for(static_cast<int>(config.seeds.size()), config.threads, [&](int i) {
        const std::uint64_t seed = config.seeds[static_cast<size_t>(i)];
        const HeatProblem problem = HeatProblem::benchmark_config(m);
        const Target target = heat_target(problem);
        SeededStream data_stream(cell_key(seed, m), kStreamData);
        const Eigen::MatrixXd X = sample_gaussian_weight(m, data_stream, config.J);
        const int J_train = static_cast<int>(config.train_fraction * config.J);
        TrainOptions options;
        options.fixed_data = X.leftCols(J_train);
        SobolevFitSpec spec = SobolevFitSpec::l2(m);
        RandomFeatureModel model;
        if (config.model_class == "rn_tanh") {
            model = train_random_nn(N, InitDistribution::student_t_pair(m), target,
                                    J_train, spec, Activation::tanh(), seed, options);
        } else {
            model = train_random_feature_model(FeatureFamily::trig(m), N,
                                               InitDistribution::student_t(m), target,
                                               J_train, spec, seed, options);
        }
        errors[static_cast<size_t>(i)] =
            empirical_l2_error(model, target, X.rightCols(config.J - J_train));
    });
    return median(errors);
}

}  // namespace

CodResult cod_scaling_check(const CodConfig& config) {
    CodResult result;
    std::vector<std::pair<double, double>> fit_points;
    for (int m : config.dims) {
        CodRow row;
        row.m = m;
        row.condition_holds = HeatProblem::benchmark_config(m).scaling_condition_holds();

        int lo = 0;           // largest N known to fail (0 = none)
        int hi = 2;           // candidate
        double err_hi = cod_median_error(m, hi, config);
        while (err_hi > config.epsilon) {
            lo = hi;
            hi *= 2;
            if (hi > config.N_cap) {
                throw BudgetExceeded("cod_scaling_check: N cap " +
                                     std::to_string(config.N_cap) + " exceeded at m = " +
                                     std::to_string(m));
            }
            err_hi = cod_median_error(m, hi, config);
        }
        // bisect to the smallest passing N
        while (hi - lo > 1) {
            const int mid = lo + (hi - lo) / 2;
            const double err = cod_median_error(m, mid, config);
            if (err <= config.epsilon) {
                hi = mid;
                err_hi = err;
            } else {
                lo = mid;
            }
        }
        row.N_needed = hi;
        row.achieved_error = err_hi;
        result.rows.push_back(row);
        fit_points.emplace_back(static_cast<double>(m), static_cast<double>(row.N_needed));
    }
    if (fit_points.size() >= 3) {
        result.fit = fit_rate(fit_points);
    }
    return result;
}

void write_cod_outputs(const CodResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/cod.csv");
    out << "m,N_needed,achieved_error,scaling_condition\n";
    for (const auto& row : result.rows) {
        out << row.m << "," << row.N_needed << "," << fmt(row.achieved_error) << ","
            << (row.condition_holds ? 1 : 0) << "\n";
    }
    std::ofstream summary(out_dir + "/cod_summary.txt");
    summary << "log N_needed vs log m slope: " << result.fit.slope
            << " (R^2 = " << result.fit.r_squared << ")\n";
}

// ---------------------------------------------------------------------------
// constants pipeline

ConstantsResult run_constants_experiment(const ConstantsConfig& config) {
    ConstantsResult result;

    // C_f for the Gaussian bump with Cauchy frequencies, r = 2, k = 0
    auto f_hat = [](double v) {
        return Complex(std::sqrt(2.0 * M_PI) * std::exp(-0.5 * v * v), 0.0);
    };
    const InitDistribution cauchy = InitDistribution::student_t(1);
    auto p_theta = [&cauchy](double v) {
        return cauchy.pdf(Eigen::VectorXd::Constant(1, v));
    };
    QuadratureGrid grid = QuadratureGrid::uniform(-40.0, 40.0, 40, 32);
    grid.tolerance = 1e-12;
    result.cf_quadrature = barron_constant_trig(f_hat, p_theta, 2.0, 0, grid);
    result.cf_closed_form = std::sqrt(3.0 * std::pow(M_PI, 2.5));

    // product-weight constants for the standard Gaussian w0
    auto w0 = [](double s) { return std::exp(-0.5 * s * s) / std::sqrt(2.0 * M_PI); };
    result.product_weight_gamma0 = product_weight_constant(w0, 0.0, 2.0, 1, grid).base;
    result.product_weight_gaussian = product_weight_constant(w0, 1.0, 2.0, 1, grid).base;
    result.product_weight_closed_form = std::sqrt(2.0 + 2.0 * std::sqrt(2.0 / M_PI));

    // admissibility with tanh and the lower-bound pattern over m
    const RidgeletProfile psi(config.zeta1, config.zeta2);
    for (int m = 1; m <= 3; ++m) {
        const Complex c = admissibility_constant(psi, ActivationKind::Tanh, m);
        result.admissibility.emplace_back(m, std::abs(c));
    }
    const double ratio1 = config.zeta2 / (2.0 * M_PI);
    result.lower_bound_constant = result.admissibility[0].second * ratio1;
    result.lower_bound_holds = true;
    for (const auto& [m, abs_c] : result.admissibility) {
        const double bound =
            result.lower_bound_constant * std::pow(2.0 * M_PI / config.zeta2, m);
        if (abs_c < bound * (1.0 - 1e-9)) result.lower_bound_holds = false;
    }

    // ridgelet reconstruction of the Gaussian bump over nested domains
    auto f = [](double u) { return std::exp(-0.5 * u * u); };
    const Complex c1 = admissibility_constant(psi, ActivationKind::Tanh, 1);
    const Activation rho = Activation::tanh();
    for (int stage = 0; stage < config.reconstruction_stages; ++stage) {
        ReconstructionDomain domain;
        domain.a_halfwidth = 4.0 + 1.0 * stage;
        domain.b_halfwidth = 40.0 + 30.0 * stage;
        domain.u_halfwidth = 6.0 + 0.5 * stage;
        std::array<double, 3> values{};
        for (size_t i = 0; i < result.reconstruction_u.size(); ++i) {
            values[i] = ridgelet_reconstruct_1d(psi, f, rho, c1,
                                                result.reconstruction_u[i], domain);
        }
        result.reconstruction_values.push_back(values);
    }
    for (size_t i = 0; i < result.reconstruction_u.size(); ++i) {
        result.reconstruction_truth[i] = f(result.reconstruction_u[i]);
    }

    // ridgelet-Barron upper bound for the same target
    auto f_hat_derivs = [](double xi, int order) {
        // d^n/dxi^n sqrt(2 pi) e^{-xi^2/2} via Hermite recurrence
        double h0 = 1.0, h1 = xi;
        if (order == 0) h1 = 1.0;
        for (int j = 2; j <= order; ++j) {
            const double h2 = xi * h1 - (j - 1) * h0;
            h0 = h1;
            h1 = h2;
        }
        const double he = order == 0 ? 1.0 : h1;
        const double sign = order % 2 == 1 ? -1.0 : 1.0;
        return Complex(sign * he * std::sqrt(2.0 * M_PI) * std::exp(-0.5 * xi * xi), 0.0);
    };
    QuadratureGrid bound_grid = QuadratureGrid::uniform(-40.0, 40.0, 40, 32);
    bound_grid.tolerance = 1e-9;
    result.barron_ridgelet_bound =
        barron_ridgelet_bound_1d(f_hat_derivs, psi, 0.0, 0, 2.0, bound_grid);
    return result;
}

void write_constants_outputs(const ConstantsResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream csv(out_dir + "/constants.csv");
        csv << "name,value\n";
        csv << "cf_quadrature," << fmt(result.cf_quadrature) << "\n";
        csv << "cf_closed_form," << fmt(result.cf_closed_form) << "\n";
        csv << "product_weight_gamma0," << fmt(result.product_weight_gamma0) << "\n";
        csv << "product_weight_gaussian," << fmt(result.product_weight_gaussian) << "\n";
        for (const auto& [m, abs_c] : result.admissibility) {
            csv << "admissibility_abs_m" << m << "," << fmt(abs_c) << "\n";
        }
        csv << "lower_bound_constant," << fmt(result.lower_bound_constant) << "\n";
        csv << "barron_ridgelet_bound," << fmt(result.barron_ridgelet_bound) << "\n";
        for (size_t stage = 0; stage < result.reconstruction_values.size(); ++stage) {
            for (size_t i = 0; i < result.reconstruction_u.size(); ++i) {
                csv << "reconstruction_stage" << stage << "_u" << result.reconstruction_u[i]
                    << "," << fmt(result.reconstruction_values[stage][i]) << "\n";
            }
        }
    }
    std::ofstream out(out_dir + "/constants.txt");
    out << std::setprecision(12);
    out << "C_f (gaussian target, cauchy frequencies, r=2, k=0): "
        << result.cf_quadrature << " (closed form " << result.cf_closed_form << ")\n";
    out << "product weight C(gamma=0): " << result.product_weight_gamma0 << "\n";
    out << "product weight C(gamma=1, p=2, gaussian w0): "
        << result.product_weight_gaussian << " (closed form "
        << result.product_weight_closed_form << ")\n";
    for (const auto& [m, abs_c] : result.admissibility) {
        out << "|C^(psi,tanh)_" << m << "| = " << abs_c << "\n";
    }
    out << "lower bound C_{psi,rho} (fit at m=1): " << result.lower_bound_constant
        << ", pattern holds for m=1..3: " << (result.lower_bound_holds ? "yes" : "no")
        << "\n";
    for (size_t stage = 0; stage < result.reconstruction_values.size(); ++stage) {
        out << "reconstruction stage " << stage << ":";
        for (size_t i = 0; i < result.reconstruction_u.size(); ++i) {
            out << "  f(" << result.reconstruction_u[i]
                << ") ~ " << result.reconstruction_values[stage][i] << " (truth "
                << result.reconstruction_truth[i] << ")";
        }
        out << "\n";
    }
    out << "ridgelet-Barron bound (gaussian, gamma=0, k=0, r=2): "
        << result.barron_ridgelet_bound << "\n";
}

}  // namespace randfeat
