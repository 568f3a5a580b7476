#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <set>
#include <string>

#include "randfeat/config.hpp"
#include "randfeat/errors.hpp"
#include "randfeat/experiments.hpp"
#include "randfeat/serialize.hpp"

namespace {

using namespace randfeat;

constexpr const char* kVersion = "0.1.0";
constexpr int kRunSchemaVersion = 1;

int resolve_threads(const ConfigMap& config, std::optional<int> flag_threads) {
    if (flag_threads) return *flag_threads;
    if (const char* env = std::getenv("RANDFEAT_THREADS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw ConfigError("RANDFEAT_THREADS is not an integer");
        }
    }
    return static_cast<int>(config.get_int("experiment.threads", 2));
}

std::vector<std::uint64_t> resolve_seeds(const ConfigMap& config) {
    if (config.has("model.seeds")) {
        std::vector<std::uint64_t> seeds;
        for (auto s : config.get_int_list("model.seeds")) {
            seeds.push_back(static_cast<std::uint64_t>(s));
        }
        return seeds;
    }
    return {config.get_u64("experiment.seed", 1)};
}

std::vector<int> to_int(const std::vector<std::int64_t>& xs) {
    return std::vector<int>(xs.begin(), xs.end());
}

void write_manifest(const ConfigMap& config, const std::string& out_dir,
                    const std::string& kind) {
    nlohmann::json manifest;
    manifest["run_schema_version"] = kRunSchemaVersion;
    manifest["randfeat_version"] = kVersion;
    manifest["kind"] = kind;
    manifest["config_hash"] = config.hash();
    nlohmann::json entries;
    for (const auto& [key, value] : config.entries()) entries[key] = value;
    manifest["config"] = entries;
    std::ofstream out(out_dir + "/manifest.json");
    if (!out) throw SerializationError("cannot write manifest to " + out_dir);
    out << manifest.dump(2) << "\n";
}

const std::set<std::string> kCommonKeys = {
    "experiment.kind", "experiment.out", "experiment.seed", "experiment.threads",
    "model.seeds"};

std::set<std::string> with_common(std::set<std::string> keys) {
    keys.insert(kCommonKeys.begin(), kCommonKeys.end());
    return keys;
}

InitDistribution parse_init(const std::string& name, int m) {
    if (name == "student_t") return InitDistribution::student_t(m);
    if (name == "student_t_pair") return InitDistribution::student_t_pair(m);
    if (name == "gaussian") return InitDistribution::gaussian(m);
    throw ConfigError("key init.distribution: unknown distribution '" + name + "'");
}

int run_fit(const ConfigMap& config, const std::string& out_dir, int threads) {
    (void)threads;
    config.require_known_keys(with_common(
        {"model.class", "model.m", "model.k", "model.N", "model.J", "target.name",
         "sobolev.c_rule", "sobolev.L", "init.distribution", "test.samples"}));
    const std::string cls = config.get_string("model.class", "rtf");
    const int m = static_cast<int>(config.get_int("model.m", 1));
    const int N = static_cast<int>(config.get_int("model.N", 100));
    const int J = static_cast<int>(config.get_int("model.J", 10000));
    const std::uint64_t seed = resolve_seeds(config).front();

    SobolevFitSpec spec = SobolevFitSpec::l2(m);
    spec.k = static_cast<int>(config.get_int("model.k", 0));
    const std::string c_rule = config.get_string("sobolev.c_rule", "uniform");
    if (c_rule == "order_scaled") {
        spec.c_rule = CRule::OrderScaled;
    } else if (c_rule != "uniform") {
        throw ConfigError("key sobolev.c_rule: expected uniform or order_scaled");
    }
    spec.truncation = config.get_optional_double("sobolev.L");

    Target target;
    const std::string target_name = config.get_string("target.name", "gaussian");
    if (target_name == "gaussian") {
        target = Target::gaussian_bump(m);
    } else if (target_name == "heat") {
        target = heat_target(HeatProblem::benchmark_config(m));
    } else {
        throw ConfigError("key target.name: unknown target '" + target_name + "'");
    }

    RandomFeatureModel model;
    if (cls == "rtf") {
        const std::string init = config.get_string("init.distribution", "student_t");
        model = train_random_feature_model(FeatureFamily::trig(m), N, parse_init(init, m),
                                           target, J, spec, seed);
    } else if (cls == "rn_tanh") {
        model = train_random_nn(N, InitDistribution::student_t_pair(m), target, J, spec,
                                Activation::tanh(), seed);
    } else {
        throw ConfigError("key model.class: expected rtf or rn_tanh");
    }

    SeededStream test_stream(seed, kStreamTest);
    const int test_samples = static_cast<int>(config.get_int("test.samples", 10000));
    const Eigen::MatrixXd X_test =
        sample_gaussian_weight(m, test_stream, test_samples);
    const double test_err = empirical_l2_error(model, target, X_test);

    save_model(model, out_dir + "/model.json");
    std::ofstream summary(out_dir + "/summary.txt");
    summary << model_summary(model);
    summary << "test l2 error (" << test_samples << " fresh samples): " << test_err
            << "\n";
    return 0;
}

int run_cli(const std::string& config_path, std::optional<std::uint64_t> seed_override,
            std::optional<std::string> out_override, std::optional<int> threads_flag) {
    ConfigMap config = ConfigMap::parse_file(config_path);
    if (seed_override) config.set("experiment.seed", std::to_string(*seed_override));
    if (out_override) config.set("experiment.out", *out_override);

    const std::string kind = config.get_string("experiment.kind");
    const std::string out_dir = config.get_string("experiment.out", "runs/" + kind);
    std::filesystem::create_directories(out_dir);
    const int threads = resolve_threads(config, threads_flag);

    if (kind == "fit") {
        const int rc = run_fit(config, out_dir, threads);
        write_manifest(config, out_dir, kind);
        return rc;
    }
    if (kind == "heat") {
        config.require_known_keys(with_common(
            {"model.classes", "model.m", "model.N", "model.J", "adam.epochs", "adam.lr",
             "adam.batch", "data.train_fraction", "slice.halfwidth", "slice.points"}));
        HeatExperimentConfig hc;
        hc.classes = config.get_string_list("model.classes", hc.classes);
        hc.dims = to_int(config.get_int_list("model.m", {1, 5}));
        hc.feature_counts = to_int(config.get_int_list("model.N", {10, 50, 200}));
        hc.J = static_cast<int>(config.get_int("model.J", 20000));
        hc.seeds = resolve_seeds(config);
        hc.train_fraction = config.get_double("data.train_fraction", 0.8);
        hc.epochs = static_cast<int>(config.get_int("adam.epochs", 300));
        hc.adam.lr = config.get_double("adam.lr", 1e-5);
        hc.batch = static_cast<int>(config.get_int("adam.batch", 500));
        hc.threads = threads;
        hc.slice_halfwidth = config.get_double("slice.halfwidth", 8.0);
        hc.slice_points = static_cast<int>(config.get_int("slice.points", 161));
        write_heat_outputs(run_heat_experiment(hc), out_dir);
        write_manifest(config, out_dir, kind);
        return 0;
    }
    if (kind == "rate") {
        config.require_known_keys(
            with_common({"model.m", "model.N", "model.J", "test.samples"}));
        RateExperimentConfig rc;
        rc.m = static_cast<int>(config.get_int("model.m", 1));
        rc.feature_counts =
            to_int(config.get_int_list("model.N", {32, 64, 128, 256, 512, 1024}));
        rc.J = static_cast<int>(config.get_int("model.J", 10000));
        rc.seeds = resolve_seeds(config);
        rc.test_samples = static_cast<int>(config.get_int("test.samples", 10000));
        rc.threads = threads;
        write_rate_outputs(run_rate_experiment(rc), out_dir);
        write_manifest(config, out_dir, kind);
        return 0;
    }
    if (kind == "generalization") {
        config.require_known_keys(with_common({"model.m", "model.N_fixed", "model.J_list",
                                               "model.J_fixed", "model.N_list",
                                               "test.samples"}));
        GeneralizationConfig gc;
        gc.m = static_cast<int>(config.get_int("model.m", 1));
        gc.fixed_N = static_cast<int>(config.get_int("model.N_fixed", 100));
        gc.J_values = to_int(config.get_int_list("model.J_list", {500, 2000, 8000}));
        gc.fixed_J = static_cast<int>(config.get_int("model.J_fixed", 500));
        gc.N_values = to_int(config.get_int_list("model.N_list", {25, 100, 400}));
        gc.seeds = resolve_seeds(config);
        gc.test_samples = static_cast<int>(config.get_int("test.samples", 10000));
        gc.threads = threads;
        write_generalization_outputs(run_generalization_experiment(gc), out_dir);
        write_manifest(config, out_dir, kind);
        return 0;
    }
    if (kind == "cod") {
        config.require_known_keys(with_common({"model.class", "model.m", "model.J",
                                               "cod.epsilon", "cod.N_cap",
                                               "data.train_fraction"}));
        CodConfig cc;
        cc.model_class = config.get_string("model.class", "rtf");
        cc.dims = to_int(config.get_int_list("model.m", {1, 2, 4, 8}));
        cc.J = static_cast<int>(config.get_int("model.J", 20000));
        cc.epsilon = config.get_double("cod.epsilon", 0.05);
        cc.N_cap = static_cast<int>(config.get_int("cod.N_cap", 2048));
        cc.seeds = resolve_seeds(config);
        cc.train_fraction = config.get_double("data.train_fraction", 0.8);
        cc.threads = threads;
        write_cod_outputs(cod_scaling_check(cc), out_dir);
        write_manifest(config, out_dir, kind);
        return 0;
    }
    if (kind == "constants") {
        config.require_known_keys(
            with_common({"ridgelet.zeta1", "ridgelet.zeta2", "ridgelet.stages"}));
        ConstantsConfig cc;
        cc.zeta1 = config.get_double("ridgelet.zeta1", 1.0);
        cc.zeta2 = config.get_double("ridgelet.zeta2", 2.0);
        cc.reconstruction_stages =
            static_cast<int>(config.get_int("ridgelet.stages", 3));
        write_constants_outputs(run_constants_experiment(cc), out_dir);
        write_manifest(config, out_dir, kind);
        return 0;
    }
    throw ConfigError("key experiment.kind: unknown experiment '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random feature model experiment runner"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute an experiment from a config file");
    std::string config_path;
    run->add_option("--config", config_path, "experiment config file")->required();
    std::optional<std::uint64_t> seed_override;
    run->add_option("--seed", seed_override, "override the base seed");
    std::optional<std::string> out_override;
    run->add_option("--out", out_override, "override the output directory");
    std::optional<int> threads;
    run->add_option("--threads", threads, "worker thread count");

    auto* inspect = app.add_subcommand("inspect", "print a serialized model's summary");
    std::string model_path;
    inspect->add_option("model", model_path, "model.json file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_cli(config_path, seed_override, out_override, threads);
        }
        std::cout << randfeat::model_summary(randfeat::load_model(model_path));
        return 0;
    } catch (const randfeat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
