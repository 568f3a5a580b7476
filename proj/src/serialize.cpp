#include "randfeat/serialize.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "randfeat/errors.hpp"

namespace randfeat {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& M) {
    json a = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
        for (Eigen::Index r = 0; r < M.rows(); ++r) a.push_back(M(r, c));
    }
    return json{{"rows", M.rows()}, {"cols", M.cols()}, {"data", a}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    Eigen::MatrixXd M(j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
    const auto& a = j.at("data");
    if (static_cast<Eigen::Index>(a.size()) != M.size()) {
        throw SerializationError("matrix payload has wrong length");
    }
    Eigen::Index i = 0;
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
        for (Eigen::Index r = 0; r < M.rows(); ++r) M(r, c) = a[i++].get<double>();
    }
    return M;
}

}  // namespace

void save_model(const RandomFeatureModel& model, const std::string& path) {
    json j;
    j["schema_version"] = kModelSchemaVersion;
    j["family"] = to_string(model.family.kind);
    if (model.family.kind == FamilyKind::Neuron) {
        j["activation"] = to_string(model.family.activation.kind);
    }
    j["m"] = model.m;
    j["k"] = model.k;
    j["N"] = model.N;
    j["d"] = model.d;
    j["seed"] = model.seed;
    j["J"] = model.J;
    j["c_rule"] = model.c_rule == CRule::Uniform ? "uniform" : "order_scaled";
    if (model.truncation) j["truncation"] = *model.truncation;
    j["params"] = matrix_to_json(model.params);
    if (model.family.kind == FamilyKind::Fourier) {
        j["readout_re"] = matrix_to_json(model.readout_c.real());
        j["readout_im"] = matrix_to_json(model.readout_c.imag());
    } else {
        j["readout"] = matrix_to_json(model.readout);
    }
    j["ledger"] = {{"rng", model.ledger.rng},
                   {"assembly", model.ledger.assembly},
                   {"rhs", model.ledger.rhs},
                   {"solve", model.ledger.solve},
                   {"remainder", model.ledger.remainder}};
    j["wall_seconds"] = model.wall_seconds;

    std::ofstream out(path);
    if (!out) throw SerializationError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

RandomFeatureModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SerializationError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SerializationError("malformed model file " + path + ": " + e.what());
    }
    try {
        if (j.at("schema_version").get<int>() != kModelSchemaVersion) {
            throw SerializationError("unsupported schema version in " + path);
        }
        RandomFeatureModel model;
        const std::string family = j.at("family").get<std::string>();
        model.m = j.at("m").get<int>();
        if (family == "trig") {
            model.family = FeatureFamily::trig(model.m);
        } else if (family == "fourier") {
            model.family = FeatureFamily::fourier(model.m);
        } else if (family == "neuron") {
            model.family = FeatureFamily::neuron(
                model.m, Activation::make(activation_kind_from_string(
                             j.at("activation").get<std::string>())));
        } else {
            throw SerializationError("unknown family " + family);
        }
        model.k = j.at("k").get<int>();
        model.N = j.at("N").get<int>();
        model.d = j.at("d").get<int>();
        model.seed = j.at("seed").get<std::uint64_t>();
        model.J = j.at("J").get<int>();
        model.c_rule = j.at("c_rule").get<std::string>() == "uniform" ? CRule::Uniform
                                                                      : CRule::OrderScaled;
        if (j.contains("truncation")) model.truncation = j.at("truncation").get<double>();
        model.params = matrix_from_json(j.at("params"));
        if (model.family.kind == FamilyKind::Fourier) {
            const Eigen::MatrixXd re = matrix_from_json(j.at("readout_re"));
            const Eigen::MatrixXd im = matrix_from_json(j.at("readout_im"));
            model.readout_c.resize(re.size());
            model.readout_c.real() = re.reshaped();
            model.readout_c.imag() = im.reshaped();
        } else {
            model.readout = matrix_from_json(j.at("readout"));
        }
        const auto& ledger = j.at("ledger");
        model.ledger.rng = ledger.at("rng").get<double>();
        model.ledger.assembly = ledger.at("assembly").get<double>();
        model.ledger.rhs = ledger.at("rhs").get<double>();
        model.ledger.solve = ledger.at("solve").get<double>();
        model.ledger.remainder = ledger.at("remainder").get<double>();
        model.wall_seconds = j.at("wall_seconds").get<double>();
        return model;
    } catch (const json::exception& e) {
        throw SerializationError("malformed model file " + path + ": " + e.what());
    }
}

std::string model_summary(const RandomFeatureModel& model) {
    std::ostringstream out;
    out << "family: " << to_string(model.family.kind);
    if (model.family.kind == FamilyKind::Neuron) {
        out << " (" << to_string(model.family.activation.kind) << ")";
    }
    out << "\n";
    out << "m: " << model.m << "\nk: " << model.k << "\nN: " << model.N
        << "\nd: " << model.d << "\n";
    const double norm = model.family.kind == FamilyKind::Fourier ? model.readout_c.norm()
                                                                 : model.readout.norm();
    out << "readout l2 norm = " << norm << "\n";
    out << "seed: " << model.seed << "\nJ: " << model.J << "\n";
    out << "op units: rng=" << model.ledger.rng << " assembly=" << model.ledger.assembly
        << " rhs=" << model.ledger.rhs << " solve=" << model.ledger.solve
        << " remainder=" << model.ledger.remainder << " total=" << model.ledger.total()
        << "\n";
    out << "trained in " << model.wall_seconds << " s\n";
    return out.str();
}

}  // namespace randfeat
