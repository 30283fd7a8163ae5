#include "fgarch/preset.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "fgarch/errors.hpp"

namespace fgarch {

using nlohmann::json;

SimPreset default_sim_preset() {
    SimPreset preset;
    preset.grid_T = 285;
    preset.n = 600;
    preset.burnin = 1000;
    preset.delta_const = 0.01;
    preset.basis_kind = BasisKind::bump;
    preset.alpha_coefs = Eigen::MatrixXd::Constant(1, 1, 0.4);
    preset.beta_coefs = Eigen::MatrixXd::Constant(1, 1, 0.4);
    preset.innovation = InnovationGen{InnovKind::ou_bridge, 200.0, 1};
    return preset;
}

namespace {

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& name) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw ParseError("preset: " + name + " must be a 2D array");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols)
            throw ParseError("preset: " + name + " rows have unequal lengths");
        for (int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
}

}  // namespace

SimPreset load_preset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open preset: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError("preset " + path + ": " + e.what());
    }
    reject_unknown_keys(
        j, {"grid_T", "n", "burnin", "delta", "basis_kind", "alpha_coefs", "beta_coefs",
            "innovation"},
        "preset");

    SimPreset preset = default_sim_preset();
    if (j.contains("grid_T")) preset.grid_T = j["grid_T"].get<int>();
    if (j.contains("n")) preset.n = j["n"].get<int>();
    if (j.contains("burnin")) preset.burnin = j["burnin"].get<int>();
    if (j.contains("delta")) {
        if (j["delta"].is_number()) {
            preset.delta_const = j["delta"].get<double>();
            preset.delta_coefs.clear();
        } else if (j["delta"].is_array()) {
            preset.delta_const.reset();
            preset.delta_coefs = j["delta"].get<std::vector<double>>();
        } else {
            throw ParseError("preset: delta must be a number or a coefficient list");
        }
    }
    if (j.contains("basis_kind"))
        preset.basis_kind = basis_kind_from_string(j["basis_kind"].get<std::string>());
    if (j.contains("alpha_coefs")) preset.alpha_coefs = matrix_from_json(j["alpha_coefs"], "alpha_coefs");
    if (j.contains("beta_coefs")) preset.beta_coefs = matrix_from_json(j["beta_coefs"], "beta_coefs");
    if (j.contains("innovation")) {
        const json& inn = j["innovation"];
        reject_unknown_keys(inn, {"kind", "rate", "seed"}, "preset.innovation");
        if (inn.contains("kind"))
            preset.innovation.kind = innov_kind_from_string(inn["kind"].get<std::string>());
        if (inn.contains("rate")) preset.innovation.rate = inn["rate"].get<double>();
        if (inn.contains("seed")) preset.innovation.seed = inn["seed"].get<std::uint64_t>();
    }

    if (preset.grid_T < 1) throw ParseError("preset: grid_T must be >= 1");
    if (preset.alpha_coefs.rows() != preset.beta_coefs.rows())
        throw ParseError("preset: alpha_coefs and beta_coefs must have the same size");
    return preset;
}

std::string preset_to_json(const SimPreset& preset) {
    json j;
    j["grid_T"] = preset.grid_T;
    j["n"] = preset.n;
    j["burnin"] = preset.burnin;
    if (preset.delta_const)
        j["delta"] = *preset.delta_const;
    else
        j["delta"] = preset.delta_coefs;
    j["basis_kind"] = to_string(preset.basis_kind);
    j["alpha_coefs"] = matrix_to_json(preset.alpha_coefs);
    j["beta_coefs"] = matrix_to_json(preset.beta_coefs);
    j["innovation"] = {{"kind", to_string(preset.innovation.kind)},
                       {"rate", preset.innovation.rate},
                       {"seed", preset.innovation.seed}};
    return j.dump(2);
}

SimPreset resolve_preset(const std::string& name_or_path) {
    if (name_or_path.empty() || name_or_path == "paper_sim" || name_or_path == "default")
        return default_sim_preset();
    return load_preset(name_or_path);
}

FGarchSpec build_spec(const SimPreset& preset) {
    const Grid grid{preset.grid_T};
    const int M = static_cast<int>(preset.alpha_coefs.rows());
    const BasisSet basis = make_basis(preset.basis_kind, M, grid);

    FGarchSpec spec;
    if (preset.delta_const) {
        spec.delta = constant_curve(grid, *preset.delta_const);
    } else {
        if (static_cast<int>(preset.delta_coefs.size()) != M)
            throw ParseError("preset: delta coefficient list must have length M");
        Eigen::VectorXd d(M);
        for (int m = 0; m < M; ++m) d[m] = preset.delta_coefs[m];
        spec.delta = reconstruct_curve(d, basis);
    }
    spec.alpha = reconstruct_kernel(preset.alpha_coefs, basis);
    spec.beta = reconstruct_kernel(preset.beta_coefs, basis);
    validate_spec(spec);
    return spec;
}

}  // namespace fgarch
