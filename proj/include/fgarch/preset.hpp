#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgarch/basis.hpp"
#include "fgarch/model.hpp"

namespace fgarch {

/// Simulation preset: the data-generating process plus run sizes. The
/// intercept is either a constant or a coefficient list in the same basis
/// the kernel coefficient matrices refer to.
struct SimPreset {
    int grid_T = 285;
    int n = 600;
    int burnin = 1000;
    std::optional<double> delta_const = 0.01;
    std::vector<double> delta_coefs;
    BasisKind basis_kind = BasisKind::bump;
    Eigen::MatrixXd alpha_coefs;
    Eigen::MatrixXd beta_coefs;
    InnovationGen innovation;
};

/// The shipped default: delta = 0.01, alpha = beta = 0.4 on the normalized
/// parabolic arch sqrt(30) t (1-t), OU innovations with rate 200, T = 285.
SimPreset default_sim_preset();

SimPreset load_preset(const std::string& path);
std::string preset_to_json(const SimPreset& preset);

/// Resolves "paper_sim"/"default" to the built-in preset, anything else as a
/// file path.
SimPreset resolve_preset(const std::string& name_or_path);

/// Materializes delta/alpha/beta on the preset grid.
FGarchSpec build_spec(const SimPreset& preset);

}  // namespace fgarch
