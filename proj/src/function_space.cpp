#include "fgarch/function_space.hpp"

#include <cmath>

namespace fgarch {

double inner_product(const Curve& f, const Curve& g) {
    require_same_grid(f.grid, g.grid, "inner_product");
    return f.values.dot(g.values) * f.grid.weight();
}

double l2_norm(const Curve& f) { return std::sqrt(f.values.squaredNorm() * f.grid.weight()); }

double sup_norm(const Curve& f) {
    if (f.values.size() == 0) return 0.0;
    return f.values.cwiseAbs().maxCoeff();
}

double hs_norm(const Kernel2D& K) { return K.values.norm() / K.grid.T; }

Curve apply_kernel(const Kernel2D& K, const Curve& f) {
    require_same_grid(K.grid, f.grid, "apply_kernel");
    return Curve(f.grid, (K.values * f.values) * f.grid.weight());
}

Curve row_integrate(const Kernel2D& K) {
    return Curve(K.grid, K.values.rowwise().sum() * K.grid.weight());
}

}  // namespace fgarch
