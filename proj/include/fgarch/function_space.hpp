#pragma once

#include "fgarch/types.hpp"

namespace fgarch {

/// L^2 inner product by right-Riemann quadrature: (1/T) sum_j f(t_j) g(t_j).
double inner_product(const Curve& f, const Curve& g);

/// sqrt(inner_product(f, f)).
double l2_norm(const Curve& f);

/// max_j |f(t_j)|.
double sup_norm(const Curve& f);

/// Hilbert-Schmidt norm: sqrt((1/T^2) sum_{j,k} K(t_j,t_k)^2).
double hs_norm(const Kernel2D& K);

/// Integral operator application: g(t_j) = (1/T) sum_k K(t_j,t_k) f(t_k).
Curve apply_kernel(const Kernel2D& K, const Curve& f);

/// Row integral c(t_j) = (1/T) sum_k K(t_j,t_k); equals apply_kernel(K, 1).
Curve row_integrate(const Kernel2D& K);

}  // namespace fgarch
