// Simplex quadrature exact to a requested total polynomial degree, generated
// from collapsed-coordinate Gauss products.

#pragma once

#include <Eigen/Dense>

namespace ptfem {

struct QuadratureRule {
  Eigen::MatrixXd points;   // n x dim, reference coordinates
  Eigen::VectorXd weights;  // sum = 1/2 (triangle) or 1/6 (tetrahedron)
  int degree = 0;           // declared exactness
  int size() const { return static_cast<int>(weights.size()); }
};

/// Maximum supported exactness degree per dimension.
int max_quadrature_degree(int dim);

/// Rule on the reference triangle (dim 2) or tetrahedron (dim 3), exact for
/// all monomials of total degree <= degree.  Cached; throws std::domain_error
/// beyond the supported maximum.
const QuadratureRule& simplex_rule(int dim, int degree);

/// n-point Gauss-Legendre rule on [0,1]; exact to degree 2n-1.
void gauss_legendre_01(int n, Eigen::VectorXd& points, Eigen::VectorXd& weights);

}  // namespace ptfem
