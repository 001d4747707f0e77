// Manufactured displacement/microdistortion fields with the matching loads
// and Dirichlet data for the antiplane-shear and 3D model problems.

#pragma once

#include <functional>

#include <Eigen/Dense>

namespace ptfem {

struct MaterialParams2D {
  double mu_e = 1, mu_micro = 1, mu_macro = 1, L_c = 1;
};

struct MaterialParams3D {
  double lambda_e = 1, mu_e = 1, lambda_micro = 1, mu_micro = 1;
  double mu_c = 0, mu_macro = 1, L_c = 1;
};

struct Manufactured2D {
  std::function<double(const Eigen::Vector2d&)> u;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> p;
  std::function<double(const Eigen::Vector2d&)> f;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> m;
};

struct Manufactured3D {
  std::function<Eigen::Vector3d(const Eigen::Vector3d&)> u;
  std::function<Eigen::Matrix3d(const Eigen::Vector3d&)> P;
  std::function<Eigen::Vector3d(const Eigen::Vector3d&)> f;
  std::function<Eigen::Matrix3d(const Eigen::Vector3d&)> M;
};

/// Piecewise-exponential antiplane solution on (-1,1)^2; u and the
/// tangential trace of p vanish on the whole boundary.  The normal component
/// of p jumps across x = 0, which must therefore be a mesh line.  Matches
/// unit material parameters.
Manufactured2D antiplane_solution();

/// Linear displacement patch: u = a + b x + c y, p = grad u, f = 0,
/// m = mu_micro * p.
Manufactured2D antiplane_patch(const MaterialParams2D& params, double a = 0.25,
                               double b = 1.0, double c = -0.5);

Manufactured2D antiplane_zero();

/// Trigonometric 3D solution on (-1,1)^3 with unit lambda/mu parameters and
/// mu_c = 0; u vanishes on the boundary, the tangential trace of P does not.
Manufactured3D rmm3d_solution();

/// Linear displacement patch: u affine, P = Du, f = 0, M = C_micro sym P.
Manufactured3D rmm3d_patch(const MaterialParams3D& params);

Manufactured3D rmm3d_zero();

}  // namespace ptfem
