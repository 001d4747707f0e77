#include "ptfem/manufactured.hpp"

#include <cmath>

namespace ptfem {

Manufactured2D antiplane_solution() {
  Manufactured2D sol;
  sol.u = [](const Eigen::Vector2d& x) {
    double ex = x[0] <= 0 ? std::exp(x[0] + 1) : std::exp(1 - x[0]);
    return (1 - x[1] * x[1]) * (ex - 1);
  };
  sol.p = [](const Eigen::Vector2d& x) {
    double y = x[1];
    if (x[0] <= 0) {
      double ex = std::exp(x[0] + 1);
      return Eigen::Vector2d((1 - y * y) * ex, 2 * y * (1 - ex));
    }
    double ex = std::exp(1 - x[0]);
    return Eigen::Vector2d((y * y - 1) * ex, 2 * y * (1 - ex));
  };
  sol.f = [](const Eigen::Vector2d&) { return 0.0; };
  // p = grad u makes the elastic and curl terms of the strong form vanish,
  // leaving m = mu_micro p with unit parameters.
  sol.m = sol.p;
  return sol;
}

Manufactured2D antiplane_patch(const MaterialParams2D& params, double a, double b, double c) {
  Manufactured2D sol;
  sol.u = [=](const Eigen::Vector2d& x) { return a + b * x[0] + c * x[1]; };
  sol.p = [=](const Eigen::Vector2d&) { return Eigen::Vector2d(b, c); };
  sol.f = [](const Eigen::Vector2d&) { return 0.0; };
  sol.m = [=](const Eigen::Vector2d&) {
    return Eigen::Vector2d(params.mu_micro * b, params.mu_micro * c);
  };
  return sol;
}

Manufactured2D antiplane_zero() {
  Manufactured2D sol;
  sol.u = [](const Eigen::Vector2d&) { return 0.0; };
  sol.p = [](const Eigen::Vector2d&) { return Eigen::Vector2d::Zero().eval(); };
  sol.f = sol.u;
  sol.m = sol.p;
  return sol;
}

Manufactured3D rmm3d_solution() {
  Manufactured3D sol;
  const double pi = M_PI;
  sol.u = [=](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(0, 0, std::sin(pi * x[0]));
  };
  sol.P = [=](const Eigen::Vector3d& x) {
    double y = x[1], z = x[2];
    double g = 10 * (1 - y * y) * (1 - z * z) * std::sin(pi * x[0]);
    Eigen::Matrix3d P = Eigen::Matrix3d::Zero();
    P(2, 0) = pi * std::cos(pi * x[0]);
    P(2, 1) = -g * z;
    P(2, 2) = g * y;
    return P;
  };
  sol.f = [=](const Eigen::Vector3d& x) {
    double y = x[1], z = x[2];
    double s = std::sin(pi * x[0]), co = std::cos(pi * x[0]);
    return Eigen::Vector3d(10 * pi * y * (1 - y * y) * (1 - z * z) * co,
                           20 * (z * z - y * y) * s,
                           20 * y * z * (3 * y * y - z * z - 2) * s);
  };
  sol.M = [=](const Eigen::Vector3d& x) {
    double y = x[1], z = x[2];
    double s = std::sin(pi * x[0]), co = std::cos(pi * x[0]);
    double G = 10 * (1 - y * y) * (1 - z * z);
    Eigen::Matrix3d M;
    M << 2 * G * y * s, 0, pi * co,
        0, 2 * G * y * s, -2 * G * z * s,
        pi * (20 * y * y * y * z - 20 * y * z * z * z + 1) * co,
        z * (120 * y * y - 80 - (2 + pi * pi) * G) * s,
        y * ((6 + pi * pi) * G + 80 - 120 * z * z) * s;
    return M;
  };
  return sol;
}

Manufactured3D rmm3d_patch(const MaterialParams3D& params) {
  Manufactured3D sol;
  Eigen::Matrix3d grad;
  grad << 0.5, -0.25, 1.0, 0.75, 0.5, -0.5, 0.25, 1.0, -0.75;
  Eigen::Vector3d offset(0.1, -0.2, 0.3);
  sol.u = [=](const Eigen::Vector3d& x) { return (offset + grad * x).eval(); };
  sol.P = [=](const Eigen::Vector3d&) { return grad; };
  sol.f = [](const Eigen::Vector3d&) { return Eigen::Vector3d::Zero().eval(); };
  Eigen::Matrix3d sym = 0.5 * (grad + grad.transpose());
  Eigen::Matrix3d M =
      params.lambda_micro * sym.trace() * Eigen::Matrix3d::Identity() + 2 * params.mu_micro * sym;
  sol.M = [=](const Eigen::Vector3d&) { return M; };
  return sol;
}

Manufactured3D rmm3d_zero() {
  Manufactured3D sol;
  sol.u = [](const Eigen::Vector3d&) { return Eigen::Vector3d::Zero().eval(); };
  sol.P = [](const Eigen::Vector3d&) { return Eigen::Matrix3d::Zero().eval(); };
  sol.f = sol.u;
  sol.M = sol.P;
  return sol;
}

}  // namespace ptfem
