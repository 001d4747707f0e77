// Affine reference-to-physical maps and the covariant/contravariant Piola
// push-forwards for values, gradients, curls and divergences.

#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "ptfem/geometry.hpp"

namespace ptfem {

/// x(xi) = origin + J xi.  Columns of J are the mapped coordinate directions;
/// with the reference vertex ordering used here, column k is the image of the
/// edge from v1 to vertex (n_verts - k), i.e. J = [V3-V1 | V2-V1] on the
/// triangle and [V4-V1 | V3-V1 | V2-V1] on the tetrahedron.
struct AffineMap {
  int dim = 2;
  Eigen::VectorXd origin;
  Eigen::MatrixXd jacobian;
  Eigen::MatrixXd jacobian_inv_t;
  double det = 0;

  static AffineMap from_vertices(const std::vector<Eigen::VectorXd>& v) {
    AffineMap m;
    m.dim = static_cast<int>(v.size()) - 1;
    m.origin = v[0];
    m.jacobian.resize(m.dim, m.dim);
    for (int c = 0; c < m.dim; ++c) m.jacobian.col(c) = v[m.dim - c] - v[0];
    m.det = m.jacobian.determinant();
    if (m.det == 0) throw std::domain_error("affine map: singular Jacobian");
    m.jacobian_inv_t = m.jacobian.inverse().transpose();
    return m;
  }

  Eigen::VectorXd to_physical(const Eigen::VectorXd& xi) const {
    return origin + jacobian * xi;
  }
  Eigen::VectorXd to_reference(const Eigen::VectorXd& x) const {
    return jacobian_inv_t.transpose() * (x - origin);
  }
};

/// H(curl) push-forward: theta = J^{-T} vartheta.
inline Eigen::VectorXd covariant_push(const AffineMap& m, const Eigen::VectorXd& v) {
  return m.jacobian_inv_t * v;
}

/// H(div) push-forward: phi = (1/det J) J vartheta.
inline Eigen::VectorXd contravariant_push(const AffineMap& m, const Eigen::VectorXd& v) {
  return (m.jacobian * v) / m.det;
}

/// Gradient push-forward: grad_x n = J^{-T} grad_xi n.
inline Eigen::VectorXd push_gradient(const AffineMap& m, const Eigen::VectorXd& g) {
  return m.jacobian_inv_t * g;
}

/// 2D curl of a covariant-pushed field: rot_x = rot_xi / det J.
inline double push_curl(const AffineMap& m, double rot_ref) { return rot_ref / m.det; }

/// 3D curl of a covariant-pushed field: curl_x = (1/det J) J curl_xi.
inline Eigen::Vector3d push_curl(const AffineMap& m, const Eigen::Vector3d& curl_ref) {
  return (m.jacobian * curl_ref) / m.det;
}

/// Divergence of a contravariant-pushed field: div_x = div_xi / det J.
inline double push_div(const AffineMap& m, double div_ref) { return div_ref / m.det; }

}  // namespace ptfem
