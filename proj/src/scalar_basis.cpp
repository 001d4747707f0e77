#include "ptfem/scalar_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace ptfem {

namespace {

double multinomial(int p, const std::array<int, 4>& alpha) {
  double r = 1.0;
  int used = 0;
  for (int a : alpha) {
    if (a <= 0) continue;
    for (int k = 1; k <= a; ++k) r *= static_cast<double>(++used) / k;
  }
  (void)p;
  return r;
}

// Gradients of the barycentric coordinates (constant).
Eigen::MatrixXd barycentric_gradients(const ReferenceSimplex& s) {
  int d = s.dim();
  Eigen::MatrixXd g(d + 1, d);
  if (d == 2) {
    g << -1, -1,  // lambda_1 = 1 - xi - eta
        0, 1,     // lambda_2 = eta
        1, 0;     // lambda_3 = xi
  } else {
    g << -1, -1, -1,  // lambda_1 = 1 - xi - eta - zeta
        0, 0, 1,      // lambda_2 = zeta
        0, 1, 0,      // lambda_3 = eta
        1, 0, 0;      // lambda_4 = xi
  }
  return g;
}

}  // namespace

ScalarBasis::ScalarBasis(ScalarFamily family, int order, const ReferenceSimplex& simplex)
    : family_(family), order_(order), simplex_(&simplex) {
  if (order < 1) throw std::domain_error("scalar basis: order must be >= 1");
  const int p = order;

  // Enumerate multi-indices by polytope, in reference polytope order.
  for (const auto& poly : simplex.polytopes()) {
    int count = 0;
    auto push = [&](std::array<int, 4> alpha) { fns_.push_back({poly, alpha, count++}); };
    switch (poly.kind) {
      case PolytopeKind::vertex: {
        std::array<int, 4> a = {0, 0, 0, 0};
        a[poly.verts[0]] = p;
        push(a);
        break;
      }
      case PolytopeKind::edge: {
        // interior indices ordered along the ascending-vertex direction
        for (int k = 1; k <= p - 1; ++k) {
          std::array<int, 4> a = {0, 0, 0, 0};
          a[poly.verts[0]] = p - k;
          a[poly.verts[1]] = k;
          push(a);
        }
        break;
      }
      case PolytopeKind::face: {
        for (int ai = 1; ai <= p - 2; ++ai)
          for (int bi = 1; bi <= p - 1 - ai; ++bi) {
            std::array<int, 4> a = {0, 0, 0, 0};
            a[poly.verts[0]] = ai;
            a[poly.verts[1]] = bi;
            a[poly.verts[2]] = p - ai - bi;
            push(a);
          }
        break;
      }
      case PolytopeKind::cell: {
        if (poly.num_verts() == 3) {
          for (int ai = 1; ai <= p - 2; ++ai)
            for (int bi = 1; bi <= p - 1 - ai; ++bi) {
              std::array<int, 4> a = {ai, bi, p - ai - bi, 0};
              push(a);
            }
        } else {
          for (int ai = 1; ai <= p - 3; ++ai)
            for (int bi = 1; bi <= p - 2 - ai; ++bi)
              for (int ci = 1; ci <= p - 1 - ai - bi; ++ci) {
                std::array<int, 4> a = {ai, bi, ci, p - ai - bi - ci};
                push(a);
              }
        }
        break;
      }
    }
  }

  const int n = size();
  if (family == ScalarFamily::bernstein) {
    coeff_ = Eigen::MatrixXd::Identity(n, n);
  } else {
    // Lagrange on the equispaced principal lattice: invert the Bernstein
    // Vandermonde at the nodes.
    Eigen::MatrixXd vand(n, n);
    for (int i = 0; i < n; ++i) vand.row(i) = bernstein_eval(node(i)).transpose();
    coeff_ = vand.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n)).transpose();
  }
}

std::vector<int> ScalarBasis::polytope_functions(const Polytope& p) const {
  std::vector<int> idx;
  for (int i = 0; i < size(); ++i)
    if (fns_[i].polytope == p) idx.push_back(i);
  return idx;
}

Eigen::VectorXd ScalarBasis::node(int i) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim());
  for (int v = 0; v < simplex_->num_vertices(); ++v)
    x += (static_cast<double>(fns_[i].alpha[v]) / order_) * simplex_->vertex(v);
  return x;
}

Eigen::VectorXd ScalarBasis::bernstein_eval(const Eigen::VectorXd& point) const {
  Eigen::VectorXd lam = simplex_->barycentric(point);
  Eigen::VectorXd vals(size());
  for (int i = 0; i < size(); ++i) {
    double v = multinomial(order_, fns_[i].alpha);
    for (int k = 0; k < simplex_->num_vertices(); ++k)
      v *= std::pow(lam[k], fns_[i].alpha[k]);
    vals[i] = v;
  }
  return vals;
}

Eigen::MatrixXd ScalarBasis::bernstein_gradient(const Eigen::VectorXd& point) const {
  Eigen::VectorXd lam = simplex_->barycentric(point);
  Eigen::MatrixXd dlam = barycentric_gradients(*simplex_);
  Eigen::MatrixXd grads = Eigen::MatrixXd::Zero(size(), dim());
  const int nv = simplex_->num_vertices();
  for (int i = 0; i < size(); ++i) {
    const auto& alpha = fns_[i].alpha;
    double m = multinomial(order_, alpha);
    for (int k = 0; k < nv; ++k) {
      if (alpha[k] == 0) continue;
      double term = m * alpha[k] * std::pow(lam[k], alpha[k] - 1);
      for (int j = 0; j < nv; ++j)
        if (j != k) term *= std::pow(lam[j], alpha[j]);
      grads.row(i) += term * dlam.row(k);
    }
  }
  return grads;
}

Eigen::VectorXd ScalarBasis::eval(const Eigen::VectorXd& point) const {
  if (!simplex_->contains(point))
    throw std::domain_error("scalar basis: point outside reference simplex");
  return coeff_ * bernstein_eval(point);
}

Eigen::MatrixXd ScalarBasis::gradient(const Eigen::VectorXd& point) const {
  if (!simplex_->contains(point))
    throw std::domain_error("scalar basis: point outside reference simplex");
  return coeff_ * bernstein_gradient(point);
}

}  // namespace ptfem
