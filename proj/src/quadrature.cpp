#include "ptfem/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace ptfem {

void gauss_legendre_01(int n, Eigen::VectorXd& points, Eigen::VectorXd& weights) {
  points.resize(n);
  weights.resize(n);
  // Newton iteration on P_n over [-1,1], then shift to [0,1].
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = (n == 1) ? x : p1;
      double pnm1 = (n == 1) ? 1.0 : p0;
      pp = n * (x * pn - pnm1) / (x * x - 1.0);
      double dx = pn / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    points[n - 1 - i] = 0.5 * (1.0 + x);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
  }
}

int max_quadrature_degree(int dim) { return dim == 2 ? 14 : 10; }

namespace {

QuadratureRule make_rule(int dim, int degree) {
  QuadratureRule rule;
  rule.degree = degree;
  if (degree <= 1) {
    // centroid rule
    rule.points = Eigen::MatrixXd::Constant(1, dim, 1.0 / (dim + 1));
    rule.weights = Eigen::VectorXd::Constant(1, dim == 2 ? 0.5 : 1.0 / 6.0);
    return rule;
  }
  auto n_for = [](int poly_degree) { return poly_degree / 2 + 1; };
  if (dim == 2) {
    // xi = u, eta = v (1-u); Jacobian (1-u)
    int nu = n_for(degree + 1), nv = n_for(degree);
    Eigen::VectorXd pu, wu, pv, wv;
    gauss_legendre_01(nu, pu, wu);
    gauss_legendre_01(nv, pv, wv);
    rule.points.resize(nu * nv, 2);
    rule.weights.resize(nu * nv);
    int q = 0;
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nv; ++j, ++q) {
        double u = pu[i], v = pv[j];
        rule.points(q, 0) = u;
        rule.points(q, 1) = v * (1 - u);
        rule.weights[q] = wu[i] * wv[j] * (1 - u);
      }
  } else {
    // xi = u, eta = v (1-u), zeta = w (1-u)(1-v); Jacobian (1-u)^2 (1-v)
    int nu = n_for(degree + 2), nv = n_for(degree + 1), nw = n_for(degree);
    Eigen::VectorXd pu, wu, pv, wv, pw, ww;
    gauss_legendre_01(nu, pu, wu);
    gauss_legendre_01(nv, pv, wv);
    gauss_legendre_01(nw, pw, ww);
    rule.points.resize(nu * nv * nw, 3);
    rule.weights.resize(nu * nv * nw);
    int q = 0;
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nv; ++j)
        for (int k = 0; k < nw; ++k, ++q) {
          double u = pu[i], v = pv[j], w = pw[k];
          rule.points(q, 0) = u;
          rule.points(q, 1) = v * (1 - u);
          rule.points(q, 2) = w * (1 - u) * (1 - v);
          rule.weights[q] = wu[i] * wv[j] * ww[k] * (1 - u) * (1 - u) * (1 - v);
        }
  }
  return rule;
}

}  // namespace

const QuadratureRule& simplex_rule(int dim, int degree) {
  if (dim != 2 && dim != 3) throw std::domain_error("simplex_rule: dim must be 2 or 3");
  if (degree < 0 || degree > max_quadrature_degree(dim))
    throw std::domain_error("simplex_rule: degree " + std::to_string(degree) +
                            " beyond supported maximum " +
                            std::to_string(max_quadrature_degree(dim)));
  static std::map<std::pair<int, int>, QuadratureRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(dim, degree);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_rule(dim, degree)).first;
  return it->second;
}

}  // namespace ptfem
