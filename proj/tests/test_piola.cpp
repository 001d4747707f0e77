#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ptfem/piola.hpp"
#include "ptfem/vector_element.hpp"
#include "ptfem/verification.hpp"

using namespace ptfem;

namespace {

AffineMap random_map(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (;;) {
    std::vector<Eigen::VectorXd> v;
    for (int i = 0; i <= dim; ++i) {
      Eigen::VectorXd x(dim);
      for (int k = 0; k < dim; ++k) x[k] = unif(rng);
      v.push_back(x);
    }
    try {
      AffineMap m = AffineMap::from_vertices(v);
      if (std::abs(m.det) > 0.1) return m;
    } catch (const std::domain_error&) {
    }
  }
}

AffineMap diag_map(std::vector<double> d) {
  AffineMap m;
  m.dim = static_cast<int>(d.size());
  m.origin = Eigen::VectorXd::Zero(m.dim);
  m.jacobian = Eigen::MatrixXd::Zero(m.dim, m.dim);
  for (int i = 0; i < m.dim; ++i) m.jacobian(i, i) = d[i];
  m.det = m.jacobian.determinant();
  m.jacobian_inv_t = m.jacobian.inverse().transpose();
  return m;
}

}  // namespace

TEST_CASE("push-forward examples") {
  AffineMap id = diag_map({1, 1});
  CHECK(covariant_push(id, Eigen::Vector2d(0.3, -0.7)).isApprox(Eigen::Vector2d(0.3, -0.7)));
  CHECK(contravariant_push(id, Eigen::Vector2d(0.3, -0.7))
            .isApprox(Eigen::Vector2d(0.3, -0.7)));

  AffineMap st = diag_map({2, 1});
  CHECK(covariant_push(st, Eigen::Vector2d(1, 0)).isApprox(Eigen::Vector2d(0.5, 0)));
  CHECK(contravariant_push(st, Eigen::Vector2d(1, 0)).isApprox(Eigen::Vector2d(1, 0)));
  CHECK(push_gradient(st, Eigen::Vector2d(2, 0)).isApprox(Eigen::Vector2d(1, 0)));

  AffineMap rot;
  rot.dim = 2;
  rot.origin = Eigen::Vector2d::Zero();
  rot.jacobian.resize(2, 2);
  rot.jacobian << 0, -1, 1, 0;
  rot.det = 1;
  rot.jacobian_inv_t = rot.jacobian.inverse().transpose();
  CHECK(covariant_push(rot, Eigen::Vector2d(1, 0)).isApprox(Eigen::Vector2d(0, 1)));

  AffineMap sq = diag_map({2, 2});
  CHECK(contravariant_push(sq, Eigen::Vector2d(0, 1)).isApprox(Eigen::Vector2d(0, 0.5)));

  CHECK(push_curl(diag_map({2, 1}), -2.0) == doctest::Approx(-1.0));
  CHECK(push_curl(diag_map({1, 1, 2}), Eigen::Vector3d(0, 0, 1))
            .isApprox(Eigen::Vector3d(0, 0, 1)));
  CHECK(push_div(diag_map({2, 2}), 2.0) == doctest::Approx(0.5));
  CHECK(push_div(diag_map({1, 1}), 5.0) == doctest::Approx(5.0));
}

TEST_CASE("affine maps reproduce cell vertices") {
  for (int dim : {2, 3}) {
    AffineMap m = random_map(dim, 17 + dim);
    const auto& s = ReferenceSimplex::get(dim);
    for (int i = 0; i < s.num_vertices(); ++i) {
      Eigen::VectorXd mapped = m.to_physical(s.vertex(i));
      CHECK(m.to_reference(mapped).isApprox(s.vertex(i), 1e-12));
    }
    CHECK_THROWS_AS(AffineMap::from_vertices(std::vector<Eigen::VectorXd>(
                        dim + 1, Eigen::VectorXd::Zero(dim))),
                    std::domain_error);
  }
}

TEST_CASE("tangential circulation preservation") {
  for (int dim : {2, 3})
    for (unsigned seed = 0; seed < 20; ++seed) {
      AffineMap m = random_map(dim, 100 + seed);
      const auto& s = ReferenceSimplex::get(dim);
      std::mt19937 rng(seed);
      std::uniform_real_distribution<double> unif(-2, 2);
      Eigen::VectorXd v(dim);
      for (int k = 0; k < dim; ++k) v[k] = unif(rng);
      for (const auto& e : s.edges()) {
        Eigen::VectorXd tau = s.edge_tangent(e);
        CHECK(covariant_push(m, v).dot(m.jacobian * tau) ==
              doctest::Approx(v.dot(tau)).epsilon(1e-12));
      }
    }
}

TEST_CASE("normal flux preservation") {
  for (int dim : {2, 3})
    for (unsigned seed = 0; seed < 20; ++seed) {
      AffineMap m = random_map(dim, 300 + seed);
      const auto& s = ReferenceSimplex::get(dim);
      std::mt19937 rng(seed);
      std::uniform_real_distribution<double> unif(-2, 2);
      Eigen::VectorXd v(dim);
      for (int k = 0; k < dim; ++k) v[k] = unif(rng);
      const auto& facets = dim == 2 ? s.edges() : s.faces();
      Eigen::MatrixXd cof = m.det * m.jacobian_inv_t;
      for (const auto& f : facets) {
        Eigen::VectorXd nu = s.facet_normal(f);
        CHECK(contravariant_push(m, v).dot(cof * nu) ==
              doctest::Approx(v.dot(nu)).epsilon(1e-12));
      }
    }
}

TEST_CASE("commuting diagram against finite differences") {
  const double step = 1e-5;
  // H(curl): the curl of the pushed field equals the pushed reference curl
  for (int dim : {2, 3}) {
    const auto& s = ReferenceSimplex::get(dim);
    auto el = VectorElement::build(Family::n2, 2, s, ScalarFamily::lagrange);
    for (unsigned seed = 0; seed < 10; ++seed) {
      AffineMap m = random_map(dim, 500 + seed);
      Eigen::MatrixXd pts = random_interior_points(s, 2, 900 + seed);
      Eigen::VectorXd xi = pts.row(0);
      Eigen::VectorXd x = m.to_physical(xi);
      const int fn = 3 + static_cast<int>(seed) % (el.size() - 3);
      auto field = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return covariant_push(m, el.eval(m.to_reference(y)).row(fn).transpose());
      };
      if (dim == 2) {
        Eigen::VectorXd xp = x, xm = x, yp = x, ym = x;
        xp[0] += step;
        xm[0] -= step;
        yp[1] += step;
        ym[1] -= step;
        double fd = (field(xp)[1] - field(xm)[1]) / (2 * step) -
                    (field(yp)[0] - field(ym)[0]) / (2 * step);
        double analytic = push_curl(m, el.curl(xi)(fn, 0));
        CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
      } else {
        Eigen::Matrix3d grad;  // grad(r, c) = d field_r / d x_c
        for (int c = 0; c < 3; ++c) {
          Eigen::VectorXd xp = x, xm = x;
          xp[c] += step;
          xm[c] -= step;
          grad.col(c) = (field(xp) - field(xm)) / (2 * step);
        }
        Eigen::Vector3d fd(grad(2, 1) - grad(1, 2), grad(0, 2) - grad(2, 0),
                           grad(1, 0) - grad(0, 1));
        Eigen::Vector3d analytic = push_curl(m, Eigen::Vector3d(el.curl(xi).row(fn)));
        CHECK((fd - analytic).norm() < 1e-6 * std::max(1.0, analytic.norm()));
      }
    }
  }
  // H(div): same for divergences
  for (int dim : {2, 3}) {
    const auto& s = ReferenceSimplex::get(dim);
    auto el = VectorElement::build(Family::bdm, 2, s, ScalarFamily::lagrange);
    for (unsigned seed = 0; seed < 10; ++seed) {
      AffineMap m = random_map(dim, 700 + seed);
      Eigen::MatrixXd pts = random_interior_points(s, 2, 1100 + seed);
      Eigen::VectorXd xi = pts.row(0);
      Eigen::VectorXd x = m.to_physical(xi);
      const int fn = static_cast<int>(seed) % el.size();
      auto field = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return contravariant_push(m, el.eval(m.to_reference(y)).row(fn).transpose());
      };
      double fd = 0;
      for (int c = 0; c < dim; ++c) {
        Eigen::VectorXd xp = x, xm = x;
        xp[c] += step;
        xm[c] -= step;
        fd += (field(xp)[c] - field(xm)[c]) / (2 * step);
      }
      double analytic = push_div(m, el.divergence(xi)[fn]);
      CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
    }
  }
}

TEST_CASE("lowest-order radial field has constant physical divergence") {
  auto rt = VectorElement::build(Family::rt, 0, ReferenceSimplex::triangle(),
                                 ScalarFamily::lagrange);
  AffineMap m = diag_map({2, 1});  // det = 2
  // second field has reference divergence +2, so physical divergence 1
  CHECK(push_div(m, rt.divergence(Eigen::Vector2d(0.3, 0.3))[1]) == doctest::Approx(1.0));
}
