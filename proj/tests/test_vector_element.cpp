#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "ptfem/vector_element.hpp"
#include "ptfem/verification.hpp"

using namespace ptfem;

namespace {

struct Tuple {
  Family family;
  int p;
  int dim;
};

std::vector<Tuple> supported(int pmax) {
  std::vector<Tuple> out;
  for (int p = 1; p <= pmax; ++p)
    for (int dim : {2, 3}) {
      out.push_back({Family::n2, p, dim});
      out.push_back({Family::bdm, p, dim});
    }
  for (int p = 0; p <= pmax; ++p) {
    out.push_back({Family::n1, p, 2});
    out.push_back({Family::rt, p, 2});
  }
  out.push_back({Family::n1, 0, 3});
  return out;
}

// points spread over a polytope, strictly inside it
std::vector<Eigen::VectorXd> polytope_points(const ReferenceSimplex& s, const Polytope& q,
                                             int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.08, 0.92);
  std::vector<Eigen::VectorXd> pts;
  for (int rep = 0; rep < count; ++rep) {
    Eigen::VectorXd bary(q.num_verts());
    for (int k = 0; k < q.num_verts(); ++k) bary[k] = unif(rng);
    bary /= bary.sum();
    pts.push_back(s.polytope_point(q, bary));
  }
  return pts;
}

int scalar_fn(const ScalarBasis& basis, const Polytope& poly, int local) {
  return basis.polytope_functions(poly)[local];
}

// dense monomial least-squares fit of a component sampled on random points
struct PolyFit {
  std::vector<std::array<int, 3>> exps;
  Eigen::MatrixXd coeffs;  // one column per element function
  double residual = 0;
};

PolyFit fit_components(const VectorElement& el, int degree, int component, unsigned seed) {
  PolyFit fit;
  const int dim = el.dim();
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) {
      if (dim == 2)
        fit.exps.push_back({a, b, 0});
      else
        for (int c = 0; a + b + c <= degree; ++c) fit.exps.push_back({a, b, c});
    }
  const int ncoef = static_cast<int>(fit.exps.size());
  const int npts = 2 * ncoef + 10;
  Eigen::MatrixXd pts = random_interior_points(el.simplex(), npts, seed);
  Eigen::MatrixXd vand(npts, ncoef);
  Eigen::MatrixXd vals(npts, el.size());
  for (int q = 0; q < npts; ++q) {
    for (int m = 0; m < ncoef; ++m) {
      double v = std::pow(pts(q, 0), fit.exps[m][0]) * std::pow(pts(q, 1), fit.exps[m][1]);
      if (dim == 3) v *= std::pow(pts(q, 2), fit.exps[m][2]);
      vand(q, m) = v;
    }
    vals.row(q) = el.eval(pts.row(q)).col(component).transpose();
  }
  fit.coeffs = vand.colPivHouseholderQr().solve(vals);
  fit.residual = (vand * fit.coeffs - vals).cwiseAbs().maxCoeff();
  return fit;
}

}  // namespace

TEST_CASE("dimension formulas") {
  for (int p = 1; p <= 4; ++p) {
    CHECK(VectorElement::build(Family::n2, p, ReferenceSimplex::triangle(),
                               ScalarFamily::lagrange)
              .size() == (p + 2) * (p + 1));
    CHECK(VectorElement::build(Family::bdm, p, ReferenceSimplex::triangle(),
                               ScalarFamily::bernstein)
              .size() == (p + 2) * (p + 1));
  }
  for (int p = 0; p <= 3; ++p) {
    CHECK(VectorElement::build(Family::n1, p, ReferenceSimplex::triangle(),
                               ScalarFamily::bernstein)
              .size() == (p + 3) * (p + 1));
    CHECK(VectorElement::build(Family::rt, p, ReferenceSimplex::triangle(),
                               ScalarFamily::lagrange)
              .size() == (p + 3) * (p + 1));
  }
  for (int p = 1; p <= 3; ++p) {
    CHECK(VectorElement::build(Family::n2, p, ReferenceSimplex::tetrahedron(),
                               ScalarFamily::lagrange)
              .size() == (p + 3) * (p + 2) * (p + 1) / 2);
    CHECK(VectorElement::build(Family::bdm, p, ReferenceSimplex::tetrahedron(),
                               ScalarFamily::lagrange)
              .size() == (p + 3) * (p + 2) * (p + 1) / 2);
  }
  CHECK(VectorElement::build(Family::n1, 0, ReferenceSimplex::tetrahedron(),
                             ScalarFamily::lagrange)
            .size() == 6);
}

TEST_CASE("function breakdown of the first orders") {
  auto n2 = VectorElement::build(Family::n2, 1, ReferenceSimplex::triangle(),
                                 ScalarFamily::lagrange);
  REQUIRE(n2.size() == 6);
  std::map<Polytope, int> per_vertex;
  for (const auto& fn : n2.functions()) {
    CHECK(fn.kind == FnKind::vertex_edge);
    per_vertex[fn.source]++;
  }
  for (const auto& [v, count] : per_vertex) CHECK(count == 2);

  auto n1 = VectorElement::build(Family::n1, 2, ReferenceSimplex::triangle(),
                                 ScalarFamily::bernstein);
  REQUIRE(n1.size() == 15);
  std::map<FnKind, int> kinds;
  for (const auto& fn : n1.functions()) kinds[fn.kind]++;
  CHECK(kinds[FnKind::lowest_order] == 3);
  CHECK(kinds[FnKind::gradient] == 7);  // 3 edges x 2 + 1 cell
  CHECK(kinds[FnKind::vertex_cell] == 2);
  CHECK(kinds[FnKind::edge_cell] == 3);
  CHECK(kinds[FnKind::cell] == 0);

  auto bdm = VectorElement::build(Family::bdm, 1, ReferenceSimplex::tetrahedron(),
                                  ScalarFamily::lagrange);
  REQUIRE(bdm.size() == 12);
  std::map<Polytope, int> per_v;
  for (const auto& fn : bdm.functions()) {
    CHECK(fn.kind == FnKind::vertex_face);
    per_v[fn.source]++;
  }
  for (const auto& [v, count] : per_v) CHECK(count == 3);
}

TEST_CASE("point evaluations") {
  auto n2 = VectorElement::build(Family::n2, 1, ReferenceSimplex::triangle(),
                                 ScalarFamily::lagrange);
  Eigen::MatrixXd at_v1 = n2.eval(Eigen::Vector2d(0, 0));
  CHECK(at_v1.row(0).transpose().isApprox(Eigen::Vector2d(1, 0)));
  CHECK(at_v1.row(1).transpose().isApprox(Eigen::Vector2d(0, 1)));
  for (int i = 2; i < 6; ++i) CHECK(at_v1.row(i).norm() == doctest::Approx(0));

  auto n1 = VectorElement::build(Family::n1, 0, ReferenceSimplex::triangle(),
                                 ScalarFamily::lagrange);
  CHECK(n1.eval(Eigen::Vector2d(0, 0)).row(0).transpose().isApprox(Eigen::Vector2d(0, 1)));

  auto rt = VectorElement::build(Family::rt, 0, ReferenceSimplex::triangle(),
                                 ScalarFamily::lagrange);
  CHECK(rt.eval(Eigen::Vector2d(1.0 / 3, 1.0 / 3))
            .row(2)
            .transpose()
            .isApprox(Eigen::Vector2d(-1.0 / 3, -1.0 / 3)));
}

TEST_CASE("reference curls") {
  auto n1 = VectorElement::build(Family::n1, 0, ReferenceSimplex::triangle(),
                                 ScalarFamily::lagrange);
  Eigen::MatrixXd rot = n1.curl(Eigen::Vector2d(0.25, 0.4));
  CHECK(rot(0, 0) == doctest::Approx(-2));
  CHECK(rot(1, 0) == doctest::Approx(2));
  CHECK(rot(2, 0) == doctest::Approx(-2));

  auto n1p2 = VectorElement::build(Family::n1, 2, ReferenceSimplex::triangle(),
                                   ScalarFamily::bernstein);
  Eigen::MatrixXd pts = random_interior_points(n1p2.simplex(), 8, 5);
  for (int q = 0; q < pts.rows(); ++q) {
    Eigen::MatrixXd c = n1p2.curl(pts.row(q));
    for (int i = 0; i < n1p2.size(); ++i)
      if (n1p2.functions()[i].kind == FnKind::gradient)
        CHECK(std::abs(c(i, 0)) < 1e-12);
  }
}

TEST_CASE("reference divergences") {
  auto rt = VectorElement::build(Family::rt, 1, ReferenceSimplex::triangle(),
                                 ScalarFamily::lagrange);
  Eigen::MatrixXd pts = random_interior_points(rt.simplex(), 8, 6);
  for (int q = 0; q < pts.rows(); ++q) {
    Eigen::VectorXd d = rt.divergence(pts.row(q));
    for (int i = 0; i < rt.size(); ++i)
      if (rt.functions()[i].kind == FnKind::scalar_curl) CHECK(std::abs(d[i]) < 1e-12);
  }

  auto bdm = VectorElement::build(Family::bdm, 1, ReferenceSimplex::triangle(),
                                  ScalarFamily::lagrange);
  // function 1 is the v1 scalar times -e2: div = d/deta(-(1-xi-eta)) = 1
  CHECK(bdm.functions()[1].template_index == 1);
  CHECK(bdm.divergence(Eigen::Vector2d(0.3, 0.2))[1] == doctest::Approx(1.0));
}

TEST_CASE("trace match: designated traces equal the scalar factor") {
  for (const auto& [family, p, dim] : supported(3)) {
    for (auto sf : {ScalarFamily::lagrange, ScalarFamily::bernstein}) {
      const auto& s = ReferenceSimplex::get(dim);
      auto el = VectorElement::build(family, p, s, sf);
      const bool hcurl = el.is_hcurl();
      ScalarBasis scalar(sf, std::max(p, 1), s);
      for (int i = 0; i < el.size(); ++i) {
        const auto& fn = el.functions()[i];
        bool designated =
            hcurl ? (fn.kind == FnKind::vertex_edge || fn.kind == FnKind::edge)
                  : (fn.kind == FnKind::vertex_edge || fn.kind == FnKind::vertex_face ||
                     fn.kind == FnKind::edge || fn.kind == FnKind::edge_face ||
                     fn.kind == FnKind::face);
        if (!designated) continue;
        Eigen::VectorXd dir = hcurl ? s.edge_tangent(fn.association)
                                    : s.oriented_facet_normal(fn.association);
        for (const auto& x : polytope_points(s, fn.association, 10, 77 + i)) {
          double trace = dir.dot(el.eval(x).row(i));
          double n = scalar.eval(x)[scalar_fn(scalar, fn.source, fn.scalar_index)];
          CHECK(trace == doctest::Approx(n).epsilon(1e-11));
        }
      }
    }
  }
}

TEST_CASE("vanishing foreign traces") {
  for (const auto& [family, p, dim] : supported(3)) {
    const auto& s = ReferenceSimplex::get(dim);
    auto el = VectorElement::build(family, p, s, ScalarFamily::lagrange);
    const bool hcurl = el.is_hcurl();
    for (int i = 0; i < el.size(); ++i) {
      const auto& fn = el.functions()[i];
      if (hcurl) {
        for (const auto& e : s.edges()) {
          if (e == fn.association) continue;
          for (const auto& x : polytope_points(s, e, 10, 31 + i))
            CHECK(std::abs(s.edge_tangent(e).dot(el.eval(x).row(i))) < 1e-12);
        }
        if (dim == 3)
          for (const auto& f : s.faces()) {
            if (fn.association.kind != PolytopeKind::cell && f.contains(fn.association))
              continue;
            Eigen::Vector3d nu = s.oriented_facet_normal(f);
            for (const auto& x : polytope_points(s, f, 10, 53 + i)) {
              Eigen::Vector3d v = el.eval(x).row(i);
              CHECK(nu.cross(v).norm() < 1e-12);
            }
          }
      } else {
        const auto& facets = dim == 2 ? s.edges() : s.faces();
        for (const auto& f : facets) {
          if (f == fn.association) continue;
          for (const auto& x : polytope_points(s, f, 10, 97 + i))
            CHECK(std::abs(s.oriented_facet_normal(f).dot(el.eval(x).row(i))) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("unisolvence of representative tuples") {
  for (auto sf : {ScalarFamily::lagrange, ScalarFamily::bernstein}) {
    CHECK(check_unisolvence(
              VectorElement::build(Family::n2, 3, ReferenceSimplex::triangle(), sf), 3)
              .passed);
    CHECK(check_unisolvence(
              VectorElement::build(Family::bdm, 2, ReferenceSimplex::tetrahedron(), sf), 3)
              .passed);
    CHECK(check_unisolvence(
              VectorElement::build(Family::rt, 2, ReferenceSimplex::triangle(), sf), 3)
              .passed);
  }
}

TEST_CASE("polynomial degree and the rotational structure of N1/RT") {
  for (const auto& [family, p, dim] : supported(2)) {
    if (dim == 3 && (family == Family::n1 || family == Family::rt)) continue;
    auto el = VectorElement::build(family, p, ReferenceSimplex::get(dim),
                                   ScalarFamily::bernstein);
    const int deg = el.polynomial_degree();
    const bool kernel_family = family == Family::n1 || family == Family::rt;
    std::vector<PolyFit> fits;
    for (int comp = 0; comp < dim; ++comp) {
      fits.push_back(fit_components(el, deg, comp, 1000 + comp));
      CHECK(fits.back().residual < 1e-9);  // exact at the stated degree
    }
    if (!kernel_family || dim != 2) continue;
    // top-degree part must be h * (eta, -xi): radial contraction vanishes
    for (int i = 0; i < el.size(); ++i) {
      std::map<std::pair<int, int>, double> radial;
      for (size_t m = 0; m < fits[0].exps.size(); ++m) {
        const auto& e = fits[0].exps[m];
        if (e[0] + e[1] != deg) continue;
        radial[{e[0] + 1, e[1]}] += fits[0].coeffs(m, i);
        radial[{e[0], e[1] + 1}] += fits[1].coeffs(m, i);
      }
      for (const auto& [exp, coef] : radial) CHECK(std::abs(coef) < 1e-8);
    }
  }
}

TEST_CASE("unsupported tuples and wrong-family differentials") {
  const auto& tri = ReferenceSimplex::triangle();
  const auto& tet = ReferenceSimplex::tetrahedron();
  CHECK_THROWS_AS(VectorElement::build(Family::n2, 0, tri, ScalarFamily::lagrange),
                  std::domain_error);
  CHECK_THROWS_WITH_AS(VectorElement::build(Family::n1, 1, tet, ScalarFamily::lagrange),
                       doctest::Contains("not covered"), std::invalid_argument);
  CHECK_THROWS_AS(VectorElement::build(Family::rt, 0, tet, ScalarFamily::lagrange),
                  std::invalid_argument);
  auto n2 = VectorElement::build(Family::n2, 1, tri, ScalarFamily::lagrange);
  auto bdm = VectorElement::build(Family::bdm, 1, tri, ScalarFamily::lagrange);
  CHECK_THROWS_AS((void)n2.divergence(Eigen::Vector2d(0.3, 0.3)), std::logic_error);
  CHECK_THROWS_AS((void)bdm.curl(Eigen::Vector2d(0.3, 0.3)), std::logic_error);
  CHECK_THROWS_AS((void)n2.eval(Eigen::Vector2d(0.8, 0.8)), std::domain_error);
}

TEST_CASE("negative control: perturbed template breaks conformity") {
  TemplateSet ts = template_set(Family::n2, 2);
  for (auto& [poly, fields] : ts.sets)
    if (poly == Polytope::edge(0, 1)) fields[0].constant[0] = Rational{1, 1000};
  auto el = VectorElement::build_with_templates(Family::n2, 2, ReferenceSimplex::triangle(),
                                                ScalarFamily::lagrange, ts, {});
  CHECK_FALSE(check_conformity(el, 2024).passed);
  // the clean element passes on the same meshes
  auto clean = VectorElement::build(Family::n2, 2, ReferenceSimplex::triangle(),
                                    ScalarFamily::lagrange);
  CHECK(check_conformity(clean, 2024).passed);
}
