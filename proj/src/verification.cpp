#include "ptfem/verification.hpp"

#include <random>

namespace ptfem {

int expected_dimension(Family family, int p, int dim) {
  if (family == Family::n2 || family == Family::bdm)
    return dim == 2 ? (p + 2) * (p + 1) : (p + 3) * (p + 2) * (p + 1) / 2;
  if (dim == 2) return (p + 3) * (p + 1);
  if (family == Family::n1 && p == 0) return 6;  // tetrahedral edge element
  throw std::invalid_argument("expected_dimension: unsupported tuple");
}

CheckResult check_dimension(Family family, int p, int dim, ScalarFamily scalar_family) {
  auto el = VectorElement::build(family, p, ReferenceSimplex::get(dim), scalar_family);
  int expect = expected_dimension(family, p, dim);
  return {"dimension", el.size() == expect, static_cast<double>(el.size()),
          "size " + std::to_string(el.size()) + ", expected " + std::to_string(expect)};
}

Eigen::MatrixXd random_interior_points(const ReferenceSimplex& simplex, int count,
                                       unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  const int d = simplex.dim();
  Eigen::MatrixXd pts(count, d);
  for (int i = 0; i < count; ++i) {
    // sorted-uniform barycentric sampling, pulled slightly inward
    std::vector<double> cuts{0.0, 1.0};
    for (int k = 0; k < d; ++k) cuts.push_back(unif(rng));
    std::sort(cuts.begin(), cuts.end());
    Eigen::VectorXd lam(d + 1);
    for (int k = 0; k <= d; ++k) lam[k] = cuts[k + 1] - cuts[k];
    lam = (lam.array() + 0.02).matrix();
    lam /= lam.sum();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
    for (int k = 0; k <= d; ++k) x += lam[k] * simplex.vertex(k);
    pts.row(i) = x;
  }
  return pts;
}

CheckResult check_unisolvence(const VectorElement& element, unsigned seed) {
  const int n = element.size(), d = element.dim();
  const int npts = n;
  Eigen::MatrixXd pts = random_interior_points(element.simplex(), npts, seed);
  Eigen::MatrixXd mat(n, npts * d);
  for (int q = 0; q < npts; ++q)
    mat.middleCols(q * d, d) = element.eval(pts.row(q));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
  double ratio = svd.singularValues()(n - 1) / svd.singularValues()(0);
  return {"unisolvence", ratio > 1e-8, ratio,
          "sigma_min/sigma_max = " + std::to_string(ratio)};
}

SimplicialMesh random_two_cell_mesh(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Eigen::VectorXd> verts;
    for (int i = 0; i < dim + 2; ++i) {
      Eigen::VectorXd v(dim);
      for (int k = 0; k < dim; ++k) v[k] = unif(rng);
      verts.push_back(v);
    }
    // vertices 0 and dim+1 must lie on opposite sides of the shared facet
    try {
      SimplicialMesh mesh = two_cell_mesh(dim, verts);
      double d0 = mesh.cell_map(0).det, d1 = mesh.cell_map(1).det;
      if (std::abs(d0) < 0.05 || std::abs(d1) < 0.05) continue;
      // shared facet must separate the two remaining vertices
      Eigen::VectorXd base = verts[1];
      Eigen::VectorXd n(dim);
      if (dim == 2) {
        Eigen::Vector2d t = verts[2] - verts[1];
        n = rotation_2d() * t;
      } else {
        Eigen::Vector3d t1 = verts[2] - verts[1];
        Eigen::Vector3d t2 = verts[3] - verts[1];
        n = t1.cross(t2);
      }
      double s0 = n.dot(verts[0] - base), s1 = n.dot(verts[dim + 1] - base);
      if (s0 * s1 >= -1e-3) continue;
      return mesh;
    } catch (const std::exception&) {
      continue;
    }
  }
  throw std::runtime_error("random_two_cell_mesh: no valid configuration found");
}

CheckResult check_conformity(const VectorElement& element, const SimplicialMesh& mesh,
                             unsigned seed) {
  const int d = element.dim();
  DofMap map(mesh, dof_layout(element));
  // shared facet = the one with two adjacent cells
  int shared = -1;
  for (int f = 0; f < mesh.num_facets(); ++f)
    if (mesh.facet_cells[f].size() == 2) shared = f;
  if (shared < 0) throw std::logic_error("check_conformity: no shared facet");
  auto fv = mesh.facet_vertices(shared);

  std::mt19937 rng(seed + 1);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  const int npts = 10;

  // trace direction data
  Eigen::MatrixXd trace_dirs;  // physical directions whose projections we compare
  if (element.is_hcurl()) {
    trace_dirs.resize(d == 2 ? 1 : 2, d);
    trace_dirs.row(0) = (mesh.vertices[fv[1]] - mesh.vertices[fv[0]]).transpose();
    if (d == 3) trace_dirs.row(1) = (mesh.vertices[fv[2]] - mesh.vertices[fv[0]]).transpose();
  } else {
    trace_dirs.resize(1, d);
    if (d == 2) {
      Eigen::Vector2d t = mesh.vertices[fv[1]] - mesh.vertices[fv[0]];
      trace_dirs.row(0) = (rotation_2d() * t).transpose();
    } else {
      Eigen::Vector3d t1 = mesh.vertices[fv[1]] - mesh.vertices[fv[0]];
      Eigen::Vector3d t2 = mesh.vertices[fv[2]] - mesh.vertices[fv[0]];
      trace_dirs.row(0) = t1.cross(t2).transpose();
    }
  }

  double max_jump = 0, max_trace = 0;
  for (int q = 0; q < npts; ++q) {
    // random point strictly inside the shared facet
    Eigen::VectorXd bary(d);
    double rem = 1;
    for (int k = 0; k < d - 1; ++k) {
      bary[k] = unif(rng) * rem * 0.8;
      rem -= bary[k];
    }
    bary[d - 1] = rem;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
    for (int k = 0; k < d; ++k) x += bary[k] * mesh.vertices[fv[k]];

    // traces of every global dof from both cells
    Eigen::MatrixXd traces[2];
    for (int side = 0; side < 2; ++side) {
      int c = mesh.facet_cells[shared][side];
      AffineMap amap = mesh.cell_map(c);
      Eigen::VectorXd xi = amap.to_reference(x);
      Eigen::MatrixXd vals = element.eval(xi);
      traces[side] = Eigen::MatrixXd::Zero(map.size(), trace_dirs.rows());
      for (int l = 0; l < element.size(); ++l) {
        int gd = map.cell_dofs(c)[l];
        Eigen::VectorXd pushed = element.is_hcurl()
                                     ? (amap.jacobian_inv_t * vals.row(l).transpose()).eval()
                                     : (amap.jacobian * vals.row(l).transpose() / amap.det).eval();
        for (int t = 0; t < trace_dirs.rows(); ++t)
          traces[side](gd, t) += trace_dirs.row(t).dot(pushed);
      }
    }
    max_jump = std::max(max_jump, (traces[0] - traces[1]).cwiseAbs().maxCoeff());
    max_trace = std::max({max_trace, traces[0].cwiseAbs().maxCoeff(),
                          traces[1].cwiseAbs().maxCoeff()});
  }
  double rel = max_jump / std::max(max_trace, 1e-14);
  return {"conformity", rel < 1e-10, rel, "max relative trace jump " + std::to_string(rel)};
}

CheckResult check_conformity(const VectorElement& element, unsigned seed) {
  // exercise both determinant-sign patterns
  double worst = 0;
  bool pass = true;
  unsigned s = seed;
  bool seen_pos = false, seen_neg = false;
  for (int round = 0; round < 8 && !(seen_pos && seen_neg); ++round, ++s) {
    SimplicialMesh mesh = random_two_cell_mesh(element.dim(), s);
    for (int c = 0; c < 2; ++c)
      (mesh.cell_map(c).det > 0 ? seen_pos : seen_neg) = true;
    CheckResult r = check_conformity(element, mesh, s);
    worst = std::max(worst, r.measure);
    pass = pass && r.passed;
  }
  return {"conformity", pass && seen_pos && seen_neg, worst,
          "max relative trace jump " + std::to_string(worst)};
}

CheckResult check_kernel(const VectorElement& element, unsigned seed) {
  Eigen::MatrixXd pts = random_interior_points(element.simplex(), 12, seed);
  double worst = 0;
  bool any = false;
  for (int q = 0; q < pts.rows(); ++q) {
    if (element.is_hcurl()) {
      Eigen::MatrixXd curls = element.curl(pts.row(q));
      for (int i = 0; i < element.size(); ++i)
        if (element.functions()[i].kind == FnKind::gradient) {
          any = true;
          worst = std::max(worst, curls.row(i).cwiseAbs().maxCoeff());
        }
    } else {
      Eigen::VectorXd divs = element.divergence(pts.row(q));
      for (int i = 0; i < element.size(); ++i)
        if (element.functions()[i].kind == FnKind::scalar_curl) {
          any = true;
          worst = std::max(worst, std::abs(divs[i]));
        }
    }
  }
  if (!any) return {"kernel", true, 0, "no kernel-type functions in this element"};
  return {"kernel", worst < 1e-12, worst, "max |differential of kernel function| " +
                                              std::to_string(worst)};
}

namespace {

int dim_poly_space(int degree, int dim) {
  if (degree < 0) return 0;
  return dim == 2 ? (degree + 2) * (degree + 1) / 2
                  : (degree + 3) * (degree + 2) * (degree + 1) / 6;
}

}  // namespace

CheckResult check_span_rank(const VectorElement& element, unsigned seed) {
  const int p = element.order();
  const int d = element.dim();
  if (d != 2)
    throw std::invalid_argument("check_span_rank: defined for the triangle families");
  const bool kernel_family = element.family() == Family::n1 || element.family() == Family::rt;
  const int expect = dim_poly_space(kernel_family ? p : p - 1, d);
  const int npts = dim_poly_space(p + 1, d) + 5;
  Eigen::MatrixXd pts = random_interior_points(element.simplex(), npts, seed);
  const int ncols = element.is_hcurl() ? (d == 2 ? 1 : 3) : 1;
  Eigen::MatrixXd mat(element.size(), npts * ncols);
  for (int q = 0; q < npts; ++q) {
    if (element.is_hcurl())
      mat.middleCols(q * ncols, ncols) = element.curl(pts.row(q));
    else
      mat.col(q) = element.divergence(pts.row(q));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-10 * sv[0]) ++rank;
  return {"span-rank", rank == expect, static_cast<double>(rank),
          "rank " + std::to_string(rank) + ", expected " + std::to_string(expect)};
}

std::string polytope_name(const Polytope& p) {
  static const char* prefix[] = {"v", "e", "f", "c"};
  std::string s = prefix[static_cast<int>(p.kind)];
  for (int i = 0; i < p.num_verts(); ++i) s += std::to_string(p.verts[i] + 1);
  return s;
}

std::string tabulate_element(Family family, int p, int dim, ScalarFamily scalar_family) {
  auto el = VectorElement::build(family, p, ReferenceSimplex::get(dim), scalar_family);
  const auto& s = el.simplex();
  std::string out = family_name(family) + " order " + std::to_string(p) + " on the reference " +
                    (dim == 2 ? "triangle" : "tetrahedron") + ", " + std::to_string(el.size()) +
                    " base functions\n\n";

  out += "templates:\n";
  for (const auto& poly : s.polytopes()) {
    const auto* entries = el.templates().find(poly);
    if (!entries && poly.kind != PolytopeKind::edge) continue;
    out += "  " + polytope_name(poly) + ":";
    if (entries)
      for (const auto& f : *entries) out += " " + f.to_string();
    if (poly.kind == PolytopeKind::edge && !el.lowest_order().empty()) {
      int e = 0;
      for (const auto& edge : s.edges()) {
        if (edge == poly) out += " [lowest-order " + el.lowest_order()[e].to_string() + "]";
        ++e;
      }
    }
    out += "\n";
  }

  out += "\nfunctions by kind:\n";
  std::map<FnKind, int> kind_count;
  for (const auto& fn : el.functions()) kind_count[fn.kind]++;
  for (const auto& [kind, count] : kind_count)
    out += "  " + fn_kind_name(kind) + ": " + std::to_string(count) + "\n";

  out += "\ntrace table (rows: functions; columns: ";
  out += el.is_hcurl() ? "tangential edge traces" : "normal facet traces";
  out += " at the facet midpoint):\n";
  const auto& cols = el.is_hcurl() ? s.edges() : (dim == 2 ? s.edges() : s.faces());
  char buf[64];
  for (int i = 0; i < el.size(); ++i) {
    const auto& fn = el.functions()[i];
    std::snprintf(buf, sizeof(buf), "  %-3d %-13s %-5s |", i, fn_kind_name(fn.kind).c_str(),
                  polytope_name(fn.association).c_str());
    out += buf;
    for (const auto& facet : cols) {
      Eigen::VectorXd bary =
          Eigen::VectorXd::Constant(facet.num_verts(), 1.0 / facet.num_verts());
      Eigen::VectorXd xi = s.polytope_point(facet, bary);
      Eigen::MatrixXd vals = el.eval(xi);
      double t;
      if (el.is_hcurl()) {
        t = s.edge_tangent(facet).dot(vals.row(i));
      } else {
        t = s.oriented_facet_normal(facet).dot(vals.row(i));
      }
      if (std::abs(t) < 5e-13) t = 0;
      std::snprintf(buf, sizeof(buf), " %8.4f", t);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::vector<CheckResult> verify_element(Family family, int p, int dim,
                                        ScalarFamily scalar_family, unsigned seed) {
  std::vector<CheckResult> results;
  results.push_back(check_dimension(family, p, dim, scalar_family));
  auto el = VectorElement::build(family, p, ReferenceSimplex::get(dim), scalar_family);
  results.push_back(check_unisolvence(el, seed));
  results.push_back(check_conformity(el, seed));
  results.push_back(check_kernel(el, seed + 17));
  if (dim == 2) results.push_back(check_span_rank(el, seed + 29));
  return results;
}

}  // namespace ptfem
