#include "ptfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef PTFEM_HAVE_OPENMP
#include <omp.h>
#endif

namespace ptfem {

namespace {

template <typename Kernel>
void for_cells(int ncells, Parallelism par, Kernel&& kernel) {
#ifdef PTFEM_HAVE_OPENMP
  if (par == Parallelism::openmp) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < ncells; ++c) kernel(c);
    return;
  }
#else
  (void)par;
#endif
  for (int c = 0; c < ncells; ++c) kernel(c);
}

struct Tabulation {
  const QuadratureRule* rule = nullptr;
  std::vector<Eigen::VectorXd> h1_vals;
  std::vector<Eigen::MatrixXd> h1_grads;
  std::vector<Eigen::MatrixXd> hc_vals;
  std::vector<Eigen::MatrixXd> hc_curls;
};

Tabulation tabulate(const ScalarBasis& h1, const VectorElement& hcurl,
                    const QuadratureRule& rule) {
  Tabulation tab;
  tab.rule = &rule;
  for (int q = 0; q < rule.size(); ++q) {
    Eigen::VectorXd xi = rule.points.row(q);
    tab.h1_vals.push_back(h1.eval(xi));
    tab.h1_grads.push_back(h1.gradient(xi));
    tab.hc_vals.push_back(hcurl.eval(xi));
    tab.hc_curls.push_back(hcurl.curl(xi));
  }
  return tab;
}

void scatter_block(std::vector<Eigen::Triplet<double>>& slot, int offset,
                   const Eigen::MatrixXd& local, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
  int k = offset;
  for (int i = 0; i < static_cast<int>(rows.size()); ++i)
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
      slot[k++] = {rows[i], cols[j], local(i, j)};
}

}  // namespace

int assembly_quadrature_degree(const ScalarBasis& h1, const VectorElement& hcurl) {
  int max_deg = std::max(h1.order(), hcurl.polynomial_degree());
  return std::min(2 * max_deg + 4, max_quadrature_degree(h1.dim()));
}

DiscreteSystem assemble_antiplane(const SimplicialMesh& mesh, const ScalarBasis& h1,
                                  const DofMap& u_map, const VectorElement& hcurl,
                                  const DofMap& p_map, const MaterialParams2D& params,
                                  const Manufactured2D& data, Parallelism par) {
  if (mesh.dim != 2 || h1.dim() != 2 || hcurl.dim() != 2)
    throw std::invalid_argument("assemble_antiplane: 2D problem");
  if (!hcurl.is_hcurl())
    throw std::invalid_argument("assemble_antiplane: microdistortion needs an H(curl) family");

  const auto& rule = simplex_rule(2, assembly_quadrature_degree(h1, hcurl));
  const Tabulation tab = tabulate(h1, hcurl, rule);
  const int nsc = h1.size(), nhc = hcurl.size(), nloc = nsc + nhc;
  const int ncells = mesh.num_cells();
  const double lc2 = params.mu_macro * params.L_c * params.L_c;

  DiscreteSystem sys;
  sys.n_u = u_map.size();
  sys.n_p = p_map.size();

  std::vector<Eigen::Triplet<double>> triplets(static_cast<size_t>(ncells) * nloc * nloc);
  std::vector<Eigen::VectorXd> rhs_parts(ncells);

  for_cells(ncells, par, [&](int c) {
    const AffineMap map = mesh.cell_map(c);
    const double absdet = std::abs(map.det);
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nloc, nloc);
    Eigen::VectorXd lrhs = Eigen::VectorXd::Zero(nloc);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * absdet;
      Eigen::MatrixXd G = tab.h1_grads[q] * map.jacobian_inv_t.transpose();  // n_sc x 2
      Eigen::MatrixXd V = tab.hc_vals[q] * map.jacobian_inv_t.transpose();   // n_hc x 2
      Eigen::VectorXd R = tab.hc_curls[q].col(0) / map.det;
      local.topLeftCorner(nsc, nsc) += (w * params.mu_e) * (G * G.transpose());
      Eigen::MatrixXd coupling = (-w * params.mu_e) * (G * V.transpose());
      local.topRightCorner(nsc, nhc) += coupling;
      local.bottomLeftCorner(nhc, nsc) += coupling.transpose();
      local.bottomRightCorner(nhc, nhc) +=
          (w * (params.mu_e + params.mu_micro)) * (V * V.transpose()) + (w * lc2) * (R * R.transpose());
      Eigen::Vector2d x = map.to_physical(rule.points.row(q));
      lrhs.head(nsc) += (w * data.f(x)) * tab.h1_vals[q];
      lrhs.tail(nhc) += w * (V * data.m(x));
    }
    std::vector<int> dofs(nloc);
    for (int i = 0; i < nsc; ++i) dofs[i] = u_map.cell_dofs(c)[i];
    for (int j = 0; j < nhc; ++j) dofs[nsc + j] = sys.n_u + p_map.cell_dofs(c)[j];
    scatter_block(triplets, c * nloc * nloc, local, dofs, dofs);
    rhs_parts[c] = std::move(lrhs);
  });

  sys.matrix.resize(sys.total(), sys.total());
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.rhs = Eigen::VectorXd::Zero(sys.total());
  for (int c = 0; c < ncells; ++c) {
    for (int i = 0; i < nsc; ++i) sys.rhs[u_map.cell_dofs(c)[i]] += rhs_parts[c][i];
    for (int j = 0; j < nhc; ++j) sys.rhs[sys.n_u + p_map.cell_dofs(c)[j]] += rhs_parts[c][nsc + j];
  }
  return sys;
}

namespace {

// <C_e sym(a) + C_c skew(a), b> for rank-one a = e_r (x) g, b = e_s (x) h
inline double elastic_contract(double lambda, double mu, double mu_c, int r,
                               const Eigen::Vector3d& g, int s, const Eigen::Vector3d& h) {
  const double dot = g.dot(h);
  const double cross = g[s] * h[r];
  double v = lambda * g[r] * h[s] + mu * cross + mu_c * (0 - cross);
  if (r == s) v += (mu + mu_c) * dot;
  return v;
}

}  // namespace

DiscreteSystem assemble_rmm3d(const SimplicialMesh& mesh, const ScalarBasis& h1,
                              const DofMap& u_map, const VectorElement& hcurl,
                              const DofMap& p_map, const MaterialParams3D& params,
                              const Manufactured3D& data, Parallelism par) {
  if (mesh.dim != 3 || h1.dim() != 3 || hcurl.dim() != 3)
    throw std::invalid_argument("assemble_rmm3d: 3D problem");
  if (!hcurl.is_hcurl())
    throw std::invalid_argument("assemble_rmm3d: microdistortion needs an H(curl) family");

  const auto& rule = simplex_rule(3, assembly_quadrature_degree(h1, hcurl));
  const Tabulation tab = tabulate(h1, hcurl, rule);
  const int nsc = h1.size(), nhc = hcurl.size();
  const int nloc = 3 * (nsc + nhc);
  const int ncells = mesh.num_cells();
  const double lc2 = params.mu_macro * params.L_c * params.L_c;

  DiscreteSystem sys;
  sys.n_u = 3 * u_map.size();
  sys.n_p = 3 * p_map.size();

  std::vector<Eigen::Triplet<double>> triplets(static_cast<size_t>(ncells) * nloc * nloc);
  std::vector<Eigen::VectorXd> rhs_parts(ncells);

  for_cells(ncells, par, [&](int c) {
    const AffineMap map = mesh.cell_map(c);
    const double absdet = std::abs(map.det);
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nloc, nloc);
    Eigen::VectorXd lrhs = Eigen::VectorXd::Zero(nloc);
    const int pbase = 3 * nsc;
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * absdet;
      Eigen::MatrixXd G = tab.h1_grads[q] * map.jacobian_inv_t.transpose();  // nsc x 3
      Eigen::MatrixXd V = tab.hc_vals[q] * map.jacobian_inv_t.transpose();   // nhc x 3
      Eigen::MatrixXd C = tab.hc_curls[q] * map.jacobian.transpose() / map.det;
      Eigen::Vector3d x = map.to_physical(rule.points.row(q));
      const Eigen::Vector3d f = data.f(x);
      const Eigen::Matrix3d M = data.M(x);

      for (int i = 0; i < nsc; ++i) {
        const Eigen::Vector3d gi = G.row(i);
        // u-u elastic block
        for (int j = i; j < nsc; ++j) {
          const Eigen::Vector3d gj = G.row(j);
          for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 3; ++s) {
              double v = w * elastic_contract(params.lambda_e, params.mu_e, params.mu_c, r, gi,
                                              s, gj);
              local(3 * i + r, 3 * j + s) += v;
              if (j != i) local(3 * j + s, 3 * i + r) += v;
            }
        }
        // u-P coupling
        for (int j = 0; j < nhc; ++j) {
          const Eigen::Vector3d vj = V.row(j);
          for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 3; ++s) {
              double v = -w * elastic_contract(params.lambda_e, params.mu_e, params.mu_c, r, gi,
                                               s, vj);
              local(3 * i + r, pbase + 3 * j + s) += v;
              local(pbase + 3 * j + s, 3 * i + r) += v;
            }
        }
        for (int r = 0; r < 3; ++r) lrhs[3 * i + r] += w * tab.h1_vals[q][i] * f[r];
      }
      // P-P block
      for (int i = 0; i < nhc; ++i) {
        const Eigen::Vector3d vi = V.row(i);
        const Eigen::Vector3d ci = C.row(i);
        for (int j = i; j < nhc; ++j) {
          const Eigen::Vector3d vj = V.row(j);
          const Eigen::Vector3d cj = C.row(j);
          const double curl_dot = lc2 * ci.dot(cj);
          for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 3; ++s) {
              double v = elastic_contract(params.lambda_e, params.mu_e, params.mu_c, r, vi, s, vj) +
                         elastic_contract(params.lambda_micro, params.mu_micro, 0.0, r, vi, s, vj);
              if (r == s) v += curl_dot;
              v *= w;
              local(pbase + 3 * i + r, pbase + 3 * j + s) += v;
              if (j != i) local(pbase + 3 * j + s, pbase + 3 * i + r) += v;
            }
        }
        for (int r = 0; r < 3; ++r) lrhs[pbase + 3 * i + r] += w * M.row(r).dot(vi);
      }
    }
    std::vector<int> dofs(nloc);
    for (int i = 0; i < nsc; ++i)
      for (int r = 0; r < 3; ++r) dofs[3 * i + r] = 3 * u_map.cell_dofs(c)[i] + r;
    for (int j = 0; j < nhc; ++j)
      for (int r = 0; r < 3; ++r)
        dofs[pbase + 3 * j + r] = sys.n_u + 3 * p_map.cell_dofs(c)[j] + r;
    scatter_block(triplets, static_cast<size_t>(c) * nloc * nloc, local, dofs, dofs);
    rhs_parts[c] = std::move(lrhs);
  });

  sys.matrix.resize(sys.total(), sys.total());
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.rhs = Eigen::VectorXd::Zero(sys.total());
  for (int c = 0; c < ncells; ++c) {
    for (int i = 0; i < nsc; ++i)
      for (int r = 0; r < 3; ++r) sys.rhs[3 * u_map.cell_dofs(c)[i] + r] += rhs_parts[c][3 * i + r];
    for (int j = 0; j < nhc; ++j)
      for (int r = 0; r < 3; ++r)
        sys.rhs[sys.n_u + 3 * p_map.cell_dofs(c)[j] + r] += rhs_parts[c][3 * nsc + 3 * j + r];
  }
  return sys;
}

namespace {

// One adjacent cell per global edge, plus the matching cell-local polytope.
struct EdgeHost {
  int cell = -1;
  Polytope local;
};

std::vector<EdgeHost> edge_hosts(const SimplicialMesh& mesh) {
  std::vector<EdgeHost> hosts(mesh.edges.size());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cells[c];
    const int nv = mesh.vertices_per_cell();
    for (int i = 0; i < nv; ++i)
      for (int j = i + 1; j < nv; ++j) {
        int e = mesh.edge_index(cell[i], cell[j]);
        if (hosts[e].cell < 0) hosts[e] = {c, Polytope::edge(i, j)};
      }
  }
  return hosts;
}

int local_vertex(const std::array<int, 4>& cell, int global) {
  for (int i = 0; i < 4; ++i)
    if (cell[i] == global) return i;
  throw std::logic_error("local_vertex: vertex not in cell");
}

void eliminate(DiscreteSystem& sys) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(sys.total());
  for (int i = 0; i < sys.total(); ++i)
    if (sys.constrained[i]) g[i] = sys.constraint_value[i];
  sys.rhs -= sys.matrix * g;
  std::vector<Eigen::Triplet<double>> keep;
  keep.reserve(sys.matrix.nonZeros());
  for (int k = 0; k < sys.matrix.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.matrix, k); it; ++it)
      if (!sys.constrained[it.row()] && !sys.constrained[it.col()])
        keep.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < sys.total(); ++i)
    if (sys.constrained[i]) {
      keep.emplace_back(i, i, 1.0);
      sys.rhs[i] = g[i];
    }
  sys.matrix.setZero();
  sys.matrix.setFromTriplets(keep.begin(), keep.end());
}

// Dirichlet values for one H1 component on the boundary: nodal for Lagrange,
// hierarchical trace projection for Bernstein.
template <typename Target>
void h1_boundary_values(const SimplicialMesh& mesh, const ScalarBasis& h1, const DofMap& map,
                        const Target& target, const std::vector<int>& bdofs,
                        Eigen::VectorXd& value, const std::vector<EdgeHost>& hosts) {
  std::vector<char> is_b(map.size(), 0);
  for (int d : bdofs) is_b[d] = 1;

  if (h1.family() == ScalarFamily::lagrange) {
    std::vector<char> done(map.size(), 0);
    for (int c = 0; c < mesh.num_cells(); ++c) {
      const AffineMap amap = mesh.cell_map(c);
      const auto& dofs = map.cell_dofs(c);
      for (int l = 0; l < static_cast<int>(dofs.size()); ++l) {
        int gd = dofs[l];
        if (!is_b[gd] || done[gd]) continue;
        done[gd] = 1;
        value[gd] = target(amap.to_physical(h1.node(l)));
      }
    }
    return;
  }

  // Bernstein: vertices are nodal, then L2-project edge and face traces.
  const auto& gdofs = map.global_dofs();
  for (int d : bdofs)
    if (gdofs[d].assoc_kind == PolytopeKind::vertex)
      value[d] = target(mesh.vertices[gdofs[d].assoc[0]]);

  const int p = h1.order();
  Eigen::VectorXd qt, qw;
  gauss_legendre_01(p + 3, qt, qw);

  // boundary edges with their host cells
  for (size_t e = 0; e < mesh.edges.size(); ++e) {
    // an edge is on the boundary iff some boundary dof is associated with it
    const int a = mesh.edges[e][0], b = mesh.edges[e][1];
    std::vector<int> edofs;
    for (int d : bdofs)
      if (gdofs[d].assoc_kind == PolytopeKind::edge && gdofs[d].assoc[0] == a &&
          gdofs[d].assoc[1] == b)
        edofs.push_back(d);
    if (edofs.empty()) continue;
    std::sort(edofs.begin(), edofs.end(),
              [&](int x, int y) { return gdofs[x].scalar_index < gdofs[y].scalar_index; });
    const EdgeHost& host = hosts[e];
    const AffineMap amap = mesh.cell_map(host.cell);
    auto interior = h1.polytope_functions(host.local);
    int va = local_vertex(mesh.cells[host.cell], a), vb = local_vertex(mesh.cells[host.cell], b);
    auto va_fns = h1.polytope_functions(Polytope::vertex(va));
    auto vb_fns = h1.polytope_functions(Polytope::vertex(vb));
    const int n = static_cast<int>(edofs.size());
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    // global dofs of the two endpoint vertex functions
    auto vertex_dof = [&](int gv) {
      for (int d : bdofs)
        if (gdofs[d].assoc_kind == PolytopeKind::vertex && gdofs[d].assoc[0] == gv) return d;
      return -1;
    };
    int da = vertex_dof(a), db = vertex_dof(b);
    for (int q = 0; q < qt.size(); ++q) {
      Eigen::VectorXd xi = h1.simplex().edge_point(host.local, qt[q]);
      Eigen::VectorXd vals = h1.eval(xi);
      double resid = target(amap.to_physical(xi));
      if (da >= 0) resid -= value[da] * vals[va_fns[0]];
      if (db >= 0) resid -= value[db] * vals[vb_fns[0]];
      for (int i = 0; i < n; ++i) {
        double ti = vals[interior[gdofs[edofs[i]].scalar_index]];
        rhs[i] += qw[q] * ti * resid;
        for (int j = 0; j < n; ++j)
          gram(i, j) += qw[q] * ti * vals[interior[gdofs[edofs[j]].scalar_index]];
      }
    }
    Eigen::VectorXd sol = gram.ldlt().solve(rhs);
    for (int i = 0; i < n; ++i) value[edofs[i]] = sol[i];
  }

  if (mesh.dim == 3) {
    // boundary faces
    const auto& rule = simplex_rule(2, 2 * p + 2);
    for (int fidx : mesh.facet_markers.at("dirichlet")) {
      const auto fv = mesh.facet_vertices(fidx);
      std::vector<int> fdofs;
      for (int d : bdofs)
        if (gdofs[d].assoc_kind == PolytopeKind::face && gdofs[d].assoc[0] == fv[0] &&
            gdofs[d].assoc[1] == fv[1] && gdofs[d].assoc[2] == fv[2])
          fdofs.push_back(d);
      if (fdofs.empty()) continue;
      std::sort(fdofs.begin(), fdofs.end(),
                [&](int x, int y) { return gdofs[x].scalar_index < gdofs[y].scalar_index; });
      int c = mesh.facet_cells[fidx][0];
      const AffineMap amap = mesh.cell_map(c);
      Polytope lf = Polytope::face(local_vertex(mesh.cells[c], fv[0]),
                                   local_vertex(mesh.cells[c], fv[1]),
                                   local_vertex(mesh.cells[c], fv[2]));
      auto interior = h1.polytope_functions(lf);
      const int n = static_cast<int>(fdofs.size());
      Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
      // all previously fixed dofs with support on this face (vertices+edges)
      const auto& dofs_c = map.cell_dofs(c);
      for (int q = 0; q < rule.size(); ++q) {
        Eigen::VectorXd bary(3);
        bary << 1 - rule.points(q, 0) - rule.points(q, 1), rule.points(q, 1), rule.points(q, 0);
        Eigen::VectorXd xi = h1.simplex().polytope_point(lf, bary);
        Eigen::VectorXd vals = h1.eval(xi);
        double resid = target(amap.to_physical(xi));
        for (int l = 0; l < static_cast<int>(dofs_c.size()); ++l) {
          int gd = dofs_c[l];
          if (!is_b[gd]) continue;
          if (gdofs[gd].assoc_kind == PolytopeKind::face) continue;
          resid -= value[gd] * vals[l];
        }
        for (int i = 0; i < n; ++i) {
          double ti = vals[interior[gdofs[fdofs[i]].scalar_index]];
          rhs[i] += rule.weights[q] * ti * resid;
          for (int j = 0; j < n; ++j)
            gram(i, j) += rule.weights[q] * ti * vals[interior[gdofs[fdofs[j]].scalar_index]];
        }
      }
      Eigen::VectorXd sol = gram.ldlt().solve(rhs);
      for (int i = 0; i < n; ++i) value[fdofs[i]] = sol[i];
    }
  }
}

// Tangential-trace L2 projection of target fields onto the H(curl) boundary
// dofs; rows = one target per interleaved component (1 in 2D, 3 in 3D).
void hcurl_boundary_values(
    const SimplicialMesh& mesh, const VectorElement& hcurl, const DofMap& map,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&, int row)>& target, int nrows,
    const std::vector<int>& bdofs, Eigen::VectorXd& value,
    const std::vector<EdgeHost>& hosts) {
  const auto& gdofs = map.global_dofs();
  std::vector<char> is_b(map.size(), 0);
  for (int d : bdofs) is_b[d] = 1;
  const auto& s = hcurl.simplex();

  auto interleaved = [&](int gd, int r) { return nrows * gd + r; };

  // 1. edge dofs
  Eigen::VectorXd qt, qw;
  gauss_legendre_01(hcurl.polynomial_degree() + 3, qt, qw);
  for (size_t e = 0; e < mesh.edges.size(); ++e) {
    const int a = mesh.edges[e][0], b = mesh.edges[e][1];
    std::vector<int> edofs;
    for (int d : bdofs)
      if (gdofs[d].assoc_kind == PolytopeKind::edge && gdofs[d].assoc[0] == a &&
          gdofs[d].assoc[1] == b)
        edofs.push_back(d);
    if (edofs.empty()) continue;
    const EdgeHost& host = hosts[e];
    const AffineMap amap = mesh.cell_map(host.cell);
    const auto& cell_dofs = map.cell_dofs(host.cell);
    // local functions of this cell mapping to each edge dof
    std::vector<int> locals;
    for (int d : edofs) {
      int found = -1;
      for (int l = 0; l < static_cast<int>(cell_dofs.size()); ++l)
        if (cell_dofs[l] == d) found = l;
      if (found < 0) throw std::logic_error("hcurl boundary: edge dof without local fn");
      locals.push_back(found);
    }
    Eigen::VectorXd tau_ref = s.edge_tangent(host.local);
    Eigen::VectorXd tau_phys = mesh.vertices[b] - mesh.vertices[a];
    const int n = static_cast<int>(edofs.size());
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, nrows);
    for (int q = 0; q < qt.size(); ++q) {
      Eigen::VectorXd xi = s.edge_point(host.local, qt[q]);
      Eigen::MatrixXd vals = hcurl.eval(xi);
      Eigen::VectorXd x = amap.to_physical(xi);
      Eigen::VectorXd traces(n);
      for (int i = 0; i < n; ++i) traces[i] = tau_ref.dot(vals.row(locals[i]));
      for (int r = 0; r < nrows; ++r) {
        double g = tau_phys.dot(target(x, r));
        for (int i = 0; i < n; ++i) rhs(i, r) += qw[q] * traces[i] * g;
      }
      gram += qw[q] * (traces * traces.transpose());
    }
    Eigen::MatrixXd sol = gram.ldlt().solve(rhs);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < nrows; ++r) value[interleaved(edofs[i], r)] = sol(i, r);
  }

  // 2. face dofs (3D): subtract the already fixed edge-dof traces
  if (mesh.dim == 3) {
    const auto& rule = simplex_rule(2, 2 * hcurl.polynomial_degree() + 2);
    for (int fidx : mesh.facet_markers.at("dirichlet")) {
      const auto fv = mesh.facet_vertices(fidx);
      std::vector<int> fdofs;
      for (int d : bdofs)
        if (gdofs[d].assoc_kind == PolytopeKind::face && gdofs[d].assoc[0] == fv[0] &&
            gdofs[d].assoc[1] == fv[1] && gdofs[d].assoc[2] == fv[2])
          fdofs.push_back(d);
      if (fdofs.empty()) continue;
      int c = mesh.facet_cells[fidx][0];
      const AffineMap amap = mesh.cell_map(c);
      const auto& cell_dofs = map.cell_dofs(c);
      Polytope lf = Polytope::face(local_vertex(mesh.cells[c], fv[0]),
                                   local_vertex(mesh.cells[c], fv[1]),
                                   local_vertex(mesh.cells[c], fv[2]));
      std::vector<int> locals;
      for (int d : fdofs) {
        int found = -1;
        for (int l = 0; l < static_cast<int>(cell_dofs.size()); ++l)
          if (cell_dofs[l] == d) found = l;
        if (found < 0) throw std::logic_error("hcurl boundary: face dof without local fn");
        locals.push_back(found);
      }
      Eigen::Vector3d t1_ref = s.vertex(lf.verts[1]) - s.vertex(lf.verts[0]);
      Eigen::Vector3d t2_ref = s.vertex(lf.verts[2]) - s.vertex(lf.verts[0]);
      Eigen::Vector3d T1 = mesh.vertices[fv[1]] - mesh.vertices[fv[0]];
      Eigen::Vector3d T2 = mesh.vertices[fv[2]] - mesh.vertices[fv[0]];
      const int n = static_cast<int>(fdofs.size());
      Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
      Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, nrows);
      for (int q = 0; q < rule.size(); ++q) {
        Eigen::VectorXd bary(3);
        bary << 1 - rule.points(q, 0) - rule.points(q, 1), rule.points(q, 1), rule.points(q, 0);
        Eigen::VectorXd xi = s.polytope_point(lf, bary);
        Eigen::MatrixXd vals = hcurl.eval(xi);
        Eigen::VectorXd x = amap.to_physical(xi);
        Eigen::MatrixXd traces(n, 2);
        for (int i = 0; i < n; ++i) {
          traces(i, 0) = t1_ref.dot(vals.row(locals[i]));
          traces(i, 1) = t2_ref.dot(vals.row(locals[i]));
        }
        for (int r = 0; r < nrows; ++r) {
          Eigen::VectorXd tgt = target(x, r);
          Eigen::Vector2d g(T1.dot(tgt), T2.dot(tgt));
          // subtract fixed contributions (edge-associated dofs)
          for (int l = 0; l < static_cast<int>(cell_dofs.size()); ++l) {
            int gd = cell_dofs[l];
            if (!is_b[gd] || gdofs[gd].assoc_kind != PolytopeKind::edge) continue;
            g[0] -= value[interleaved(gd, r)] * t1_ref.dot(vals.row(l));
            g[1] -= value[interleaved(gd, r)] * t2_ref.dot(vals.row(l));
          }
          for (int i = 0; i < n; ++i)
            rhs(i, r) += rule.weights[q] * (traces(i, 0) * g[0] + traces(i, 1) * g[1]);
        }
        gram += rule.weights[q] * (traces * traces.transpose());
      }
      Eigen::MatrixXd sol = gram.ldlt().solve(rhs);
      for (int i = 0; i < n; ++i)
        for (int r = 0; r < nrows; ++r) value[interleaved(fdofs[i], r)] = sol(i, r);
    }
  }
}

}  // namespace

void apply_dirichlet_antiplane(DiscreteSystem& sys, const SimplicialMesh& mesh,
                               const ScalarBasis& h1, const DofMap& u_map,
                               const VectorElement& hcurl, const DofMap& p_map,
                               const Manufactured2D& data) {
  sys.constrained.assign(sys.total(), 0);
  sys.constraint_value = Eigen::VectorXd::Zero(sys.total());
  auto hosts = edge_hosts(mesh);

  auto ubd = u_map.boundary_dofs(mesh);
  Eigen::VectorXd uval = Eigen::VectorXd::Zero(u_map.size());
  h1_boundary_values(
      mesh, h1, u_map, [&](const Eigen::VectorXd& x) { return data.u(x); }, ubd, uval, hosts);
  for (int d : ubd) {
    sys.constrained[d] = 1;
    sys.constraint_value[d] = uval[d];
  }

  auto pbd = p_map.boundary_dofs(mesh);
  Eigen::VectorXd pval = Eigen::VectorXd::Zero(p_map.size());
  hcurl_boundary_values(
      mesh, hcurl, p_map,
      [&](const Eigen::VectorXd& x, int) -> Eigen::VectorXd { return data.p(x); }, 1, pbd, pval,
      hosts);
  for (int d : pbd) {
    sys.constrained[sys.n_u + d] = 1;
    sys.constraint_value[sys.n_u + d] = pval[d];
  }
  eliminate(sys);
}

void apply_dirichlet_rmm3d(DiscreteSystem& sys, const SimplicialMesh& mesh,
                           const ScalarBasis& h1, const DofMap& u_map,
                           const VectorElement& hcurl, const DofMap& p_map,
                           const Manufactured3D& data) {
  sys.constrained.assign(sys.total(), 0);
  sys.constraint_value = Eigen::VectorXd::Zero(sys.total());
  auto hosts = edge_hosts(mesh);

  auto ubd = u_map.boundary_dofs(mesh);
  for (int r = 0; r < 3; ++r) {
    Eigen::VectorXd uval = Eigen::VectorXd::Zero(u_map.size());
    h1_boundary_values(
        mesh, h1, u_map, [&](const Eigen::VectorXd& x) { return data.u(x)[r]; }, ubd, uval,
        hosts);
    for (int d : ubd) {
      sys.constrained[3 * d + r] = 1;
      sys.constraint_value[3 * d + r] = uval[d];
    }
  }

  auto pbd = p_map.boundary_dofs(mesh);
  Eigen::VectorXd pval = Eigen::VectorXd::Zero(3 * p_map.size());
  hcurl_boundary_values(
      mesh, hcurl, p_map,
      [&](const Eigen::VectorXd& x, int row) -> Eigen::VectorXd {
        return data.P(x).row(row).transpose();
      },
      3, pbd, pval, hosts);
  for (int d : pbd)
    for (int r = 0; r < 3; ++r) {
      sys.constrained[sys.n_u + 3 * d + r] = 1;
      sys.constraint_value[sys.n_u + 3 * d + r] = pval[3 * d + r];
    }
  eliminate(sys);
}

Eigen::VectorXd solve(const DiscreteSystem& sys, SolveInfo* info) {
  const int n = sys.total();
  if (n < 20000) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.matrix);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("solve: sparse factorization failed");
    Eigen::VectorXd x = ldlt.solve(sys.rhs);
    if (info) {
      info->direct = true;
      info->iterations = 0;
      info->residual = (sys.matrix * x - sys.rhs).norm() / std::max(sys.rhs.norm(), 1e-300);
    }
    return x;
  }
  // conjugate gradients with diagonal preconditioning
  Eigen::VectorXd diag = sys.matrix.diagonal();
  for (int i = 0; i < n; ++i)
    if (diag[i] <= 0) diag[i] = 1;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = sys.rhs;
  Eigen::VectorXd z = r.cwiseQuotient(diag);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  const double bnorm = std::max(sys.rhs.norm(), 1e-300);
  const long max_iter = 20L * n;
  std::vector<double> history;
  for (long it = 0; it < max_iter; ++it) {
    Eigen::VectorXd ap = sys.matrix * p;
    double alpha = rz / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    double rel = r.norm() / bnorm;
    history.push_back(rel);
    if (rel < 1e-10) {
      if (info) {
        info->direct = false;
        info->iterations = static_cast<int>(it + 1);
        info->residual = rel;
      }
      return x;
    }
    z = r.cwiseQuotient(diag);
    double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  std::string tail;
  for (size_t k = history.size() > 8 ? history.size() - 8 : 0; k < history.size(); ++k)
    tail += " " + std::to_string(history[k]);
  throw std::runtime_error("solve: CG did not converge; residual history tail:" + tail);
}

std::pair<double, double> l2_error_antiplane(const SimplicialMesh& mesh, const ScalarBasis& h1,
                                             const DofMap& u_map, const VectorElement& hcurl,
                                             const DofMap& p_map, const Eigen::VectorXd& coeffs,
                                             const Manufactured2D& data, Parallelism par) {
  const auto& rule = simplex_rule(2, assembly_quadrature_degree(h1, hcurl));
  const Tabulation tab = tabulate(h1, hcurl, rule);
  const int nsc = h1.size(), nhc = hcurl.size();
  const int n_u = u_map.size();
  std::vector<double> part_u(mesh.num_cells(), 0), part_p(mesh.num_cells(), 0);
  for_cells(mesh.num_cells(), par, [&](int c) {
    const AffineMap map = mesh.cell_map(c);
    const double absdet = std::abs(map.det);
    double eu = 0, ep = 0;
    for (int q = 0; q < rule.size(); ++q) {
      Eigen::MatrixXd V = tab.hc_vals[q] * map.jacobian_inv_t.transpose();
      Eigen::VectorXd x = map.to_physical(rule.points.row(q));
      double uh = 0;
      Eigen::Vector2d ph = Eigen::Vector2d::Zero();
      for (int i = 0; i < nsc; ++i) uh += coeffs[u_map.cell_dofs(c)[i]] * tab.h1_vals[q][i];
      for (int j = 0; j < nhc; ++j) ph += coeffs[n_u + p_map.cell_dofs(c)[j]] * V.row(j).transpose();
      const double w = rule.weights[q] * absdet;
      double du = uh - data.u(x);
      eu += w * du * du;
      ep += w * (ph - data.p(x)).squaredNorm();
    }
    part_u[c] = eu;
    part_p[c] = ep;
  });
  double eu = 0, ep = 0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    eu += part_u[c];
    ep += part_p[c];
  }
  return {std::sqrt(eu), std::sqrt(ep)};
}

std::pair<double, double> l2_error_rmm3d(const SimplicialMesh& mesh, const ScalarBasis& h1,
                                         const DofMap& u_map, const VectorElement& hcurl,
                                         const DofMap& p_map, const Eigen::VectorXd& coeffs,
                                         const Manufactured3D& data, Parallelism par) {
  const auto& rule = simplex_rule(3, assembly_quadrature_degree(h1, hcurl));
  const Tabulation tab = tabulate(h1, hcurl, rule);
  const int nsc = h1.size(), nhc = hcurl.size();
  const int n_u = 3 * u_map.size();
  std::vector<double> part_u(mesh.num_cells(), 0), part_p(mesh.num_cells(), 0);
  for_cells(mesh.num_cells(), par, [&](int c) {
    const AffineMap map = mesh.cell_map(c);
    const double absdet = std::abs(map.det);
    double eu = 0, ep = 0;
    for (int q = 0; q < rule.size(); ++q) {
      Eigen::MatrixXd V = tab.hc_vals[q] * map.jacobian_inv_t.transpose();
      Eigen::VectorXd x = map.to_physical(rule.points.row(q));
      Eigen::Vector3d uh = Eigen::Vector3d::Zero();
      Eigen::Matrix3d Ph = Eigen::Matrix3d::Zero();
      for (int i = 0; i < nsc; ++i)
        for (int r = 0; r < 3; ++r)
          uh[r] += coeffs[3 * u_map.cell_dofs(c)[i] + r] * tab.h1_vals[q][i];
      for (int j = 0; j < nhc; ++j)
        for (int r = 0; r < 3; ++r)
          Ph.row(r) += coeffs[n_u + 3 * p_map.cell_dofs(c)[j] + r] * V.row(j);
      const double w = rule.weights[q] * absdet;
      eu += w * (uh - data.u(x)).squaredNorm();
      ep += w * (Ph - data.P(x)).squaredNorm();
    }
    part_u[c] = eu;
    part_p[c] = ep;
  });
  double eu = 0, ep = 0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    eu += part_u[c];
    ep += part_p[c];
  }
  return {std::sqrt(eu), std::sqrt(ep)};
}

}  // namespace ptfem
