// Assembly and solution of the two model problems: antiplane shear on
// (-1,1)^2 in H1 x H(curl) and the full 3D problem on (-1,1)^3 in
// [H1]^3 x [H(curl)]^3.  Cell kernels are pure; the OpenMP path writes each
// cell's contribution to its own preallocated slot, so serial and parallel
// assembly agree bitwise.

#pragma once

#include <Eigen/Sparse>

#include "ptfem/manufactured.hpp"
#include "ptfem/mesh.hpp"
#include "ptfem/quadrature.hpp"

namespace ptfem {

enum class Parallelism { serial, openmp };

struct DiscreteSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  int n_u = 0;  // u block first, then the microdistortion block
  int n_p = 0;
  std::vector<char> constrained;       // empty until apply_dirichlet_*
  Eigen::VectorXd constraint_value;
  int total() const { return n_u + n_p; }
};

DiscreteSystem assemble_antiplane(const SimplicialMesh& mesh, const ScalarBasis& h1,
                                  const DofMap& u_map, const VectorElement& hcurl,
                                  const DofMap& p_map, const MaterialParams2D& params,
                                  const Manufactured2D& data,
                                  Parallelism par = Parallelism::serial);

/// 3D system; the u block holds 3 interleaved components per scalar DOF and
/// the P block 3 interleaved rows per H(curl) DOF.
DiscreteSystem assemble_rmm3d(const SimplicialMesh& mesh, const ScalarBasis& h1,
                              const DofMap& u_map, const VectorElement& hcurl,
                              const DofMap& p_map, const MaterialParams3D& params,
                              const Manufactured3D& data,
                              Parallelism par = Parallelism::serial);

/// Computes boundary values (H1: nodal for Lagrange, trace projection for
/// Bernstein; H(curl): per-edge and per-face L2 projection of the tangential
/// trace) and eliminates the constrained rows/columns symmetrically.
void apply_dirichlet_antiplane(DiscreteSystem& system, const SimplicialMesh& mesh,
                               const ScalarBasis& h1, const DofMap& u_map,
                               const VectorElement& hcurl, const DofMap& p_map,
                               const Manufactured2D& data);

void apply_dirichlet_rmm3d(DiscreteSystem& system, const SimplicialMesh& mesh,
                           const ScalarBasis& h1, const DofMap& u_map,
                           const VectorElement& hcurl, const DofMap& p_map,
                           const Manufactured3D& data);

struct SolveInfo {
  bool direct = false;
  int iterations = 0;
  double residual = 0;
};

/// Direct sparse factorization below 20000 unknowns, otherwise conjugate
/// gradients with a diagonal preconditioner (relative residual 1e-10, at most
/// 20 N iterations).  Throws on CG breakdown with the residual history tail.
Eigen::VectorXd solve(const DiscreteSystem& system, SolveInfo* info = nullptr);

/// L2 errors (err_u, err_p) of a solved coefficient vector against the
/// manufactured fields.
std::pair<double, double> l2_error_antiplane(const SimplicialMesh& mesh,
                                             const ScalarBasis& h1, const DofMap& u_map,
                                             const VectorElement& hcurl, const DofMap& p_map,
                                             const Eigen::VectorXd& coeffs,
                                             const Manufactured2D& data,
                                             Parallelism par = Parallelism::serial);

std::pair<double, double> l2_error_rmm3d(const SimplicialMesh& mesh, const ScalarBasis& h1,
                                         const DofMap& u_map, const VectorElement& hcurl,
                                         const DofMap& p_map, const Eigen::VectorXd& coeffs,
                                         const Manufactured3D& data,
                                         Parallelism par = Parallelism::serial);

/// Quadrature degree used for the bilinear forms and error integrals.
int assembly_quadrature_degree(const ScalarBasis& h1, const VectorElement& hcurl);

}  // namespace ptfem
