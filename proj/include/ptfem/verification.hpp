// Executable forms of the element theorems: dimension formulas, unisolvence
// rank tests, two-cell interface conformity, kernel identities and
// exact-sequence span ranks.

#pragma once

#include <string>
#include <vector>

#include "ptfem/mesh.hpp"

namespace ptfem {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measure = 0;  // the quantity compared against the tolerance
  std::string detail;
};

/// Closed-form element dimension for a supported (family, order, dim).
int expected_dimension(Family family, int p, int dim);

CheckResult check_dimension(Family family, int p, int dim, ScalarFamily scalar_family);

/// Smallest/largest singular value ratio of the stacked evaluation matrix at
/// size()-many seeded random interior points; passes above 1e-8.
CheckResult check_unisolvence(const VectorElement& element, unsigned seed);

/// Max relative tangential (H(curl)) or normal (H(div)) trace jump of every
/// global basis function across the shared facet of a seeded random two-cell
/// mesh; both Jacobian determinant signs are exercised.  Passes below 1e-10.
CheckResult check_conformity(const VectorElement& element, unsigned seed);
CheckResult check_conformity(const VectorElement& element, const SimplicialMesh& two_cells,
                             unsigned seed);

/// curl(grad)- and div(curl)-type kernel functions evaluate below 1e-12.
CheckResult check_kernel(const VectorElement& element, unsigned seed);

/// Rank of the sampled rot/div images: dim P^{p-1} for N2/BDM, dim P^p for
/// N1/RT (triangle families).
CheckResult check_span_rank(const VectorElement& element, unsigned seed);

/// All checks applicable to the tuple; used by the `verify` subcommand.
std::vector<CheckResult> verify_element(Family family, int p, int dim,
                                        ScalarFamily scalar_family, unsigned seed);

/// Random interior points of the reference simplex (uniform, seeded).
Eigen::MatrixXd random_interior_points(const ReferenceSimplex& simplex, int count,
                                       unsigned seed);

/// Stable text report: per-polytope template entries, function counts by
/// kind and the edge/facet trace table.
std::string tabulate_element(Family family, int p, int dim, ScalarFamily scalar_family);

std::string polytope_name(const Polytope& p);

/// Seeded random two-cell mesh with the requested orientation pattern.
SimplicialMesh random_two_cell_mesh(int dim, unsigned seed);

}  // namespace ptfem
