// Simplicial meshes with globally oriented edges/faces and an
// orientation-consistent local-to-global DOF map.  Cell vertex lists are
// normalized to ascending global indices, so the two cells sharing a facet
// agree on tangent/normal direction and on the interior function order.

#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ptfem/piola.hpp"
#include "ptfem/scalar_basis.hpp"
#include "ptfem/vector_element.hpp"

namespace ptfem {

struct SimplicialMesh {
  int dim = 2;
  std::vector<Eigen::VectorXd> vertices;
  std::vector<std::array<int, 4>> cells;  // ascending; [3] = -1 in 2D

  // derived connectivity
  std::vector<std::array<int, 2>> edges;  // sorted pairs, lexicographic
  std::vector<std::array<int, 3>> faces;  // 3D only
  std::vector<std::vector<int>> facet_cells;  // facet = edge(2D)/face(3D)
  std::map<std::string, std::vector<int>> facet_markers;

  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_facets() const {
    return dim == 2 ? static_cast<int>(edges.size()) : static_cast<int>(faces.size());
  }
  int vertices_per_cell() const { return dim + 1; }

  int edge_index(int a, int b) const;
  int face_index(int a, int b, int c) const;

  /// Affine map of a cell (reference simplex -> physical cell).
  AffineMap cell_map(int c) const;

  double cell_volume(int c) const {
    return std::abs(cell_map(c).det) / (dim == 2 ? 2.0 : 6.0);
  }

  /// Global vertex indices of a facet.
  std::vector<int> facet_vertices(int f) const;

  bool facet_on_boundary(int f) const { return facet_cells[f].size() == 1; }

  /// Rebuilds edges/faces/adjacency after cells are set; sorts cell vertex
  /// lists ascending and marks all boundary facets "dirichlet".
  void finalize();

private:
  std::map<std::array<int, 2>, int> edge_lookup_;
  std::map<std::array<int, 3>, int> face_lookup_;
};

/// Structured simplicial mesh of (lo,hi)^dim with n subdivisions per axis;
/// squares split into 2 triangles, cubes into 6 tetrahedra (Kuhn).
SimplicialMesh structured_mesh(int dim, double lo, double hi, int n);

/// Two-cell mesh (shared edge in 2D, shared face in 3D) with caller-supplied
/// vertex coordinates: dim+2 vertices, cells {0..dim} and {1..dim+1}.
SimplicialMesh two_cell_mesh(int dim, const std::vector<Eigen::VectorXd>& verts);

/// Plain-text export: `v x y [z]` lines then `c i j k [l]` lines.
void write_mesh_text(const SimplicialMesh& mesh, std::ostream& out);

/// A cell-local degree of freedom, described by the data that identifies its
/// global merge key under ascending-vertex placement.
struct LocalDof {
  FnKind kind;
  Polytope association;
  Polytope source;
  int scalar_index = 0;
  int dup = 0;
};

std::vector<LocalDof> dof_layout(const VectorElement& element);
std::vector<LocalDof> dof_layout(const ScalarBasis& basis);

/// Orientation-consistent local-to-global DOF map.  Local functions sharing
/// a global (kind, association, source, scalar index, dup) key map to the
/// same global DOF; all signs are +1 for the families built here.
class DofMap {
public:
  DofMap(const SimplicialMesh& mesh, const std::vector<LocalDof>& layout);

  int size() const { return n_dofs_; }
  int local_size() const { return static_cast<int>(layout_.size()); }
  const std::vector<int>& cell_dofs(int c) const { return cell_dofs_[c]; }
  int sign(int cell, int local) const {
    (void)cell;
    (void)local;
    return +1;
  }

  struct GlobalDof {
    FnKind kind;
    PolytopeKind assoc_kind;
    std::array<int, 4> assoc;  // global vertex indices, ascending
    PolytopeKind source_kind;
    std::array<int, 4> source;
    int scalar_index = 0;
    int dup = 0;
  };
  const std::vector<GlobalDof>& global_dofs() const { return dofs_; }

  /// Global DOFs whose association polytope lies on a boundary facet carrying
  /// the marker.
  std::vector<int> boundary_dofs(const SimplicialMesh& mesh,
                                 const std::string& marker = "dirichlet") const;

private:
  int n_dofs_ = 0;
  std::vector<LocalDof> layout_;
  std::vector<std::vector<int>> cell_dofs_;
  std::vector<GlobalDof> dofs_;
};

}  // namespace ptfem
