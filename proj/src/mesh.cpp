#include "ptfem/mesh.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

namespace ptfem {

int SimplicialMesh::edge_index(int a, int b) const {
  if (a > b) std::swap(a, b);
  auto it = edge_lookup_.find({a, b});
  if (it == edge_lookup_.end()) throw std::domain_error("edge_index: no such edge");
  return it->second;
}

int SimplicialMesh::face_index(int a, int b, int c) const {
  std::array<int, 3> key = {a, b, c};
  std::sort(key.begin(), key.end());
  auto it = face_lookup_.find(key);
  if (it == face_lookup_.end()) throw std::domain_error("face_index: no such face");
  return it->second;
}

AffineMap SimplicialMesh::cell_map(int c) const {
  std::vector<Eigen::VectorXd> v;
  for (int i = 0; i < vertices_per_cell(); ++i) v.push_back(vertices[cells[c][i]]);
  return AffineMap::from_vertices(v);
}

std::vector<int> SimplicialMesh::facet_vertices(int f) const {
  if (dim == 2) return {edges[f][0], edges[f][1]};
  return {faces[f][0], faces[f][1], faces[f][2]};
}

void SimplicialMesh::finalize() {
  for (auto& cell : cells)
    std::sort(cell.begin(), cell.begin() + vertices_per_cell());

  edges.clear();
  faces.clear();
  edge_lookup_.clear();
  face_lookup_.clear();

  std::set<std::array<int, 2>> edge_set;
  std::set<std::array<int, 3>> face_set;
  for (const auto& cell : cells) {
    int nv = vertices_per_cell();
    for (int i = 0; i < nv; ++i)
      for (int j = i + 1; j < nv; ++j) {
        edge_set.insert({cell[i], cell[j]});
        if (dim == 3)
          for (int k = j + 1; k < nv; ++k) face_set.insert({cell[i], cell[j], cell[k]});
      }
  }
  for (const auto& e : edge_set) {
    edge_lookup_[e] = static_cast<int>(edges.size());
    edges.push_back(e);
  }
  for (const auto& f : face_set) {
    face_lookup_[f] = static_cast<int>(faces.size());
    faces.push_back(f);
  }

  facet_cells.assign(num_facets(), {});
  for (int c = 0; c < num_cells(); ++c) {
    const auto& cell = cells[c];
    if (dim == 2) {
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          facet_cells[edge_index(cell[i], cell[j])].push_back(c);
    } else {
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          for (int k = j + 1; k < 4; ++k)
            facet_cells[face_index(cell[i], cell[j], cell[k])].push_back(c);
    }
  }

  facet_markers.clear();
  auto& dirichlet = facet_markers["dirichlet"];
  for (int f = 0; f < num_facets(); ++f) {
    if (facet_cells[f].size() == 1) dirichlet.push_back(f);
    if (facet_cells[f].size() > 2)
      throw std::logic_error("mesh: facet with more than two adjacent cells");
  }
}

SimplicialMesh structured_mesh(int dim, double lo, double hi, int n) {
  if (n < 1) throw std::domain_error("structured_mesh: n must be >= 1");
  SimplicialMesh mesh;
  mesh.dim = dim;
  const double h = (hi - lo) / n;
  if (dim == 2) {
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        mesh.vertices.push_back(Eigen::Vector2d(lo + i * h, lo + j * h));
    auto vid = [&](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
        mesh.cells.push_back({v00, v10, v01, -1});
        mesh.cells.push_back({v10, v01, v11, -1});
      }
  } else if (dim == 3) {
    for (int k = 0; k <= n; ++k)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
          mesh.vertices.push_back(Eigen::Vector3d(lo + i * h, lo + j * h, lo + k * h));
    auto vid = [&](int i, int j, int k) { return (k * (n + 1) + j) * (n + 1) + i; };
    // Kuhn subdivision: six tetrahedra along vertex-order paths from the low
    // to the high cube corner; neighbouring cubes match because every cube
    // uses the same pattern.
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          for (const auto& perm : perms) {
            std::array<int, 3> at = {i, j, k};
            std::array<int, 4> tet;
            tet[0] = vid(at[0], at[1], at[2]);
            for (int s = 0; s < 3; ++s) {
              at[perm[s]] += 1;
              tet[s + 1] = vid(at[0], at[1], at[2]);
            }
            mesh.cells.push_back(tet);
          }
  } else {
    throw std::domain_error("structured_mesh: dim must be 2 or 3");
  }
  mesh.finalize();
  return mesh;
}

SimplicialMesh two_cell_mesh(int dim, const std::vector<Eigen::VectorXd>& verts) {
  if (static_cast<int>(verts.size()) != dim + 2)
    throw std::domain_error("two_cell_mesh: need dim+2 vertices");
  SimplicialMesh mesh;
  mesh.dim = dim;
  mesh.vertices = verts;
  if (dim == 2) {
    mesh.cells = {{0, 1, 2, -1}, {1, 2, 3, -1}};
  } else {
    mesh.cells = {{0, 1, 2, 3}, {1, 2, 3, 4}};
  }
  mesh.finalize();
  return mesh;
}

void write_mesh_text(const SimplicialMesh& mesh, std::ostream& out) {
  for (const auto& v : mesh.vertices) {
    out << "v";
    for (int d = 0; d < mesh.dim; ++d) out << " " << v[d];
    out << "\n";
  }
  for (const auto& c : mesh.cells) {
    out << "c";
    for (int i = 0; i < mesh.vertices_per_cell(); ++i) out << " " << c[i];
    out << "\n";
  }
}

std::vector<LocalDof> dof_layout(const VectorElement& element) {
  std::vector<LocalDof> layout;
  for (const auto& fn : element.functions())
    layout.push_back({fn.kind, fn.association, fn.source, fn.scalar_index, fn.dup});
  return layout;
}

std::vector<LocalDof> dof_layout(const ScalarBasis& basis) {
  std::vector<LocalDof> layout;
  for (const auto& fn : basis.functions())
    layout.push_back({FnKind::cell, fn.polytope, fn.polytope, fn.index_on_polytope, 0});
  return layout;
}

namespace {

std::array<int, 4> to_global(const Polytope& p, const std::array<int, 4>& cell) {
  std::array<int, 4> g = {-1, -1, -1, -1};
  for (int i = 0; i < p.num_verts(); ++i) g[i] = cell[p.verts[i]];
  // local indices ascending + cell sorted ascending => already sorted
  return g;
}

}  // namespace

DofMap::DofMap(const SimplicialMesh& mesh, const std::vector<LocalDof>& layout)
    : layout_(layout) {
  using Key = std::tuple<FnKind, PolytopeKind, std::array<int, 4>, PolytopeKind,
                         std::array<int, 4>, int, int>;
  std::map<Key, int> index;
  // First pass: collect all keys, then index them in canonical (sorted) order
  // so the numbering is independent of the cell traversal.
  std::vector<std::vector<Key>> cell_keys(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    for (const auto& dof : layout_) {
      Key key{dof.kind,
              dof.association.kind,
              to_global(dof.association, mesh.cells[c]),
              dof.source.kind,
              to_global(dof.source, mesh.cells[c]),
              dof.scalar_index,
              dof.dup};
      index.emplace(key, 0);
      cell_keys[c].push_back(key);
    }
  }
  n_dofs_ = 0;
  dofs_.reserve(index.size());
  for (auto& [key, id] : index) {
    id = n_dofs_++;
    dofs_.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key),
                     std::get<4>(key), std::get<5>(key), std::get<6>(key)});
  }
  cell_dofs_.resize(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    cell_dofs_[c].reserve(layout_.size());
    for (const auto& key : cell_keys[c]) cell_dofs_[c].push_back(index.at(key));
  }
}

std::vector<int> DofMap::boundary_dofs(const SimplicialMesh& mesh,
                                       const std::string& marker) const {
  auto it = mesh.facet_markers.find(marker);
  if (it == mesh.facet_markers.end()) return {};
  std::set<int> bverts;
  std::set<std::array<int, 2>> bedges;
  std::set<std::array<int, 3>> bfaces;
  for (int f : it->second) {
    auto fv = mesh.facet_vertices(f);
    for (int v : fv) bverts.insert(v);
    if (mesh.dim == 2) {
      bedges.insert({fv[0], fv[1]});
    } else {
      bfaces.insert({fv[0], fv[1], fv[2]});
      bedges.insert({fv[0], fv[1]});
      bedges.insert({fv[0], fv[2]});
      bedges.insert({fv[1], fv[2]});
    }
  }
  std::vector<int> out;
  for (int i = 0; i < n_dofs_; ++i) {
    const auto& d = dofs_[i];
    bool hit = false;
    switch (d.assoc_kind) {
      case PolytopeKind::vertex: hit = bverts.count(d.assoc[0]); break;
      case PolytopeKind::edge: hit = bedges.count({d.assoc[0], d.assoc[1]}); break;
      case PolytopeKind::face: hit = bfaces.count({d.assoc[0], d.assoc[1], d.assoc[2]}); break;
      case PolytopeKind::cell: hit = false; break;
    }
    if (hit) out.push_back(i);
  }
  return out;
}

}  // namespace ptfem
