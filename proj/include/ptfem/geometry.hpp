// Reference triangle and tetrahedron: polytope decomposition, vertex
// coordinates and the tangent/normal conventions shared by all modules.

#pragma once

#include <array>
#include <compare>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace ptfem {

enum class PolytopeKind { vertex, edge, face, cell };

/// A sub-polytope of the reference simplex, identified by its sorted local
/// vertex indices.
struct Polytope {
  PolytopeKind kind = PolytopeKind::vertex;
  std::array<int, 4> verts = {-1, -1, -1, -1};

  static Polytope vertex(int a) { return {PolytopeKind::vertex, {a, -1, -1, -1}}; }
  static Polytope edge(int a, int b) {
    if (a > b) std::swap(a, b);
    return {PolytopeKind::edge, {a, b, -1, -1}};
  }
  static Polytope face(int a, int b, int c) {
    std::array<int, 3> v = {a, b, c};
    std::sort(v.begin(), v.end());
    return {PolytopeKind::face, {v[0], v[1], v[2], -1}};
  }
  static Polytope cell(int nverts) {
    Polytope p{PolytopeKind::cell, {0, 1, 2, -1}};
    if (nverts == 4) p.verts[3] = 3;
    return p;
  }

  int num_verts() const {
    switch (kind) {
      case PolytopeKind::vertex: return 1;
      case PolytopeKind::edge: return 2;
      case PolytopeKind::face: return 3;
      case PolytopeKind::cell: return verts[3] >= 0 ? 4 : 3;
    }
    return 0;
  }
  int topological_dim() const {
    return kind == PolytopeKind::cell ? (verts[3] >= 0 ? 3 : 2) : static_cast<int>(kind);
  }
  bool contains(const Polytope& other) const {
    for (int i = 0; i < other.num_verts(); ++i) {
      bool found = false;
      for (int j = 0; j < num_verts(); ++j)
        if (verts[j] == other.verts[i]) found = true;
      if (!found) return false;
    }
    return true;
  }
  auto operator<=>(const Polytope&) const = default;
};

/// The constant 2D rotation R with R*R = -I; maps gradients to 2D curls.
inline Eigen::Matrix2d rotation_2d() {
  Eigen::Matrix2d r;
  r << 0, 1, -1, 0;
  return r;
}

/// Reference triangle (v1=(0,0), v2=(0,1), v3=(1,0)) or tetrahedron
/// (v1=(0,0,0), v2=(0,0,1), v3=(0,1,0), v4=(1,0,0)).  The vertex placement
/// fixes e12 along the last coordinate axis, which the template sets assume.
class ReferenceSimplex {
public:
  static const ReferenceSimplex& triangle();
  static const ReferenceSimplex& tetrahedron();
  static const ReferenceSimplex& get(int dim) {
    if (dim == 2) return triangle();
    if (dim == 3) return tetrahedron();
    throw std::invalid_argument("reference simplex: dim must be 2 or 3");
  }

  int dim() const { return dim_; }
  int num_vertices() const { return dim_ + 1; }
  Eigen::VectorXd vertex(int i) const { return vertices_[i]; }

  const std::vector<Polytope>& edges() const { return edges_; }
  const std::vector<Polytope>& faces() const { return faces_; }
  Polytope cell_polytope() const { return Polytope::cell(num_vertices()); }

  /// All polytopes in deterministic order: vertices, edges (lexicographic),
  /// faces (lexicographic, 3D only), cell.
  const std::vector<Polytope>& polytopes() const { return polytopes_; }

  /// Unnormalized edge tangent v_j - v_i for edge (i,j), i < j.  With this
  /// scaling the designated tangential template projections are exactly 1.
  Eigen::VectorXd edge_tangent(const Polytope& e) const;

  /// Outward facet normal (edge in 2D, face in 3D), scaled so the designated
  /// normal template projections have magnitude 1.
  Eigen::VectorXd facet_normal(const Polytope& f) const;

  /// Facet normal oriented by the ascending-vertex frame: R*tangent in 2D,
  /// t1 x t2 in 3D.  Interface identities hold with coefficient +1 against
  /// this normal; it equals +/- facet_normal.
  Eigen::VectorXd oriented_facet_normal(const Polytope& f) const;

  /// Facets adjacent to a polytope (edges of a vertex in 2D, faces of a
  /// vertex/edge in 3D).
  std::vector<Polytope> adjacent(const Polytope& p, PolytopeKind kind) const;

  /// Barycentric coordinates (size dim+1, vertex order).
  Eigen::VectorXd barycentric(const Eigen::VectorXd& point) const;

  bool contains(const Eigen::VectorXd& point, double tol = 1e-12) const;

  Eigen::VectorXd centroid() const;

  /// Point on an edge at parameter t in [0,1] measured from the lower vertex.
  Eigen::VectorXd edge_point(const Polytope& e, double t) const;

  /// Point on a polytope at barycentric coordinates w.r.t. its own vertices.
  Eigen::VectorXd polytope_point(const Polytope& p, const Eigen::VectorXd& bary) const;

private:
  explicit ReferenceSimplex(int dim);
  int dim_;
  std::vector<Eigen::VectorXd> vertices_;
  std::vector<Polytope> edges_, faces_, polytopes_;
};

inline ReferenceSimplex::ReferenceSimplex(int dim) : dim_(dim) {
  if (dim == 2) {
    vertices_ = {Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 1), Eigen::Vector2d(1, 0)};
    edges_ = {Polytope::edge(0, 1), Polytope::edge(0, 2), Polytope::edge(1, 2)};
  } else {
    vertices_ = {Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(0, 0, 1),
                 Eigen::Vector3d(0, 1, 0), Eigen::Vector3d(1, 0, 0)};
    edges_ = {Polytope::edge(0, 1), Polytope::edge(0, 2), Polytope::edge(0, 3),
              Polytope::edge(1, 2), Polytope::edge(1, 3), Polytope::edge(2, 3)};
    faces_ = {Polytope::face(0, 1, 2), Polytope::face(0, 1, 3),
              Polytope::face(0, 2, 3), Polytope::face(1, 2, 3)};
  }
  for (int i = 0; i < num_vertices(); ++i) polytopes_.push_back(Polytope::vertex(i));
  for (const auto& e : edges_) polytopes_.push_back(e);
  for (const auto& f : faces_) polytopes_.push_back(f);
  polytopes_.push_back(cell_polytope());
}

inline const ReferenceSimplex& ReferenceSimplex::triangle() {
  static const ReferenceSimplex tri(2);
  return tri;
}

inline const ReferenceSimplex& ReferenceSimplex::tetrahedron() {
  static const ReferenceSimplex tet(3);
  return tet;
}

inline Eigen::VectorXd ReferenceSimplex::edge_tangent(const Polytope& e) const {
  if (e.kind != PolytopeKind::edge)
    throw std::domain_error("edge_tangent: polytope is not an edge");
  bool known = false;
  for (const auto& own : edges_) known |= (own == e);
  if (!known) throw std::domain_error("edge_tangent: unknown edge");
  return vertices_[e.verts[1]] - vertices_[e.verts[0]];
}

inline Eigen::VectorXd ReferenceSimplex::oriented_facet_normal(const Polytope& f) const {
  if (dim_ == 2) {
    Eigen::Vector2d t = edge_tangent(f);
    return rotation_2d() * t;
  }
  if (f.kind != PolytopeKind::face)
    throw std::domain_error("facet_normal: polytope is not a face");
  bool known = false;
  for (const auto& own : faces_) known |= (own == f);
  if (!known) throw std::domain_error("facet_normal: unknown face");
  Eigen::Vector3d t1 = vertices_[f.verts[1]] - vertices_[f.verts[0]];
  Eigen::Vector3d t2 = vertices_[f.verts[2]] - vertices_[f.verts[0]];
  return t1.cross(t2);
}

inline Eigen::VectorXd ReferenceSimplex::facet_normal(const Polytope& f) const {
  Eigen::VectorXd n = oriented_facet_normal(f);
  // flip to outward: the centroid must lie on the negative side
  Eigen::VectorXd bary = Eigen::VectorXd::Constant(f.num_verts(), 1.0 / f.num_verts());
  Eigen::VectorXd mid = polytope_point(f, bary);
  if (n.dot(centroid() - mid) > 0) n = -n;
  return n;
}

inline std::vector<Polytope> ReferenceSimplex::adjacent(const Polytope& p,
                                                        PolytopeKind kind) const {
  std::vector<Polytope> out;
  const auto& pool = kind == PolytopeKind::edge ? edges_ : faces_;
  for (const auto& q : pool)
    if (q.contains(p)) out.push_back(q);
  return out;
}

inline Eigen::VectorXd ReferenceSimplex::barycentric(const Eigen::VectorXd& point) const {
  Eigen::VectorXd lam(num_vertices());
  if (dim_ == 2) {
    lam << 1 - point[0] - point[1], point[1], point[0];
  } else {
    lam << 1 - point[0] - point[1] - point[2], point[2], point[1], point[0];
  }
  return lam;
}

inline bool ReferenceSimplex::contains(const Eigen::VectorXd& point, double tol) const {
  return barycentric(point).minCoeff() >= -tol;
}

inline Eigen::VectorXd ReferenceSimplex::centroid() const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(dim_);
  for (const auto& v : vertices_) c += v;
  return c / num_vertices();
}

inline Eigen::VectorXd ReferenceSimplex::edge_point(const Polytope& e, double t) const {
  return vertices_[e.verts[0]] + t * (vertices_[e.verts[1]] - vertices_[e.verts[0]]);
}

inline Eigen::VectorXd ReferenceSimplex::polytope_point(const Polytope& p,
                                                        const Eigen::VectorXd& bary) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim_);
  for (int i = 0; i < p.num_verts(); ++i) x += bary[i] * vertices_[p.verts[i]];
  return x;
}

}  // namespace ptfem
