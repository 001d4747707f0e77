#include "ptfem/vector_element.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace ptfem {

std::string fn_kind_name(FnKind k) {
  switch (k) {
    case FnKind::vertex_edge: return "vertex-edge";
    case FnKind::vertex_face: return "vertex-face";
    case FnKind::edge: return "edge";
    case FnKind::edge_face: return "edge-face";
    case FnKind::face: return "face";
    case FnKind::edge_cell: return "edge-cell";
    case FnKind::face_cell: return "face-cell";
    case FnKind::cell: return "cell";
    case FnKind::vertex_cell: return "vertex-cell";
    case FnKind::gradient: return "gradient";
    case FnKind::scalar_curl: return "curl-of-scalar";
    case FnKind::lowest_order: return "lowest-order";
  }
  return "?";
}

namespace {

constexpr double kTraceTol = 1e-12;

bool tangential_trace_nonzero(const TemplateField& f, const ReferenceSimplex& s,
                              const Polytope& edge) {
  Eigen::VectorXd tau = s.edge_tangent(edge);
  double m = 0;
  for (double t : {0.0, 1.0 / 3.0, 1.0})
    m = std::max(m, std::abs(tau.dot(f.eval(s.edge_point(edge, t)))));
  return m > kTraceTol;
}

bool normal_trace_nonzero(const TemplateField& f, const ReferenceSimplex& s,
                          const Polytope& facet) {
  Eigen::VectorXd nu = s.oriented_facet_normal(facet);
  double m = 0;
  int nv = facet.num_verts();
  for (int i = 0; i < nv; ++i) {
    Eigen::VectorXd bary = Eigen::VectorXd::Zero(nv);
    bary[i] = 1.0;
    m = std::max(m, std::abs(nu.dot(f.eval(s.polytope_point(facet, bary)))));
  }
  Eigen::VectorXd mid = Eigen::VectorXd::Constant(nv, 1.0 / nv);
  m = std::max(m, std::abs(nu.dot(f.eval(s.polytope_point(facet, mid)))));
  return m > kTraceTol;
}

// nonzero tangential component on a face (the H(curl) face trace nu x v)
bool cross_trace_nonzero(const TemplateField& f, const ReferenceSimplex& s,
                         const Polytope& face) {
  Eigen::Vector3d nu = s.oriented_facet_normal(face);
  double m = 0;
  int nv = face.num_verts();
  for (int i = 0; i <= nv; ++i) {
    Eigen::VectorXd bary = i < nv ? Eigen::VectorXd::Zero(nv)
                                  : Eigen::VectorXd::Constant(nv, 1.0 / nv);
    if (i < nv) bary[i] = 1.0;
    Eigen::Vector3d v = f.eval(s.polytope_point(face, bary));
    m = std::max(m, nu.cross(v).norm());
  }
  return m > kTraceTol;
}

}  // namespace

VectorElement VectorElement::build(Family family, int p, const ReferenceSimplex& simplex,
                                   ScalarFamily scalar_family) {
  TemplateSet ts;
  std::vector<TemplateField> lowest;
  if (family == Family::n2 || family == Family::bdm) {
    ts = template_set(family, simplex.dim());
  } else if (simplex.dim() == 3) {
    if (family == Family::n1 && p == 0) {
      lowest = lowest_order_fields(family, 3);
      ts.family = family;
      ts.dim = 3;
    } else {
      throw std::invalid_argument(family_name(family) +
                                  " of general order on the tetrahedron: not covered");
    }
  } else {
    ts = template_set(family, 2);
    lowest = lowest_order_fields(family, 2);
  }
  return build_with_templates(family, p, simplex, scalar_family, std::move(ts),
                              std::move(lowest));
}

VectorElement VectorElement::build_with_templates(Family family, int p,
                                                  const ReferenceSimplex& simplex,
                                                  ScalarFamily scalar_family,
                                                  TemplateSet templates,
                                                  std::vector<TemplateField> lowest) {
  const bool kernel_family = family == Family::n1 || family == Family::rt;
  if (!kernel_family && p < 1)
    throw std::domain_error("N2/BDM require order >= 1");
  if (kernel_family && p < 0) throw std::domain_error("N1/RT require order >= 0");

  VectorElement el;
  el.family_ = family;
  el.order_ = p;
  el.simplex_ = &simplex;
  el.templates_ = std::move(templates);
  el.lowest_ = std::move(lowest);
  if (!kernel_family || p >= 1)
    el.scalar_.emplace(scalar_family, std::max(p, 1), simplex);
  if (kernel_family)
    el.kernel_scalar_.emplace(scalar_family, p + 1, simplex);

  if (kernel_family)
    el.enumerate_kernel_family();
  else
    el.enumerate_tensor_family();
  el.assign_dups();
  return el;
}

void VectorElement::enumerate_tensor_family() {
  const auto& s = *simplex_;
  const bool hcurl = is_hcurl();
  for (const auto& poly : s.polytopes()) {
    const auto* entries = templates_.find(poly);
    if (!entries) continue;
    auto scalar_fns = scalar_->polytope_functions(poly);
    for (int si = 0; si < static_cast<int>(scalar_fns.size()); ++si) {
      for (int ti = 0; ti < static_cast<int>(entries->size()); ++ti) {
        const TemplateField& entry = (*entries)[ti];
        VectorBasisFn fn;
        fn.source = poly;
        fn.scalar_index = si;
        fn.template_index = ti;
        switch (poly.kind) {
          case PolytopeKind::vertex: {
            std::vector<Polytope> designated;
            if (hcurl) {
              for (const auto& e : s.adjacent(poly, PolytopeKind::edge))
                if (tangential_trace_nonzero(entry, s, e)) designated.push_back(e);
              fn.kind = FnKind::vertex_edge;
            } else {
              PolytopeKind facet_kind = dim() == 2 ? PolytopeKind::edge : PolytopeKind::face;
              for (const auto& f : s.adjacent(poly, facet_kind))
                if (normal_trace_nonzero(entry, s, f)) designated.push_back(f);
              fn.kind = dim() == 2 ? FnKind::vertex_edge : FnKind::vertex_face;
            }
            if (designated.size() != 1)
              throw std::logic_error("template vertex entry designates " +
                                     std::to_string(designated.size()) + " facets");
            fn.association = designated.front();
            break;
          }
          case PolytopeKind::edge: {
            if (hcurl && tangential_trace_nonzero(entry, s, poly)) {
              fn.kind = FnKind::edge;
              fn.association = poly;
            } else if (!hcurl && dim() == 2 && normal_trace_nonzero(entry, s, poly)) {
              fn.kind = FnKind::edge;
              fn.association = poly;
            } else if (dim() == 3) {
              std::vector<Polytope> designated;
              for (const auto& f : s.adjacent(poly, PolytopeKind::face)) {
                bool hit = hcurl ? cross_trace_nonzero(entry, s, f)
                                 : normal_trace_nonzero(entry, s, f);
                if (hit) designated.push_back(f);
              }
              if (designated.size() == 1) {
                fn.kind = FnKind::edge_face;
                fn.association = designated.front();
              } else if (designated.empty()) {
                fn.kind = FnKind::edge_cell;
                fn.association = s.cell_polytope();
              } else {
                throw std::logic_error("template edge entry designates two faces");
              }
            } else {
              fn.kind = FnKind::edge_cell;
              fn.association = s.cell_polytope();
            }
            break;
          }
          case PolytopeKind::face: {
            bool hit = hcurl ? cross_trace_nonzero(entry, s, poly)
                             : normal_trace_nonzero(entry, s, poly);
            fn.kind = hit ? FnKind::face : FnKind::face_cell;
            fn.association = hit ? poly : s.cell_polytope();
            break;
          }
          case PolytopeKind::cell: {
            fn.kind = FnKind::cell;
            fn.association = poly;
            break;
          }
        }
        fns_.push_back(fn);
      }
    }
  }
}

void VectorElement::enumerate_kernel_family() {
  const auto& s = *simplex_;
  const FnKind kernel_kind = family_ == Family::n1 ? FnKind::gradient : FnKind::scalar_curl;
  const Polytope cell = s.cell_polytope();

  // Edge polytopes: gradients/curls of order-(p+1) edge functions, then the
  // lowest-order field of the edge.
  for (int ei = 0; ei < static_cast<int>(s.edges().size()); ++ei) {
    const Polytope& e = s.edges()[ei];
    if (kernel_scalar_) {
      auto kfns = kernel_scalar_->polytope_functions(e);
      for (int si = 0; si < static_cast<int>(kfns.size()); ++si)
        fns_.push_back({kernel_kind, e, e, si, -1});
    }
    if (!lowest_.empty())
      fns_.push_back({FnKind::lowest_order, e, e, 0, ei});
  }

  // Cell polytope: kernel functions first, then the non-kernel tensor part
  // built on the vertices v1, v2, the edges and the cell.
  if (kernel_scalar_) {
    auto kfns = kernel_scalar_->polytope_functions(cell);
    for (int si = 0; si < static_cast<int>(kfns.size()); ++si)
      fns_.push_back({kernel_kind, cell, cell, si, -1});
  }
  if (order_ >= 1 && scalar_) {
    for (int v = 0; v < 2; ++v) {
      const Polytope vert = Polytope::vertex(v);
      if (const auto* entries = templates_.find(vert))
        for (int ti = 0; ti < static_cast<int>(entries->size()); ++ti)
          fns_.push_back({FnKind::vertex_cell, cell, vert, 0, ti});
    }
    for (const auto& e : s.edges()) {
      const auto* entries = templates_.find(e);
      if (!entries) continue;
      auto efns = scalar_->polytope_functions(e);
      for (int si = 0; si < static_cast<int>(efns.size()); ++si)
        for (int ti = 0; ti < static_cast<int>(entries->size()); ++ti)
          fns_.push_back({FnKind::edge_cell, cell, e, si, ti});
    }
    if (const auto* entries = templates_.find(cell)) {
      auto cfns = scalar_->polytope_functions(cell);
      for (int si = 0; si < static_cast<int>(cfns.size()); ++si)
        for (int ti = 0; ti < static_cast<int>(entries->size()); ++ti)
          fns_.push_back({FnKind::cell, cell, cell, si, ti});
    }
  }
}

void VectorElement::assign_dups() {
  std::map<std::tuple<FnKind, Polytope, Polytope, int>, int> seen;
  for (auto& fn : fns_)
    fn.dup = seen[{fn.kind, fn.association, fn.source, fn.scalar_index}]++;
}

namespace {

// scalar function index within its basis for a (source polytope, local index)
int scalar_fn_index(const ScalarBasis& basis, const Polytope& poly, int local) {
  auto idx = basis.polytope_functions(poly);
  return idx[local];
}

}  // namespace

Eigen::MatrixXd VectorElement::eval(const Eigen::VectorXd& point) const {
  if (!simplex_->contains(point))
    throw std::domain_error("vector element: point outside reference simplex");
  const int d = dim();
  Eigen::MatrixXd out(size(), d);
  Eigen::VectorXd sv;
  Eigen::MatrixXd kg;
  if (scalar_) sv = scalar_->eval(point);
  if (kernel_scalar_) kg = kernel_scalar_->gradient(point);
  for (int i = 0; i < size(); ++i) {
    const auto& fn = fns_[i];
    switch (fn.kind) {
      case FnKind::gradient: {
        int gi = scalar_fn_index(*kernel_scalar_, fn.source, fn.scalar_index);
        out.row(i) = kg.row(gi);
        break;
      }
      case FnKind::scalar_curl: {
        int gi = scalar_fn_index(*kernel_scalar_, fn.source, fn.scalar_index);
        out(i, 0) = kg(gi, 1);
        out(i, 1) = -kg(gi, 0);
        break;
      }
      case FnKind::lowest_order: {
        out.row(i) = lowest_[fn.template_index].eval(point);
        break;
      }
      default: {
        const TemplateField& field = (*templates_.find(fn.source))[fn.template_index];
        int si = scalar_fn_index(*scalar_, fn.source, fn.scalar_index);
        out.row(i) = sv[si] * field.eval(point).transpose();
      }
    }
  }
  return out;
}

Eigen::MatrixXd VectorElement::curl(const Eigen::VectorXd& point) const {
  if (!is_hcurl()) throw std::logic_error("curl: not an H(curl) family");
  if (!simplex_->contains(point))
    throw std::domain_error("vector element: point outside reference simplex");
  const int d = dim();
  const int nc = d == 2 ? 1 : 3;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size(), nc);
  Eigen::VectorXd sv;
  Eigen::MatrixXd sg;
  if (scalar_) {
    sv = scalar_->eval(point);
    sg = scalar_->gradient(point);
  }
  for (int i = 0; i < size(); ++i) {
    const auto& fn = fns_[i];
    if (fn.kind == FnKind::gradient) continue;  // exact zero
    if (fn.kind == FnKind::lowest_order) {
      const auto& field = lowest_[fn.template_index];
      if (d == 2)
        out(i, 0) = field.rot2d();
      else
        out.row(i) = field.curl3d().transpose();
      continue;
    }
    const TemplateField& field = (*templates_.find(fn.source))[fn.template_index];
    int si = scalar_fn_index(*scalar_, fn.source, fn.scalar_index);
    Eigen::VectorXd F = field.eval(point);
    if (d == 2) {
      out(i, 0) = sv[si] * field.rot2d() + sg(si, 0) * F[1] - sg(si, 1) * F[0];
    } else {
      Eigen::Vector3d grad = sg.row(si);
      Eigen::Vector3d val = F;
      out.row(i) = (sv[si] * field.curl3d() + grad.cross(val)).transpose();
    }
  }
  return out;
}

Eigen::VectorXd VectorElement::divergence(const Eigen::VectorXd& point) const {
  if (!is_hdiv()) throw std::logic_error("divergence: not an H(div) family");
  if (!simplex_->contains(point))
    throw std::domain_error("vector element: point outside reference simplex");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size());
  Eigen::VectorXd sv;
  Eigen::MatrixXd sg;
  if (scalar_) {
    sv = scalar_->eval(point);
    sg = scalar_->gradient(point);
  }
  for (int i = 0; i < size(); ++i) {
    const auto& fn = fns_[i];
    if (fn.kind == FnKind::scalar_curl) continue;  // exact zero
    if (fn.kind == FnKind::lowest_order) {
      out[i] = lowest_[fn.template_index].divergence();
      continue;
    }
    const TemplateField& field = (*templates_.find(fn.source))[fn.template_index];
    int si = scalar_fn_index(*scalar_, fn.source, fn.scalar_index);
    out[i] = sg.row(si).dot(field.eval(point)) + sv[si] * field.divergence();
  }
  return out;
}

}  // namespace ptfem
