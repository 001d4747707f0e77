// Reference vector elements assembled from polytopal templates tensored with
// scalar polytopal bases, plus gradient/scalar-curl kernel functions and the
// lowest-order edge fields for the kernel-split families.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ptfem/scalar_basis.hpp"
#include "ptfem/templates.hpp"

namespace ptfem {

enum class FnKind {
  vertex_edge,
  vertex_face,
  edge,
  edge_face,
  face,
  edge_cell,
  face_cell,
  cell,
  vertex_cell,
  gradient,
  scalar_curl,
  lowest_order,
};

std::string fn_kind_name(FnKind k);

struct VectorBasisFn {
  FnKind kind;
  Polytope association;  // polytope whose trace the function carries
  Polytope source;       // polytope of the underlying scalar (or own edge)
  int scalar_index = 0;  // position within the source polytope's scalar list
  int template_index = -1;
  int dup = 0;  // disambiguates functions sharing (kind, association, source, scalar)
};

class VectorElement {
public:
  /// Builds the reference element.  N2/BDM: p >= 1, dim 2 or 3.  N1/RT:
  /// p >= 0, dim 2 (plus the lowest-order N1 edge element on the
  /// tetrahedron as p = 0).
  static VectorElement build(Family family, int p, const ReferenceSimplex& simplex,
                             ScalarFamily scalar_family);

  /// As build(), but with caller-supplied template data (testing hook).
  static VectorElement build_with_templates(Family family, int p,
                                            const ReferenceSimplex& simplex,
                                            ScalarFamily scalar_family, TemplateSet templates,
                                            std::vector<TemplateField> lowest);

  Family family() const { return family_; }
  int order() const { return order_; }
  int dim() const { return simplex_->dim(); }
  const ReferenceSimplex& simplex() const { return *simplex_; }
  bool is_hcurl() const { return family_ == Family::n1 || family_ == Family::n2; }
  bool is_hdiv() const { return !is_hcurl(); }
  int size() const { return static_cast<int>(fns_.size()); }
  const std::vector<VectorBasisFn>& functions() const { return fns_; }
  const TemplateSet& templates() const { return templates_; }
  const std::vector<TemplateField>& lowest_order() const { return lowest_; }

  /// Values of all basis functions, size n x dim.
  Eigen::MatrixXd eval(const Eigen::VectorXd& point) const;

  /// Reference curls: n x 1 (2D rot) or n x 3.  H(curl) families only.
  Eigen::MatrixXd curl(const Eigen::VectorXd& point) const;

  /// Reference divergences.  H(div) families only.
  Eigen::VectorXd divergence(const Eigen::VectorXd& point) const;

  /// Maximal total polynomial degree of the components.
  int polynomial_degree() const {
    return (family_ == Family::n1 || family_ == Family::rt) ? order_ + 1 : order_;
  }

private:
  VectorElement() = default;

  Family family_;
  int order_;
  const ReferenceSimplex* simplex_;
  std::optional<ScalarBasis> scalar_;         // order p tensor factor
  std::optional<ScalarBasis> kernel_scalar_;  // order p+1, N1/RT kernels
  TemplateSet templates_;
  std::vector<TemplateField> lowest_;
  std::vector<VectorBasisFn> fns_;

  void enumerate_tensor_family();
  void enumerate_kernel_family();
  void assign_dups();
};

}  // namespace ptfem
