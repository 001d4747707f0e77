// Polytopal template sets: the per-polytope vector fields that, multiplied
// with scalar polytopal basis functions, span the vector elements.  Entries
// are exact rational data.

#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ptfem/geometry.hpp"

namespace ptfem {

enum class Family { n1, n2, bdm, rt };

std::string family_name(Family f);

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational normalized() const;
  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator-(Rational a) { return {-a.num, a.den}; }
  bool operator==(const Rational& o) const {
    return num * o.den == o.num * den;
  }
};

/// An affine vector field v(x) = A x + b with exact rational coefficients.
/// Constant templates have A = 0; the N1/RT templates carry the low-order
/// rotational/radial forms.
struct TemplateField {
  int dim = 2;
  std::array<std::array<Rational, 3>, 3> linear{};  // A
  std::array<Rational, 3> constant{};               // b

  static TemplateField constant_field(int dim, std::array<Rational, 3> b);
  bool is_constant() const;

  Eigen::VectorXd eval(const Eigen::VectorXd& xi) const;
  Eigen::MatrixXd linear_part() const;

  /// rot(Ax+b) = A21 - A12 (2D only).
  double rot2d() const;
  /// curl(Ax+b) (3D only).
  Eigen::Vector3d curl3d() const;
  /// div(Ax+b) = tr A.
  double divergence() const;

  TemplateField operator+(const TemplateField& o) const;
  TemplateField operator-(const TemplateField& o) const;
  TemplateField operator-() const;

  bool operator==(const TemplateField& o) const;

  /// Exact expression per component, e.g. "(1/2, -1/2)" or "(2*eta-1, -2*xi)".
  std::string to_string() const;
};

/// Per-family, per-polytope template entries in published order.
struct TemplateSet {
  Family family;
  int dim = 2;
  std::vector<std::pair<Polytope, std::vector<TemplateField>>> sets;

  const std::vector<TemplateField>* find(const Polytope& p) const {
    for (const auto& [poly, fields] : sets)
      if (poly == p) return &fields;
    return nullptr;
  }
};

/// The literal template data: N2/BDM on triangle and tetrahedron, N1/RT on
/// the triangle.  N1/RT on the tetrahedron throws ("not covered").
TemplateSet template_set(Family family, int dim);

/// Lowest-order edge fields: the three rotational (N1) or radial (RT) fields
/// on the triangle, or the six 3D edge fields lambda_i grad(lambda_j) -
/// lambda_j grad(lambda_i).  RT in 3D throws ("not covered").
std::vector<TemplateField> lowest_order_fields(Family family, int dim);

}  // namespace ptfem
