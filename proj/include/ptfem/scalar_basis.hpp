// Order-p H1-conforming scalar bases on the reference simplex, partitioned
// into vertex/edge/face/cell polytopal sets.

#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "ptfem/geometry.hpp"

namespace ptfem {

enum class ScalarFamily { lagrange, bernstein };

/// A scalar basis where every function is attached to one polytope of the
/// reference simplex and vanishes identically on every polytope that does not
/// contain its own.  Both families are spanned through barycentric Bernstein
/// monomials; Lagrange resolves equispaced principal-lattice nodes through a
/// Vandermonde solve at construction.
class ScalarBasis {
public:
  struct Fn {
    Polytope polytope;
    std::array<int, 4> alpha;  // barycentric multi-index, |alpha| = p
    int index_on_polytope;     // position within the polytope's list
  };

  ScalarBasis(ScalarFamily family, int order, const ReferenceSimplex& simplex);

  ScalarFamily family() const { return family_; }
  int order() const { return order_; }
  int dim() const { return simplex_->dim(); }
  const ReferenceSimplex& simplex() const { return *simplex_; }
  int size() const { return static_cast<int>(fns_.size()); }
  const std::vector<Fn>& functions() const { return fns_; }

  /// Indices of the functions attached to a polytope, in enumeration order.
  std::vector<int> polytope_functions(const Polytope& p) const;

  /// Values of all functions; throws std::domain_error outside the simplex
  /// (tolerance 1e-12).
  Eigen::VectorXd eval(const Eigen::VectorXd& point) const;

  /// Gradients of all functions, size n x dim.
  Eigen::MatrixXd gradient(const Eigen::VectorXd& point) const;

  /// Equispaced principal-lattice node of function i (Lagrange placement;
  /// also defined for Bernstein, where it is the Greville-style anchor).
  Eigen::VectorXd node(int i) const;

private:
  Eigen::VectorXd bernstein_eval(const Eigen::VectorXd& point) const;
  Eigen::MatrixXd bernstein_gradient(const Eigen::VectorXd& point) const;

  ScalarFamily family_;
  int order_;
  const ReferenceSimplex* simplex_;
  std::vector<Fn> fns_;
  Eigen::MatrixXd coeff_;  // basis = coeff_ * bernstein; identity for Bernstein
};

}  // namespace ptfem
