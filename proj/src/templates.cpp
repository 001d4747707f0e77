#include "ptfem/templates.hpp"

#include <numeric>
#include <stdexcept>

namespace ptfem {

std::string family_name(Family f) {
  switch (f) {
    case Family::n1: return "N1";
    case Family::n2: return "N2";
    case Family::bdm: return "BDM";
    case Family::rt: return "RT";
  }
  return "?";
}

Rational Rational::normalized() const {
  long long g = std::gcd(num < 0 ? -num : num, den < 0 ? -den : den);
  if (g == 0) return {0, 1};
  long long s = den < 0 ? -1 : 1;
  return {s * num / g, s * den / g};
}

Rational operator+(Rational a, Rational b) {
  return Rational{a.num * b.den + b.num * a.den, a.den * b.den}.normalized();
}
Rational operator-(Rational a, Rational b) { return a + (-b); }
Rational operator*(Rational a, Rational b) {
  return Rational{a.num * b.num, a.den * b.den}.normalized();
}

TemplateField TemplateField::constant_field(int dim, std::array<Rational, 3> b) {
  TemplateField f;
  f.dim = dim;
  f.constant = b;
  return f;
}

bool TemplateField::is_constant() const {
  for (const auto& row : linear)
    for (const auto& r : row)
      if (r.num != 0) return false;
  return true;
}

Eigen::VectorXd TemplateField::eval(const Eigen::VectorXd& xi) const {
  Eigen::VectorXd v(dim);
  for (int r = 0; r < dim; ++r) {
    double s = constant[r].value();
    for (int c = 0; c < dim; ++c) s += linear[r][c].value() * xi[c];
    v[r] = s;
  }
  return v;
}

Eigen::MatrixXd TemplateField::linear_part() const {
  Eigen::MatrixXd a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = linear[r][c].value();
  return a;
}

double TemplateField::rot2d() const { return (linear[1][0] - linear[0][1]).value(); }

Eigen::Vector3d TemplateField::curl3d() const {
  return Eigen::Vector3d((linear[2][1] - linear[1][2]).value(),
                         (linear[0][2] - linear[2][0]).value(),
                         (linear[1][0] - linear[0][1]).value());
}

double TemplateField::divergence() const {
  Rational t{0, 1};
  for (int i = 0; i < dim; ++i) t = t + linear[i][i];
  return t.value();
}

TemplateField TemplateField::operator+(const TemplateField& o) const {
  TemplateField f = *this;
  for (int r = 0; r < 3; ++r) {
    f.constant[r] = f.constant[r] + o.constant[r];
    for (int c = 0; c < 3; ++c) f.linear[r][c] = f.linear[r][c] + o.linear[r][c];
  }
  return f;
}

TemplateField TemplateField::operator-(const TemplateField& o) const { return *this + (-o); }

TemplateField TemplateField::operator-() const {
  TemplateField f = *this;
  for (int r = 0; r < 3; ++r) {
    f.constant[r] = -f.constant[r];
    for (int c = 0; c < 3; ++c) f.linear[r][c] = -f.linear[r][c];
  }
  return f;
}

bool TemplateField::operator==(const TemplateField& o) const {
  if (dim != o.dim) return false;
  for (int r = 0; r < 3; ++r) {
    if (!(constant[r] == o.constant[r])) return false;
    for (int c = 0; c < 3; ++c)
      if (!(linear[r][c] == o.linear[r][c])) return false;
  }
  return true;
}

std::string TemplateField::to_string() const {
  const char* vars[3] = {"xi", "eta", "zeta"};
  auto rat = [](Rational r) {
    r = r.normalized();
    std::string s = std::to_string(r.num);
    if (r.den != 1) s += "/" + std::to_string(r.den);
    return s;
  };
  std::string out = "(";
  for (int r = 0; r < dim; ++r) {
    std::string comp;
    for (int c = 0; c < dim; ++c) {
      Rational a = linear[r][c].normalized();
      if (a.num == 0) continue;
      if (!comp.empty() && a.num > 0) comp += "+";
      if (a.num == -1 && a.den == 1)
        comp += "-";
      else if (!(a.num == 1 && a.den == 1))
        comp += rat(a) + "*";
      comp += vars[c];
    }
    Rational b = constant[r].normalized();
    if (b.num != 0 || comp.empty()) {
      if (!comp.empty() && b.num > 0) comp += "+";
      comp += rat(b);
    }
    out += comp;
    if (r + 1 < dim) out += ", ";
  }
  return out + ")";
}

namespace {

constexpr Rational R0{0, 1}, R1{1, 1}, Rm1{-1, 1}, Rh{1, 2}, Rmh{-1, 2};

TemplateField cf2(Rational x, Rational y) {
  return TemplateField::constant_field(2, {x, y, R0});
}
TemplateField cf3(Rational x, Rational y, Rational z) {
  return TemplateField::constant_field(3, {x, y, z});
}

// Whitney-style edge field lambda_a grad(lambda_b) - lambda_b grad(lambda_a)
// from affine barycentric data lambda = a0 + g . x.
TemplateField edge_field(int dim, Rational a0_a, std::array<Rational, 3> ga, Rational a0_b,
                         std::array<Rational, 3> gb) {
  TemplateField f;
  f.dim = dim;
  for (int r = 0; r < dim; ++r) {
    f.constant[r] = a0_a * gb[r] - a0_b * ga[r];
    for (int c = 0; c < dim; ++c) f.linear[r][c] = ga[c] * gb[r] - gb[c] * ga[r];
  }
  return f;
}

std::array<Rational, 3> bary_grad_2d(int i) {
  switch (i) {
    case 0: return {Rm1, Rm1, R0};
    case 1: return {R0, R1, R0};
    default: return {R1, R0, R0};
  }
}
Rational bary_const_2d(int i) { return i == 0 ? R1 : R0; }

std::array<Rational, 3> bary_grad_3d(int i) {
  switch (i) {
    case 0: return {Rm1, Rm1, Rm1};
    case 1: return {R0, R0, R1};
    case 2: return {R0, R1, R0};
    default: return {R1, R0, R0};
  }
}
Rational bary_const_3d(int i) { return i == 0 ? R1 : R0; }

}  // namespace

std::vector<TemplateField> lowest_order_fields(Family family, int dim) {
  if (family != Family::n1 && family != Family::rt)
    throw std::invalid_argument("lowest_order_fields: family must be N1 or RT");
  if (family == Family::rt && dim == 3)
    throw std::invalid_argument("lowest order RT on the tetrahedron: not covered");
  if (family == Family::n1 && dim == 3) {
    std::vector<TemplateField> fields;
    const auto& tet = ReferenceSimplex::tetrahedron();
    for (const auto& e : tet.edges())
      fields.push_back(edge_field(3, bary_const_3d(e.verts[0]), bary_grad_3d(e.verts[0]),
                                  bary_const_3d(e.verts[1]), bary_grad_3d(e.verts[1])));
    return fields;
  }
  if (family == Family::n1) {
    // theta_1 = (eta, 1-xi), theta_2 = (1-eta, xi), theta_3 = (eta, -xi)
    std::vector<TemplateField> fields(3);
    for (auto& f : fields) f.dim = 2;
    fields[0].linear[0][1] = R1;
    fields[0].linear[1][0] = Rm1;
    fields[0].constant[1] = R1;
    fields[1].linear[0][1] = Rm1;
    fields[1].linear[1][0] = R1;
    fields[1].constant[0] = R1;
    fields[2].linear[0][1] = R1;
    fields[2].linear[1][0] = Rm1;
    return fields;
  }
  // RT 2D: phi_1 = (1-xi, -eta), phi_2 = (xi, eta-1), phi_3 = (-xi, -eta)
  std::vector<TemplateField> fields(3);
  for (auto& f : fields) f.dim = 2;
  fields[0].linear[0][0] = Rm1;
  fields[0].linear[1][1] = Rm1;
  fields[0].constant[0] = R1;
  fields[1].linear[0][0] = R1;
  fields[1].linear[1][1] = R1;
  fields[1].constant[1] = Rm1;
  fields[2].linear[0][0] = Rm1;
  fields[2].linear[1][1] = Rm1;
  return fields;
}

TemplateSet template_set(Family family, int dim) {
  if ((family == Family::n1 || family == Family::rt) && dim == 3)
    throw std::invalid_argument(family_name(family) +
                                " templates on the tetrahedron: not covered");
  TemplateSet ts;
  ts.family = family;
  ts.dim = dim;
  auto V = [&](int a) { return Polytope::vertex(a); };
  auto E = [&](int a, int b) { return Polytope::edge(a, b); };
  auto F = [&](int a, int b, int c) { return Polytope::face(a, b, c); };
  const Polytope C = Polytope::cell(dim + 1);

  if (family == Family::n2 && dim == 2) {
    ts.sets = {
        {V(0), {cf2(R1, R0), cf2(R0, R1)}},
        {V(1), {cf2(R1, R1), cf2(R1, R0)}},
        {V(2), {cf2(R1, R1), cf2(R0, Rm1)}},
        {E(0, 1), {cf2(R0, R1), cf2(Rm1, R0)}},
        {E(0, 2), {cf2(R1, R0), cf2(R0, R1)}},
        {E(1, 2), {cf2(Rh, Rmh), cf2(R1, R1)}},
        {C, {cf2(R1, R0), cf2(R0, R1)}},
    };
    return ts;
  }
  if (family == Family::bdm && dim == 2) {
    ts.sets = {
        {V(0), {cf2(R1, R0), cf2(R0, Rm1)}},
        {V(1), {cf2(R1, Rm1), cf2(R0, Rm1)}},
        {V(2), {cf2(R1, Rm1), cf2(Rm1, R0)}},
        {E(0, 1), {cf2(R1, R0), cf2(R0, R1)}},
        {E(0, 2), {cf2(R0, Rm1), cf2(R1, R0)}},
        {E(1, 2), {cf2(Rmh, Rmh), cf2(Rm1, R1)}},
        {C, {cf2(R1, R0), cf2(R0, R1)}},
    };
    return ts;
  }
  if (family == Family::n2 && dim == 3) {
    auto e1 = cf3(R1, R0, R0), e2 = cf3(R0, R1, R0), e3 = cf3(R0, R0, R1);
    auto s = cf3(R1, R1, R1);
    ts.sets = {
        {V(0), {e3, e2, e1}},
        {V(1), {s, e2, e1}},
        {V(2), {s, -e3, e1}},
        {V(3), {s, -e3, -e2}},
        {E(0, 1), {e3, -e2, -e1}},
        {E(0, 2), {e2, e3, -e1}},
        {E(0, 3), {e1, e3, e2}},
        {E(1, 2), {e2, s, -e1}},
        {E(1, 3), {e1, s, e2}},
        {E(2, 3), {e1, s, -e3}},
        {F(0, 1, 2), {e3, e2, -e1}},
        {F(0, 1, 3), {e3, e1, e2}},
        {F(0, 2, 3), {e2, e1, -e3}},
        {F(1, 2, 3), {e2, e1, s}},
        {C, {e3, e2, e1}},
    };
    return ts;
  }
  if (family == Family::bdm && dim == 3) {
    auto e1 = cf3(R1, R0, R0), e2 = cf3(R0, R1, R0), e3 = cf3(R0, R0, R1);
    ts.sets = {
        {V(0), {-e1, e2, -e3}},
        {V(1), {e3 - e1, e2 - e3, -e3}},
        {V(2), {e2 - e1, e2 - e3, -e2}},
        {V(3), {e2 - e1, e1 - e3, -e1}},
        {E(0, 1), {-e1, e2, e3}},
        {E(0, 2), {-e1, -e3, e2}},
        {E(0, 3), {e2, -e3, e1}},
        {E(1, 2), {e3 - e1, -e3, e2 - e3}},
        {E(1, 3), {e2 - e3, -e3, e1 - e3}},
        {E(2, 3), {e2 - e3, -e2, e1 - e2}},
        {F(0, 1, 2), {-e1, e3, e2}},
        {F(0, 1, 3), {e2, e3, e1}},
        {F(0, 2, 3), {-e3, e2, e1}},
        {F(1, 2, 3), {-e3, e2 - e3, e1 - e3}},
        {C, {e3, e2, e1}},
    };
    return ts;
  }

  // N1 / RT on the triangle: non-kernel sets from the lowest-order fields.
  auto lo = lowest_order_fields(family, 2);
  const auto& t1 = lo[0];
  const auto& t2 = lo[1];
  const auto& t3 = lo[2];
  if (family == Family::n1) {
    ts.sets = {
        {V(0), {t3}},          {V(1), {t2}},
        {E(0, 1), {t3 - t2}},  {E(0, 2), {t1 + t3}},
        {E(1, 2), {t1 - t2}},  {C, {t1 - t2 + t3}},
    };
  } else {
    ts.sets = {
        {V(0), {-t3}},         {V(1), {t2}},
        {E(0, 1), {t2 - t3}},  {E(0, 2), {-t1 - t3}},
        {E(1, 2), {t2 - t1}},  {C, {t2 - t1 - t3}},
    };
  }
  return ts;
}

}  // namespace ptfem
