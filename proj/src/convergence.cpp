#include "ptfem/convergence.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ptfem {

const std::vector<PairingSpec>& pairings(Problem problem) {
  static const std::vector<PairingSpec> two_d = {
      {"l1-n1_0", ScalarFamily::lagrange, 1, Family::n1, 0},
      {"l2-n2_1", ScalarFamily::lagrange, 2, Family::n2, 1},
      {"l2-n1_1", ScalarFamily::lagrange, 2, Family::n1, 1},
      {"b3-n1_2", ScalarFamily::bernstein, 3, Family::n1, 2},
      {"b3-n2_2", ScalarFamily::bernstein, 3, Family::n2, 2},
  };
  static const std::vector<PairingSpec> three_d = {
      {"l1-n1_0", ScalarFamily::lagrange, 1, Family::n1, 0},
      {"l2-n2_1", ScalarFamily::lagrange, 2, Family::n2, 1},
      {"b3-n2_2", ScalarFamily::bernstein, 3, Family::n2, 2},
  };
  return problem == Problem::antiplane ? two_d : three_d;
}

const PairingSpec* find_pairing(Problem problem, const std::string& name) {
  for (const auto& p : pairings(problem))
    if (p.name == name) return &p;
  return nullptr;
}

double fit_slope(const std::vector<double>& h, const std::vector<double>& err, int window) {
  const int n = static_cast<int>(h.size());
  if (n < 2) throw std::invalid_argument("fit_slope: need at least two samples");
  const int k = std::min(window, n);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = n - k; i < n; ++i) {
    double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ConvergenceReport run_convergence(Problem problem, const PairingSpec& pairing, int levels,
                                  Parallelism par, std::ostream* log,
                                  const std::string& dump_mesh_dir) {
  const int dim = problem == Problem::antiplane ? 2 : 3;
  if (levels < (dim == 2 ? 3 : 2))
    throw std::invalid_argument("run_convergence: too few levels");
  ConvergenceReport report;
  report.problem = problem;
  report.pairing = pairing;
  report.fit_window = dim == 2 ? 3 : 2;

  const auto& simplex = ReferenceSimplex::get(dim);
  ScalarBasis h1(pairing.scalar_family, pairing.scalar_order, simplex);
  VectorElement hcurl =
      VectorElement::build(pairing.hcurl_family, pairing.hcurl_order, simplex,
                           pairing.scalar_family);

  for (int level = 0; level < levels; ++level) {
    const int n = 1 << (level + 1);
    SimplicialMesh mesh = structured_mesh(dim, -1.0, 1.0, n);
    if (!dump_mesh_dir.empty()) {
      std::ofstream out(dump_mesh_dir + "/mesh_" + std::to_string(level) + ".txt");
      write_mesh_text(mesh, out);
    }
    DofMap u_map(mesh, dof_layout(h1));
    DofMap p_map(mesh, dof_layout(hcurl));

    ConvergenceRow row;
    row.level = level;
    row.h = 2.0 / n;
    if (problem == Problem::antiplane) {
      Manufactured2D data = antiplane_solution();
      MaterialParams2D params;
      DiscreteSystem sys = assemble_antiplane(mesh, h1, u_map, hcurl, p_map, params, data, par);
      apply_dirichlet_antiplane(sys, mesh, h1, u_map, hcurl, p_map, data);
      Eigen::VectorXd x = solve(sys);
      auto [eu, ep] = l2_error_antiplane(mesh, h1, u_map, hcurl, p_map, x, data, par);
      row.dofs = sys.total();
      row.err_u = eu;
      row.err_p = ep;
    } else {
      Manufactured3D data = rmm3d_solution();
      MaterialParams3D params;
      DiscreteSystem sys = assemble_rmm3d(mesh, h1, u_map, hcurl, p_map, params, data, par);
      apply_dirichlet_rmm3d(sys, mesh, h1, u_map, hcurl, p_map, data);
      Eigen::VectorXd x = solve(sys);
      auto [eu, ep] = l2_error_rmm3d(mesh, h1, u_map, hcurl, p_map, x, data, par);
      row.dofs = sys.total();
      row.err_u = eu;
      row.err_p = ep;
    }
    report.rows.push_back(row);
    if (log)
      *log << "level " << level << "  h " << row.h << "  dofs " << row.dofs << "  err_u "
           << row.err_u << "  err_p " << row.err_p << "\n";
  }

  std::vector<double> hs, eus, eps;
  for (const auto& r : report.rows) {
    hs.push_back(r.h);
    eus.push_back(r.err_u);
    eps.push_back(r.err_p);
  }
  report.slope_u = fit_slope(hs, eus, report.fit_window);
  report.slope_p = fit_slope(hs, eps, report.fit_window);
  return report;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

}  // namespace

void write_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "family_u,family_p,p,refine,dofs,err_u,err_p\n";
  const std::string fu =
      report.pairing.scalar_family == ScalarFamily::lagrange ? "lagrange" : "bernstein";
  const std::string fp = report.pairing.hcurl_family == Family::n1 ? "n1" : "n2";
  for (const auto& r : report.rows)
    out << fu << "," << fp << "," << report.pairing.scalar_order << "," << r.level << ","
        << r.dofs << "," << fmt(r.err_u) << "," << fmt(r.err_p) << "\n";
}

void write_svg(const ConvergenceReport& report, std::ostream& out) {
  const double width = 520, height = 420, ml = 70, mr = 20, mt = 30, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& r : report.rows) {
    double x = std::log10(static_cast<double>(r.dofs));
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    for (double e : {r.err_u, r.err_p}) {
      double y = std::log10(e);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  xmin = std::floor(xmin);
  xmax = std::ceil(xmax);
  ymin = std::floor(ymin);
  ymax = std::ceil(ymax);
  auto X = [&](double logx) { return ml + (logx - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto Y = [&](double logy) {
    return height - mb - (logy - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(xmin); e <= static_cast<int>(xmax); ++e) {
    out << "<line x1=\"" << X(e) << "\" y1=\"" << height - mb << "\" x2=\"" << X(e)
        << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << X(e) << "\" y=\"" << height - mb + 20
        << "\" text-anchor=\"middle\" font-size=\"12\">1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); ++e) {
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y(e) << "\" x2=\"" << ml << "\" y2=\""
        << Y(e) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << Y(e) + 4
        << "\" text-anchor=\"end\" font-size=\"12\">1e" << e << "</text>\n";
  }
  out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-size=\"13\">degrees of freedom</text>\n";
  out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << 18
      << "\" text-anchor=\"middle\" font-size=\"13\">" << report.pairing.name
      << " L2 errors</text>\n";

  const char* colors[2] = {"#1f77b4", "#d62728"};
  const char* labels[2] = {"err_u", "err_p"};
  for (int series = 0; series < 2; ++series) {
    out << "<polyline fill=\"none\" stroke=\"" << colors[series] << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : report.rows) {
      double e = series == 0 ? r.err_u : r.err_p;
      out << X(std::log10(static_cast<double>(r.dofs))) << "," << Y(std::log10(e)) << " ";
    }
    out << "\"/>\n";
    for (const auto& r : report.rows) {
      double e = series == 0 ? r.err_u : r.err_p;
      out << "<circle cx=\"" << X(std::log10(static_cast<double>(r.dofs))) << "\" cy=\""
          << Y(std::log10(e)) << "\" r=\"3\" fill=\"" << colors[series] << "\"/>\n";
    }
    double slope = series == 0 ? report.slope_u : report.slope_p;
    char note[80];
    std::snprintf(note, sizeof(note), "%s slope %.2f", labels[series], slope);
    out << "<text x=\"" << width - mr - 5 << "\" y=\"" << mt + 18 + 16 * series
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << colors[series] << "\">" << note
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace ptfem
