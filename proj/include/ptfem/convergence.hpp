// Convergence studies: mesh sequences, slope fitting and CSV/SVG reports.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ptfem/assembly.hpp"

namespace ptfem {

enum class Problem { antiplane, rmm3d };

struct PairingSpec {
  std::string name;          // e.g. "l1-n1_0"
  ScalarFamily scalar_family;
  int scalar_order;          // H1 order
  Family hcurl_family;
  int hcurl_order;           // = scalar_order - 1
};

const std::vector<PairingSpec>& pairings(Problem problem);
const PairingSpec* find_pairing(Problem problem, const std::string& name);

struct ConvergenceRow {
  int level = 0;
  double h = 0;
  int dofs = 0;
  double err_u = 0;
  double err_p = 0;
};

struct ConvergenceReport {
  Problem problem = Problem::antiplane;
  PairingSpec pairing;
  std::vector<ConvergenceRow> rows;
  int fit_window = 3;  // number of trailing levels in the slope fit
  double slope_u = 0;
  double slope_p = 0;
};

/// Least-squares slope of log(err) against log(h) over the last `window`
/// samples (err ~ h^slope).
double fit_slope(const std::vector<double>& h, const std::vector<double>& err, int window);

/// Runs the study on structured meshes with n = 2^(level+1) subdivisions.
/// levels >= 3 in 2D and >= 2 in 3D.  Optionally dumps per-level meshes.
ConvergenceReport run_convergence(Problem problem, const PairingSpec& pairing, int levels,
                                  Parallelism par = Parallelism::serial,
                                  std::ostream* log = nullptr,
                                  const std::string& dump_mesh_dir = "");

/// CSV with the exact header family_u,family_p,p,refine,dofs,err_u,err_p.
void write_csv(const ConvergenceReport& report, std::ostream& out);

/// Minimal hand-rolled log-log SVG plot: one polyline per field plus fitted
/// slope annotations.
void write_svg(const ConvergenceReport& report, std::ostream& out);

}  // namespace ptfem
