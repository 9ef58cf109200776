#pragma once

#include <array>
#include <vector>

#include "maxgraph/lorentz.hpp"
#include "maxgraph/quadrature.hpp"
#include "maxgraph/weierstrass.hpp"

namespace maxgraph {

struct PeriodSet {
  std::vector<PeriodTriple> cycles;
  double max_real_residual = 0.0;
};

// A built surface: all homology periods verified purely imaginary, so
// X = Re of the path integral of (phi1, phi2, phi3) is single valued, and
// the distinguished singular point is moved to the origin.
struct MaximalGraph {
  WeierstrassEvaluator ev;
  std::vector<RealInterval> cuts;  // empty for the rotational and local models
  double eps = 1e-3;
  double tol = 1e-10;
  cplx z_ref{};
  cplx w_ref{};
  Vec3L offset{};  // subtracted from the raw integral
  PeriodSet periods;
  std::vector<Vec3L> singular;

  int num_singular() const {
    return cuts.empty() ? 1 : (int)cuts.size();
  }
};

MaximalGraph build_graph(const WeierstrassEvaluator& ev, double tol = 1e-10);

// Polyline from the base point to the target that keeps the mandatory
// standoff from the cuts (curve family) or from the density pole at the
// origin (rotational and local models).
std::vector<cplx> plan_route(const MaximalGraph& g, cplx target);

Vec3L evaluate_X(const MaximalGraph& g, cplx z, double tol = 0.0);
Vec3L evaluate_X(const MaximalGraph& g, const SheetPoint& p, double tol = 0.0);

// Incremental evaluation state: X and the sheet value are dragged along
// straight moves, so long sample chains cost one route only.
struct XWalker {
  const MaximalGraph* g = nullptr;
  double tol = 1e-10;
  cplx z{}, w{};
  Vec3L X{};

  static XWalker start(const MaximalGraph& g, cplx z0, double tol = 0.0);
  void move_to(cplx z1);
};

// Common limit of X on a component of the singular set, found by standoff
// extrapolation from many stations; the station scatter is certified
// against 100 * tol.
Vec3L singular_point(const MaximalGraph& g, int j, double tol = 0.0);

struct ConeReport {
  std::vector<double> standoffs;
  std::vector<double> max_deviation;  // of ||horizontal|| / |vertical| from 1
  bool shrinking = false;
  // (station parameter, X - q) at the smallest standoff, for direction checks
  std::vector<std::pair<double, Vec3L>> closest_samples;
};

// Light-cone asymptotics near singular component j: the horizontal and
// vertical displacements from q_j must balance as the standoff shrinks.
ConeReport cone_check(const MaximalGraph& g, int j,
                      const std::vector<double>& standoffs = {1e-2, 1e-3});

// Degree of the horizontal projection winding around q_j on a loop at the
// given standoff; verified stable under sample refinement.
int covering_degree(const MaximalGraph& g, int j, double standoff = 1e-2);

struct GraphCertificate {
  bool graph = false;
  double min_transversality = 0.0;  // min |det d(x1,x2)| / lambda^2
  int orientation_sign = 0;
  bool orientation_consistent = false;
  std::vector<int> coverings;
  double max_abs_g = 0.0;
};

GraphCertificate graph_certificate(const MaximalGraph& g);

struct AsymptoticFit {
  double c = 0.0, b = 0.0, a1 = 0.0, a2 = 0.0;
  std::vector<double> radii;
  std::vector<double> residual;  // rms misfit per probe ring
};

// Fit x3 ~ c log rho + b + (a . x) / rho^2 on far horizontal rings of the
// end; radii default to {R0, 2 R0} with R0 well past the singular extent.
AsymptoticFit asymptotic_fit(const MaximalGraph& g,
                             std::vector<double> radii = {});

struct MeshSpec {
  int around = 32;
  int rings = 32;
};

struct MeshSample {
  cplx z;
  Vec3L X;
  double abs_g = 0.0;
};

struct Mesh {
  std::vector<MeshSample> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based corners
};

Mesh sample_mesh(const MaximalGraph& g, const MeshSpec& spec);

}  // namespace maxgraph
