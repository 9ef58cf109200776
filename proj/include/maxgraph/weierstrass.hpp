#pragma once

#include <vector>

#include "maxgraph/curve.hpp"
#include "maxgraph/extended.hpp"

namespace maxgraph {

// The three data families the builder understands.
//
//   riemann:  g = (w-1)/(w+1), phi3 = (1/w - w) dz on the curve w^2 = R(z),
//             restricted to the sheet Re w > 0 (there |g| < 1).
//   catenoid: g = 1/z, phi3 = dz/z on |z| > 1.
//   local:    g = z^m, phi3 = i (z^{2k} - 1) z^{-(k+1)} dz for k >= 1 and
//             phi3 = dz/z for k = 0, on an annulus r0 < |z| < 1.
//
// In all cases phi1 = (i/2) phi3 (1/g - g), phi2 = -(1/2) phi3 (1/g + g),
// which forces phi1^2 + phi2^2 - phi3^2 = 0.
enum class FamilyKind { riemann, catenoid, local };

// Test hook: deliberately damaged height differential.
enum class DefectKind { none, extra_zero, interior_pole };

struct WeierstrassEvaluator {
  FamilyKind kind = FamilyKind::catenoid;
  CurveParams curve;  // riemann only
  int m = 1, k = 0;   // local only
  double local_inner = 0.5;

  DefectKind defect = DefectKind::none;
  cplx defect_point{};
  double defect_strength = 0.0;

  static WeierstrassEvaluator riemann_family(const CurveParams& p);
  static WeierstrassEvaluator catenoid_model();
  static WeierstrassEvaluator local_model(int m, int k);

  // Same data with phi3 multiplied by (z - z0): seeds a zero of the height
  // differential not matched by the Gauss map.
  WeierstrassEvaluator with_extra_zero(cplx z0) const;
  // Same data with phi3 shifted by strength/(z - z0): seeds a spurious
  // interior pole, which destroys flux balance.
  WeierstrassEvaluator with_interior_pole(cplx z0, double strength) const;

  bool tracked() const { return kind == FamilyKind::riemann; }

  // Principal sheet point over z (w carries no meaning for untracked kinds).
  SheetPoint at(cplx z) const;

  ExtComplex gauss_g(cplx z, cplx w) const;
  ExtComplex phi3_value(cplx z, cplx w) const;

  // Density of phi_which with respect to dz; poles propagate as IEEE inf.
  cplx phi_density(int which, cplx z, cplx w) const;

  // Squared conformal factor lambda^2 = ((|phi3|/2) (1/|g| - |g|))^2 as a
  // density against |dz|^2, computed through cancellation-free products.
  // Returns +inf where the metric honestly degenerates.
  double conformal_factor_sq(cplx z, cplx w) const;

  double eps_standoff() const;
};

// Checks of the structural hypotheses behind the construction, each
// reported with the numeric evidence that backs it.
struct HypothesisReport {
  // (1) deg g equals n+1: counted as interior winding + vanishing order at
  // the puncture.
  int degree_counted = 0;
  double degree_residual = 0.0;
  std::vector<int> cut_windings;
  bool degree_ok = false;
  bool boundary_injective = false;

  // (2) pole order of phi3 at the puncture is at most 2: positive Fourier
  // tail on two probe circles.
  double pole_tail = 0.0;
  bool pole_order_ok = false;

  // (3) zeros of phi3 off the cuts coincide with zeros of g.
  int expected_zero_count = 0;
  int counted_zero_count = 0;
  double zero_match_dist = 0.0;
  bool zeros_ok = false;

  bool all_ok() const { return degree_ok && boundary_injective && pole_order_ok && zeros_ok; }
};

HypothesisReport validate_structure(const WeierstrassEvaluator& ev, double tol = 1e-8);

}  // namespace maxgraph
