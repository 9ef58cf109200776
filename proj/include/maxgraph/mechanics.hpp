#pragma once

#include <vector>

#include "maxgraph/graph.hpp"

namespace maxgraph {

// Cycle index naming the loop around the complete end.
inline constexpr int kEndCycle = -1;

// Flux along the homology cycle: the arclength integral of the unit
// conormal, with (conormal, tangent) positively oriented and the loops
// oriented as the boundary of the region between the singular set and the
// end (clockwise around each singular cycle, counterclockwise around the
// end).  With that convention the catenoid carries F_0 = (0, 0, -2 pi) and
// F_infinity = (0, 0, 2 pi).  The quadrature result is cross checked
// against the imaginary part of the corresponding form periods and the two
// must agree to 1e-8 (certificate error otherwise).  scale multiplies the
// default loop standoff or radius; the value is scale independent because
// flux only depends on the homology class.
Vec3L flux(const MaximalGraph& g, int cycle, double tol = 1e-10,
           double scale = 1.0);

// Torque about the given origin along the same oriented loops: the
// arclength integral of (X - origin) wedge conormal.  Shifting the origin
// by v changes the result by v wedge flux.
Vec3L torque(const MaximalGraph& g, int cycle, const Vec3L& origin,
             double tol = 1e-10, double scale = 1.0);

struct FluxTorque {
  std::vector<Vec3L> fluxes;   // singular cycles in index order, end last
  std::vector<Vec3L> torques;  // same order, common origin
  Vec3L origin;
  double balance_residual_flux = 0.0;   // relative to the largest flux norm
  double balance_residual_torque = 0.0;
  bool balanced = false;
};

// All fluxes and torques plus the two closure residuals.  The end flux must
// cancel the sum over the singular cycles, and likewise for torques about
// any common origin; residuals are relative and balanced reports whether
// both stay within tol_balance.  A seeded evaluator defect shows up here as
// a failed balance rather than a throw.
FluxTorque balance_report(const MaximalGraph& g, double tol_balance = 1e-6,
                          const Vec3L& origin = {}, double tol = 1e-10);

// |F_infinity.x3 - 2 pi c_fit| / (1 + 2 pi |c_fit|) where c_fit is the
// fitted logarithmic growth of the end.  Certifies on the way that the end
// flux has no horizontal component.
double end_growth_consistency(const MaximalGraph& g, double tol = 1e-10);

// Per surface row of the desk scale uniqueness probe: horizontal flux
// content and pointing direction of every singularity, plus the end type.
struct SingularMechanics {
  std::vector<Vec3L> fluxes;            // per singular cycle
  std::vector<double> horizontal_flux;  // |(F_j.x1, F_j.x2)|
  std::vector<int> pointing;  // +1 surface above the vertex (downward cone)
  double max_horizontal_flux = 0.0;
  double growth = 0.0;         // fitted logarithmic coefficient of the end
  bool planar_end = false;     // |growth| <= 1e-4
  bool all_vertical = false;   // max horizontal flux <= 1e-8
  bool uniform_pointing = false;
};

SingularMechanics characterization_probe(const MaximalGraph& g,
                                         double tol = 1e-10);

}  // namespace maxgraph
