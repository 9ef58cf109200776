#pragma once

#include <array>
#include <functional>
#include <vector>

#include "maxgraph/curve.hpp"
#include "maxgraph/weierstrass.hpp"

namespace maxgraph {

struct QuadResult {
  cplx value{0.0, 0.0};
  double abs_err = 0.0;
};

// Polyline with the sheet seed at its first vertex.  refinement > 0 caps
// the segment length before integration (mainly for experiments; the
// adaptive rule does not need it).
struct TrackedPath {
  std::vector<cplx> vertices;
  cplx start_w{1.0, 0.0};
  double refinement = 0.0;
};

// Adaptive Gauss-Kronrod 7-15 along a polyline.  The density is evaluated
// as f(z, w); when curve != nullptr the sheet value w is continued through
// the evaluation points in path order, so the integral is taken on the
// surface rather than on a fixed branch.  Deterministic: the subdivision
// tree depends only on the inputs.
QuadResult integrate_density(const std::function<cplx(cplx, cplx)>& f,
                             const CurveParams* curve,
                             const std::vector<cplx>& verts, cplx w_start,
                             double tol);

// Integral of phi_which along the path.
QuadResult integrate_form(const WeierstrassEvaluator& ev, int which,
                          const TrackedPath& path, double tol);

struct PeriodTriple {
  std::array<cplx, 3> P{};
  double abs_err = 0.0;
  // max_k |Re P_k| / (1 + |P_k|): all periods of the family are purely
  // imaginary, so this is a solve-quality certificate.
  double real_residual() const;
};

// Period of (phi1, phi2, phi3) over the homology cycle around cut j
// (riemann) or around the single neck (catenoid, local models), traversed
// counterclockwise.
PeriodTriple cycle_period(const WeierstrassEvaluator& ev, int cycle,
                          double tol);

// Counterclockwise stadium-shaped loop around a real interval at the given
// standoff; cap_chords straight chords approximate each semicircular cap.
std::vector<cplx> stadium_loop(const RealInterval& cut, double standoff,
                               int cap_chords = 8);

// Counterclockwise regular polygon approximating |z - center| = radius.
std::vector<cplx> circle_loop(cplx center, double radius, int sides = 64);

}  // namespace maxgraph
