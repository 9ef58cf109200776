#pragma once

#include <vector>

#include "maxgraph/extended.hpp"

namespace maxgraph {

// Parameters of the genus-n hyperelliptic curve w^2 = R(z) with
//   R(z) = (z - 1) prod_j (z - c_j) / ((z + 1) prod_j (z - b_j)),
// all c_j, b_j > 1 and the branch values {1, -1, c_j, b_j} pairwise
// distinct.  The double cover of the sphere branched there carries the
// antiholomorphic involution J(z, w) = (conj z, -conj w).
struct CurveParams {
  int n = 1;
  std::vector<double> c;
  std::vector<double> b;
};

// Throws validation_error when sizes or distinctness fail.
void validate(const CurveParams& p);

struct SheetPoint {
  cplx z;
  cplx w;
};

// Closed real interval.  lo <= hi always holds for the intervals produced
// here; a pair with lo > hi would denote the complementary arc through
// infinity, which this family never produces since R(inf) = 1.
struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

// All 2n+2 branch values in ascending order.
std::vector<double> branch_values(const CurveParams& p);

double min_branch_gap(const CurveParams& p);

// Standoff scale: every numerical path keeps at least this distance from
// the branch values.
double epsilon_branch(const CurveParams& p);

// R with an explicit infinity token at the poles -1 and b_j.
ExtComplex eval_R(const CurveParams& p, cplx z);

// R at a point known to be off the poles (quadrature hot path).
cplx eval_R_finite(const CurveParams& p, cplx z);

// Logarithmic derivative R'/R away from zeros and poles of R.
cplx eval_R_logderiv(const CurveParams& p, cplx z);

// The n+1 maximal intervals where R <= 0.  These are exactly the fixed
// locus of J downstairs: the cuts of the plane model.  Ordering: the
// interval whose closure contains the branch value 1 first, then the rest
// ascending by left endpoint.
std::vector<RealInterval> fixed_locus_intervals(const CurveParams& p);

// Sheet fixed by Re w > 0: principal square root of R.  Single valued on
// the complement of the cuts because R maps the slit plane off the
// negative real axis.
cplx principal_w(const CurveParams& p, cplx z);

// Analytic continuation of w along a polyline.  w_start must satisfy
// w^2 = R at the first vertex (validation error otherwise); the path must
// keep epsilon_branch clearance from branch values (accuracy error).
cplx continue_branch(const CurveParams& p, const std::vector<cplx>& path,
                     cplx w_start);

// One continuation step from (z0, w0) to z1, bisecting internally until
// the relative jump of the tracked root is under 1/2.
cplx branch_step(const CurveParams& p, cplx z0, cplx w0, cplx z1);

// Minimal distance from the polyline to the branch values; used to check
// the standoff precondition.
double path_branch_clearance(const CurveParams& p, const std::vector<cplx>& path);

inline SheetPoint involution_J(const SheetPoint& p) {
  return {std::conj(p.z), -std::conj(p.w)};
}

}  // namespace maxgraph
