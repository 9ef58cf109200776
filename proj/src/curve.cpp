#include "maxgraph/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "maxgraph/errors.hpp"

namespace maxgraph {

void validate(const CurveParams& p) {
  if (p.n < 1) throw validation_error("curve: n must be >= 1");
  if ((int)p.c.size() != p.n || (int)p.b.size() != p.n)
    throw validation_error("curve: need n zero shifts c and n pole shifts b");
  for (double v : p.c)
    if (!(v > 1.0)) throw validation_error("curve: every c_j must exceed 1");
  for (double v : p.b)
    if (!(v > 1.0)) throw validation_error("curve: every b_j must exceed 1");
  auto vals = branch_values(p);
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    if (vals[i] == vals[i + 1])
      throw validation_error("curve: branch values must be pairwise distinct");
}

std::vector<double> branch_values(const CurveParams& p) {
  std::vector<double> vals;
  vals.reserve(2 * p.n + 2);
  vals.push_back(-1.0);
  vals.push_back(1.0);
  vals.insert(vals.end(), p.c.begin(), p.c.end());
  vals.insert(vals.end(), p.b.begin(), p.b.end());
  std::sort(vals.begin(), vals.end());
  return vals;
}

double min_branch_gap(const CurveParams& p) {
  auto vals = branch_values(p);
  double gap = vals.back() - vals.front();
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    gap = std::min(gap, vals[i + 1] - vals[i]);
  return gap;
}

double epsilon_branch(const CurveParams& p) {
  return 1e-3 * min_branch_gap(p);
}

ExtComplex eval_R(const CurveParams& p, cplx z) {
  cplx den = z + 1.0;
  for (double b : p.b) den *= (z - b);
  if (den == cplx(0.0, 0.0)) return ExtComplex::infinity();
  cplx num = z - 1.0;
  for (double c : p.c) num *= (z - c);
  return ExtComplex::of(num / den);
}

cplx eval_R_finite(const CurveParams& p, cplx z) {
  // Interleave the factors to keep magnitudes near 1 for large |z|.
  cplx r = (z - 1.0) / (z + 1.0);
  for (int j = 0; j < p.n; ++j) r *= (z - p.c[j]) / (z - p.b[j]);
  return r;
}

cplx eval_R_logderiv(const CurveParams& p, cplx z) {
  cplx s = 1.0 / (z - 1.0) - 1.0 / (z + 1.0);
  for (int j = 0; j < p.n; ++j)
    s += 1.0 / (z - p.c[j]) - 1.0 / (z - p.b[j]);
  return s;
}

std::vector<RealInterval> fixed_locus_intervals(const CurveParams& p) {
  auto vals = branch_values(p);
  std::vector<RealInterval> cuts;
  // R is real off the branch values and changes sign at each simple zero
  // or pole, so the negativity set is a union of gaps between consecutive
  // branch values.  Decide each gap by the sign at its midpoint.
  for (size_t i = 0; i + 1 < vals.size(); ++i) {
    double m = 0.5 * (vals[i] + vals[i + 1]);
    ExtComplex r = eval_R(p, cplx(m, 0.0));
    if (r.finite && r.value.real() < 0.0)
      cuts.push_back({vals[i], vals[i + 1]});
  }
  if ((int)cuts.size() != p.n + 1)
    throw validation_error("curve: expected n+1 negativity intervals, found " +
                           std::to_string(cuts.size()));
  auto holds_one = [](const RealInterval& it) {
    return it.lo <= 1.0 && 1.0 <= it.hi;
  };
  std::stable_sort(cuts.begin(), cuts.end(),
                   [&](const RealInterval& a, const RealInterval& b) {
                     bool ha = holds_one(a), hb = holds_one(b);
                     if (ha != hb) return ha;
                     return a.lo < b.lo;
                   });
  if (!holds_one(cuts.front()))
    throw validation_error("curve: no negativity interval at the branch value 1");
  return cuts;
}

cplx principal_w(const CurveParams& p, cplx z) {
  // The cuts are exactly the preimage of (-inf, 0], so the principal
  // square root is holomorphic on their complement and picks Re w > 0.
  return std::sqrt(eval_R_finite(p, z));
}

namespace {

double dist_segment_point(cplx a, cplx b, cplx q) {
  cplx d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(q - a);
  double t = ((q.real() - a.real()) * d.real() + (q.imag() - a.imag()) * d.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(q - (a + t * d));
}

cplx step_branch(const CurveParams& p, cplx z0, cplx w0, cplx z1, int depth) {
  cplx r = eval_R_finite(p, z1);
  cplx s = std::sqrt(r);
  cplx w1 = (std::abs(s - w0) <= std::abs(-s - w0)) ? s : -s;
  double jump = std::abs(w1 - w0);
  double scale = std::max(std::abs(w0), std::abs(w1));
  if (jump <= 0.5 * scale || scale == 0.0) return w1;
  if (depth >= 48)
    throw accuracy_error("continue_branch: step bisection failed to settle");
  cplx zm = 0.5 * (z0 + z1);
  cplx wm = step_branch(p, z0, w0, zm, depth + 1);
  return step_branch(p, zm, wm, z1, depth + 1);
}

}  // namespace

cplx branch_step(const CurveParams& p, cplx z0, cplx w0, cplx z1) {
  return step_branch(p, z0, w0, z1, 0);
}

double path_branch_clearance(const CurveParams& p, const std::vector<cplx>& path) {
  auto vals = branch_values(p);
  double best = std::numeric_limits<double>::infinity();
  if (path.size() == 1)
    for (double v : vals) best = std::min(best, std::abs(path[0] - cplx(v, 0.0)));
  for (size_t i = 0; i + 1 < path.size(); ++i)
    for (double v : vals)
      best = std::min(best, dist_segment_point(path[i], path[i + 1], cplx(v, 0.0)));
  return best;
}

cplx continue_branch(const CurveParams& p, const std::vector<cplx>& path,
                     cplx w_start) {
  if (path.size() < 1)
    throw validation_error("continue_branch: empty path");
  cplx r0 = eval_R_finite(p, path.front());
  if (std::abs(w_start * w_start - r0) > 1e-6 * (1.0 + std::abs(r0)))
    throw validation_error("continue_branch: w_start does not satisfy w^2 = R");
  if (path_branch_clearance(p, path) < epsilon_branch(p))
    throw accuracy_error("continue_branch: path within standoff of a branch value");
  cplx w = w_start;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    w = branch_step(p, path[i], w, path[i + 1]);
  return w;
}

}  // namespace maxgraph
