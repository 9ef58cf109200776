#include "maxgraph/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "maxgraph/errors.hpp"

namespace maxgraph {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1]; the embedded Gauss rule
// sits on the odd Kronrod nodes.
constexpr int kGK = 15;
const double kNode[kGK] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
const double kWK[kGK] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
const double kWG[7] = {0.129484966168870, 0.279705391489277,
                       0.381830050505119, 0.417959183673469,
                       0.381830050505119, 0.279705391489277,
                       0.129484966168870};

struct SegmentRule {
  cplx i15, i7;
  cplx w_end;
};

// One Kronrod panel over the straight segment [a, b].  When curve is set
// the sheet value is walked through the nodes left to right starting from
// w_in, and the exit value at b is reported.
SegmentRule eval_panel(const std::function<cplx(cplx, cplx)>& f,
                       const CurveParams* curve, cplx a, cplx b, cplx w_in) {
  cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
  SegmentRule out{{0.0, 0.0}, {0.0, 0.0}, w_in};
  cplx w = w_in;
  cplx zprev = a;
  int gi = 0;
  for (int i = 0; i < kGK; ++i) {
    cplx z = mid + half * kNode[i];
    if (curve) {
      w = branch_step(*curve, zprev, w, z);
      zprev = z;
    }
    cplx fv = f(z, w);
    out.i15 += kWK[i] * fv;
    if (i % 2 == 1) out.i7 += kWG[gi++] * fv;
  }
  out.i15 *= half;
  out.i7 *= half;
  if (curve) out.w_end = branch_step(*curve, zprev, w, b);
  return out;
}

struct Accum {
  cplx value{0.0, 0.0};
  double err = 0.0;
};

void integrate_segment(const std::function<cplx(cplx, cplx)>& f,
                       const CurveParams* curve, cplx a, cplx b, cplx w_in,
                       cplx& w_out, double tol, int depth, Accum& acc) {
  SegmentRule r = eval_panel(f, curve, a, b, w_in);
  double disc = std::abs(r.i15 - r.i7);
  bool finite = std::isfinite(r.i15.real()) && std::isfinite(r.i15.imag());
  if (disc <= tol && finite) {
    acc.value += r.i15;
    acc.err += disc;
    w_out = r.w_end;
    return;
  }
  if (depth >= 28) {
    if (!finite || disc > 64.0 * tol)
      throw accuracy_error("integrate: refinement stalled without reaching tolerance");
    acc.value += r.i15;
    acc.err += disc;
    w_out = r.w_end;
    return;
  }
  cplx m = 0.5 * (a + b);
  cplx w_mid;
  integrate_segment(f, curve, a, m, w_in, w_mid, 0.5 * tol, depth + 1, acc);
  integrate_segment(f, curve, m, b, w_mid, w_out, 0.5 * tol, depth + 1, acc);
}

}  // namespace

QuadResult integrate_density(const std::function<cplx(cplx, cplx)>& f,
                             const CurveParams* curve,
                             const std::vector<cplx>& verts, cplx w_start,
                             double tol) {
  if (verts.size() < 2)
    throw validation_error("integrate: path needs at least two vertices");
  if (!(tol > 0.0)) throw validation_error("integrate: tolerance must be positive");
  double total_len = 0.0;
  for (size_t i = 0; i + 1 < verts.size(); ++i)
    total_len += std::abs(verts[i + 1] - verts[i]);
  if (total_len == 0.0) return {cplx(0.0, 0.0), 0.0};
  Accum acc;
  cplx w = w_start;
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    double share = std::abs(verts[i + 1] - verts[i]) / total_len;
    if (share == 0.0) continue;
    cplx w_next;
    integrate_segment(f, curve, verts[i], verts[i + 1], w, w_next,
                      std::max(tol * share, 1e-300), 0, acc);
    w = w_next;
  }
  return {acc.value, acc.err};
}

namespace {

std::vector<cplx> refine_polyline(const std::vector<cplx>& verts, double maxlen) {
  if (maxlen <= 0.0) return verts;
  std::vector<cplx> out;
  out.push_back(verts.front());
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    double len = std::abs(verts[i + 1] - verts[i]);
    int pieces = std::max(1, (int)std::ceil(len / maxlen));
    for (int j = 1; j <= pieces; ++j)
      out.push_back(verts[i] + (verts[i + 1] - verts[i]) * (double(j) / pieces));
  }
  return out;
}

}  // namespace

QuadResult integrate_form(const WeierstrassEvaluator& ev, int which,
                          const TrackedPath& path, double tol) {
  if (which < 1 || which > 3)
    throw validation_error("integrate_form: component index must be 1, 2 or 3");
  auto verts = refine_polyline(path.vertices, path.refinement);
  const CurveParams* curve = ev.tracked() ? &ev.curve : nullptr;
  if (curve && path_branch_clearance(*curve, verts) < epsilon_branch(*curve))
    throw accuracy_error("integrate_form: path within standoff of a branch value");
  auto f = [&ev, which](cplx z, cplx w) { return ev.phi_density(which, z, w); };
  return integrate_density(f, curve, verts, path.start_w, tol);
}

double PeriodTriple::real_residual() const {
  double r = 0.0;
  for (const cplx& p : P)
    r = std::max(r, std::abs(p.real()) / (1.0 + std::abs(p)));
  return r;
}

std::vector<cplx> stadium_loop(const RealInterval& cut, double standoff,
                               int cap_chords) {
  // Counterclockwise: right cap south to north, top edge leftward, left
  // cap north to south, bottom edge rightward.
  std::vector<cplx> v;
  double h = standoff;
  for (int i = 0; i <= cap_chords; ++i) {
    double a = -0.5 * kPi + kPi * i / cap_chords;
    v.push_back(cplx(cut.hi, 0.0) + h * cplx(std::cos(a), std::sin(a)));
  }
  for (int i = 0; i <= cap_chords; ++i) {
    double a = 0.5 * kPi + kPi * i / cap_chords;
    v.push_back(cplx(cut.lo, 0.0) + h * cplx(std::cos(a), std::sin(a)));
  }
  v.push_back(v.front());
  return v;
}

std::vector<cplx> circle_loop(cplx center, double radius, int sides) {
  std::vector<cplx> v;
  for (int i = 0; i <= sides; ++i) {
    double a = 2.0 * kPi * i / sides;
    v.push_back(center + radius * cplx(std::cos(a), std::sin(a)));
  }
  v.back() = v.front();
  return v;
}

PeriodTriple cycle_period(const WeierstrassEvaluator& ev, int cycle, double tol) {
  TrackedPath path;
  if (ev.kind == FamilyKind::riemann) {
    auto cuts = fixed_locus_intervals(ev.curve);
    if (cycle < 0 || cycle >= (int)cuts.size())
      throw validation_error("cycle_period: cycle index out of range");
    path.vertices = stadium_loop(cuts[cycle], 2.0 * epsilon_branch(ev.curve));
    path.start_w = principal_w(ev.curve, path.vertices.front());
  } else if (ev.kind == FamilyKind::catenoid) {
    if (cycle != 0) throw validation_error("cycle_period: single cycle model");
    path.vertices = circle_loop(cplx(0.0, 0.0), 1.25);
  } else {
    if (cycle != 0) throw validation_error("cycle_period: single cycle model");
    path.vertices = circle_loop(cplx(0.0, 0.0), 0.5 * (ev.local_inner + 1.0));
  }
  PeriodTriple out;
  for (int which = 1; which <= 3; ++which) {
    QuadResult q = integrate_form(ev, which, path, tol);
    out.P[which - 1] = q.value;
    out.abs_err = std::max(out.abs_err, q.abs_err);
  }
  return out;
}

}  // namespace maxgraph
