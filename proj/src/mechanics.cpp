#include "maxgraph/mechanics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "maxgraph/errors.hpp"
#include "maxgraph/quadrature.hpp"

namespace maxgraph {

namespace {

// Gauss-Legendre 7 on [-1, 1], nodes ascending so the sheet and the chained
// X advance monotonically along each chord.
constexpr std::array<double, 7> kGlNode = {
    -0.9491079123427585245261897, -0.7415311855993944398638648,
    -0.4058451513773971669066064, 0.0,
    0.4058451513773971669066064,  0.7415311855993944398638648,
    0.9491079123427585245261897};
constexpr std::array<double, 7> kGlWeight = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020,
    0.3818300505051189449503698, 0.2797053914892766679014678,
    0.1294849661688696932706114};

// Oriented loop for the cycle: clockwise around singular cycles,
// counterclockwise around the end, matching the boundary orientation of
// the region between them.
std::vector<cplx> cycle_loop(const MaximalGraph& g, int cycle, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw validation_error("flux: loop scale must be positive");
  auto reversed = [](std::vector<cplx> v) {
    std::reverse(v.begin(), v.end());
    return v;
  };
  if (g.ev.tracked()) {
    if (cycle == kEndCycle) {
      auto vals = branch_values(g.ev.curve);
      double ext = std::max(std::abs(vals.front()), std::abs(vals.back()));
      double r = (2.0 + 2.0 * ext) * scale;
      if (r <= 1.1 * ext)
        throw validation_error("flux: end loop must enclose the cuts");
      return circle_loop(cplx(0.0, 0.0), r);
    }
    if (cycle < 0 || cycle >= (int)g.cuts.size())
      throw validation_error("flux: cycle index out of range");
    const RealInterval& cut = g.cuts[cycle];
    double clr = std::numeric_limits<double>::infinity();
    for (double v : branch_values(g.ev.curve))
      if (v < cut.lo || v > cut.hi)
        clr = std::min(clr, std::min(std::abs(v - cut.lo), std::abs(v - cut.hi)));
    // Geometry-scale standoff: the loop value is homotopy invariant, and
    // hugging the cut at a few eps makes every panel resolve an eps-thick
    // boundary layer along the whole perimeter.
    double base = std::clamp(0.2 * clr, 2.0 * g.eps, 0.2);
    double standoff = base * scale;
    if (standoff < g.eps || standoff > 0.45 * clr)
      throw validation_error("flux: loop standoff leaves the safe collar");
    return reversed(stadium_loop(cut, standoff));
  }
  if (g.ev.kind == FamilyKind::catenoid) {
    if (cycle == kEndCycle) return circle_loop(cplx(0.0, 0.0), 20.0 * scale);
    if (cycle != 0) throw validation_error("flux: cycle index out of range");
    double r = 1.25 * scale;
    if (r < 1.01) throw validation_error("flux: loop leaves the domain");
    return reversed(circle_loop(cplx(0.0, 0.0), r));
  }
  if (cycle == kEndCycle)
    throw validation_error("flux: local models have no complete end");
  if (cycle != 0) throw validation_error("flux: cycle index out of range");
  double r = 0.5 * (g.ev.local_inner + 1.0) * scale;
  if (r <= g.ev.local_inner + 0.01 || r >= 0.99)
    throw validation_error("flux: loop leaves the domain");
  return reversed(circle_loop(cplx(0.0, 0.0), r));
}

struct LoopMech {
  Vec3L flux;
  Vec3L torque;
};

// Splits chords until none is longer than twice its branch clearance, so
// the conormal integrand is smooth at the chord scale.  The stadium edges
// run the whole cut length at a small standoff and need end clustering.
void refine_chord(const CurveParams* curve, cplx a, cplx b, int depth,
                  std::vector<cplx>& out) {
  if (curve && depth < 16) {
    std::vector<cplx> seg{a, b};
    if (std::abs(b - a) > 2.0 * path_branch_clearance(*curve, seg)) {
      cplx mid = 0.5 * (a + b);
      refine_chord(curve, a, mid, depth + 1, out);
      refine_chord(curve, mid, b, depth + 1, out);
      return;
    }
  }
  out.push_back(b);
}

// Direct arclength quadrature of the conormal along the loop, with X
// chained through the evaluation nodes by a walker.  The flux is certified
// against the imaginary part of the form periods over the same path.
LoopMech loop_mechanics(const MaximalGraph& g, const std::vector<cplx>& loop,
                        const Vec3L& origin, double tol) {
  TrackedPath path;
  path.vertices = loop;
  if (g.ev.tracked()) path.start_w = principal_w(g.ev.curve, loop.front());
  Vec3L period_flux;
  for (int which = 1; which <= 3; ++which) {
    QuadResult q = integrate_form(g.ev, which, path, tol);
    if (which == 1) period_flux.x1 = q.value.imag();
    else if (which == 2) period_flux.x2 = q.value.imag();
    else period_flux.x3 = q.value.imag();
  }

  const CurveParams* curve = g.ev.tracked() ? &g.ev.curve : nullptr;
  std::vector<cplx> verts{loop.front()};
  for (size_t k = 0; k + 1 < loop.size(); ++k)
    refine_chord(curve, loop[k], loop[k + 1], 0, verts);

  // Walker moves ride on absolute-tolerance quadrature; pushing the target
  // below ~1e-13 lands under the roundoff floor of long routes (floor and
  // tolerance both halve per subdivision, so refinement never escapes).
  double wtol = std::max(1e-13, 0.01 * tol);
  XWalker wk = XWalker::start(g, verts.front(), wtol);
  Vec3L F, T;
  for (size_t k = 0; k + 1 < verts.size(); ++k) {
    cplx za = verts[k], zb = verts[k + 1];
    if (za == zb) continue;
    double L = std::abs(zb - za);
    cplx dir = (zb - za) / L;
    XWalker at_start = wk;
    Vec3L Fc, Tc, Fc_prev, Tc_prev;
    bool converged = false;
    for (int N = 1; N <= 256 && !converged; N *= 2) {
      wk = at_start;
      Fc = Vec3L{};
      Tc = Vec3L{};
      for (int p = 0; p < N; ++p)
        for (int j = 0; j < 7; ++j) {
          double t = (p + 0.5 + 0.5 * kGlNode[j]) / N;
          wk.move_to(za + t * (zb - za));
          cplx f1 = g.ev.phi_density(1, wk.z, wk.w);
          cplx f2 = g.ev.phi_density(2, wk.z, wk.w);
          cplx f3 = g.ev.phi_density(3, wk.z, wk.w);
          Vec3L Xu(f1.real(), f2.real(), f3.real());
          Vec3L Xv(-f1.imag(), -f2.imag(), -f3.imag());
          double lam2 = minkowski_inner(Xu, Xu);
          if (!(lam2 > 0.0))
            throw accuracy_error("flux: loop touches a non spacelike point");
          double lam = std::sqrt(lam2);
          Vec3L nu = (dir.imag() * Xu - dir.real() * Xv) * (1.0 / lam);
          // ds = lam |dz|, so the unit conormal picks the factor back up
          double wgt = kGlWeight[j] * (0.5 / N) * L * lam;
          Fc += nu * wgt;
          Tc += lorentz_wedge(wk.X - origin, nu) * wgt;
        }
      if (N > 1 &&
          euclid_norm(Fc - Fc_prev) <= 1e-11 * (1.0 + euclid_norm(Fc)) &&
          euclid_norm(Tc - Tc_prev) <= 3e-10 * (1.0 + euclid_norm(Tc)))
        converged = true;
      Fc_prev = Fc;
      Tc_prev = Tc;
    }
    if (!converged)
      throw accuracy_error("flux: conormal quadrature did not stabilize");
    wk.move_to(zb);
    F += Fc;
    T += Tc;
  }
  double gap = euclid_norm(F - period_flux);
  if (gap > 1e-8 * (1.0 + euclid_norm(period_flux)))
    throw certificate_error(
        "flux: conormal quadrature and conjugate period disagree by " +
        std::to_string(gap));
  return {F, T};
}

}  // namespace

Vec3L flux(const MaximalGraph& g, int cycle, double tol, double scale) {
  return loop_mechanics(g, cycle_loop(g, cycle, scale), Vec3L{}, tol).flux;
}

Vec3L torque(const MaximalGraph& g, int cycle, const Vec3L& origin, double tol,
             double scale) {
  return loop_mechanics(g, cycle_loop(g, cycle, scale), origin, tol).torque;
}

FluxTorque balance_report(const MaximalGraph& g, double tol_balance,
                          const Vec3L& origin, double tol) {
  if (!(tol_balance > 0.0))
    throw validation_error("balance_report: tolerance must be positive");
  FluxTorque out;
  out.origin = origin;
  int n = g.num_singular();
  for (int j = 0; j < n; ++j) {
    LoopMech m = loop_mechanics(g, cycle_loop(g, j, 1.0), origin, tol);
    out.fluxes.push_back(m.flux);
    out.torques.push_back(m.torque);
  }
  LoopMech end = loop_mechanics(g, cycle_loop(g, kEndCycle, 1.0), origin, tol);
  out.fluxes.push_back(end.flux);
  out.torques.push_back(end.torque);

  Vec3L fsum, tsum;
  double fmax = 0.0, tmax = 0.0;
  for (const Vec3L& F : out.fluxes) {
    fsum += F;
    fmax = std::max(fmax, euclid_norm(F));
  }
  for (const Vec3L& T : out.torques) {
    tsum += T;
    tmax = std::max(tmax, euclid_norm(T));
  }
  out.balance_residual_flux = euclid_norm(fsum) / std::max(fmax, 1e-12);
  out.balance_residual_torque =
      euclid_norm(tsum) / std::max(std::max(tmax, fmax), 1e-12);
  out.balanced = out.balance_residual_flux <= tol_balance &&
                 out.balance_residual_torque <= tol_balance;
  return out;
}

double end_growth_consistency(const MaximalGraph& g, double tol) {
  Vec3L F = flux(g, kEndCycle, tol);
  double hor = std::hypot(F.x1, F.x2);
  if (hor > 1e-6 * (1.0 + std::abs(F.x3)))
    throw certificate_error("end flux has a horizontal component of size " +
                            std::to_string(hor));
  AsymptoticFit fit = asymptotic_fit(g);
  return std::abs(F.x3 - 2.0 * kPi * fit.c) /
         (1.0 + 2.0 * kPi * std::abs(fit.c));
}

SingularMechanics characterization_probe(const MaximalGraph& g, double tol) {
  SingularMechanics out;
  int n = g.num_singular();
  for (int j = 0; j < n; ++j) {
    Vec3L F = flux(g, j, tol);
    out.fluxes.push_back(F);
    out.horizontal_flux.push_back(std::hypot(F.x1, F.x2));
    out.max_horizontal_flux =
        std::max(out.max_horizontal_flux, out.horizontal_flux.back());
    ConeReport cone = cone_check(g, j, {1e-2});
    double dx3 = 0.0;
    for (const auto& s : cone.closest_samples) dx3 += s.second.x3;
    out.pointing.push_back(dx3 > 0.0 ? 1 : -1);
  }
  AsymptoticFit fit = asymptotic_fit(g);
  out.growth = fit.c;
  out.planar_end = std::abs(out.growth) <= 1e-4;
  out.all_vertical = out.max_horizontal_flux <= 1e-8;
  out.uniform_pointing = true;
  for (int p : out.pointing)
    if (p != out.pointing.front()) out.uniform_pointing = false;
  return out;
}

}  // namespace maxgraph
