#include "maxgraph/graph.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "maxgraph/errors.hpp"

namespace maxgraph {

namespace {

double seg_pt_dist(cplx a, cplx b, cplx q) {
  cplx d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(q - a);
  double t = ((q.real() - a.real()) * d.real() + (q.imag() - a.imag()) * d.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(q - (a + t * d));
}

bool segments_cross(cplx a, cplx b, cplx c, cplx d) {
  auto orient = [](cplx p, cplx q, cplx r) {
    double v = (q.real() - p.real()) * (r.imag() - p.imag()) -
               (q.imag() - p.imag()) * (r.real() - p.real());
    return (v > 0.0) - (v < 0.0);
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

double seg_seg_dist(cplx a, cplx b, cplx c, cplx d) {
  if (segments_cross(a, b, c, d)) return 0.0;
  return std::min({seg_pt_dist(a, b, c), seg_pt_dist(a, b, d),
                   seg_pt_dist(c, d, a), seg_pt_dist(c, d, b)});
}

// Shortest polyline from start to goal through the visibility graph of the
// inflated cut rectangles.  Deterministic: fixed node order, ties resolved
// by the smaller node index.
std::vector<cplx> visibility_route(const std::vector<RealInterval>& cuts,
                                   double rho, cplx start, cplx goal) {
  std::vector<cplx> nodes{start, goal};
  for (const auto& cut : cuts) {
    nodes.push_back(cplx(cut.lo - rho, rho));
    nodes.push_back(cplx(cut.hi + rho, rho));
    nodes.push_back(cplx(cut.hi + rho, -rho));
    nodes.push_back(cplx(cut.lo - rho, -rho));
  }
  int N = (int)nodes.size();
  auto visible = [&](int i, int j) {
    for (const auto& cut : cuts)
      if (seg_seg_dist(nodes[i], nodes[j], cplx(cut.lo, 0.0), cplx(cut.hi, 0.0)) <
          0.999 * rho)
        return false;
    return true;
  };
  const double INF = std::numeric_limits<double>::infinity();
  std::vector<double> dist(N, INF);
  std::vector<int> prev(N, -1);
  std::vector<char> done(N, 0);
  dist[0] = 0.0;
  for (int round = 0; round < N; ++round) {
    int u = -1;
    for (int i = 0; i < N; ++i)
      if (!done[i] && (u < 0 || dist[i] < dist[u])) u = i;
    if (u < 0 || dist[u] == INF) break;
    done[u] = 1;
    if (u == 1) break;
    for (int v = 0; v < N; ++v) {
      if (done[v] || !visible(u, v)) continue;
      double nd = dist[u] + std::abs(nodes[u] - nodes[v]);
      if (nd < dist[v] - 1e-15) {
        dist[v] = nd;
        prev[v] = u;
      }
    }
  }
  if (dist[1] == INF)
    throw accuracy_error("route: target not reachable around the cuts");
  std::vector<cplx> path;
  for (int v = 1; v != -1; v = prev[v]) path.push_back(nodes[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<cplx> route_riemann(const MaximalGraph& g, cplx target) {
  const CurveParams& p = g.ev.curve;
  double eps = g.eps;
  // Corridor height for the visibility legs.  It must be well above the
  // quadrature standoff: legs that hug the singular set at a few eps are
  // legal but force the adaptive rule to resolve an eps-scale boundary
  // layer along their whole length.  Near-cut targets are reached by a
  // short final descent instead.
  double rho = std::clamp(250.0 * eps, 2.0 * eps, 0.25);
  for (double v : branch_values(p))
    if (std::abs(target - cplx(v, 0.0)) < eps)
      throw validation_error("route: target within standoff of a branch value");
  for (const auto& cut : g.cuts)
    if (target.imag() == 0.0 && cut.lo <= target.real() && target.real() <= cut.hi)
      throw validation_error("route: target lies on the singular locus");

  cplx goal = target;
  bool descend = false;
  for (const auto& cut : g.cuts) {
    if (target.real() >= cut.lo - rho && target.real() <= cut.hi + rho &&
        std::abs(target.imag()) <= rho) {
      double side = target.imag() > 0.0 ? 1.0 : (target.imag() < 0.0 ? -1.0 : 1.0);
      goal = cplx(target.real(), side * rho);
      descend = true;
      break;
    }
  }
  std::vector<cplx> path = visibility_route(g.cuts, rho, g.z_ref, goal);
  if (descend) path.push_back(target);
  return path;
}

// The rotational and local models only need to avoid the density pole at
// the origin: an arc at the base radius followed by a radial run.
std::vector<cplx> route_polar(const MaximalGraph& g, cplx target) {
  double eps = g.eps;
  if (std::abs(target) < 10.0 * eps)
    throw validation_error("route: target too close to the origin");
  std::vector<cplx> path{g.z_ref};
  double r0 = std::abs(g.z_ref);
  double theta = std::arg(target);
  int steps = (int)std::ceil(std::abs(theta) / (kPi / 8.0));
  for (int i = 1; i <= steps; ++i) {
    double a = theta * i / steps;
    path.push_back(r0 * cplx(std::cos(a), std::sin(a)));
  }
  if (std::abs(path.back() - target) > 0.0) path.push_back(target);
  return path;
}

}  // namespace

std::vector<cplx> plan_route(const MaximalGraph& g, cplx target) {
  if (target == g.z_ref) return {g.z_ref, g.z_ref};
  if (g.ev.tracked()) return route_riemann(g, target);
  return route_polar(g, target);
}

namespace {

Vec3L integrate_route(const MaximalGraph& g, const std::vector<cplx>& route,
                      double tol) {
  Vec3L X;
  for (int which = 1; which <= 3; ++which) {
    TrackedPath tp{route, g.w_ref, 0.0};
    QuadResult q = integrate_form(g.ev, which, tp, tol / 3.0);
    if (which == 1) X.x1 = q.value.real();
    else if (which == 2) X.x2 = q.value.real();
    else X.x3 = q.value.real();
  }
  return X;
}

}  // namespace

Vec3L evaluate_X(const MaximalGraph& g, cplx z, double tol) {
  if (tol <= 0.0) tol = g.tol;
  auto route = plan_route(g, z);
  return integrate_route(g, route, tol) - g.offset;
}

Vec3L evaluate_X(const MaximalGraph& g, const SheetPoint& p, double tol) {
  if (g.ev.tracked()) {
    cplx r = eval_R_finite(g.ev.curve, p.z);
    if (std::abs(p.w * p.w - r) > 1e-6 * (1.0 + std::abs(r)))
      throw validation_error("evaluate_X: sheet value does not satisfy w^2 = R");
    cplx wp = principal_w(g.ev.curve, p.z);
    if (std::abs(p.w - wp) > 1e-6 * (1.0 + std::abs(wp)))
      throw validation_error("evaluate_X: point lies on the mirror sheet");
  }
  return evaluate_X(g, p.z, tol);
}

XWalker XWalker::start(const MaximalGraph& g, cplx z0, double tol) {
  XWalker wk;
  wk.g = &g;
  wk.tol = tol > 0.0 ? tol : g.tol;
  wk.z = z0;
  auto route = plan_route(g, z0);
  // The start integral contributes one constant offset, so it does not
  // need the per-move tolerance a long chained walk requires; absolute
  // targets near the roundoff floor of a route-length integral stall the
  // refinement instead of tightening it.
  wk.X = integrate_route(g, route, std::max(wk.tol, 1e-11)) - g.offset;
  wk.w = g.ev.tracked() ? continue_branch(g.ev.curve, route, g.w_ref)
                        : cplx(0.0, 0.0);
  return wk;
}

void XWalker::move_to(cplx z1) {
  if (z1 == z) return;
  std::vector<cplx> seg{z, z1};
  const CurveParams* curve = g->ev.tracked() ? &g->ev.curve : nullptr;
  if (curve && path_branch_clearance(*curve, seg) < epsilon_branch(*curve))
    throw accuracy_error("walker: move violates the branch standoff");
  for (int which = 1; which <= 3; ++which) {
    auto f = [this, which](cplx zz, cplx ww) {
      return g->ev.phi_density(which, zz, ww);
    };
    QuadResult q = integrate_density(f, curve, seg, w, tol / 3.0);
    if (which == 1) X.x1 += q.value.real();
    else if (which == 2) X.x2 += q.value.real();
    else X.x3 += q.value.real();
  }
  if (curve) w = branch_step(*curve, z, w, z1);
  z = z1;
}

namespace {

// Neville extrapolation to zero of (d_i, y_i) pairs.
double neville_at_zero(const std::vector<double>& d, std::vector<double> y) {
  int n = (int)d.size();
  for (int level = 1; level < n; ++level)
    for (int i = 0; i < n - level; ++i)
      y[i] = ((0.0 - d[i + level]) * y[i] + (d[i] - 0.0) * y[i + 1]) /
             (d[i] - d[i + level]);
  return y[0];
}

}  // namespace

Vec3L singular_point(const MaximalGraph& g, int j, double tol) {
  if (tol <= 0.0) tol = g.tol;
  constexpr int kStations = 64;
  std::vector<Vec3L> est;
  est.reserve(kStations);

  if (g.ev.tracked()) {
    if (j < 0 || j >= (int)g.cuts.size())
      throw validation_error("singular_point: index out of range");
    const RealInterval& cut = g.cuts[j];
    double e = g.eps;
    double quad_tol = 0.02 * tol;
    // The densities are bounded on the open cut away from its endpoints,
    // so after stepping down to the 2 eps standoff the remaining gap is
    // closed by direct quadrature; extrapolating instead would leave a
    // bias far above the spread certificate, since X has a full power
    // series in the standoff with a station dependent linear term.
    for (double side : {1.0, -1.0}) {
      double s0 = cut.lo + 0.15 * cut.length();
      XWalker wk = XWalker::start(g, cplx(s0, side * 10.0 * e), quad_tol);
      for (int i = 0; i < kStations; ++i) {
        double s = cut.lo + (0.15 + 0.7 * i / (kStations - 1)) * cut.length();
        wk.move_to(cplx(s, side * 10.0 * e));
        XWalker probe = wk;
        probe.move_to(cplx(s, side * 2.0 * e));
        probe.move_to(cplx(s, 0.0));
        est.push_back(probe.X);
      }
    }
  } else {
    if (j != 0) throw validation_error("singular_point: single singular circle");
    double kap = 5e-4;
    std::vector<double> deltas{8.0 * kap, 4.0 * kap, 2.0 * kap, kap};
    double sgn = (g.ev.kind == FamilyKind::catenoid) ? 1.0 : -1.0;
    double quad_tol = 0.02 * tol;
    double r_far = 1.0 + sgn * deltas[0];
    XWalker wk = XWalker::start(g, cplx(r_far, 0.0), quad_tol);
    for (int i = 0; i < kStations; ++i) {
      double th = 2.0 * kPi * i / kStations;
      cplx dir(std::cos(th), std::sin(th));
      wk.move_to(r_far * dir);
      XWalker probe = wk;
      std::vector<Vec3L> Xd{probe.X};
      for (size_t t = 1; t < deltas.size(); ++t) {
        probe.move_to((1.0 + sgn * deltas[t]) * dir);
        Xd.push_back(probe.X);
      }
      std::vector<double> c1, c2, c3;
      for (const Vec3L& v : Xd) {
        c1.push_back(v.x1);
        c2.push_back(v.x2);
        c3.push_back(v.x3);
      }
      est.push_back({neville_at_zero(deltas, c1), neville_at_zero(deltas, c2),
                     neville_at_zero(deltas, c3)});
    }
  }

  Vec3L mean;
  for (const Vec3L& v : est) mean += v;
  mean = (1.0 / est.size()) * mean;
  double spread = 0.0;
  for (size_t a = 0; a < est.size(); ++a)
    for (size_t b = a + 1; b < est.size(); ++b)
      spread = std::max(spread, euclid_norm(est[a] - est[b]));
  if (spread > 100.0 * tol)
    throw certificate_error("singular_point: station estimates scatter beyond certificate (" +
                            std::to_string(spread) + ")");
  return mean;
}

ConeReport cone_check(const MaximalGraph& g, int j,
                      const std::vector<double>& standoffs) {
  if (j < 0 || j >= (int)g.singular.size())
    throw validation_error("cone_check: index out of range");
  Vec3L q = g.singular[j];
  ConeReport rep;
  rep.standoffs = standoffs;
  bool tracked = g.ev.tracked();
  const int stations = tracked ? 16 : 32;
  for (double d : standoffs) {
    double worst = 0.0;
    bool closest = (d == standoffs.back());
    for (int i = 0; i < stations; ++i) {
      if (tracked) {
        const RealInterval& cut = g.cuts[j];
        double s = cut.lo + (0.2 + 0.6 * i / (stations - 1)) * cut.length();
        for (double side : {1.0, -1.0}) {
          Vec3L dX = evaluate_X(g, cplx(s, side * d)) - q;
          double hor = std::hypot(dX.x1, dX.x2);
          double ver = std::abs(dX.x3);
          if (ver > 0.0) worst = std::max(worst, std::abs(hor / ver - 1.0));
          if (closest && side > 0.0) rep.closest_samples.push_back({s, dX});
        }
      } else {
        double th = 2.0 * kPi * i / stations;
        double sgn = (g.ev.kind == FamilyKind::catenoid) ? 1.0 : -1.0;
        cplx z = (1.0 + sgn * d) * cplx(std::cos(th), std::sin(th));
        Vec3L dX = evaluate_X(g, z) - q;
        double hor = std::hypot(dX.x1, dX.x2);
        double ver = std::abs(dX.x3);
        if (ver > 0.0) worst = std::max(worst, std::abs(hor / ver - 1.0));
        if (closest) rep.closest_samples.push_back({th, dX});
      }
    }
    rep.max_deviation.push_back(worst);
  }
  rep.shrinking = true;
  for (size_t i = 0; i + 1 < rep.max_deviation.size(); ++i)
    if (rep.max_deviation[i + 1] >= rep.max_deviation[i]) rep.shrinking = false;
  return rep;
}

namespace {

cplx stadium_point(const RealInterval& cut, double d, double t) {
  double L = cut.length();
  double P = 2.0 * L + 2.0 * kPi * d;
  double s = t * P;
  if (s < kPi * d) {
    double a = -0.5 * kPi + s / d;
    return cplx(cut.hi, 0.0) + d * cplx(std::cos(a), std::sin(a));
  }
  s -= kPi * d;
  if (s < L) return cplx(cut.hi - s, d);
  s -= L;
  if (s < kPi * d) {
    double a = 0.5 * kPi + s / d;
    return cplx(cut.lo, 0.0) + d * cplx(std::cos(a), std::sin(a));
  }
  s -= kPi * d;
  return cplx(cut.lo + s, -d);
}

int winding_samples(const MaximalGraph& g, int j, double standoff, int N,
                    const Vec3L& q) {
  bool tracked = g.ev.tracked();
  double sgn = (g.ev.kind == FamilyKind::catenoid) ? 1.0 : -1.0;
  auto pos = [&](int i) {
    double t = (double)i / N;
    if (tracked) return stadium_point(g.cuts[j], standoff, t);
    return (1.0 + sgn * standoff) *
           cplx(std::cos(2.0 * kPi * t), std::sin(2.0 * kPi * t));
  };
  XWalker wk = XWalker::start(g, pos(0), 1e-8);
  double total = 0.0;
  cplx h_prev(wk.X.x1 - q.x1, wk.X.x2 - q.x2);
  for (int i = 1; i <= N; ++i) {
    wk.move_to(pos(i % N));
    cplx h(wk.X.x1 - q.x1, wk.X.x2 - q.x2);
    if (std::abs(h) == 0.0 || std::abs(h_prev) == 0.0)
      throw accuracy_error("covering_degree: horizontal projection hit the center");
    total += std::arg(h / h_prev);
    h_prev = h;
  }
  double turns = total / (2.0 * kPi);
  int wind = (int)std::lround(turns);
  if (std::abs(turns - wind) > 0.05)
    throw accuracy_error("covering_degree: winding did not settle to an integer");
  return wind;
}

}  // namespace

int covering_degree(const MaximalGraph& g, int j, double standoff) {
  if (j < 0 || j >= (int)g.singular.size())
    throw validation_error("covering_degree: index out of range");
  Vec3L q = g.singular[j];
  int w1 = winding_samples(g, j, standoff, 2048, q);
  int w2 = winding_samples(g, j, standoff, 4096, q);
  if (w1 != w2)
    throw accuracy_error("covering_degree: winding unstable under refinement");
  return std::abs(w1);
}

GraphCertificate graph_certificate(const MaximalGraph& g) {
  GraphCertificate cert;
  std::vector<cplx> samples;
  auto push_ring = [&samples](cplx center, double r, int count) {
    for (int i = 0; i < count; ++i) {
      double a = 2.0 * kPi * i / count;
      samples.push_back(center + r * cplx(std::cos(a), std::sin(a)));
    }
  };
  if (g.ev.tracked()) {
    auto vals = branch_values(g.ev.curve);
    double ext = std::max(std::abs(vals.front()), std::abs(vals.back()));
    for (const auto& cut : g.cuts) {
      double clr = std::numeric_limits<double>::infinity();
      for (double v : vals)
        if (v < cut.lo || v > cut.hi)
          clr = std::min(clr, std::min(std::abs(v - cut.lo), std::abs(v - cut.hi)));
      for (int lev = 0; lev < 12; ++lev) {
        double d = 0.35 * clr * std::pow(0.03 / 0.35, lev / 11.0);
        for (int a = 0; a < 36; ++a)
          samples.push_back(stadium_point(cut, d, (double)a / 36.0));
      }
    }
    for (int lev = 0; lev < 8; ++lev) {
      double r = (2.0 + 2.0 * ext) * std::pow(10.0, lev / 7.0);
      push_ring(cplx(0.0, 0.0), r, 36);
    }
  } else {
    double sgn = (g.ev.kind == FamilyKind::catenoid) ? 1.0 : -1.0;
    double far = (g.ev.kind == FamilyKind::catenoid) ? 30.0 : g.ev.local_inner + 0.05;
    for (int lev = 0; lev < 24; ++lev) {
      double r_near = 1.0 + sgn * 0.01;
      double r = r_near * std::pow(far / r_near, lev / 23.0);
      push_ring(cplx(0.0, 0.0), r, 36);
    }
  }

  bool first = true;
  cert.orientation_consistent = true;
  cert.min_transversality = std::numeric_limits<double>::infinity();
  for (cplx z : samples) {
    cplx w = g.ev.tracked() ? principal_w(g.ev.curve, z) : cplx(0.0, 0.0);
    cplx p1 = g.ev.phi_density(1, z, w);
    cplx p2 = g.ev.phi_density(2, z, w);
    double lam2 = g.ev.conformal_factor_sq(z, w);
    if (!(lam2 > 0.0) || !std::isfinite(lam2)) continue;
    double Jdet = (p1 * std::conj(p2)).imag();
    double ratio = Jdet / lam2;
    int s = (ratio > 0.0) - (ratio < 0.0);
    if (first) {
      cert.orientation_sign = s;
      first = false;
    } else if (s != cert.orientation_sign) {
      cert.orientation_consistent = false;
    }
    cert.min_transversality = std::min(cert.min_transversality, std::abs(ratio));
    ExtComplex gg = g.ev.gauss_g(z, w);
    if (gg.finite) cert.max_abs_g = std::max(cert.max_abs_g, std::abs(gg.value));
  }
  for (int j = 0; j < g.num_singular(); ++j)
    cert.coverings.push_back(covering_degree(g, j));
  bool covers_once = true;
  for (int c : cert.coverings)
    if (c != 1) covers_once = false;
  cert.graph = cert.orientation_consistent && covers_once &&
               cert.min_transversality > 1e-8 && cert.max_abs_g < 1.0;
  return cert;
}

AsymptoticFit asymptotic_fit(const MaximalGraph& g, std::vector<double> radii) {
  if (g.ev.kind == FamilyKind::local)
    throw validation_error("asymptotic_fit: local models have no complete end");
  double ext = 1.0;
  if (g.ev.tracked()) {
    auto vals = branch_values(g.ev.curve);
    ext = std::max(std::abs(vals.front()), std::abs(vals.back()));
  }
  if (radii.empty()) {
    double R0 = std::max(2000.0, 20.0 * ext);
    radii = {R0, 2.0 * R0};
  }
  if (radii.size() < 2)
    throw validation_error("asymptotic_fit: need at least two probe rings");
  double extent = 0.0;
  for (const Vec3L& q : g.singular)
    extent = std::max(extent, std::hypot(q.x1, q.x2));
  for (double r : radii)
    if (!(r > 0.0) || r < 10.0 * extent)
      throw validation_error("asymptotic_fit: probe ring too close to the singularities");
  AsymptoticFit fit;
  fit.radii = radii;
  constexpr int kPerRing = 64;

  // one walker serves every sample: consecutive targets sit on far rings, so
  // the hop between them is a short chord well clear of the singular set,
  // much cheaper than routing from z_ref each time. X is single valued, so
  // chaining moves cannot pick up a spurious period.
  std::vector<Vec3L> rows;
  std::optional<XWalker> walk;
  for (double rho : fit.radii) {
    for (int a = 0; a < kPerRing; ++a) {
      double psi = 2.0 * kPi * a / kPerRing;
      cplx T(rho * std::cos(psi), rho * std::sin(psi));
      cplx seed = g.ev.tracked() ? std::conj(T / cplx(0.0, 2.0))
                                 : std::conj(cplx(0.0, 2.0) * T);
      if (!walk) walk = XWalker::start(g, seed, g.tol);
      else walk->move_to(seed);
      XWalker& wk = *walk;
      bool ok = false;
      for (int it = 0; it < 20; ++it) {
        double F1 = wk.X.x1 - T.real(), F2 = wk.X.x2 - T.imag();
        if (std::hypot(F1, F2) <= 1e-8 * rho) {
          ok = true;
          break;
        }
        cplx p1 = g.ev.phi_density(1, wk.z, wk.w);
        cplx p2 = g.ev.phi_density(2, wk.z, wk.w);
        double a11 = p1.real(), a12 = -p1.imag();
        double a21 = p2.real(), a22 = -p2.imag();
        double det = a11 * a22 - a12 * a21;
        if (det == 0.0) break;
        double du = (-F1 * a22 + F2 * a12) / det;
        double dv = (-F2 * a11 + F1 * a21) / det;
        cplx step(du, dv);
        double cap = 0.3 * std::abs(wk.z);
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        wk.move_to(wk.z + step);
      }
      if (!ok)
        throw accuracy_error("asymptotic_fit: end inversion did not converge");
      rows.push_back(wk.X);
    }
  }

  Eigen::MatrixXd A(rows.size(), 4);
  Eigen::VectorXd rhs(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    double r2 = rows[i].x1 * rows[i].x1 + rows[i].x2 * rows[i].x2;
    A(i, 0) = 0.5 * std::log(r2);
    A(i, 1) = 1.0;
    A(i, 2) = rows[i].x1 / r2;
    A(i, 3) = rows[i].x2 / r2;
    rhs(i) = rows[i].x3;
  }
  auto qr = A.colPivHouseholderQr();
  qr.setThreshold(1e-10);
  if (qr.rank() < 4)
    throw accuracy_error("asymptotic_fit: degenerate ring sampling, fit is rank deficient");
  Eigen::Vector4d sol = qr.solve(rhs);
  fit.c = sol(0);
  fit.b = sol(1);
  fit.a1 = sol(2);
  fit.a2 = sol(3);
  for (size_t ring = 0; ring < fit.radii.size(); ++ring) {
    double ss = 0.0;
    for (int a = 0; a < kPerRing; ++a) {
      size_t i = ring * kPerRing + a;
      double resid = rhs(i) - A.row(i).dot(sol);
      ss += resid * resid;
    }
    fit.residual.push_back(std::sqrt(ss / kPerRing));
  }
  return fit;
}

Mesh sample_mesh(const MaximalGraph& g, const MeshSpec& spec) {
  if (spec.around < 4 || spec.rings < 2)
    throw validation_error("sample_mesh: need at least 4 around and 2 rings");
  Mesh mesh;

  // pos takes a fractional angular parameter so the walk between adjacent
  // vertices can follow the ring contour in short hops: a single chord can
  // jump a whole stadium cap and pass through a branch value.
  auto add_patch = [&](const std::function<cplx(int, double)>& pos,
                       const std::function<int(int)>& subs) {
    int base = (int)mesh.vertices.size();
    XWalker wk = XWalker::start(g, pos(0, 0.0), g.tol);
    auto push = [&] {
      ExtComplex gg = g.ev.gauss_g(wk.z, wk.w);
      double ag = gg.finite ? std::abs(gg.value)
                            : std::numeric_limits<double>::infinity();
      mesh.vertices.push_back({wk.z, wk.X, ag});
    };
    for (int ring = 0; ring < spec.rings; ++ring) {
      if (ring > 0) {
        int k = subs(ring - 1);
        for (int s = 1; s <= k; ++s)
          wk.move_to(pos(ring - 1, spec.around - 1 + (double)s / k));
        wk.move_to(pos(ring, 0.0));
      }
      push();
      for (int a = 1; a < spec.around; ++a) {
        int k = subs(ring);
        for (int s = 1; s <= k; ++s)
          wk.move_to(pos(ring, a - 1 + (double)s / k));
        push();
      }
    }
    for (int ring = 0; ring + 1 < spec.rings; ++ring)
      for (int a = 0; a < spec.around; ++a) {
        int a1 = (a + 1) % spec.around;
        int v00 = base + ring * spec.around + a;
        int v01 = base + ring * spec.around + a1;
        int v10 = base + (ring + 1) * spec.around + a;
        int v11 = base + (ring + 1) * spec.around + a1;
        mesh.faces.push_back({v00, v01, v10});
        mesh.faces.push_back({v01, v11, v10});
      }
  };

  if (g.ev.tracked()) {
    auto vals = branch_values(g.ev.curve);
    double ext = std::max(std::abs(vals.front()), std::abs(vals.back()));
    for (const auto& cut : g.cuts) {
      double clr = std::numeric_limits<double>::infinity();
      for (double v : vals)
        if (v < cut.lo || v > cut.hi)
          clr = std::min(clr, std::min(std::abs(v - cut.lo), std::abs(v - cut.hi)));
      double dmax = 0.35 * clr;
      double dmin = std::max(0.01 * clr, 3.0 * g.eps);
      auto ring_d = [dmax, dmin, &spec](int ring) {
        return dmax * std::pow(dmin / dmax, (double)ring / (spec.rings - 1));
      };
      add_patch(
          [&cut, ring_d, &spec](int ring, double a) {
            return stadium_point(cut, ring_d(ring), a / spec.around);
          },
          [&cut, ring_d, &spec](int ring) {
            double d = ring_d(ring);
            double P = 2.0 * cut.length() + 2.0 * kPi * d;
            return std::max(1, (int)std::ceil(P / spec.around / (0.8 * d)));
          });
    }
    double far0 = 2.0 + 2.0 * ext, far1 = 20.0 * (1.0 + ext);
    add_patch(
        [far0, far1, &spec](int ring, double a) {
          double r = far0 * std::pow(far1 / far0, (double)ring / (spec.rings - 1));
          double th = 2.0 * kPi * a / spec.around;
          return r * cplx(std::cos(th), std::sin(th));
        },
        [](int) { return 1; });
  } else {
    bool cat = (g.ev.kind == FamilyKind::catenoid);
    double r0 = cat ? 1.01 : g.ev.local_inner + 0.05;
    double r1 = cat ? 25.0 : 0.99;
    add_patch(
        [r0, r1, &spec](int ring, double a) {
          double r = r0 * std::pow(r1 / r0, (double)ring / (spec.rings - 1));
          double th = 2.0 * kPi * a / spec.around;
          return r * cplx(std::cos(th), std::sin(th));
        },
        [](int) { return 1; });
  }
  return mesh;
}

namespace {

PeriodSet collect_periods(const WeierstrassEvaluator& ev, int cycles, double tol) {
  PeriodSet ps;
  for (int j = 0; j < cycles; ++j) {
    ps.cycles.push_back(cycle_period(ev, j, tol));
    ps.max_real_residual =
        std::max(ps.max_real_residual, ps.cycles.back().real_residual());
  }
  return ps;
}

}  // namespace

MaximalGraph build_graph(const WeierstrassEvaluator& ev, double tol) {
  if (!(tol > 0.0)) throw validation_error("build_graph: tolerance must be positive");
  MaximalGraph g;
  g.ev = ev;
  g.tol = tol;
  int cycles = 1;
  if (ev.kind == FamilyKind::riemann) {
    validate(ev.curve);
    g.cuts = fixed_locus_intervals(ev.curve);
    g.eps = epsilon_branch(ev.curve);
    g.z_ref = cplx(branch_values(ev.curve).back() + 1.0, 0.0);
    g.w_ref = principal_w(ev.curve, g.z_ref);
    cycles = (int)g.cuts.size();
  } else if (ev.kind == FamilyKind::catenoid) {
    g.eps = 1e-3;
    g.z_ref = cplx(2.0, 0.0);
    g.w_ref = cplx(0.0, 0.0);
  } else {
    g.eps = 1e-3;
    g.z_ref = cplx(0.75, 0.0);
    g.w_ref = cplx(0.0, 0.0);
  }
  g.periods = collect_periods(ev, cycles, tol);
  // All periods must be purely imaginary or the real part of the integral
  // is multivalued and no graph exists.
  if (g.periods.max_real_residual > 10.0 * tol)
    throw certificate_error("build_graph: homology periods have real part beyond certificate");
  g.offset = Vec3L{0.0, 0.0, 0.0};
  g.offset = singular_point(g, 0, tol);
  for (int j = 0; j < g.num_singular(); ++j)
    g.singular.push_back(singular_point(g, j, tol));
  return g;
}

}  // namespace maxgraph
