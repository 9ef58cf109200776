#include "maxgraph/weierstrass.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "maxgraph/errors.hpp"
#include "maxgraph/quadrature.hpp"

namespace maxgraph {

WeierstrassEvaluator WeierstrassEvaluator::riemann_family(const CurveParams& p) {
  validate(p);
  WeierstrassEvaluator ev;
  ev.kind = FamilyKind::riemann;
  ev.curve = p;
  return ev;
}

WeierstrassEvaluator WeierstrassEvaluator::catenoid_model() {
  WeierstrassEvaluator ev;
  ev.kind = FamilyKind::catenoid;
  return ev;
}

WeierstrassEvaluator WeierstrassEvaluator::local_model(int m, int k) {
  if (m < 1 || k < 0)
    throw validation_error("local_model: need m >= 1 and k >= 0");
  WeierstrassEvaluator ev;
  ev.kind = FamilyKind::local;
  ev.m = m;
  ev.k = k;
  return ev;
}

WeierstrassEvaluator WeierstrassEvaluator::with_extra_zero(cplx z0) const {
  WeierstrassEvaluator ev = *this;
  ev.defect = DefectKind::extra_zero;
  ev.defect_point = z0;
  return ev;
}

WeierstrassEvaluator WeierstrassEvaluator::with_interior_pole(cplx z0,
                                                              double strength) const {
  WeierstrassEvaluator ev = *this;
  ev.defect = DefectKind::interior_pole;
  ev.defect_point = z0;
  ev.defect_strength = strength;
  return ev;
}

SheetPoint WeierstrassEvaluator::at(cplx z) const {
  if (tracked()) return {z, principal_w(curve, z)};
  return {z, cplx(0.0, 0.0)};
}

ExtComplex WeierstrassEvaluator::gauss_g(cplx z, cplx w) const {
  switch (kind) {
    case FamilyKind::riemann: {
      if (w == cplx(-1.0, 0.0)) return ExtComplex::infinity();
      return ExtComplex::of((w - 1.0) / (w + 1.0));
    }
    case FamilyKind::catenoid: {
      if (z == cplx(0.0, 0.0)) return ExtComplex::infinity();
      return ExtComplex::of(1.0 / z);
    }
    case FamilyKind::local:
    default:
      return ExtComplex::of(std::pow(z, m));
  }
}

namespace {

cplx ipow(cplx z, int e) {
  if (e >= 0) {
    cplx r = 1.0;
    for (int i = 0; i < e; ++i) r *= z;
    return r;
  }
  cplx r = 1.0;
  for (int i = 0; i < -e; ++i) r *= z;
  return 1.0 / r;
}

}  // namespace

cplx WeierstrassEvaluator::phi_density(int which, cplx z, cplx w) const {
  cplx v;
  switch (kind) {
    case FamilyKind::riemann: {
      // phi1 collapses to a constant: phi3 (1/g - g) = -4 identically on
      // this family, since 1/g - g = 4w/(w^2-1) and phi3 = (1-w^2)/w.
      if (which == 1) v = cplx(0.0, -2.0);
      else if (which == 2) v = w + 1.0 / w;
      else v = 1.0 / w - w;
      break;
    }
    case FamilyKind::catenoid: {
      cplx z2 = 1.0 / (z * z);
      if (which == 1) v = cplx(0.0, 0.5) * (1.0 - z2);
      else if (which == 2) v = -0.5 * (1.0 + z2);
      else v = 1.0 / z;
      break;
    }
    case FamilyKind::local:
    default: {
      cplx f = (k == 0) ? 1.0 / z
                        : cplx(0.0, 1.0) * (ipow(z, k - 1) - ipow(z, -k - 1));
      if (which == 3) v = f;
      else if (which == 1) v = cplx(0.0, 0.5) * (ipow(z, -m) - ipow(z, m)) * f;
      else v = -0.5 * (ipow(z, -m) + ipow(z, m)) * f;
      break;
    }
  }
  if (defect == DefectKind::extra_zero) return v * (z - defect_point);
  if (defect == DefectKind::interior_pole) {
    // imaginary coefficient: the perturbed densities stay imaginary on the
    // cuts, so the surface still builds and only the balance report trips
    cplx d3 = cplx(0.0, defect_strength) / (z - defect_point);
    cplx og, pg;  // 1/g - g and 1/g + g
    if (kind == FamilyKind::riemann) {
      og = 4.0 * w / (w * w - 1.0);
      pg = 2.0 * (w * w + 1.0) / (w * w - 1.0);
    } else if (kind == FamilyKind::catenoid) {
      og = z - 1.0 / z;
      pg = z + 1.0 / z;
    } else {
      og = ipow(z, -m) - ipow(z, m);
      pg = ipow(z, -m) + ipow(z, m);
    }
    if (which == 1) v += cplx(0.0, 0.5) * d3 * og;
    else if (which == 2) v += -0.5 * d3 * pg;
    else v += d3;
  }
  return v;
}

ExtComplex WeierstrassEvaluator::phi3_value(cplx z, cplx w) const {
  cplx v = phi_density(3, z, w);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    return ExtComplex::infinity();
  return ExtComplex::of(v);
}

double WeierstrassEvaluator::conformal_factor_sq(cplx z, cplx w) const {
  double ag;  // |g|
  cplx over, times;  // phi3/g and phi3*g without intermediate blowup
  switch (kind) {
    case FamilyKind::riemann: {
      ag = std::abs(w - 1.0) / std::abs(w + 1.0);
      over = -(w + 1.0) * (w + 1.0) / w;
      times = -(w - 1.0) * (w - 1.0) / w;
      break;
    }
    case FamilyKind::catenoid: {
      ag = 1.0 / std::abs(z);
      over = 1.0;
      times = 1.0 / (z * z);
      break;
    }
    case FamilyKind::local:
    default: {
      ag = std::pow(std::abs(z), m);
      cplx f = (k == 0) ? 1.0 / z
                        : cplx(0.0, 1.0) * (ipow(z, k - 1) - ipow(z, -k - 1));
      over = f * ipow(z, -m);
      times = f * ipow(z, m);
      break;
    }
  }
  double lam;
  if (ag <= 1.0)
    lam = 0.5 * std::abs(over) * (1.0 - ag * ag);
  else
    lam = 0.5 * std::abs(times) * (1.0 - 1.0 / (ag * ag));
  if (defect == DefectKind::extra_zero) lam *= std::abs(z - defect_point);
  else if (defect == DefectKind::interior_pole) {
    cplx p3 = phi_density(3, z, w);
    lam = 0.5 * std::abs(p3) * std::abs(1.0 / ag - ag);
  }
  if (ag == 1.0) return 0.0;
  if (!std::isfinite(lam)) return std::numeric_limits<double>::infinity();
  return lam * lam;
}

double WeierstrassEvaluator::eps_standoff() const {
  if (tracked()) return epsilon_branch(curve);
  return 1e-3;
}

namespace {

std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Coefficients (ascending) of (z - s0) prod_j (z - r_j).
std::vector<double> poly_from_roots(double s0, const std::vector<double>& r) {
  std::vector<double> p{-s0, 1.0};
  for (double v : r) p = poly_mul(p, {-v, 1.0});
  return p;
}

std::vector<cplx> poly_roots(std::vector<double> p) {
  double top = 0.0;
  for (double v : p) top = std::max(top, std::abs(v));
  if (top == 0.0) return {};
  while (p.size() > 1 && std::abs(p.back()) <= 1e-11 * top) p.pop_back();
  int deg = (int)p.size() - 1;
  if (deg < 1) return {};
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -p[i] / p[deg];
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C);
  std::vector<cplx> roots(deg);
  for (int i = 0; i < deg; ++i)
    roots[i] = cplx(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

// Winding number of a function along the loop, via its logarithmic
// derivative; null when the rounding residual is too large to trust.
struct Winding {
  int value = 0;
  double residual = 1.0;
};

Winding winding_of(const std::function<cplx(cplx, cplx)>& dlog,
                   const CurveParams* curve, const std::vector<cplx>& loop,
                   cplx w_start) {
  QuadResult q = integrate_density(dlog, curve, loop, w_start, 1e-6);
  double t = q.value.imag() / (2.0 * kPi);
  Winding w;
  w.value = (int)std::lround(t);
  w.residual = std::max(std::abs(t - w.value),
                        std::abs(q.value.real()) / (2.0 * kPi));
  return w;
}

}  // namespace

HypothesisReport validate_structure(const WeierstrassEvaluator& ev, double tol) {
  if (ev.kind != FamilyKind::riemann)
    throw validation_error("validate_structure: only the curve family has these hypotheses");
  const CurveParams& p = ev.curve;
  auto cuts = fixed_locus_intervals(p);
  double eps = epsilon_branch(p);

  // Zeros of g off the cuts solve R(z) = 1, i.e. the polynomial
  // P = (z-1) prod (z-c) - (z+1) prod (z-b) vanishes.
  std::vector<double> A = poly_from_roots(1.0, p.c);
  std::vector<double> B = poly_from_roots(-1.0, p.b);
  std::vector<double> P(std::max(A.size(), B.size()), 0.0);
  for (size_t i = 0; i < A.size(); ++i) P[i] += A[i];
  for (size_t i = 0; i < B.size(); ++i) P[i] -= B[i];
  std::vector<cplx> roots = poly_roots(P);

  double ext = 0.0;
  for (double v : branch_values(p)) ext = std::max(ext, std::abs(v));
  for (cplx r : roots) ext = std::max(ext, std::abs(r));

  auto glog = [&p](cplx z, cplx w) {
    cplx R = eval_R_finite(p, z);
    return R * eval_R_logderiv(p, z) / (w * (R - 1.0));
  };
  // Numerical log-derivative of the phi3 density; robust against the
  // seeded defects, which make the analytic form awkward.
  auto flog = [&ev, &p](cplx z, cplx w) {
    double h = 1e-6 * (1.0 + std::abs(z));
    cplx wp = branch_step(p, z, w, z + h);
    cplx wm = branch_step(p, z, w, z - h);
    cplx f = ev.phi_density(3, z, w);
    return (ev.phi_density(3, z + h, wp) - ev.phi_density(3, z - h, wm)) /
           (2.0 * h * f);
  };

  HypothesisReport rep;
  double Rbig = 2.0 + 2.0 * ext;
  double standoff = 2.0 * eps;
  bool settled = false;
  Winding gbig, fbig;
  std::vector<Winding> gcut, fcut;
  for (int attempt = 0; attempt < 5 && !settled; ++attempt) {
    auto big = circle_loop(cplx(0.0, 0.0), Rbig, 128);
    cplx w0 = principal_w(p, big.front());
    gbig = winding_of(glog, &p, big, w0);
    fbig = winding_of(flog, &p, big, w0);
    gcut.clear();
    fcut.clear();
    double worst = std::max(gbig.residual, fbig.residual);
    for (const auto& cut : cuts) {
      auto loop = stadium_loop(cut, standoff);
      cplx ws = principal_w(p, loop.front());
      gcut.push_back(winding_of(glog, &p, loop, ws));
      fcut.push_back(winding_of(flog, &p, loop, ws));
      worst = std::max({worst, gcut.back().residual, fcut.back().residual});
    }
    if (worst < 0.1) settled = true;
    else {
      Rbig *= 1.13;
      standoff *= 1.37;
    }
  }
  if (!settled)
    throw accuracy_error("validate_structure: winding counts failed to settle");

  // (1) degree of g: interior zeros plus the vanishing order at the
  // puncture, where the outside winding is minus that order.
  int sum_gcut = 0;
  rep.cut_windings.clear();
  for (const Winding& w : gcut) {
    rep.cut_windings.push_back(w.value);
    sum_gcut += w.value;
  }
  int n_mid = gbig.value - sum_gcut;
  int s_inf = -gbig.value;
  rep.degree_counted = n_mid + s_inf;
  rep.degree_residual = std::max(gbig.residual, fbig.residual);
  rep.degree_ok = (rep.degree_counted == p.n + 1) && n_mid >= 0 && s_inf >= 1;
  rep.boundary_injective = true;
  for (const Winding& w : gcut)
    if (std::abs(w.value) != 1) rep.boundary_injective = false;

  // (2) pole order at the puncture <= 2: the dz/z^2-normalized density
  // must stay bounded, so positive Fourier modes on big circles vanish.
  {
    double scale = 1.0;
    double tail = 0.0;
    for (double R : {Rbig, 2.0 * Rbig}) {
      constexpr int N = 64;
      std::vector<cplx> fs(N);
      for (int i = 0; i < N; ++i) {
        double th = 2.0 * kPi * i / N;
        cplx z = R * cplx(std::cos(th), std::sin(th));
        fs[i] = ev.phi_density(3, z, principal_w(p, z));
      }
      for (int kk = 0; kk <= 4; ++kk) {
        cplx a{0.0, 0.0};
        for (int i = 0; i < N; ++i) {
          double th = 2.0 * kPi * i / N;
          a += fs[i] * std::polar(1.0, -kk * th);
        }
        a /= (double)N;
        if (kk == 0) scale = std::max(scale, std::abs(a));
        else tail = std::max(tail, std::abs(a) / std::pow(R, kk));
      }
    }
    rep.pole_tail = tail / scale;
    rep.pole_order_ok = rep.pole_tail <= 1e-6;
  }

  // (3) zeros of phi3 in the region between the loops must sit exactly at
  // the zeros of g there, i.e. at the roots of P on this sheet.
  {
    std::vector<cplx> expected;
    for (cplx r : roots) {
      if (std::abs(r) >= Rbig) continue;
      bool in_cut = false;
      for (const auto& cut : cuts) {
        double dx = std::max({cut.lo - r.real(), r.real() - cut.hi, 0.0});
        double d = std::hypot(dx, r.imag());
        if (d <= standoff * 1.5) in_cut = true;
      }
      if (!in_cut) expected.push_back(r);
    }
    rep.expected_zero_count = (int)expected.size();
    int sum_fcut = 0;
    for (const Winding& w : fcut) sum_fcut += w.value;
    rep.counted_zero_count = fbig.value - sum_fcut;

    double worst = 0.0;
    for (cplx zhat : expected) {
      // Newton on q = (1-R)/w from a small perturbation of the root.
      cplx z = zhat + 1e-3 * (1.0 + std::abs(zhat)) * std::polar(1.0, 0.7);
      for (int it = 0; it < 40; ++it) {
        cplx R = eval_R_finite(p, z);
        cplx w = std::sqrt(R);
        cplx q = (1.0 - R) / w;
        if (std::abs(q) < 1e-13) break;
        cplx Rp = R * eval_R_logderiv(p, z);
        cplx qp = -Rp * (R + 1.0) / (2.0 * w * w * w);
        z -= q / qp;
      }
      worst = std::max(worst, std::abs(z - zhat) / (1.0 + std::abs(zhat)));
    }
    rep.zero_match_dist = worst;
    rep.zeros_ok = (rep.counted_zero_count == rep.expected_zero_count) &&
                   worst <= std::max(1e-6, tol);
  }
  return rep;
}

}  // namespace maxgraph
