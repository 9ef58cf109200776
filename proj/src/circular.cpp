#include "maxgraph/circular.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "maxgraph/errors.hpp"
#include "maxgraph/quadrature.hpp"

namespace maxgraph {

namespace {

std::vector<cplx> all_centers(const DomainParams& v) {
  std::vector<cplx> c{cplx(0.0, 0.0)};
  c.insert(c.end(), v.centers.begin(), v.centers.end());
  return c;
}

std::vector<double> all_radii(const DomainParams& v) {
  std::vector<double> r{1.0};
  r.insert(r.end(), v.radii.begin(), v.radii.end());
  return r;
}

double point_segment_distance(cplx p, cplx a, cplx b) {
  cplx ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace

void validate(const DomainParams& v) {
  if (v.n < 1) throw validation_error("domain: n must be positive");
  if ((int)v.centers.size() != v.n || (int)v.radii.size() != v.n)
    throw validation_error("domain: expected n centers and n radii");
  for (double r : v.radii)
    if (!(r > 0.0) || !std::isfinite(r))
      throw validation_error("domain: radii must be positive");
  for (cplx c : v.centers)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw validation_error("domain: centers must be finite");
  if (v.centers[0].imag() != 0.0 || !(v.centers[0].real() > 1.0))
    throw validation_error("domain: first center must be real and exceed 1");
  auto c = all_centers(v);
  auto r = all_radii(v);
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = i + 1; j < c.size(); ++j)
      if (!(std::abs(c[i] - c[j]) > r[i] + r[j]))
        throw validation_error("domain: closed disks must be pairwise disjoint");
}

double divisor_clearance(const DomainParams& v) {
  validate(v);
  return *std::max_element(v.radii.begin(), v.radii.end()) / 100.0;
}

double HarmonicRep::value(cplx z) const {
  double s = alpha0;
  for (size_t j = 0; j < centers.size(); ++j) {
    cplx u = 1.0 / (z - centers[j]);
    s += beta[j] * std::log(std::abs(z - centers[j]));
    cplx p(0.0, 0.0);
    for (int k = (int)gamma[j].size() - 1; k >= 0; --k)
      p = (p + gamma[j][k]) * u;
    s += p.real();
  }
  return s;
}

cplx HarmonicRep::deriv(cplx z) const {
  cplx s(0.0, 0.0);
  for (size_t j = 0; j < centers.size(); ++j) {
    cplx u = 1.0 / (z - centers[j]);
    cplx p(0.0, 0.0);
    for (int k = (int)gamma[j].size() - 1; k >= 0; --k)
      p = (p + (double)(k + 1) * gamma[j][k]) * u;
    s += (0.5 * beta[j] - 0.5 * p) * u;
  }
  return s;
}

HarmonicRep harmonic_solve(const DomainParams& v,
                           const std::function<double(int, cplx)>& data,
                           int K) {
  validate(v);
  if (K < 1) throw validation_error("harmonic_solve: truncation must be positive");
  if (!data) throw validation_error("harmonic_solve: boundary data is required");
  auto c = all_centers(v);
  auto r = all_radii(v);
  int nc = (int)c.size();
  int M = 8 * K;
  int rows = nc * M;
  int cols = 1 + v.n + nc * 2 * K;

  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  double data_scale = 0.0;
  for (int i = 0; i < nc; ++i)
    for (int m = 0; m < M; ++m) {
      double th = 2.0 * kPi * m / M;
      cplx z = c[i] + r[i] * cplx(std::cos(th), std::sin(th));
      int row = i * M + m;
      A(row, 0) = 1.0;
      // beta_0 is eliminated through the zero-sum constraint, so each free
      // log coefficient appears relative to the unit-circle log.
      for (int j = 1; j < nc; ++j)
        A(row, j) = std::log(std::abs(z - c[j])) - std::log(std::abs(z));
      int col = 1 + v.n;
      for (int j = 0; j < nc; ++j) {
        cplx u = 1.0 / (z - c[j]);
        cplx p(1.0, 0.0);
        for (int k = 1; k <= K; ++k) {
          p *= u;
          A(row, col++) = p.real();
          A(row, col++) = -p.imag();
        }
      }
      double d = data(i, z);
      b(row) = d;
      data_scale = std::max(data_scale, std::abs(d));
    }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::VectorXd x = qr.solve(b);

  HarmonicRep rep;
  rep.centers = c;
  rep.alpha0 = x(0);
  rep.beta.assign(nc, 0.0);
  double bsum = 0.0;
  for (int j = 1; j < nc; ++j) {
    rep.beta[j] = x(j);
    bsum += x(j);
  }
  rep.beta[0] = -bsum;
  rep.gamma.assign(nc, std::vector<cplx>(K));
  int col = 1 + v.n;
  for (int j = 0; j < nc; ++j)
    for (int k = 0; k < K; ++k) {
      rep.gamma[j][k] = cplx(x(col), x(col + 1));
      col += 2;
    }
  rep.conditioning_warning = qr.rank() < cols;

  double misfit = 0.0;
  for (int i = 0; i < nc; ++i)
    for (int m = 0; m < M; ++m) {
      double th = 2.0 * kPi * (m + 0.5) / M;
      cplx z = c[i] + r[i] * cplx(std::cos(th), std::sin(th));
      double d = data(i, z);
      data_scale = std::max(data_scale, std::abs(d));
      misfit = std::max(misfit, std::abs(rep.value(z) - d));
    }
  rep.misfit = misfit;
  rep.data_scale = data_scale;
  return rep;
}

cplx FormRep::density(cplx z) const {
  cplx s(0.0, 0.0);
  for (size_t p = 0; p < poles.size(); ++p) {
    cplx u = 1.0 / (z - poles[p]);
    cplx acc(0.0, 0.0);
    for (int k = (int)coef[p].size() - 1; k >= 0; --k)
      acc = acc * u + coef[p][k];
    s += acc * u;
  }
  return s;
}

cplx FormRep::circle_period(cplx center, double radius) const {
  cplx s(0.0, 0.0);
  for (size_t p = 0; p < poles.size(); ++p)
    if (std::abs(poles[p] - center) < radius && !coef[p].empty())
      s += coef[p][0];
  return cplx(0.0, 2.0 * kPi) * s;
}

namespace {

// Derivative of a solved harmonic function as a density over the centers.
FormRep harmonic_form(const HarmonicRep& h, cplx scale) {
  FormRep f;
  f.poles = h.centers;
  f.coef.resize(h.centers.size());
  for (size_t j = 0; j < h.centers.size(); ++j) {
    auto& cj = f.coef[j];
    cj.assign(h.gamma[j].size() + 1, cplx(0.0, 0.0));
    cj[0] = scale * (0.5 * h.beta[j]);
    for (size_t k = 0; k < h.gamma[j].size(); ++k)
      cj[k + 1] = scale * (-0.5 * (double)(k + 1) * h.gamma[j][k]);
  }
  return f;
}

void accumulate(FormRep& dst, const FormRep& src, cplx scale) {
  for (size_t p = 0; p < src.poles.size(); ++p) {
    size_t q = 0;
    while (q < dst.poles.size() && dst.poles[q] != src.poles[p]) ++q;
    if (q == dst.poles.size()) {
      dst.poles.push_back(src.poles[p]);
      dst.coef.emplace_back();
    }
    auto& c = dst.coef[q];
    if (c.size() < src.coef[p].size()) c.resize(src.coef[p].size());
    for (size_t k = 0; k < src.coef[p].size(); ++k)
      c[k] += scale * src.coef[p][k];
  }
}

cplx quad_circle_period(const FormRep& f, cplx center, double radius) {
  return form_integral(f, circle_loop(center, radius), 1e-12);
}

void check_misfit(const HarmonicRep& h, const char* who) {
  if (h.misfit > 1e-4 * (1.0 + h.data_scale))
    throw certificate_error(std::string(who) +
                            ": harmonic boundary misfit beyond certificate (" +
                            std::to_string(h.misfit) + ")");
}

}  // namespace

std::vector<FormRep> eta_basis(const DomainParams& v, int K) {
  validate(v);
  std::vector<FormRep> hats;
  Eigen::MatrixXcd P(v.n, v.n);
  for (int j = 1; j <= v.n; ++j) {
    auto h = harmonic_solve(
        v, [j](int i, cplx) { return i == j ? 1.0 : 0.0; }, K);
    check_misfit(h, "eta_basis");
    hats.push_back(harmonic_form(h, cplx(1.0, 0.0)));
    // The only pole a marked circle encloses is its own center, so the
    // circle period is exactly pi i times that log coefficient.
    for (int k = 1; k <= v.n; ++k)
      P(k - 1, j - 1) = cplx(0.0, kPi) * h.beta[k];
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(P);
  if (lu.rank() < v.n)
    throw certificate_error("eta_basis: circle period matrix is degenerate");
  Eigen::MatrixXcd X =
      lu.solve(Eigen::MatrixXcd::Identity(v.n, v.n));

  auto rr = all_radii(v);
  auto cc = all_centers(v);
  std::vector<FormRep> etas;
  for (int j = 0; j < v.n; ++j) {
    FormRep f;
    for (int h = 0; h < v.n; ++h) accumulate(f, hats[h], X(h, j));
    etas.push_back(std::move(f));
  }
  for (int j = 0; j < v.n; ++j)
    for (int k = 1; k <= v.n; ++k) {
      cplx got = quad_circle_period(etas[j], cc[k], rr[k]);
      if (std::abs(got - (k - 1 == j ? 1.0 : 0.0)) > 1e-8)
        throw certificate_error(
            "eta_basis: circle periods drift from the Kronecker normalization");
    }
  return etas;
}

std::vector<cplx> plan_domain_path(const DomainParams& v, int to_circle,
                                   int side) {
  validate(v);
  if (to_circle < 1 || to_circle > v.n)
    throw validation_error("plan_domain_path: circle index out of range");
  if (side != 1 && side != -1)
    throw validation_error("plan_domain_path: side must be +1 or -1");
  auto c = all_centers(v);
  auto r = all_radii(v);
  cplx goal = c[to_circle];
  cplx u = goal / std::abs(goal);
  std::vector<cplx> path{u, goal - r[to_circle] * u};

  for (int pass = 0; pass < 5; ++pass) {
    bool changed = false;
    for (size_t s = 0; s + 1 < path.size() && !changed; ++s)
      for (int h = 1; h <= v.n; ++h) {
        if (h == to_circle) continue;
        if (point_segment_distance(c[h], path[s], path[s + 1]) >= 1.25 * r[h])
          continue;
        // Detour along an arc at 1.25 r; steps of pi/6 keep the chords at
        // clearance 1.25 cos(pi/12) > 1.2 of the disk radius.
        double tha = std::arg(path[s] - c[h]);
        double thb = std::arg(path[s + 1] - c[h]);
        double sweep = thb - tha;
        if (side > 0) {
          while (sweep <= 0.0) sweep += 2.0 * kPi;
        } else {
          while (sweep >= 0.0) sweep -= 2.0 * kPi;
        }
        int steps = std::max(2, (int)std::ceil(std::abs(sweep) / (kPi / 6.0)));
        std::vector<cplx> arc;
        for (int t = 1; t < steps; ++t) {
          double th = tha + sweep * t / steps;
          arc.push_back(c[h] + 1.25 * r[h] * cplx(std::cos(th), std::sin(th)));
        }
        path.insert(path.begin() + s + 1, arc.begin(), arc.end());
        changed = true;
        break;
      }
    if (!changed) break;
  }

  for (size_t s = 0; s + 1 < path.size(); ++s)
    for (size_t i = 0; i < c.size(); ++i) {
      bool touches = (i == 0 && s == 0) ||
                     ((int)i == to_circle && s + 2 == path.size());
      double need = touches ? 0.999 * r[i] : 1.05 * r[i];
      if (point_segment_distance(c[i], path[s], path[s + 1]) < need)
        throw accuracy_error("plan_domain_path: could not route between circles");
    }
  return path;
}

cplx form_integral(const FormRep& f, const std::vector<cplx>& path,
                   double tol) {
  auto g = [&f](cplx z, cplx) { return f.density(z); };
  return integrate_density(g, nullptr, path, cplx(1.0, 0.0), tol).value;
}

std::vector<std::vector<cplx>> period_matrix(const DomainParams& v, int K) {
  auto etas = eta_basis(v, K);
  std::vector<std::vector<cplx>> pm(v.n, std::vector<cplx>(v.n));
  for (int j = 0; j < v.n; ++j) {
    auto path = plan_domain_path(v, j + 1, +1);
    // The mirrored half of the cycle contributes the conjugate, leaving
    // twice the imaginary part of the one-sided integral.
    for (int k = 0; k < v.n; ++k)
      pm[j][k] = cplx(0.0, 2.0 * form_integral(etas[k], path, 1e-12).imag());
  }
  double sym = 0.0;
  for (int j = 0; j < v.n; ++j)
    for (int k = 0; k < v.n; ++k)
      sym = std::max(sym, std::abs(pm[j][k] - pm[k][j]));
  if (sym > 1e-8)
    throw certificate_error("period_matrix: symmetry residual " +
                            std::to_string(sym));
  return pm;
}

namespace {

void validate_divisor(const DomainParams& v, const Divisor& D,
                      const char* who) {
  if (D.points.empty())
    throw validation_error(std::string(who) + ": divisor is empty");
  double eps = divisor_clearance(v);
  auto c = all_centers(v);
  auto r = all_radii(v);
  for (const auto& [w, m] : D.points) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
      throw validation_error(std::string(who) + ": divisor point not finite");
    if (m < 1)
      throw validation_error(std::string(who) +
                             ": multiplicities must be positive");
    for (size_t i = 0; i < c.size(); ++i)
      if (std::abs(w - c[i]) < r[i] + eps)
        throw validation_error(std::string(who) +
                               ": divisor point too close to a circle");
  }
  for (size_t a = 0; a < D.points.size(); ++a)
    for (size_t b = a + 1; b < D.points.size(); ++b)
      if (std::abs(D.points[a].first - D.points[b].first) < eps)
        throw validation_error(std::string(who) +
                               ": divisor points too close together");
}

// Shared tail: subtract the eta combination that kills the circle periods,
// then certify residues and periods by quadrature.
FormRep normalize_and_certify(const DomainParams& v, FormRep f, int K,
                              const std::vector<std::pair<cplx, int>>& want_res,
                              const char* who) {
  auto cc = all_centers(v);
  auto rr = all_radii(v);
  auto etas = eta_basis(v, K);
  for (int i = 1; i <= v.n; ++i) {
    cplx per = f.circle_period(cc[i], rr[i]);
    accumulate(f, etas[i - 1], -per);
  }
  double eps = divisor_clearance(v);
  for (const auto& [w, res] : want_res) {
    cplx got = quad_circle_period(f, w, eps / 2.0) / cplx(0.0, 2.0 * kPi);
    if (std::abs(got - (double)res) > 1e-6)
      throw certificate_error(std::string(who) +
                              ": residue certificate failed at a divisor point");
  }
  for (int i = 1; i <= v.n; ++i)
    if (std::abs(quad_circle_period(f, cc[i], rr[i])) > 1e-8)
      throw certificate_error(std::string(who) +
                              ": circle periods fail to vanish");
  return f;
}

}  // namespace

FormRep tau_form(const DomainParams& v, const Divisor& D, int K) {
  validate(v);
  validate_divisor(v, D, "tau_form");
  auto data = [&D](int, cplx z) {
    double s = 0.0;
    for (const auto& [w, m] : D.points) s += m * std::log(std::abs(z - w));
    return s;
  };
  auto h = harmonic_solve(v, data, K);
  check_misfit(h, "tau_form");
  FormRep f = harmonic_form(h, cplx(2.0, 0.0));
  std::vector<std::pair<cplx, int>> want;
  for (const auto& [w, m] : D.points) {
    f.poles.push_back(w);
    f.coef.push_back({cplx(-(double)m, 0.0)});
    want.emplace_back(w, -m);
  }
  return normalize_and_certify(v, std::move(f), K, want, "tau_form");
}

FormRep kappa_form(const DomainParams& v, const Divisor& D1,
                   const Divisor& D2, int K) {
  validate(v);
  validate_divisor(v, D1, "kappa_form");
  validate_divisor(v, D2, "kappa_form");
  double eps = divisor_clearance(v);
  for (const auto& [w1, m1] : D1.points)
    for (const auto& [w2, m2] : D2.points)
      if (std::abs(w1 - w2) < eps)
        throw validation_error("kappa_form: divisor supports must be disjoint");

  auto c = all_centers(v);
  // Branch: arg((z - w)/(c_i - w)) stays inside the half cone around the
  // center direction while z runs over circle i, so the data is continuous
  // on each circle; the per-circle constant is immaterial to the form.
  auto data = [&](int i, cplx z) {
    double s = 0.0;
    for (const auto& [w, m] : D2.points)
      s += m * (std::arg((z - w) / (c[i] - w)) + std::arg(c[i] - w));
    for (const auto& [w, m] : D1.points)
      s -= m * (std::arg((z - w) / (c[i] - w)) + std::arg(c[i] - w));
    return s;
  };
  auto h = harmonic_solve(v, data, K);
  check_misfit(h, "kappa_form");
  FormRep f = harmonic_form(h, cplx(0.0, -2.0));
  std::vector<std::pair<cplx, int>> want;
  for (const auto& [w, m] : D1.points) {
    f.poles.push_back(w);
    f.coef.push_back({cplx(-(double)m, 0.0)});
    want.emplace_back(w, -m);
  }
  for (const auto& [w, m] : D2.points) {
    f.poles.push_back(w);
    f.coef.push_back({cplx((double)m, 0.0)});
    want.emplace_back(w, m);
  }
  return normalize_and_certify(v, std::move(f), K, want, "kappa_form");
}

}  // namespace maxgraph
