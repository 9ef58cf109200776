#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "maxgraph/extended.hpp"

namespace maxgraph {

// Marked circular domain: the region outside the unit disk and the n disks
// B_{r_j}(c_j), with the point at infinity included. The first marked center
// is pinned to the positive real axis, which fixes the normalization of the
// family. Circle index 0 always refers to the unit circle.
struct DomainParams {
  int n = 1;
  std::vector<cplx> centers;  // c_1..c_n, c_1 real and > 1
  std::vector<double> radii;  // r_1..r_n, all positive
};

// Throws validation_error unless the closed disks (unit disk included) are
// pairwise disjoint and the marking constraints hold.
void validate(const DomainParams& v);

// Minimum clearance a divisor point must keep from every boundary circle.
double divisor_clearance(const DomainParams& v);

// Points with multiplicities, all interior to the domain.
struct Divisor {
  std::vector<std::pair<cplx, int>> points;
};

// Harmonic function represented as
//   alpha0 + sum_j [ beta_j log|z - c_j| + Re sum_k gamma_{j,k} (z-c_j)^{-k} ]
// over all n+1 circle centers (index 0 is the unit circle). The log
// coefficients sum to zero so the function stays bounded at infinity.
struct HarmonicRep {
  std::vector<cplx> centers;  // c_0 = 0 first
  double alpha0 = 0.0;
  std::vector<double> beta;
  std::vector<std::vector<cplx>> gamma;
  double misfit = 0.0;      // max |h - data| probed between collocation nodes
  double data_scale = 0.0;  // max |data| seen, for relative certificates
  bool conditioning_warning = false;

  double value(cplx z) const;
  cplx deriv(cplx z) const;  // the z-derivative, a holomorphic density
};

// Least-squares collocation with 8K points per circle. data(j, z) supplies
// the boundary values on circle j at the point z. Nearly touching disks
// only raise the conditioning flag; the misfit is always reported, and
// certificates are enforced by the callers that need them.
HarmonicRep harmonic_solve(const DomainParams& v,
                           const std::function<double(int, cplx)>& data,
                           int K = 24);

// Meromorphic density sum_p sum_k coef[p][k] (z - poles[p])^{-k-1}. The
// k = 0 entry is the residue at that pole. Closed under the linear
// combinations the toolkit performs, so solved forms stay exact.
struct FormRep {
  std::vector<cplx> poles;
  std::vector<std::vector<cplx>> coef;

  cplx density(cplx z) const;
  // Sum of 2 pi i residues over the poles enclosed by the circle.
  cplx circle_period(cplx center, double radius) const;
};

// Dual basis of holomorphic 1-forms: counterclockwise circle periods
// satisfy the Kronecker normalization on every marked circle to 1e-8,
// re-verified by quadrature. Throws certificate_error when the harmonic
// solve misfit or the re-verified periods exceed tolerance.
std::vector<FormRep> eta_basis(const DomainParams& v, int K = 24);

// Entries 2i Im of the dual-basis integrals along planned paths from the
// unit circle to each marked circle; imaginary by construction, certified
// symmetric to 1e-8.
std::vector<std::vector<cplx>> period_matrix(const DomainParams& v,
                                             int K = 24);

// Third-kind form with residue -m_j at each divisor point and vanishing
// circle periods; both facts are certified numerically (1e-6 residues,
// 1e-8 periods).
FormRep tau_form(const DomainParams& v, const Divisor& D, int K = 24);

// Exchange form with residues -m_j at D1 points and +n_h at D2 points and
// vanishing circle periods, certified as in tau_form. Swapping D1 and D2
// negates the form.
FormRep kappa_form(const DomainParams& v, const Divisor& D1,
                   const Divisor& D2, int K = 24);

// Polyline from the unit circle to marked circle j staying clear of every
// other disk; side selects which way detours bend, so the two sides give
// homologous but distinct representatives.
std::vector<cplx> plan_domain_path(const DomainParams& v, int to_circle,
                                   int side = +1);

// Adaptive path integral of the density along a polyline.
cplx form_integral(const FormRep& f, const std::vector<cplx>& path,
                   double tol = 1e-12);

}  // namespace maxgraph
