#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "maxgraph/errors.hpp"
#include "maxgraph/graph.hpp"
#include "maxgraph/mechanics.hpp"

using namespace maxgraph;

namespace {

bool close3(const Vec3L& a, const Vec3L& b, double tol) {
  return euclid_norm(a - b) <= tol;
}

MaximalGraph riemann_graph(std::vector<double> c, std::vector<double> b) {
  CurveParams p;
  p.n = (int)c.size();
  p.c = std::move(c);
  p.b = std::move(b);
  return build_graph(WeierstrassEvaluator::riemann_family(p), 1e-10);
}

}  // namespace

TEST_CASE("rotational model carries vertical fluxes of strength two pi") {
  auto g = build_graph(WeierstrassEvaluator::catenoid_model(), 1e-10);
  Vec3L f0 = flux(g, 0);
  Vec3L fe = flux(g, kEndCycle);
  Vec3L down{0, 0, -2 * kPi}, up{0, 0, 2 * kPi};
  CHECK(close3(f0, down, 1e-8));
  CHECK(close3(fe, up, 1e-8));
  CHECK(minkowski_inner(f0, f0) < 0);

  // Homologous loops at other radii must report the same classes.
  CHECK(close3(flux(g, 0, 1e-10, 2.0), f0, 1e-8));
  CHECK(close3(flux(g, kEndCycle, 1e-10, 2.0), fe, 1e-8));
}

TEST_CASE("rotational model closes up and obeys the torque origin law") {
  auto g = build_graph(WeierstrassEvaluator::catenoid_model(), 1e-10);
  auto br = balance_report(g);
  CHECK(br.balanced);
  CHECK(br.balance_residual_flux <= 1e-8);
  CHECK(br.balance_residual_torque <= 1e-8);

  // Moving the reference point o -> o' adds (o - o') wedge F per cycle.
  Vec3L o2{0.3, -0.2, 0.5};
  auto br2 = balance_report(g, 1e-6, o2);
  CHECK(br2.balanced);
  for (size_t j = 0; j < br.fluxes.size(); ++j) {
    Vec3L want = br.torques[j] + lorentz_wedge(Vec3L{} - o2, br.fluxes[j]);
    CHECK(close3(br2.torques[j], want, 1e-8));
  }
}

TEST_CASE("curve family forces balance with timelike singular fluxes") {
  auto g = riemann_graph({2.0}, {3.0});
  auto br = balance_report(g);
  CHECK(br.balanced);
  CHECK(br.balance_residual_flux <= 1e-8);
  CHECK(br.balance_residual_torque <= 1e-8);
  REQUIRE(br.fluxes.size() == 3);
  for (int j = 0; j < 2; ++j)
    CHECK(minkowski_inner(br.fluxes[j], br.fluxes[j]) < 0);

  // Logarithmic growth c = 2 + sum(c) - sum(b) = 1 fixes the end flux.
  Vec3L up{0, 0, 2 * kPi};
  CHECK(close3(br.fluxes.back(), up, 1e-8));

  // Torque about the origin reduces to the couple of the singular image.
  for (int j = 0; j < 2; ++j) {
    Vec3L want = lorentz_wedge(g.singular[j], br.fluxes[j]);
    CHECK(close3(br.torques[j], want, 1e-8 * (1 + euclid_norm(want))));
  }

  // Same classes from larger homologous loops.
  CHECK(close3(flux(g, 0, 1e-10, 2.0), br.fluxes[0], 1e-8));
  CHECK(close3(flux(g, kEndCycle, 1e-10, 2.0), br.fluxes.back(), 1e-8));
  CHECK(close3(torque(g, 0, Vec3L{}, 1e-10, 2.0), br.torques[0],
               1e-8 * (1 + euclid_norm(br.torques[0]))));

  // Referencing torques to a singular image keeps the report balanced.
  auto brq = balance_report(g, 1e-6, g.singular[0]);
  CHECK(brq.balanced);
}

TEST_CASE("two cut curve balances with a downward catenoidal end") {
  auto g = riemann_graph({2.0, 5.0}, {3.0, 7.0});
  auto br = balance_report(g);
  CHECK(br.balanced);
  CHECK(br.balance_residual_flux <= 1e-7);
  CHECK(br.balance_residual_torque <= 1e-7);
  REQUIRE(br.fluxes.size() == 4);
  for (int j = 0; j < 3; ++j)
    CHECK(minkowski_inner(br.fluxes[j], br.fluxes[j]) < 0);

  // c = 2 + (2 + 5) - (3 + 7) = -1: the end opens downward.
  Vec3L down{0, 0, -2 * kPi};
  CHECK(close3(br.fluxes.back(), down, 1e-7));
}

TEST_CASE("end flux strength matches the fitted logarithmic growth") {
  auto gc = build_graph(WeierstrassEvaluator::catenoid_model(), 1e-10);
  CHECK(end_growth_consistency(gc) <= 1e-6);
  auto gr = riemann_graph({2.0}, {3.0});
  CHECK(end_growth_consistency(gr) <= 1e-6);
}

TEST_CASE("planar end member splits its singularities up and down") {
  auto g = riemann_graph({2.0}, {4.0});
  auto br = balance_report(g);
  CHECK(br.balanced);
  // c = 2 + 2 - 4 = 0 kills the end flux, so the singular pair cancels.
  CHECK(euclid_norm(br.fluxes.back()) <= 1e-7);
  Vec3L opp = Vec3L{} - br.fluxes[1];
  CHECK(close3(br.fluxes[0], opp, 1e-7));

  auto probe = characterization_probe(g);
  CHECK(probe.planar_end);
  CHECK_FALSE(probe.uniform_pointing);
}

TEST_CASE("characterization probe reads off pointing and end type") {
  auto gc = build_graph(WeierstrassEvaluator::catenoid_model(), 1e-10);
  auto pc = characterization_probe(gc);
  CHECK(pc.all_vertical);
  CHECK(pc.uniform_pointing);
  CHECK_FALSE(pc.planar_end);
  CHECK(std::abs(pc.growth - 1.0) <= 1e-4);

  // An asymmetric member tilts its singular fluxes off the axis and
  // still cannot point both singularities the same way.
  auto gr = riemann_graph({2.0}, {3.0});
  auto pr = characterization_probe(gr);
  CHECK(pr.max_horizontal_flux > 1.0);
  CHECK_FALSE(pr.all_vertical);
  CHECK_FALSE(pr.uniform_pointing);
}

TEST_CASE("an interior density pole unbalances the end it hides behind") {
  // Pole at z0 = -2.5 on the real axis: the perturbed densities stay
  // imaginary along the cuts, so every certified homology period keeps a
  // vanishing real part and the build goes through. The end loop encloses
  // z0 and picks up the residue through (1/g - g)/2, shifting the first
  // flux coordinate by 2 pi (s/2) 4w/(w^2-1)|_{z0} = 15.5155 while the
  // vertical end flux keeps its strength 2 pi (2 + c - b) = pi. Summing
  // every cycle cancels the shared cut periods, so the deficit is the pure
  // z0 residue (15.5155, 0, 0). The parameter b = 3.5 keeps the 1/g pole
  // of the perturbation (at (b+c)/(c+2-b) = 11) outside every loop and
  // planned route.
  double s = 0.7;
  auto ev = WeierstrassEvaluator::riemann_family({1, {2.0}, {3.5}})
                .with_interior_pole(cplx(-2.5, 0.0), s);
  auto g = build_graph(ev, 1e-10);
  auto br = balance_report(g);
  CHECK_FALSE(br.balanced);
  CHECK(br.balance_residual_flux > 0.5);
  Vec3L deficit;
  for (const Vec3L& f : br.fluxes) deficit += f;
  CHECK(std::abs(std::abs(deficit.x1) - 15.5155) < 1e-3);
  CHECK(std::abs(deficit.x2) < 1e-6);
  CHECK(std::abs(deficit.x3) < 1e-6);
  CHECK(std::abs(br.fluxes.back().x3 - kPi) < 1e-6);
  for (int j = 0; j < 2; ++j)
    CHECK(minkowski_inner(br.fluxes[j], br.fluxes[j]) < 0);

  // The rotational chart folds the same perturbation through z + 1/z,
  // whose pole at the origin lies inside the certified cycle for every
  // pole position: the build must always refuse it.
  auto evc =
      WeierstrassEvaluator::catenoid_model().with_interior_pole(cplx(-5.0, 0.0), s);
  CHECK_THROWS_AS((void)build_graph(evc, 1e-10), certificate_error);
}

TEST_CASE("mechanics calls validate their inputs") {
  auto g = build_graph(WeierstrassEvaluator::catenoid_model(), 1e-10);
  CHECK_THROWS_AS((void)flux(g, 5), validation_error);
  CHECK_THROWS_AS((void)flux(g, -2), validation_error);
  CHECK_THROWS_AS((void)flux(g, 0, 1e-10, 0.0), validation_error);
  CHECK_THROWS_AS((void)flux(g, 0, 1e-10, -1.0), validation_error);
  CHECK_THROWS_AS((void)balance_report(g, 0.0), validation_error);

  auto gl = build_graph(WeierstrassEvaluator::local_model(1, 0), 1e-10);
  CHECK_THROWS_AS((void)flux(gl, kEndCycle), validation_error);
}
