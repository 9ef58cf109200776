#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "maxgraph/curve.hpp"
#include "maxgraph/errors.hpp"

using namespace maxgraph;

namespace {

CurveParams demo() { return CurveParams{1, {2.0}, {3.0}}; }

CurveParams random_params(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> U(1.2, 8.0);
  while (true) {
    CurveParams p;
    p.n = n;
    for (int i = 0; i < n; ++i) p.c.push_back(U(rng));
    for (int i = 0; i < n; ++i) p.b.push_back(U(rng));
    auto vals = branch_values(p);
    bool ok = true;
    for (size_t i = 0; i + 1 < vals.size(); ++i)
      if (vals[i + 1] - vals[i] < 0.05) ok = false;
    if (ok) return p;
  }
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate(demo()));
  CHECK_THROWS_AS(validate(CurveParams{1, {2.0}, {2.0}}), validation_error);
  CHECK_THROWS_AS(validate(CurveParams{1, {0.5}, {3.0}}), validation_error);
  CHECK_THROWS_AS(validate(CurveParams{2, {2.0}, {3.0, 4.0}}), validation_error);
  CHECK_THROWS_AS(validate(CurveParams{0, {}, {}}), validation_error);
  CHECK_THROWS_AS(validate(CurveParams{1, {1.0}, {3.0}}), validation_error);
}

TEST_CASE("R evaluation, poles and pinned values") {
  auto p = demo();
  ExtComplex r0 = eval_R(p, cplx(0.0, 0.0));
  REQUIRE(r0.finite);
  CHECK(r0.value.real() == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  CHECK(r0.value.imag() == 0.0);
  CHECK(is_infinite(eval_R(p, cplx(-1.0, 0.0))));
  CHECK(is_infinite(eval_R(p, cplx(3.0, 0.0))));
  ExtComplex r5 = eval_R(p, cplx(5.0, 0.0));
  REQUIRE(r5.finite);
  CHECK(r5.value.real() == doctest::Approx(1.0).epsilon(1e-15));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-5.0, 8.0);
  for (int t = 0; t < 2000; ++t) {
    cplx z(U(rng), U(rng));
    cplx a = eval_R_finite(p, z);
    cplx b = eval_R_finite(p, std::conj(z));
    CHECK(std::abs(b - std::conj(a)) <= 1e-12 * (1.0 + std::abs(a)));
    // log derivative against a difference quotient
    double h = 1e-6;
    if (std::abs(z.imag()) > 0.3) {
      cplx ld = eval_R_logderiv(p, z);
      cplx fd = (eval_R_finite(p, z + h) - eval_R_finite(p, z - h)) / (2.0 * h);
      CHECK(std::abs(fd / a - ld) <= 1e-5 * (1.0 + std::abs(ld)));
    }
  }
}

TEST_CASE("branch values and standoff scale") {
  auto p = demo();
  auto vals = branch_values(p);
  REQUIRE(vals.size() == 4);
  CHECK(vals[0] == -1.0);
  CHECK(vals[1] == 1.0);
  CHECK(vals[2] == 2.0);
  CHECK(vals[3] == 3.0);
  CHECK(min_branch_gap(p) == doctest::Approx(1.0));
  CHECK(epsilon_branch(p) == doctest::Approx(1e-3));
}

TEST_CASE("fixed locus intervals, pinned case") {
  auto cuts = fixed_locus_intervals(demo());
  REQUIRE(cuts.size() == 2);
  CHECK(cuts[0].lo == -1.0);
  CHECK(cuts[0].hi == 1.0);
  CHECK(cuts[1].lo == 2.0);
  CHECK(cuts[1].hi == 3.0);
}

TEST_CASE("fixed locus intervals match a sign chart") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + (int)(rng() % 3);
    CurveParams p = random_params(rng, n);
    auto cuts = fixed_locus_intervals(p);
    REQUIRE((int)cuts.size() == n + 1);
    CHECK(cuts[0].lo <= 1.0);
    CHECK(1.0 <= cuts[0].hi);
    for (size_t i = 2; i < cuts.size(); ++i) CHECK(cuts[i - 1].lo < cuts[i].lo);

    auto vals = branch_values(p);
    std::uniform_real_distribution<double> X(vals.front() - 1.0, vals.back() + 1.0);
    for (int s = 0; s < 400; ++s) {
      double x = X(rng);
      bool near_val = false;
      for (double v : vals)
        if (std::abs(x - v) < 1e-9) near_val = true;
      if (near_val) continue;
      ExtComplex r = eval_R(p, cplx(x, 0.0));
      if (!r.finite) continue;
      bool neg = r.value.real() < 0.0;
      bool inside = false;
      for (const auto& c : cuts)
        if (c.lo < x && x < c.hi) inside = true;
      CHECK(neg == inside);
    }
  }
}

TEST_CASE("principal sheet has positive real part off the cuts") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> U(-4.0, 6.0);
  auto p = demo();
  auto cuts = fixed_locus_intervals(p);
  int used = 0;
  while (used < 3000) {
    cplx z(U(rng), U(rng));
    bool near_cut = false;
    for (const auto& c : cuts) {
      double dx = std::max({c.lo - z.real(), z.real() - c.hi, 0.0});
      if (std::hypot(dx, z.imag()) < 1e-3) near_cut = true;
    }
    if (near_cut || std::abs(z + 1.0) < 1e-3 || std::abs(z - 3.0) < 1e-3) continue;
    ++used;
    cplx w = principal_w(p, z);
    CHECK(w.real() > 0.0);
    cplx r = eval_R_finite(p, z);
    CHECK(std::abs(w * w - r) <= 1e-12 * (1.0 + std::abs(r)));
  }
}

TEST_CASE("continuation: same sheet along a clear path") {
  auto p = demo();
  std::vector<cplx> path{cplx(4, 0), cplx(4, 2), cplx(0.5, 2), cplx(0.5, 0.5)};
  cplx w0 = principal_w(p, path.front());
  cplx w = continue_branch(p, path, w0);
  CHECK(std::abs(w - principal_w(p, path.back())) <= 1e-9);
}

TEST_CASE("continuation: monodromy around one branch point flips the sheet") {
  auto p = demo();
  std::vector<cplx> loop;
  for (int i = 0; i <= 36; ++i) {
    double a = 2.0 * kPi * i / 36;
    loop.push_back(cplx(1.0, 0.0) + 0.5 * cplx(std::cos(a), std::sin(a)));
  }
  cplx w0 = principal_w(p, loop.front());
  cplx w = continue_branch(p, loop, w0);
  CHECK(std::abs(w + w0) <= 1e-9 * (1.0 + std::abs(w0)));

  // around the whole cut [-1, 1] both branch points cancel
  std::vector<cplx> big;
  for (int i = 0; i <= 48; ++i) {
    double a = 2.0 * kPi * i / 48;
    big.push_back(1.4 * cplx(std::cos(a), std::sin(a)));
  }
  cplx wb = continue_branch(p, big, principal_w(p, big.front()));
  CHECK(std::abs(wb - principal_w(p, big.front())) <= 1e-9);
}

TEST_CASE("continuation: homotopic paths agree") {
  auto p = demo();
  std::vector<cplx> a{cplx(4, 0), cplx(4, 1.5), cplx(-2, 1.5), cplx(-2, 0.4)};
  std::vector<cplx> b{cplx(4, 0), cplx(3.6, 3.0), cplx(0.3, 2.2),
                      cplx(-2.5, 2.0), cplx(-2, 0.4)};
  cplx w0 = principal_w(p, cplx(4, 0));
  CHECK(std::abs(continue_branch(p, a, w0) - continue_branch(p, b, w0)) <= 1e-9);
}

TEST_CASE("continuation errors") {
  auto p = demo();
  cplx w0 = principal_w(p, cplx(4, 0));
  CHECK_THROWS_AS(continue_branch(p, {cplx(4, 0), cplx(0, 0)}, 2.0 * w0),
                  validation_error);
  // path straight through the branch value 2
  CHECK_THROWS_AS(continue_branch(p, {cplx(4, 0), cplx(0, 0)}, w0),
                  accuracy_error);
}

TEST_CASE("involution is an involution and fixes the cuts") {
  auto p = demo();
  // on the cut w is purely imaginary; build it honestly
  SheetPoint q{cplx(0.5, 0.0), cplx(0.0, 0.0)};
  cplx r = eval_R_finite(p, q.z);
  REQUIRE(r.real() < 0.0);
  q.w = cplx(0.0, std::sqrt(-r.real()));
  SheetPoint jq = involution_J(q);
  CHECK(jq.z == q.z);
  CHECK(std::abs(jq.w - q.w) <= 1e-15);

  SheetPoint off{cplx(4.0, 0.0), principal_w(p, cplx(4.0, 0.0))};
  SheetPoint joff = involution_J(off);
  CHECK(std::abs(joff.w + off.w) <= 1e-15);  // other sheet over the same z

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-3.0, 5.0);
  for (int t = 0; t < 500; ++t) {
    SheetPoint s{cplx(U(rng), U(rng)), cplx(U(rng), U(rng))};
    SheetPoint jj = involution_J(involution_J(s));
    CHECK(std::abs(jj.z - s.z) == 0.0);
    CHECK(std::abs(jj.w - s.w) == 0.0);
  }
}

TEST_CASE("clearance measurement") {
  auto p = demo();
  std::vector<cplx> path{cplx(4, 1), cplx(-2, 1)};
  CHECK(path_branch_clearance(p, path) == doctest::Approx(1.0));
  auto loop = std::vector<cplx>{cplx(2.0, 5e-4), cplx(2.1, 5e-4)};
  CHECK(path_branch_clearance(p, loop) <= 6e-4);
}
