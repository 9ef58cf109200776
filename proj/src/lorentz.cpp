#include "maxgraph/lorentz.hpp"

#include <cmath>

#include "maxgraph/errors.hpp"

namespace maxgraph {

Vec3L lorentz_wedge(const Vec3L& u, const Vec3L& v) {
  // Euclidean cross product, then flip the sign of the third slot so that
  // <u ^ v, w> with the (+,+,-) form equals det[u v w].
  double c1 = u.x2 * v.x3 - u.x3 * v.x2;
  double c2 = u.x3 * v.x1 - u.x1 * v.x3;
  double c3 = u.x1 * v.x2 - u.x2 * v.x1;
  return {c1, c2, -c3};
}

Vec3L stereographic(const ExtComplex& z) {
  if (is_infinite(z)) return {0.0, 0.0, 1.0};
  const cplx& w = z.value;
  double n2 = std::norm(w);
  double denom = n2 - 1.0;
  if (denom == 0.0)
    throw validation_error("stereographic: |z| = 1 is not in the domain");
  return {2.0 * w.imag() / denom, 2.0 * w.real() / denom, (n2 + 1.0) / denom};
}

Vec3L rotate_about_x3(const Vec3L& v, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x1 - s * v.x2, s * v.x1 + c * v.x2, v.x3};
}

}  // namespace maxgraph
