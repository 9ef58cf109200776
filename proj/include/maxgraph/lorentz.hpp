#pragma once

#include <array>
#include <cmath>

#include "maxgraph/extended.hpp"

namespace maxgraph {

// Vector in R^3 carrying the bilinear form dx1^2 + dx2^2 - dx3^2.
struct Vec3L {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;

  Vec3L() = default;
  Vec3L(double a, double b, double c) : x1(a), x2(b), x3(c) {}

  Vec3L operator+(const Vec3L& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
  Vec3L operator-(const Vec3L& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
  Vec3L operator*(double s) const { return {s * x1, s * x2, s * x3}; }
  Vec3L operator-() const { return {-x1, -x2, -x3}; }
  Vec3L& operator+=(const Vec3L& o) {
    x1 += o.x1; x2 += o.x2; x3 += o.x3;
    return *this;
  }
  Vec3L& operator-=(const Vec3L& o) {
    x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
    return *this;
  }
};

inline Vec3L operator*(double s, const Vec3L& v) { return v * s; }

inline double minkowski_inner(const Vec3L& u, const Vec3L& v) {
  return u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3;
}

// Euclidean norm, used for error measurement and spread certificates only.
inline double euclid_norm(const Vec3L& v) {
  return std::sqrt(v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3);
}

enum class CausalClass { spacelike, timelike, lightlike };

// The zero vector is spacelike under this convention.
inline CausalClass causal_class(const Vec3L& v) {
  if (v.x1 == 0.0 && v.x2 == 0.0 && v.x3 == 0.0) return CausalClass::spacelike;
  double q = minkowski_inner(v, v);
  if (q > 0.0) return CausalClass::spacelike;
  if (q < 0.0) return CausalClass::timelike;
  return CausalClass::lightlike;
}

// Bilinear product determined by <u ^ v, w> = det[u v w] for all w.
// Componentwise it is the Euclidean cross product with the x3 entry negated.
Vec3L lorentz_wedge(const Vec3L& u, const Vec3L& v);

// Conformal parametrization of the upper timelike unit sphere component:
// sigma(z) = (2 Im z, 2 Re z, |z|^2 + 1) / (|z|^2 - 1), sigma(inf) = (0,0,1).
// |z| = 1 is outside the domain and raises a validation error.
Vec3L stereographic(const ExtComplex& z);

inline Vec3L horizontal_part(const Vec3L& v) { return {v.x1, v.x2, 0.0}; }
inline Vec3L vertical_part(const Vec3L& v) { return {0.0, 0.0, v.x3}; }

// Isometries and dilations fixing the vertical direction, used to probe
// equivariance of the constructions.
Vec3L rotate_about_x3(const Vec3L& v, double angle);
inline Vec3L translate(const Vec3L& v, const Vec3L& t) { return v + t; }
inline Vec3L dilate(const Vec3L& v, double s) { return v * s; }
inline Vec3L reflect_x3(const Vec3L& v) { return {v.x1, v.x2, -v.x3}; }

}  // namespace maxgraph
