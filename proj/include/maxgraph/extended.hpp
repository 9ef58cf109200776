#pragma once

#include <complex>

namespace maxgraph {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Point of the Riemann sphere: a finite complex value or the point at
// infinity.  The infinity token is explicit rather than an IEEE inf so
// that callers must decide how to handle it.
struct ExtComplex {
  cplx value{0.0, 0.0};
  bool finite = true;

  static ExtComplex infinity() { return ExtComplex{cplx(0.0, 0.0), false}; }
  static ExtComplex of(cplx z) { return ExtComplex{z, true}; }
};

inline bool is_infinite(const ExtComplex& e) { return !e.finite; }

}  // namespace maxgraph
