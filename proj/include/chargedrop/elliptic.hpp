#ifndef CHARGEDROP_ELLIPTIC_HPP
#define CHARGEDROP_ELLIPTIC_HPP

#include <cmath>
#include <limits>
#include <numbers>

#include "chargedrop/errors.hpp"

namespace chargedrop {

/// Arithmetic-geometric mean of two non-negative numbers.
template <class Scalar>
Scalar agm(Scalar a, Scalar g) {
  using std::abs;
  using std::sqrt;
  if (a < g) std::swap(a, g);
  if (g <= Scalar(0)) return Scalar(0);
  const Scalar tol = std::numeric_limits<Scalar>::epsilon();
  for (int it = 0; it < 64 && a - g > tol * a; ++it) {
    const Scalar next = Scalar(0.5) * (a + g);
    g = sqrt(a * g);
    a = next;
  }
  return Scalar(0.5) * (a + g);
}

/// K(1 - m1) for the complementary parameter m1 in (0, 1]; accurate as m1 -> 0
/// where computing m1 from m would cancel.
template <class Scalar>
Scalar complete_elliptic_K_complement(Scalar m1) {
  using std::sqrt;
  if (!(m1 > Scalar(0)) || m1 > Scalar(1)) {
    throw DomainError("complete_elliptic_K: complementary parameter must lie in (0, 1]");
  }
  return Scalar(std::numbers::pi) / (Scalar(2) * agm(Scalar(1), sqrt(m1)));
}

/// Complete elliptic integral of the first kind in the parameter convention,
/// K(m) = int_0^{pi/2} dphi / sqrt(1 - m sin^2 phi), for 0 <= m < 1.
template <class Scalar>
Scalar complete_elliptic_K(Scalar m) {
  if (!(m >= Scalar(0)) || !(m < Scalar(1))) {
    throw DomainError("complete_elliptic_K: parameter m must lie in [0, 1)");
  }
  return complete_elliptic_K_complement(Scalar(1) - m);
}

}  // namespace chargedrop

#endif  // CHARGEDROP_ELLIPTIC_HPP
