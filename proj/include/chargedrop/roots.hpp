#ifndef CHARGEDROP_ROOTS_HPP
#define CHARGEDROP_ROOTS_HPP

#include <cmath>
#include <utility>

#include "chargedrop/errors.hpp"

namespace chargedrop {

/// Bisection for a sign change of f on [lo, hi]. Stops when the bracket width
/// falls below rel_tol * |midpoint|. Returns the midpoint of the final bracket.
template <class Scalar, class F>
Scalar bisect(F&& f, Scalar lo, Scalar hi, Scalar rel_tol, int max_iter = 400) {
  Scalar f_lo = f(lo);
  const Scalar f_hi = f(hi);
  if (f_lo == Scalar(0)) return lo;
  if (f_hi == Scalar(0)) return hi;
  if ((f_lo < 0) == (f_hi < 0)) throw DomainError("bisect: no sign change on the bracket");
  for (int it = 0; it < max_iter; ++it) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    if (hi - lo <= rel_tol * std::abs(mid)) return mid;
    const Scalar f_mid = f(mid);
    if (f_mid == Scalar(0)) return mid;
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return Scalar(0.5) * (lo + hi);
}

/// Golden-section search for the maximum of a unimodal f on [lo, hi], stopping
/// once the bracket is narrower than abs_tol. Returns (argmax, max).
template <class Scalar, class F>
std::pair<Scalar, Scalar> golden_maximize(F&& f, Scalar lo, Scalar hi, Scalar abs_tol,
                                          int max_iter = 300) {
  const Scalar inv_phi = Scalar(0.5) * (std::sqrt(Scalar(5)) - Scalar(1));
  Scalar x1 = hi - inv_phi * (hi - lo);
  Scalar x2 = lo + inv_phi * (hi - lo);
  Scalar f1 = f(x1);
  Scalar f2 = f(x2);
  for (int it = 0; it < max_iter; ++it) {
    if (hi - lo <= abs_tol) break;
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace chargedrop

#endif  // CHARGEDROP_ROOTS_HPP
