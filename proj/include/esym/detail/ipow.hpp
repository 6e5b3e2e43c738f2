#pragma once

#include <complex>

namespace esym::detail {

/// Integer power by repeated squaring; negative n inverts.
template <class T>
T ipow(T x, int n) {
  if (n < 0) return T(1) / ipow(x, -n);
  T result(1);
  while (n) {
    if (n & 1) result *= x;
    x *= x;
    n >>= 1;
  }
  return result;
}

}  // namespace esym::detail
