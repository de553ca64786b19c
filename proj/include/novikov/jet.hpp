#pragma once

// Truncated Taylor series in one variable. Coefficients are normalized
// (c[i] = f^(i)(x0) / i!), arithmetic is exact up to order N.

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace novikov {

template <int N, class T = double>
struct Jet {
  std::array<T, N + 1> c{};

  static Jet constant(T v) {
    Jet j;
    j.c[0] = v;
    return j;
  }

  /// i-th derivative at the expansion point.
  T derivative(int i) const {
    T f = 1.0;
    for (int m = 2; m <= i; ++m) f *= m;
    return c[i] * f;
  }

  /// Series of the derivative; the top coefficient becomes undefined (set to 0).
  Jet diff() const {
    Jet d;
    for (int i = 0; i < N; ++i) d.c[i] = (i + 1) * c[i + 1];
    return d;
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i <= N; ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i <= N; ++i) c[i] -= o.c[i];
    return *this;
  }
  Jet& operator*=(T s) {
    for (auto& v : c) v *= s;
    return *this;
  }
};

template <int N, class T>
Jet<N, T> operator+(Jet<N, T> a, const Jet<N, T>& b) { return a += b; }
template <int N, class T>
Jet<N, T> operator-(Jet<N, T> a, const Jet<N, T>& b) { return a -= b; }
template <int N, class T>
Jet<N, T> operator*(Jet<N, T> a, std::type_identity_t<T> s) { return a *= s; }
template <int N, class T>
Jet<N, T> operator*(std::type_identity_t<T> s, Jet<N, T> a) { return a *= s; }
template <int N, class T>
Jet<N, T> operator-(Jet<N, T> a) { return a *= -1.0; }

template <int N, class T>
Jet<N, T> operator+(Jet<N, T> a, std::type_identity_t<T> s) {
  a.c[0] += s;
  return a;
}
template <int N, class T>
Jet<N, T> operator+(std::type_identity_t<T> s, Jet<N, T> a) { return a + s; }
template <int N, class T>
Jet<N, T> operator-(std::type_identity_t<T> s, const Jet<N, T>& a) { return (-a) + s; }

template <int N, class T>
Jet<N, T> operator*(const Jet<N, T>& a, const Jet<N, T>& b) {
  Jet<N, T> r;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

/// a^alpha for a.c[0] > 0, with the leading coefficient supplied by the
/// caller when it is known more accurately (b0 = a0^alpha otherwise).
template <int N, class T>
Jet<N, T> pow(const Jet<N, T>& a, double alpha, std::type_identity_t<T> b0) {
  Jet<N, T> b;
  b.c[0] = b0;
  for (int n = 1; n <= N; ++n) {
    T s = 0.0;
    for (int k = 1; k <= n; ++k) s += ((alpha + 1.0) * k - n) * a.c[k] * b.c[n - k];
    b.c[n] = s / (n * a.c[0]);
  }
  return b;
}

template <int N, class T>
Jet<N, T> pow(const Jet<N, T>& a, double alpha) {
  return pow(a, alpha, std::pow(a.c[0], T(alpha)));
}

}  // namespace novikov
