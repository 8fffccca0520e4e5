#pragma once

// Harmonic-oscillator unit system and the special functions everything else
// is built from: Hermite and Laguerre recurrences, overflow-safe factorial
// helpers, and the oscillator eigenfunctions in both representations.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "wigner/errors.hpp"

namespace wigner {

using cdouble = std::complex<double>;

inline constexpr int kDefaultMaxOrder = 64;

// Physical constants hbar, m, omega and the derived inverse length
// kappa = sqrt(m*omega/hbar). kappa is always recomputed, never stored.
// hbar may be exactly zero as an explicit classical-limit escape for the
// kinetic series; every basis-dependent path rejects it through kappa().
class OscillatorParams {
 public:
  OscillatorParams() = default;  // natural units hbar = m = omega = 1

  OscillatorParams(double hbar, double mass, double omega)
      : hbar_(hbar), mass_(mass), omega_(omega) {
    if (!(hbar >= 0.0) || !(mass > 0.0) || !(omega > 0.0)) {
      throw std::invalid_argument("OscillatorParams: mass, omega must be > 0 and hbar >= 0");
    }
  }

  double hbar() const { return hbar_; }
  double mass() const { return mass_; }
  double omega() const { return omega_; }

  double kappa() const {
    if (hbar_ == 0.0) {
      throw std::domain_error("OscillatorParams: kappa undefined in the hbar = 0 limit");
    }
    return std::sqrt(mass_ * omega_ / hbar_);
  }

 private:
  double hbar_ = 1.0;
  double mass_ = 1.0;
  double omega_ = 1.0;
};

namespace detail {

inline void check_order(int n, int max_order, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + ": order must be >= 0");
  if (n > max_order) {
    throw order_overflow_error(std::string(what) + ": order " + std::to_string(n) +
                               " exceeds maximum " + std::to_string(max_order));
  }
}

// H_n(x) over any scalar field; the complex instantiation backs the
// analytic continuation of the shift integrals.
template <typename T>
T hermite_impl(int n, T x) {
  T p0 = T(1);
  if (n == 0) return p0;
  T p1 = T(2) * x;
  for (int m = 1; m < n; ++m) {
    T p2 = T(2) * x * p1 - T(2 * m) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// L_n(x) over any scalar field; the complex instantiation backs the
// diagonal-reduction checks on complex arguments.
template <typename T>
T laguerre_impl(int n, T x) {
  T p0 = T(1);
  if (n == 0) return p0;
  T p1 = T(1) - x;
  for (int m = 1; m < n; ++m) {
    T p2 = ((T(2 * m + 1) - x) * p1 - T(m) * p0) / T(m + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// Normalized Hermite function (2^n n! sqrt(pi))^{-1/2} e^{-t^2/2} H_n(t).
// Its own recurrence keeps every intermediate bounded, so large n and |t|
// never push H_n through the exponent range.
inline double hermite_function(int n, double t) {
  const double h0 = std::exp(-0.5 * t * t) / std::pow(std::numbers::pi, 0.25);
  if (n == 0) return h0;
  double prev = h0;
  double cur = std::numbers::sqrt2 * t * h0;
  for (int m = 1; m < n; ++m) {
    double next = std::sqrt(2.0 / (m + 1)) * t * cur - std::sqrt(double(m) / (m + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace detail

// Physicists' Hermite polynomial H_n(x).
inline double hermite(int n, double x, int max_order = kDefaultMaxOrder) {
  detail::check_order(n, max_order, "hermite");
  return detail::hermite_impl<double>(n, x);
}

// Laguerre polynomial L_n(x) via the stable three-term recurrence.
inline double laguerre(int n, double x, int max_order = kDefaultMaxOrder) {
  detail::check_order(n, max_order, "laguerre");
  return detail::laguerre_impl<double>(n, x);
}

// ln(n!), exact cumulative sums for the table range, lgamma beyond it.
inline double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
  static const std::vector<double> table = [] {
    std::vector<double> t(1025);
    t[0] = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] + std::log(double(i));
    return t;
  }();
  if (static_cast<std::size_t>(n) < table.size()) return table[n];
  return std::lgamma(double(n) + 1.0);
}

namespace detail {

// ln(k!!) for odd k >= -1 with the empty-product convention (-1)!! = 1.
inline double log_odd_double_factorial(int k) {
  if (k == -1) return 0.0;
  if (k < -1 || k % 2 == 0) {
    throw std::invalid_argument("log_odd_double_factorial: k must be odd or -1");
  }
  static const std::vector<double> table = [] {
    // index m holds ln((2m-1)!!)
    std::vector<double> t(513);
    t[0] = 0.0;
    for (std::size_t m = 1; m < t.size(); ++m) t[m] = t[m - 1] + std::log(double(2 * m - 1));
    return t;
  }();
  const std::size_t m = static_cast<std::size_t>((k + 1) / 2);
  if (m < table.size()) return table[m];
  // (2m-1)!! = (2m)! / (2^m m!)
  return log_factorial(2 * int(m)) - int(m) * std::numbers::ln2 - log_factorial(int(m));
}

}  // namespace detail

// |k|!! for odd k, with (-1)!! = 1. Even k >= 0 is rejected.
inline double odd_double_factorial(int k) {
  if (k == -1) return 1.0;
  if (k < -1 || k % 2 == 0) {
    throw std::invalid_argument("odd_double_factorial: k must be odd or -1");
  }
  if (k > 299) return std::exp(detail::log_odd_double_factorial(k));
  double acc = 1.0;
  for (int m = 3; m <= k; m += 2) acc *= m;
  return acc;
}

// Oscillator eigenfunction Psi_n(x) in the coordinate representation.
inline double eigenfunction_x(int n, double x, const OscillatorParams& params,
                              int max_order = kDefaultMaxOrder) {
  detail::check_order(n, max_order, "eigenfunction_x");
  const double kappa = params.kappa();
  return std::sqrt(kappa) * detail::hermite_function(n, kappa * x);
}

// Momentum-representation eigenfunction, including the (-i)^n phase that the
// Fourier transform attaches.
inline cdouble eigenfunction_p(int n, double p, const OscillatorParams& params,
                               int max_order = kDefaultMaxOrder) {
  detail::check_order(n, max_order, "eigenfunction_p");
  const double scale = params.hbar() * params.kappa();  // sqrt(m omega hbar)
  const double radial = detail::hermite_function(n, p / scale) / std::sqrt(scale);
  // (-i)^n cycles through 1, -i, -1, i
  static constexpr cdouble phases[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  return phases[n % 4] * radial;
}

}  // namespace wigner
