#pragma once

// Closed-form elements w_{n,k}(x, p) of the universal density matrix: the
// state-independent building blocks whose rho-weighted trace is the Wigner
// function of any one-dimensional state.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "wigner/oscillator.hpp"
#include "wigner/polynomials.hpp"

namespace wigner {

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

// Dimensionless oscillator energy (p^2/2m + m w^2 x^2/2) / (hbar w).
// The squared modulus of z = kappa x + i p/(hbar kappa) equals twice this.
inline double oscillator_energy(PhasePoint pt, const OscillatorParams& params) {
  const double kin = pt.p * pt.p / (2.0 * params.mass());
  const double pot = 0.5 * params.mass() * params.omega() * params.omega() * pt.x * pt.x;
  return (kin + pot) / (params.hbar() * params.omega());
}

// Vectorial angle arg z of the phase-plane point, full-quadrant; the origin
// maps to 0 by convention (all n != k elements vanish there anyway).
inline double phase_angle(PhasePoint pt, const OscillatorParams& params) {
  const double re = params.kappa() * pt.x;
  const double im = pt.p / (params.hbar() * params.kappa());
  if (re == 0.0 && im == 0.0) return 0.0;
  return std::atan2(im, re);
}

// w_{n,k}(x,p) in the polar form: (1/pi hbar) e^{-2 eps} Y_{n,k}(sqrt(2 eps))
// e^{i (n-k) phi}. This path separates the circle-constant modulus from the
// winding phase and is the normative evaluation route.
inline cdouble udm_element(PolyIndexPair pair, PhasePoint pt, const OscillatorParams& params,
                           int max_order = kDefaultMaxOrder) {
  const double eps = oscillator_energy(pt, params);
  const double phi = phase_angle(pt, params);
  const double radial = radial_poly(pair, std::sqrt(2.0 * eps), max_order);
  const double amp = std::exp(-2.0 * eps) / (std::numbers::pi * params.hbar());
  return std::polar(1.0, pair.winding() * phi) * (amp * radial);
}

// Same element through the two-variable polynomial at complex arguments;
// kept as a runnable identity against the polar route.
inline cdouble udm_element_direct(PolyIndexPair pair, PhasePoint pt,
                                  const OscillatorParams& params,
                                  int max_order = kDefaultMaxOrder) {
  const double kappa = params.kappa();
  const double re = kappa * pt.x;
  const double im = pt.p / (params.hbar() * kappa);
  const cdouble z1(-re, -im);
  const cdouble z2(re, -im);
  const double eps = oscillator_energy(pt, params);
  const double sgn = pair.n % 2 == 0 ? 1.0 : -1.0;
  const double amp = sgn * std::exp(-2.0 * eps) / (std::numbers::pi * params.hbar());
  return amp * binomial_poly(pair, z1, z2, max_order);
}

// |w_{n,k}| as a function of the dimensionless energy alone; constant along
// the circles eps = const.
inline double udm_modulus(PolyIndexPair pair, double energy_eps, const OscillatorParams& params,
                          int max_order = kDefaultMaxOrder) {
  if (!(energy_eps >= 0.0)) throw std::invalid_argument("udm_modulus: eps must be >= 0");
  const double radial = radial_poly(pair, std::sqrt(2.0 * energy_eps), max_order);
  return std::abs(radial) * std::exp(-2.0 * energy_eps) / (std::numbers::pi * params.hbar());
}

// Oscillation period 2 pi / |n - k| along a phase circle; +infinity on the
// diagonal where the frequency is zero.
inline double udm_period(PolyIndexPair pair) {
  if (pair.n == pair.k) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / std::abs(pair.winding());
}

// Diagonal element: the harmonic-oscillator Wigner function
// ((-1)^n / pi hbar) e^{-2 eps} L_n(4 eps).
inline double diagonal_wigner(int n, PhasePoint pt, const OscillatorParams& params,
                              int max_order = kDefaultMaxOrder) {
  detail::check_order(n, max_order, "diagonal_wigner");
  const double eps = oscillator_energy(pt, params);
  const double sgn = n % 2 == 0 ? 1.0 : -1.0;
  return sgn * std::exp(-2.0 * eps) * laguerre(n, 4.0 * eps, max_order) /
         (std::numbers::pi * params.hbar());
}

}  // namespace wigner
