#pragma once

// The two-variable binomial polynomial family P_{n,k}(z1, z2), the real
// radial family Y_{n,k}(x) carrying its modulus on the polar slice, the
// parity-modified Kronecker symbol, and the closed-form Gaussian-weight
// orthogonality norms of both families.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "wigner/oscillator.hpp"

namespace wigner {

// Index pair (n, k) of a matrix element; the winding number n - k sets the
// angular oscillation frequency of everything built from the pair.
struct PolyIndexPair {
  int n = 0;
  int k = 0;

  int winding() const { return n - k; }

  void check(int max_order = kDefaultMaxOrder) const {
    detail::check_order(n, max_order, "PolyIndexPair.n");
    detail::check_order(k, max_order, "PolyIndexPair.k");
  }
};

// Modified Kronecker symbol: 1 when n and k have equal parity, else 0.
inline int parity_kronecker(int n, int k) { return (n % 2) == (k % 2) ? 1 : 0; }

namespace detail {

// Leading term coefficient sqrt(2^{n+k} / (n! k!)); successive terms follow
// by a multiplicative ratio, so only one exp is ever taken. The factorials
// are added before subtracting so the value is bit-identical under n <-> k.
inline double poly_lead_coeff(int n, int k) {
  return std::exp(0.5 * ((n + k) * std::numbers::ln2 - (log_factorial(n) + log_factorial(k))));
}

// Signed log-domain accumulation: sum of sign_i * exp(logmag_i) shifted by
// the largest magnitude so intermediate values never overflow.
inline double signed_exp_sum(const std::vector<double>& logmag, const std::vector<int>& sign) {
  if (logmag.empty()) return 0.0;
  double mx = logmag[0];
  for (double v : logmag) mx = std::max(mx, v);
  double acc = 0.0;
  for (std::size_t i = 0; i < logmag.size(); ++i) acc += sign[i] * std::exp(logmag[i] - mx);
  return acc * std::exp(mx);
}

}  // namespace detail

// P_{n,k}(z1, z2): finite sum of degree n in z1 and k in z2. The diagonal
// reduces to Laguerre polynomials, P_{n,n}(a, b) = L_n(-2ab). Terms of mixed
// phase cancel, so the sum runs in extended precision.
inline cdouble binomial_poly(PolyIndexPair pair, cdouble z1, cdouble z2,
                             int max_order = kDefaultMaxOrder) {
  pair.check(max_order);
  const int n = pair.n, k = pair.k;
  const int smax = std::min(n, k);
  using cldouble = std::complex<long double>;

  std::vector<cldouble> z1pow(n + 1), z2pow(k + 1);
  z1pow[0] = 1.0L;
  for (int i = 1; i <= n; ++i) z1pow[i] = z1pow[i - 1] * cldouble(z1);
  z2pow[0] = 1.0L;
  for (int i = 1; i <= k; ++i) z2pow[i] = z2pow[i - 1] * cldouble(z2);

  long double coeff = detail::poly_lead_coeff(n, k);
  cldouble acc = 0.0L;
  for (int s = 0; s <= smax; ++s) {
    acc += coeff * z1pow[n - s] * z2pow[k - s];
    coeff *= (long double)(n - s) * (long double)(k - s) / (2.0L * (s + 1));
  }
  return {double(acc.real()), double(acc.imag())};
}

// Y_{n,k}(x): real polynomial of degree n + k with the parity of n + k,
// evaluated termwise in descending powers so x = 0 is unproblematic. The
// alternating sum also runs in extended precision.
inline double radial_poly(PolyIndexPair pair, double x, int max_order = kDefaultMaxOrder) {
  pair.check(max_order);
  const int n = pair.n, k = pair.k;
  const int smax = std::min(n, k);

  std::vector<long double> xpow(n + k + 1);
  xpow[0] = 1.0L;
  for (int i = 1; i <= n + k; ++i) xpow[i] = xpow[i - 1] * (long double)x;

  long double coeff = detail::poly_lead_coeff(n, k);
  long double acc = 0.0L;
  for (int s = 0; s <= smax; ++s) {
    acc += coeff * xpow[n + k - 2 * s];
    coeff *= -(long double)(n - s) * (long double)(k - s) / (2.0L * (s + 1));
  }
  return double(acc);
}

// Closed form of the 2D Gaussian-weight integral
//   int int e^{-x^2-y^2} P_{n1,k1}(x,y) P_{n2,k2}(x,y) dx dy.
// Zero on mixed parity of (n1+n2, k1+k2); otherwise a strictly positive
// double sum restricted to s+l of the same parity as n1+n2.
inline double ortho_norm_2d(int n1, int k1, int n2, int k2, int max_order = kDefaultMaxOrder) {
  PolyIndexPair{n1, k1}.check(max_order);
  PolyIndexPair{n2, k2}.check(max_order);
  const int n = n1 + n2, k = k1 + k2;
  if (parity_kronecker(n, k) == 0) return 0.0;

  const double log_pref = std::log(std::numbers::pi) +
                          0.5 * (log_factorial(n1) + log_factorial(n2) + log_factorial(k1) +
                                 log_factorial(k2));
  std::vector<double> logmag;
  std::vector<int> sign;
  for (int s = 0; s <= std::min(n1, k1); ++s) {
    for (int l = 0; l <= std::min(n2, k2); ++l) {
      const int lam = s + l;
      if (lam % 2 != n % 2) continue;  // parity selection from the Gaussian moments
      logmag.push_back(log_pref + detail::log_odd_double_factorial(k - lam - 1) +
                       detail::log_odd_double_factorial(n - lam - 1) - log_factorial(s) -
                       log_factorial(n1 - s) - log_factorial(k1 - s) - log_factorial(l) -
                       log_factorial(n2 - l) - log_factorial(k2 - l));
      sign.push_back(1);
    }
  }
  return detail::signed_exp_sum(logmag, sign);
}

// Closed form of the 1D Gaussian-weight integral
//   int e^{-x^2} Y_{n1,k1}(x) Y_{n2,k2}(x) dx,
// with the factorial-type symbol read as a double factorial.
inline double ortho_norm_1d(int n1, int k1, int n2, int k2, int max_order = kDefaultMaxOrder) {
  PolyIndexPair{n1, k1}.check(max_order);
  PolyIndexPair{n2, k2}.check(max_order);
  const int n = n1 + n2, k = k1 + k2;
  if (parity_kronecker(n, k) == 0) return 0.0;

  const double log_pref = 0.5 * (std::log(std::numbers::pi) + log_factorial(n1) +
                                 log_factorial(n2) + log_factorial(k1) + log_factorial(k2));
  std::vector<double> logmag;
  std::vector<int> sign;
  for (int s = 0; s <= std::min(n1, k1); ++s) {
    for (int l = 0; l <= std::min(n2, k2); ++l) {
      const int lam = s + l;
      logmag.push_back(log_pref + detail::log_odd_double_factorial(n + k - 2 * lam - 1) -
                       log_factorial(s) - log_factorial(l) - log_factorial(k1 - s) -
                       log_factorial(n1 - s) - log_factorial(k2 - l) - log_factorial(n2 - l));
      sign.push_back(lam % 2 == 0 ? 1 : -1);
    }
  }
  return detail::signed_exp_sum(logmag, sign);
}

}  // namespace wigner
