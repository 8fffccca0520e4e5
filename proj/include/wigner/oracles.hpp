#pragma once

// Independent brute-force quadrature implementations of every integral the
// library evaluates in closed form. These are the ground truth for the
// acceptance tests, so nothing here calls the closed-form evaluators it
// validates; the only shared code is the special-functions layer.

#include <algorithm>
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "wigner/grid.hpp"
#include "wigner/oscillator.hpp"

namespace wigner::oracles {

struct QuadratureSpec {
  enum class Scheme { automatic, gauss_hermite, trapezoid };

  Scheme scheme = Scheme::automatic;  // automatic = the op's native scheme
  int nodes = 0;      // 0 = pick automatically (trapezoid) / default order (GH)
  double lo = std::numeric_limits<double>::quiet_NaN();  // trapezoid bounds,
  double hi = std::numeric_limits<double>::quiet_NaN();  // NaN = auto envelope
  int refine = 2;     // node multiplier for the convergence estimate

  void validate(Scheme native) const {
    if (scheme != Scheme::automatic && scheme != native) {
      throw std::invalid_argument("QuadratureSpec: scheme does not fit this integrand");
    }
    if (nodes != 0 && nodes < 8) throw std::invalid_argument("QuadratureSpec: nodes < 8");
    if (refine < 2) throw std::invalid_argument("QuadratureSpec: refine < 2");
    const bool have_lo = !std::isnan(lo), have_hi = !std::isnan(hi);
    if (have_lo != have_hi) throw std::invalid_argument("QuadratureSpec: one-sided bounds");
    if (have_lo && !(hi > lo)) throw std::invalid_argument("QuadratureSpec: bounds not ordered");
    if (have_lo && (!std::isfinite(lo) || !std::isfinite(hi))) {
      throw std::invalid_argument("QuadratureSpec: bounds must be finite");
    }
  }
};

// Quadrature value plus the change observed under node refinement.
template <typename T>
struct QuadResult {
  T value{};
  double convergence = 0.0;

  // Hard gate used by the acceptance suites.
  const QuadResult& require_converged(double tol) const {
    if (!(convergence < tol)) {
      throw convergence_error("quadrature did not converge: estimate " +
                              std::to_string(convergence) + " vs " + std::to_string(tol));
    }
    return *this;
  }
};

using RealResult = QuadResult<double>;
using ComplexResult = QuadResult<cdouble>;

// Gauss-Hermite rule for weight e^{-x^2}. Nodes come from the Golub-Welsch
// eigenproblem and are polished by Newton iteration on the orthonormal
// Hermite polynomial; weights use the Christoffel sum 1 / sum_k h_k(x)^2,
// which stays relatively accurate in the far tails where the eigenvector
// route degrades.
class GaussHermiteRule {
 public:
  explicit GaussHermiteRule(int order) {
    if (order < 1) throw std::invalid_argument("GaussHermiteRule: order must be >= 1");
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int j = 1; j < order; ++j) {
      const double b = std::sqrt(0.5 * j);
      jacobi(j, j - 1) = b;
      jacobi(j - 1, j) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
    nodes_.resize(order);
    weights_.resize(order);
    std::vector<double> h(order + 1);
    for (int i = 0; i < order; ++i) {
      double x = solver.eigenvalues()(i);
      for (int it = 0; it < 3; ++it) {
        ortho_hermite(x, order, h);
        const double deriv = std::sqrt(2.0 * order) * h[order - 1];
        if (deriv != 0.0) x -= h[order] / deriv;
      }
      ortho_hermite(x, order, h);
      double christoffel = 0.0;
      for (int k = 0; k < order; ++k) christoffel += h[k] * h[k];
      nodes_[i] = x;
      weights_[i] = 1.0 / christoffel;
    }
  }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  int order() const { return static_cast<int>(nodes_.size()); }

 private:
  // orthonormal Hermite polynomials h_0..h_m at x
  static void ortho_hermite(double x, int m, std::vector<double>& h) {
    h[0] = 1.0 / std::pow(std::numbers::pi, 0.25);
    if (m >= 1) h[1] = std::numbers::sqrt2 * x * h[0];
    for (int k = 1; k < m; ++k) {
      h[k + 1] = std::sqrt(2.0 / (k + 1)) * x * h[k] - std::sqrt(double(k) / (k + 1)) * h[k - 1];
    }
  }

  std::vector<double> nodes_;
  std::vector<double> weights_;
};

inline const GaussHermiteRule& gauss_hermite(int order) {
  static std::mutex mtx;
  static std::map<int, GaussHermiteRule> cache;
  std::scoped_lock lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, GaussHermiteRule(order)).first;
  return it->second;
}

inline constexpr int kDefaultGaussHermiteOrder = 80;  // exact through degree 159

namespace detail {

// Dense coefficient table of P_{n,k} built by symbolically differentiating
// the generator monomial (2 z1)^n (2 z2)^k, i.e. the derivative-form
// definition. Deliberately separate machinery from the closed-form sum so
// the orthogonality oracles stay independent of it. Low order only.
class BinomialPolyTable {
 public:
  BinomialPolyTable(int n, int k) : n_(n), k_(k), c_((n + 1) * (k + 1), 0.0) {
    if (n < 0 || k < 0 || n > 16 || k > 16) {
      throw std::invalid_argument("BinomialPolyTable: order outside the low-order range");
    }
    // work table holds (d/dz1 d/dz2)^s of the generator
    std::vector<double> work((n + 1) * (k + 1), 0.0);
    work[std::size_t(n) * (k + 1) + k] = std::pow(2.0, n + k);
    double sfact = 1.0;  // 2^s s!
    for (int s = 0; s <= std::min(n, k); ++s) {
      if (s > 0) {
        std::vector<double> next((n + 1) * (k + 1), 0.0);
        for (int a = 1; a <= n; ++a) {
          for (int b = 1; b <= k; ++b) {
            next[std::size_t(a - 1) * (k + 1) + (b - 1)] =
                double(a) * double(b) * work[std::size_t(a) * (k + 1) + b];
          }
        }
        work.swap(next);
        sfact *= 2.0 * s;
      }
      for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += work[i] / sfact;
    }
    const double norm =
        std::exp(-0.5 * ((n + k) * std::numbers::ln2 + log_factorial(n) + log_factorial(k)));
    for (double& v : c_) v *= norm;
  }

  double eval_real(double x, double y) const {
    double acc = 0.0;
    for (int a = n_; a >= 0; --a) {
      double row = 0.0;
      for (int b = k_; b >= 0; --b) row = row * y + c_[std::size_t(a) * (k_ + 1) + b];
      acc = acc * x + row;
    }
    return acc;
  }

  cdouble eval(cdouble z1, cdouble z2) const {
    cdouble acc = 0.0;
    for (int a = n_; a >= 0; --a) {
      cdouble row = 0.0;
      for (int b = k_; b >= 0; --b) row = row * z2 + c_[std::size_t(a) * (k_ + 1) + b];
      acc = acc * z1 + row;
    }
    return acc;
  }

  // Radial slice Y_{n,k}(x) = (-1)^n P_{n,k}(-x, x), a polynomial identity.
  double eval_radial(double x) const {
    const double sgn = n_ % 2 == 0 ? 1.0 : -1.0;
    return sgn * eval_real(-x, x);
  }

 private:
  int n_, k_;
  std::vector<double> c_;
};

// Smallest half-range u such that the product of two oscillator eigenfunction
// envelopes centered within shift of the origin is below ~1e-19 outside.
inline double tail_half_range(int degree, double shift) {
  double u = std::sqrt(43.0) + shift;
  while (u < 60.0 + shift) {
    const double t = u - shift;
    if (-t * t + degree * std::log(2.0 + u + shift) < -43.0) break;
    u += 0.25;
  }
  return u;
}

// One-dimensional trapezoid with a built-in half-node convergence estimate.
// The node count is forced even so the coarse sum reuses every other node.
template <typename F>
ComplexResult trapezoid_with_estimate(double lo, double hi, int intervals, F&& f) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (hi - lo) / intervals;
  cdouble fine = 0.0, coarse = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const cdouble v = f(lo + i * h);
    const double w = (i == 0 || i == intervals) ? 0.5 : 1.0;
    fine += w * v;
    if (i % 2 == 0) coarse += (i == 0 || i == intervals) ? 0.5 * v : v;
  }
  fine *= h;
  coarse *= 2.0 * h;
  return {fine, std::abs(fine - coarse)};
}

}  // namespace detail

// Direct transform route for the matrix elements:
// (1/2 pi hbar) int conj(Psi_n(x - s/2)) Psi_k(x + s/2) e^{-i p s / hbar} ds.
inline ComplexResult wigner_transform_direct(int n, int k, double x, double p,
                                             const OscillatorParams& params,
                                             const QuadratureSpec& spec = {}) {
  spec.validate(QuadratureSpec::Scheme::trapezoid);
  const double kappa = params.kappa();
  double lo = spec.lo, hi = spec.hi;
  if (std::isnan(lo)) {
    const double u = detail::tail_half_range(n + k, kappa * std::abs(x));
    hi = 2.0 * u / kappa;
    lo = -hi;
  }
  int intervals = spec.nodes;
  if (intervals == 0) {
    // 2.5x the Nyquist rate of the fastest phase plus a fixed margin; the
    // integrand spectrum decays like a Gaussian of width ~kappa, so the
    // aliasing error is negligible well before this density.
    const double freq = std::abs(p) / params.hbar() +
                        kappa * (std::sqrt(2.0 * n + 1.0) + std::sqrt(2.0 * k + 1.0));
    const double ds = 2.0 * std::numbers::pi / (2.5 * freq + 25.0 * kappa);
    intervals = std::max(256, int((hi - lo) / ds) + 1);
  }

  auto integrand = [&](double s) {
    const double a = eigenfunction_x(n, x - 0.5 * s, params);
    const double b = eigenfunction_x(k, x + 0.5 * s, params);
    return a * b * std::polar(1.0, -p * s / params.hbar());
  };
  ComplexResult r = detail::trapezoid_with_estimate(lo, hi, intervals, integrand);
  const double scale = 1.0 / (2.0 * std::numbers::pi * params.hbar());
  return {r.value * scale, r.convergence * scale};
}

// Momentum-side route of the same definition:
// (1/2 pi hbar) int conj(Psit_n(p - xi/2)) Psit_k(p + xi/2) e^{+i x xi / hbar} dxi.
inline ComplexResult wigner_transform_momentum(int n, int k, double x, double p,
                                               const OscillatorParams& params,
                                               const QuadratureSpec& spec = {}) {
  spec.validate(QuadratureSpec::Scheme::trapezoid);
  const double pscale = params.hbar() * params.kappa();
  double lo = spec.lo, hi = spec.hi;
  if (std::isnan(lo)) {
    const double u = detail::tail_half_range(n + k, std::abs(p) / pscale);
    hi = 2.0 * u * pscale;
    lo = -hi;
  }
  int intervals = spec.nodes;
  if (intervals == 0) {
    const double freq = std::abs(x) / params.hbar() +
                        (std::sqrt(2.0 * n + 1.0) + std::sqrt(2.0 * k + 1.0)) / pscale;
    const double dxi = 2.0 * std::numbers::pi / (2.5 * freq + 25.0 / pscale);
    intervals = std::max(256, int((hi - lo) / dxi) + 1);
  }

  auto integrand = [&](double xi) {
    const cdouble a = std::conj(eigenfunction_p(n, p - 0.5 * xi, params));
    const cdouble b = eigenfunction_p(k, p + 0.5 * xi, params);
    return a * b * std::polar(1.0, x * xi / params.hbar());
  };
  ComplexResult r = detail::trapezoid_with_estimate(lo, hi, intervals, integrand);
  const double scale = 1.0 / (2.0 * std::numbers::pi * params.hbar());
  return {r.value * scale, r.convergence * scale};
}

// 2D Gauss-Hermite evaluation of int int e^{-x^2-y^2} P P dx dy with the
// derivative-form polynomial tables as integrand.
inline RealResult binomial_ortho_integral(int n1, int k1, int n2, int k2,
                                          const QuadratureSpec& spec = {}) {
  spec.validate(QuadratureSpec::Scheme::gauss_hermite);
  const int order = spec.nodes > 0 ? spec.nodes : kDefaultGaussHermiteOrder;
  const detail::BinomialPolyTable p1(n1, k1), p2(n2, k2);

  auto integrate = [&](const GaussHermiteRule& rule) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes().size(); ++i) {
      const double x = rule.nodes()[i];
      double inner = 0.0;
      for (std::size_t j = 0; j < rule.nodes().size(); ++j) {
        const double y = rule.nodes()[j];
        inner += rule.weights()[j] * p1.eval_real(x, y) * p2.eval_real(x, y);
      }
      acc += rule.weights()[i] * inner;
    }
    return acc;
  };
  const double fine = integrate(gauss_hermite(order * spec.refine));
  const double coarse = integrate(gauss_hermite(order));
  return {fine, std::abs(fine - coarse)};
}

// 1D Gauss-Hermite evaluation of int e^{-x^2} Y Y dx on the radial slices of
// the same tables.
inline RealResult radial_ortho_integral(int n1, int k1, int n2, int k2,
                                        const QuadratureSpec& spec = {}) {
  spec.validate(QuadratureSpec::Scheme::gauss_hermite);
  const int order = spec.nodes > 0 ? spec.nodes : kDefaultGaussHermiteOrder;
  const detail::BinomialPolyTable p1(n1, k1), p2(n2, k2);

  auto integrate = [&](const GaussHermiteRule& rule) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes().size(); ++i) {
      const double x = rule.nodes()[i];
      acc += rule.weights()[i] * p1.eval_radial(x) * p2.eval_radial(x);
    }
    return acc;
  };
  const double fine = integrate(gauss_hermite(order * spec.refine));
  const double coarse = integrate(gauss_hermite(order));
  return {fine, std::abs(fine - coarse)};
}

// int e^{-t^2} H_n(t + s1) H_k(t + s2) dt / sqrt(2^{n+k} pi n! k!); the
// complex overload is the analytic continuation of the same polynomial
// integrand evaluated at real nodes.
template <typename Shift>
QuadResult<Shift> hermite_shift_integral(int n, int k, Shift s1, Shift s2,
                                         const QuadratureSpec& spec = {}) {
  spec.validate(QuadratureSpec::Scheme::gauss_hermite);
  const int order = spec.nodes > 0 ? spec.nodes : kDefaultGaussHermiteOrder;
  const double log_norm =
      -0.5 * ((n + k) * std::numbers::ln2 + std::log(std::numbers::pi) + log_factorial(n) +
              log_factorial(k));
  const double norm = std::exp(log_norm);

  auto integrate = [&](const GaussHermiteRule& rule) {
    Shift acc{};
    for (std::size_t i = 0; i < rule.nodes().size(); ++i) {
      const double t = rule.nodes()[i];
      acc += rule.weights()[i] * wigner::detail::hermite_impl<Shift>(n, Shift(t) + s1) *
             wigner::detail::hermite_impl<Shift>(k, Shift(t) + s2);
    }
    return acc;
  };
  const Shift fine = integrate(gauss_hermite(order * spec.refine)) * norm;
  const Shift coarse = integrate(gauss_hermite(order)) * norm;
  return {fine, std::abs(fine - coarse)};
}

// Dense W samples of an expanded state, built straight from the transform of
// Psi = sum c_n Psi_n with no closed-form element in the path. One grid can
// then feed the energy integral for several potentials.
class StateWignerGrid {
 public:
  StateWignerGrid(const std::vector<cdouble>& coeffs, const OscillatorParams& params,
                  const QuadratureSpec& spec = {})
      : params_(params) {
    spec.validate(QuadratureSpec::Scheme::trapezoid);
    if (coeffs.empty()) throw std::invalid_argument("StateWignerGrid: empty state");
    const int nmax = static_cast<int>(coeffs.size()) - 1;
    const double kappa = params.kappa();
    const double reach = std::sqrt(2.0 * nmax + 1.0) + 7.5;

    double x_hi = spec.hi, x_lo = spec.lo;
    if (std::isnan(x_lo)) {
      x_hi = reach / kappa;
      x_lo = -x_hi;
    }
    const double p_hi = std::isnan(spec.hi) ? reach * params.hbar() * kappa : spec.hi;
    int naxis = spec.nodes > 0 ? spec.nodes : 241;
    if (naxis % 2 == 0) ++naxis;  // odd count so the coarse grid nests
    x_ = Axis{x_lo, x_hi, naxis};
    p_ = Axis{-p_hi, p_hi, naxis};

    // shared s-grid for the transform integral, sized for the outermost row
    const double u = detail::tail_half_range(2 * nmax, kappa * x_hi);
    const double s_max = 2.0 * u / kappa;
    const double freq = p_hi / params.hbar() + 2.0 * kappa * std::sqrt(2.0 * nmax + 1.0);
    const double ds_target = 2.0 * std::numbers::pi / (2.5 * freq + 25.0 * kappa);
    const int half_m = std::max(128, int(s_max / ds_target) + 1);
    const double ds = s_max / half_m;

    auto psi = [&](double y) {
      // one recurrence pass over the normalized Hermite functions gives all orders
      const double t = kappa * y;
      const double h0 = std::exp(-0.5 * t * t) / std::pow(std::numbers::pi, 0.25);
      cdouble acc = coeffs[0] * h0;
      if (nmax >= 1) {
        double prev = h0, cur = std::numbers::sqrt2 * t * h0;
        acc += coeffs[1] * cur;
        for (int m = 1; m < nmax; ++m) {
          const double next =
              std::sqrt(2.0 / (m + 1)) * t * cur - std::sqrt(double(m) / (m + 1)) * prev;
          prev = cur;
          cur = next;
          acc += coeffs[m + 1] * cur;
        }
      }
      return acc * std::sqrt(kappa);
    };

    // W row by row; s >= 0 half only since g(-s) = conj(g(s))
    w_.resize(std::size_t(naxis) * naxis);
    std::vector<cdouble> g(half_m + 1);
    const double wscale = 1.0 / (2.0 * std::numbers::pi * params.hbar());
    for (int i = 0; i < naxis; ++i) {
      const double x = x_.at(i);
      for (int l = 0; l <= half_m; ++l) {
        const double s = l * ds;
        g[l] = std::conj(psi(x - 0.5 * s)) * psi(x + 0.5 * s);
      }
      for (int j = 0; j < naxis; ++j) {
        const cdouble step = std::polar(1.0, -p_.at(j) * ds / params.hbar());
        cdouble phase = step;
        double acc = 0.5 * g[0].real();  // s = 0 node, once
        for (int l = 1; l <= half_m; ++l) {
          const double wt = (l == half_m) ? 0.5 : 1.0;
          acc += wt * (g[l] * phase).real();
          phase *= step;
        }
        w_[std::size_t(i) * naxis + j] = 2.0 * acc * ds * wscale;
      }
    }

    double w_max = 0.0, w_edge = 0.0;
    for (int i = 0; i < naxis; ++i) {
      for (int j = 0; j < naxis; ++j) {
        const double v = std::abs(w_[std::size_t(i) * naxis + j]);
        w_max = std::max(w_max, v);
        if (i == 0 || j == 0 || i == naxis - 1 || j == naxis - 1) w_edge = std::max(w_edge, v);
      }
    }
    if (w_edge > 1e-14 * w_max) {
      throw convergence_error("StateWignerGrid: Wigner function leaks through the boundary");
    }
  }

  const Axis& x_axis() const { return x_; }
  const Axis& p_axis() const { return p_; }
  double w_at(int i, int j) const { return w_[std::size_t(i) * p_.n + j]; }

  // 2D trapezoid of E(x,p) W(x,p) for the deviation series du, with a nested
  // half-resolution estimate.
  RealResult energy(const std::vector<double>& du_coeffs) const {
    auto delta_u = [&](double x) {
      double acc = 0.0;
      for (int l = static_cast<int>(du_coeffs.size()) - 1; l >= 0; --l) {
        acc = acc * x + du_coeffs[l];
      }
      return acc;
    };
    auto integrate = [&](int stride) {
      const int naxis = x_.n;
      double acc = 0.0;
      for (int i = 0; i < naxis; i += stride) {
        const double x = x_.at(i);
        const double wx = (i == 0 || i == naxis - 1) ? 0.5 : 1.0;
        const double pot = delta_u(x);
        for (int j = 0; j < naxis; j += stride) {
          const double wp = (j == 0 || j == naxis - 1) ? 0.5 : 1.0;
          const double p = p_.at(j);
          const double e = p * p / (2.0 * params_.mass()) +
                           0.5 * params_.mass() * params_.omega() * params_.omega() * x * x + pot;
          acc += wx * wp * e * w_[std::size_t(i) * naxis + j];
        }
      }
      return acc * (x_.step() * stride) * (p_.step() * stride);
    };
    const double fine = integrate(1);
    const double coarse = integrate(2);
    return {fine, std::abs(fine - coarse)};
  }

 private:
  OscillatorParams params_;
  Axis x_{};
  Axis p_{};
  std::vector<double> w_;
};

// 2D trapezoid of E(x,p) W(x,p); the domain must contain the state and a
// boundary leak beyond 1e-14 of the peak is an error.
inline RealResult energy_quadrature(const std::vector<cdouble>& coeffs,
                                    const std::vector<double>& du_coeffs,
                                    const OscillatorParams& params,
                                    const QuadratureSpec& spec = {}) {
  return StateWignerGrid(coeffs, params, spec).energy(du_coeffs);
}

// Max deviation between the one-axis quadrature of a matrix-element field and
// the corresponding eigenfunction product. The subject field enters as a
// callable so this module never links the closed forms it checks.
inline double marginal_max_deviation(int n, int k, char axis,
                                     const std::function<cdouble(double, double)>& w,
                                     const OscillatorParams& params, const Axis& eval_axis,
                                     const Axis& integration_axis) {
  eval_axis.validate("marginal eval axis");
  integration_axis.validate("marginal integration axis");
  double worst = 0.0;
  for (int i = 0; i < eval_axis.n; ++i) {
    const double t = eval_axis.at(i);
    cdouble acc = 0.0;
    for (int j = 0; j < integration_axis.n; ++j) {
      const double u = integration_axis.at(j);
      const double wt = (j == 0 || j == integration_axis.n - 1) ? 0.5 : 1.0;
      acc += wt * (axis == 'x' ? w(t, u) : w(u, t));
    }
    acc *= integration_axis.step();
    cdouble expected;
    if (axis == 'x') {
      expected = eigenfunction_x(n, t, params) * eigenfunction_x(k, t, params);
    } else {
      expected = std::conj(eigenfunction_p(n, t, params)) * eigenfunction_p(k, t, params);
    }
    worst = std::max(worst, std::abs(acc - expected));
  }
  return worst;
}

}  // namespace wigner::oracles
