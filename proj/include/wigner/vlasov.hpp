#pragma once

// Field-level evaluation of the Vlasov-Moyal closure on sampled (x, v) and
// (x, p) grids: mean-acceleration series, dissipation sources and their
// averages, the Moyal right-hand side, and the entropy functional.
//
// Everything here is the 1D (single-axis) reduction. Derivatives in the
// velocity/momentum direction are 4th-order central finite differences;
// boundary bands a stencil cannot reach and nodes under the positivity floor
// come back as NaN markers instead of extrapolated values.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wigner/grid.hpp"
#include "wigner/oscillator.hpp"

namespace wigner {

// Power-series coefficients a_l of the anharmonic deviation of the potential
// from the reference oscillator: U(x) = m omega_ref^2 x^2 / 2 + sum a_l x^l.
class PotentialSeries {
 public:
  PotentialSeries() = default;

  PotentialSeries(std::vector<double> a, double omega_ref, int max_degree = 12)
      : a_(std::move(a)), omega_ref_(omega_ref) {
    if (static_cast<int>(a_.size()) - 1 > max_degree) {
      throw std::invalid_argument("PotentialSeries: degree exceeds configured bound");
    }
    for (double c : a_) {
      if (!std::isfinite(c)) throw std::invalid_argument("PotentialSeries: non-finite coefficient");
    }
    if (!(omega_ref >= 0.0)) throw std::invalid_argument("PotentialSeries: omega_ref must be >= 0");
  }

  const std::vector<double>& coefficients() const { return a_; }
  double omega_ref() const { return omega_ref_; }

  // Highest power with a nonzero coefficient; 0 for an all-zero series.
  int poly_degree() const {
    for (int l = static_cast<int>(a_.size()) - 1; l >= 0; --l) {
      if (a_[l] != 0.0) return l;
    }
    return 0;
  }

  double delta_u(double x) const {
    double acc = 0.0;
    for (int l = static_cast<int>(a_.size()) - 1; l >= 0; --l) acc = acc * x + a_[l];
    return acc;
  }

 private:
  std::vector<double> a_;
  double omega_ref_ = 1.0;
};

// d^order U / dx^order for odd order; exact since U is polynomial.
inline double potential_odd_derivative(const PotentialSeries& u, int order, double x,
                                       const OscillatorParams& params) {
  if (order < 1 || order % 2 == 0) {
    throw std::invalid_argument("potential_odd_derivative: order must be odd and >= 1");
  }
  double acc = 0.0;
  if (order == 1) acc += params.mass() * u.omega_ref() * u.omega_ref() * x;
  const auto& a = u.coefficients();
  for (int l = order; l < static_cast<int>(a.size()); ++l) {
    if (a[l] == 0.0) continue;
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= double(l - j);
    acc += a[l] * falling * std::pow(x, l - order);
  }
  return acc;
}

// True when d^order U/dx^order is not identically zero, so a series term
// can be skipped (and no mask widened) when the potential exhausts.
inline bool potential_has_odd_derivative(const PotentialSeries& u, int order) {
  if (order == 1) return true;
  return u.poly_degree() >= order;
}

namespace detail {

// Fornberg weights for the m-th derivative at z over the given nodes.
inline std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

// Centered 4th-order stencil half-width for derivative order d.
inline int fd_half_width(int d) { return (d + 3) / 2; }

inline std::vector<double> fd_central_weights(int d) {
  const int hw = fd_half_width(d);
  std::vector<double> nodes(2 * hw + 1);
  for (int i = 0; i <= 2 * hw; ++i) nodes[i] = double(i - hw);
  return fd_weights(0.0, nodes, d);
}

// Apply a v-direction derivative stencil to row-major samples. NaN inputs
// propagate; nodes whose stencil leaves the grid are NaN.
inline std::vector<double> v_derivative_values(const std::vector<double>& f, int nx, int nv,
                                               double hv, int order) {
  const int hw = fd_half_width(order);
  if (nv < 2 * hw + 1) throw grid_error("v derivative: grid too small for the stencil");
  const std::vector<double> w = fd_central_weights(order);
  const double scale = 1.0 / std::pow(hv, order);
  std::vector<double> out(f.size(), masked_value());
  for (int ix = 0; ix < nx; ++ix) {
    const std::size_t row = std::size_t(ix) * nv;
    for (int iv = hw; iv < nv - hw; ++iv) {
      double acc = 0.0;
      for (int j = 0; j <= 2 * hw; ++j) acc += w[j] * f[row + iv - hw + j];
      out[row + iv] = acc * scale;
    }
  }
  return out;
}

// Trapezoid over one v-row with NaN entries contributing zero (fields are
// assumed to decay before the mask begins).
inline double trapz_row_masked(const std::vector<double>& f, std::size_t row, int nv, double hv) {
  double s = 0.0;
  for (int iv = 0; iv < nv; ++iv) {
    const double v = f[row + iv];
    if (is_masked(v)) continue;
    const double w = (iv == 0 || iv == nv - 1) ? 0.5 : 1.0;
    s += w * v;
  }
  return s * hv;
}

// (-1)^{n+1} (hbar/2)^{2n} / (m^{2n+1} (2n+1)!), the series coefficient of
// the mean-acceleration closure.
inline double accel_coeff(int n, const OscillatorParams& params) {
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;
  double fact = 1.0;
  for (int j = 2; j <= 2 * n + 1; ++j) fact *= j;
  return sign * std::pow(0.5 * params.hbar(), 2 * n) /
         (std::pow(params.mass(), 2 * n + 1) * fact);
}

}  // namespace detail

// Truncated mean-acceleration series, n = 0..n_terms-1. The n = 0 term is
// the classical -U'/m everywhere; higher terms need 1/f and even
// v-derivatives and are masked below the floor and in boundary bands.
inline std::vector<double> mean_acceleration(const PotentialSeries& u, const PhaseField& f2,
                                             int n_terms, const OscillatorParams& params) {
  if (n_terms < 1) throw std::invalid_argument("mean_acceleration: n_terms must be >= 1");
  const int nx = f2.nx(), nv = f2.nv();
  std::vector<double> out(f2.values().size(), 0.0);

  for (int n = 0; n < n_terms; ++n) {
    const int order = 2 * n + 1;
    if (!potential_has_odd_derivative(u, order)) continue;
    std::vector<double> du(nx);
    for (int ix = 0; ix < nx; ++ix) {
      du[ix] = potential_odd_derivative(u, order, f2.x_axis().at(ix), params);
    }
    if (n == 0) {
      for (int ix = 0; ix < nx; ++ix) {
        const double term = -du[ix] / params.mass();
        for (int iv = 0; iv < nv; ++iv) out[std::size_t(ix) * nv + iv] += term;
      }
      continue;
    }
    const double coeff = detail::accel_coeff(n, params);
    if (coeff == 0.0) continue;  // hbar = 0 classical limit
    const std::vector<double> deriv =
        detail::v_derivative_values(f2.values(), nx, nv, f2.hv(), 2 * n);
    for (int ix = 0; ix < nx; ++ix) {
      for (int iv = 0; iv < nv; ++iv) {
        const std::size_t idx = std::size_t(ix) * nv + iv;
        if (f2.below_floor(ix, iv)) {
          out[idx] = masked_value();
        } else {
          out[idx] += coeff * du[ix] * deriv[idx] / f2.at(ix, iv);
        }
      }
    }
  }
  return out;
}

// Dissipation source Q2 = div_v <vdot>: derivative in v of the 1/f terms.
// Identically zero when no odd potential derivative above the first exists.
inline std::vector<double> dissipation_source(const PotentialSeries& u, const PhaseField& f2,
                                              int n_terms, const OscillatorParams& params) {
  if (n_terms < 1) throw std::invalid_argument("dissipation_source: n_terms must be >= 1");
  const int nx = f2.nx(), nv = f2.nv();
  std::vector<double> out(f2.values().size(), 0.0);

  for (int n = 1; n < n_terms; ++n) {
    const int order = 2 * n + 1;
    if (!potential_has_odd_derivative(u, order)) continue;
    const double coeff = detail::accel_coeff(n, params);
    if (coeff == 0.0) continue;
    const std::vector<double> deriv =
        detail::v_derivative_values(f2.values(), nx, nv, f2.hv(), 2 * n);
    std::vector<double> g(f2.values().size(), masked_value());
    for (int ix = 0; ix < nx; ++ix) {
      for (int iv = 0; iv < nv; ++iv) {
        const std::size_t idx = std::size_t(ix) * nv + iv;
        if (!f2.below_floor(ix, iv) && !is_masked(deriv[idx])) {
          g[idx] = deriv[idx] / f2.at(ix, iv);
        }
      }
    }
    const std::vector<double> dg = detail::v_derivative_values(g, nx, nv, f2.hv(), 1);
    for (int ix = 0; ix < nx; ++ix) {
      const double du = potential_odd_derivative(u, order, f2.x_axis().at(ix), params);
      for (int iv = 0; iv < nv; ++iv) {
        const std::size_t idx = std::size_t(ix) * nv + iv;
        out[idx] += coeff * du * dg[idx];
      }
    }
  }
  return out;
}

// f2-weighted v-average of the mean acceleration; reproduces -U'/m up to
// discretization error since every series term integrates to a vanishing
// boundary term. Uses the product form <vdot> f2 = sum c_n U^(2n+1) d^2n f2,
// so the value is defined wherever f1 is not negligible.
inline std::vector<double> mean_acceleration_avg(const PotentialSeries& u, const PhaseField& f2,
                                                 const OscillatorParams& params) {
  const int nx = f2.nx(), nv = f2.nv();
  std::vector<double> f1(nx);
  double f1_max = 0.0;
  for (int ix = 0; ix < nx; ++ix) {
    f1[ix] = detail::trapz_row_masked(f2.values(), std::size_t(ix) * nv, nv, f2.hv());
    f1_max = std::max(f1_max, std::abs(f1[ix]));
  }

  std::vector<double> flux(nx, 0.0);
  const int max_order = std::max(1, u.poly_degree());
  for (int n = 0; 2 * n + 1 <= max_order; ++n) {
    const int order = 2 * n + 1;
    if (!potential_has_odd_derivative(u, order)) continue;
    const double coeff = detail::accel_coeff(n, params);
    if (coeff == 0.0) continue;
    std::vector<double> integral(nx);
    if (n == 0) {
      for (int ix = 0; ix < nx; ++ix) integral[ix] = f1[ix];
    } else {
      const std::vector<double> deriv =
          detail::v_derivative_values(f2.values(), nx, nv, f2.hv(), 2 * n);
      for (int ix = 0; ix < nx; ++ix) {
        integral[ix] = detail::trapz_row_masked(deriv, std::size_t(ix) * nv, nv, f2.hv());
      }
    }
    for (int ix = 0; ix < nx; ++ix) {
      flux[ix] += coeff * potential_odd_derivative(u, order, f2.x_axis().at(ix), params) *
                  integral[ix];
    }
  }

  std::vector<double> out(nx);
  for (int ix = 0; ix < nx; ++ix) {
    out[ix] = (std::abs(f1[ix]) < 1e-12 * f1_max) ? masked_value() : flux[ix] / f1[ix];
  }
  return out;
}

// <Q2>(x) through the entropy route: sum over n >= 1 of
// (-1)^n (hbar/2)^{2n} / (m^{2n+1} (2n+1)!) U^(2n+1) <d^{2n+1} S2 / dv^{2n+1}>
// with S2 = ln f2 on nodes above the floor.
inline std::vector<double> dissipation_source_avg(const PotentialSeries& u, const PhaseField& f2,
                                                  int n_terms, const OscillatorParams& params) {
  if (n_terms < 1) throw std::invalid_argument("dissipation_source_avg: n_terms must be >= 1");
  const int nx = f2.nx(), nv = f2.nv();

  std::vector<double> s2(f2.values().size(), masked_value());
  for (int ix = 0; ix < nx; ++ix) {
    for (int iv = 0; iv < nv; ++iv) {
      if (!f2.below_floor(ix, iv) && f2.at(ix, iv) > 0.0) {
        s2[std::size_t(ix) * nv + iv] = std::log(f2.at(ix, iv));
      }
    }
  }

  std::vector<double> f1(nx);
  double f1_max = 0.0;
  for (int ix = 0; ix < nx; ++ix) {
    f1[ix] = detail::trapz_row_masked(f2.values(), std::size_t(ix) * nv, nv, f2.hv());
    f1_max = std::max(f1_max, std::abs(f1[ix]));
  }

  std::vector<double> out(nx, 0.0);
  for (int ix = 0; ix < nx; ++ix) {
    if (std::abs(f1[ix]) < 1e-12 * f1_max) out[ix] = masked_value();
  }
  for (int n = 1; n < n_terms; ++n) {
    const int order = 2 * n + 1;
    if (!potential_has_odd_derivative(u, order)) continue;
    const double coeff = -detail::accel_coeff(n, params);  // sign (-1)^n
    if (coeff == 0.0) continue;
    const std::vector<double> ds = detail::v_derivative_values(s2, nx, nv, f2.hv(), order);
    for (int ix = 0; ix < nx; ++ix) {
      if (is_masked(out[ix])) continue;
      double num = 0.0;
      for (int iv = 0; iv < nv; ++iv) {
        const std::size_t idx = std::size_t(ix) * nv + iv;
        if (is_masked(ds[idx])) continue;  // f2 ~ 0 there, f2-weighted term vanishes
        const double w = (iv == 0 || iv == nv - 1) ? 0.5 : 1.0;
        num += w * ds[idx] * f2.at(ix, iv);
      }
      num *= f2.hv();
      out[ix] += coeff * potential_odd_derivative(u, order, f2.x_axis().at(ix), params) * num /
                 f1[ix];
    }
  }
  return out;
}

// <<Q2>>: f1-weighted x-average of <Q2>(x).
inline double dissipation_source_global(const PotentialSeries& u, const PhaseField& f2,
                                        int n_terms, const OscillatorParams& params) {
  const int nx = f2.nx(), nv = f2.nv();
  const std::vector<double> profile = dissipation_source_avg(u, f2, n_terms, params);
  double num = 0.0, den = 0.0;
  for (int ix = 0; ix < nx; ++ix) {
    const double f1 = detail::trapz_row_masked(f2.values(), std::size_t(ix) * nv, nv, f2.hv());
    const double w = (ix == 0 || ix == nx - 1) ? 0.5 : 1.0;
    den += w * f1;
    if (!is_masked(profile[ix])) num += w * f1 * profile[ix];
  }
  return num / den;
}

// Truncated Moyal right-hand side on a (x, p) field:
// sum_{l=1}^{n_terms} (-1)^l (hbar/2)^{2l} / (2l+1)! U^(2l+1) d^{2l+1} W/dp^{2l+1}.
inline std::vector<double> moyal_rhs(const PotentialSeries& u, const PhaseField& w_field,
                                     int n_terms, const OscillatorParams& params) {
  if (n_terms < 1) throw std::invalid_argument("moyal_rhs: n_terms must be >= 1");
  const int nx = w_field.nx(), np = w_field.nv();
  std::vector<double> out(w_field.values().size(), 0.0);
  for (int l = 1; l <= n_terms; ++l) {
    const int order = 2 * l + 1;
    if (!potential_has_odd_derivative(u, order)) continue;
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    double fact = 1.0;
    for (int j = 2; j <= order; ++j) fact *= j;
    const double coeff = sign * std::pow(0.5 * params.hbar(), 2 * l) / fact;
    if (coeff == 0.0) continue;
    const std::vector<double> dw =
        detail::v_derivative_values(w_field.values(), nx, np, w_field.hv(), order);
    for (int ix = 0; ix < nx; ++ix) {
      const double du = potential_odd_derivative(u, order, w_field.x_axis().at(ix), params);
      for (int ip = 0; ip < np; ++ip) {
        const std::size_t idx = std::size_t(ix) * np + ip;
        out[idx] += coeff * du * dw[idx];
      }
    }
  }
  return out;
}

// Discrete residual of the identity that turns the kinetic equation into the
// Moyal equation: d/dv(<vdot> f2) + (1/m) U' df2/dv + moyal-RHS(f2) = 0
// analytically. The max-norm over unmasked interior nodes measures pure
// discretization error.
inline double vlasov_moyal_residual(const PotentialSeries& u, const PhaseField& f2, int n_terms,
                                    const OscillatorParams& params) {
  const int nx = f2.nx(), nv = f2.nv();
  const std::vector<double> accel = mean_acceleration(u, f2, n_terms, params);

  std::vector<double> flux(f2.values().size());
  for (int ix = 0; ix < nx; ++ix) {
    for (int iv = 0; iv < nv; ++iv) {
      const std::size_t idx = std::size_t(ix) * nv + iv;
      flux[idx] = accel[idx] * f2.at(ix, iv);
    }
  }
  const std::vector<double> dflux = detail::v_derivative_values(flux, nx, nv, f2.hv(), 1);
  const std::vector<double> df2 = detail::v_derivative_values(f2.values(), nx, nv, f2.hv(), 1);

  // velocity-variable Moyal correction sum, n = 1..n_terms-1
  std::vector<double> moyal(f2.values().size(), 0.0);
  for (int n = 1; n < n_terms; ++n) {
    const int order = 2 * n + 1;
    if (!potential_has_odd_derivative(u, order)) continue;
    const double coeff = -detail::accel_coeff(n, params);
    if (coeff == 0.0) continue;
    const std::vector<double> d = detail::v_derivative_values(f2.values(), nx, nv, f2.hv(), order);
    for (int ix = 0; ix < nx; ++ix) {
      const double du = potential_odd_derivative(u, order, f2.x_axis().at(ix), params);
      for (int iv = 0; iv < nv; ++iv) {
        const std::size_t idx = std::size_t(ix) * nv + iv;
        moyal[idx] += coeff * du * d[idx];
      }
    }
  }

  double residual = 0.0;
  for (int ix = 0; ix < nx; ++ix) {
    for (int iv = 0; iv < nv; ++iv) {
      const std::size_t idx = std::size_t(ix) * nv + iv;
      const double r = dflux[idx] +
                       potential_odd_derivative(u, 1, f2.x_axis().at(ix), params) * df2[idx] /
                           params.mass() +
                       moyal[idx];
      if (!is_masked(r)) residual = std::max(residual, std::abs(r));
    }
  }
  return residual;
}

// Boltzmann entropy functional H2 = -int int f2 ln f2; nodes below the floor
// contribute zero (the f ln f -> 0 limit).
inline double boltzmann_entropy(const PhaseField& f2) {
  const int nx = f2.nx(), nv = f2.nv();
  double acc = 0.0;
  for (int ix = 0; ix < nx; ++ix) {
    const double wx = (ix == 0 || ix == nx - 1) ? 0.5 : 1.0;
    for (int iv = 0; iv < nv; ++iv) {
      const double f = f2.at(ix, iv);
      if (f2.below_floor(ix, iv) || f <= 0.0) continue;
      const double wv = (iv == 0 || iv == nv - 1) ? 0.5 : 1.0;
      acc += wx * wv * f * std::log(f);
    }
  }
  return -acc * f2.hx() * f2.hv();
}

// Separable normalized Gaussian fixture.
inline PhaseField gaussian_field(Axis x_axis, Axis v_axis, double sigma_x, double sigma_v) {
  std::vector<double> values(std::size_t(x_axis.n) * v_axis.n);
  const double norm = 1.0 / (2.0 * std::numbers::pi * sigma_x * sigma_v);
  for (int ix = 0; ix < x_axis.n; ++ix) {
    const double gx = std::exp(-0.5 * x_axis.at(ix) * x_axis.at(ix) / (sigma_x * sigma_x));
    for (int iv = 0; iv < v_axis.n; ++iv) {
      const double v = v_axis.at(iv);
      values[std::size_t(ix) * v_axis.n + iv] =
          norm * gx * std::exp(-0.5 * v * v / (sigma_v * sigma_v));
    }
  }
  return PhaseField(x_axis, v_axis, std::move(values));
}

// Drifted Gaussian times (1 + amp v^4): a non-Gaussian velocity profile with
// nonvanishing odd entropy derivatives. A nonzero drift keeps the odd-order
// velocity averages from cancelling by symmetry.
inline PhaseField perturbed_gaussian_field(Axis x_axis, Axis v_axis, double sigma_x,
                                           double sigma_v, double amp = 0.1,
                                           double v_drift = 0.0) {
  std::vector<double> values(std::size_t(x_axis.n) * v_axis.n);
  const double norm = 1.0 / (2.0 * std::numbers::pi * sigma_x * sigma_v);
  for (int ix = 0; ix < x_axis.n; ++ix) {
    const double gx = std::exp(-0.5 * x_axis.at(ix) * x_axis.at(ix) / (sigma_x * sigma_x));
    for (int iv = 0; iv < v_axis.n; ++iv) {
      const double v = v_axis.at(iv);
      const double u = v - v_drift;
      values[std::size_t(ix) * v_axis.n + iv] = norm * gx * (1.0 + amp * v * v * v * v) *
                                                std::exp(-0.5 * u * u / (sigma_v * sigma_v));
    }
  }
  return PhaseField(x_axis, v_axis, std::move(values));
}

}  // namespace wigner
