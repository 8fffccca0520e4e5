#pragma once

// States as coefficient vectors in the oscillator basis, density matrices,
// and assembly of the full Wigner function by both the trace formula and the
// rotation-matrix form, plus the cosine/sine basis fields behind the grid
// exporters.

#include <algorithm>
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "wigner/grid.hpp"
#include "wigner/udm.hpp"

namespace wigner {

// Truncated expansion coefficients c_n, n = 0..N. Normalization is an
// invariant unless the caller explicitly opts out (recorded in the flag).
class CoefficientVector {
 public:
  static CoefficientVector normalized(std::vector<cdouble> coeffs, double tol = 1e-12) {
    CoefficientVector c(std::move(coeffs), tol, true);
    const double err = std::abs(c.norm_sq() - 1.0);
    if (err > tol) {
      throw std::invalid_argument("CoefficientVector: |sum|c|^2 - 1| = " + std::to_string(err) +
                                  " exceeds tolerance");
    }
    return c;
  }

  // Test/diagnostic entry point: the normalization invariant is waived and
  // the waiver is recorded.
  static CoefficientVector unnormalized(std::vector<cdouble> coeffs) {
    return CoefficientVector(std::move(coeffs), 0.0, false);
  }

  int size() const { return static_cast<int>(coeffs_.size()); }
  const cdouble& operator[](int i) const { return coeffs_[i]; }
  const std::vector<cdouble>& coeffs() const { return coeffs_; }

  double norm_sq() const {
    double s = 0.0;
    for (const cdouble& c : coeffs_) s += std::norm(c);
    return s;
  }

  bool is_normalized() const { return normalized_; }
  double norm_tolerance() const { return norm_tolerance_; }

 private:
  CoefficientVector(std::vector<cdouble> coeffs, double tol, bool normalized)
      : coeffs_(std::move(coeffs)), norm_tolerance_(tol), normalized_(normalized) {
    if (coeffs_.empty()) throw std::invalid_argument("CoefficientVector: empty");
    for (const cdouble& c : coeffs_) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw std::invalid_argument("CoefficientVector: non-finite coefficient");
      }
    }
  }

  std::vector<cdouble> coeffs_;
  double norm_tolerance_;
  bool normalized_;
};

// Hermitian unit-trace matrix rho_{k,n}; rank-1 when built from a pure state.
class DensityMatrix {
 public:
  static DensityMatrix from_coefficients(const CoefficientVector& c) {
    const int n = c.size();
    if (!(c.norm_sq() > 0.0)) throw std::invalid_argument("DensityMatrix: zero vector");
    if (std::abs(c.norm_sq() - 1.0) > 1e-12) {
      throw std::invalid_argument("DensityMatrix: coefficients not unit-normalized");
    }
    Eigen::MatrixXcd m(n, n);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) m(k, j) = c[k] * std::conj(c[j]);
    }
    return DensityMatrix(std::move(m));
  }

  // General Hermitian unit-trace input (mixed states allowed for the trace
  // formula; the rotation form stays pure-state only).
  static DensityMatrix from_matrix(Eigen::MatrixXcd m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
      throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-13) {
      throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-13");
    }
    if (std::abs(m.trace() - cdouble(1.0)) > 1e-12) {
      throw std::invalid_argument("DensityMatrix: trace not 1 within 1e-12");
    }
    return DensityMatrix(std::move(m));
  }

  int size() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  cdouble at(int k, int n) const { return entries_(k, n); }

  bool is_rank_one(double tol = 1e-10) const {
    // rho^2 = rho characterizes unit-trace rank-1 projectors
    return (entries_ * entries_ - entries_).cwiseAbs().maxCoeff() <= tol;
  }

 private:
  explicit DensityMatrix(Eigen::MatrixXcd m) : entries_(std::move(m)) {}
  Eigen::MatrixXcd entries_;
};

inline DensityMatrix density_from_coeffs(const CoefficientVector& c) {
  return DensityMatrix::from_coefficients(c);
}

// Unit vector (cos a, sin a) of a coefficient's phase.
struct PhaseVectorPair {
  double cos_alpha = 1.0;
  double sin_alpha = 0.0;
};

inline PhaseVectorPair phase_vector(cdouble c) {
  const double mod = std::abs(c);
  if (mod == 0.0) throw undefined_phase_error("phase_vector: zero coefficient has no phase");
  return {c.real() / mod, c.imag() / mod};
}

// Rotation by the winding angle (n - k) phi; orthogonal, determinant 1.
inline Eigen::Matrix2d rotation_matrix(PolyIndexPair pair, double phi) {
  const double a = pair.winding() * phi;
  Eigen::Matrix2d m;
  m << std::cos(a), std::sin(a), -std::sin(a), std::cos(a);
  return m;
}

// W(x,p) = sum_{n,k} rho_{k,n} w_{n,k}(x,p). The imaginary part of the sum
// must cancel for Hermitian rho; it is checked against 1e-10 (1 + |W|) and
// then discarded.
inline double wigner_trace(const DensityMatrix& rho, PhasePoint pt,
                           const OscillatorParams& params, int max_order = kDefaultMaxOrder) {
  const int size = rho.size();
  cdouble acc = 0.0;
  for (int n = 0; n < size; ++n) {
    for (int k = 0; k < size; ++k) {
      acc += rho.at(k, n) * udm_element({n, k}, pt, params, max_order);
    }
  }
  if (std::abs(acc.imag()) > 1e-10 * (1.0 + std::abs(acc.real()))) {
    throw imaginary_residue_error("wigner_trace: imaginary residue " +
                                  std::to_string(acc.imag()) + " signals inconsistent rho");
  }
  return acc.real();
}

// Pure-state assembly through moduli, radial polynomials and phase-vector
// rotations; equal to wigner_trace by construction. Terms with a vanishing
// coefficient are skipped since their phase is undefined.
inline double wigner_rotation_form(const CoefficientVector& c, PhasePoint pt,
                                   const OscillatorParams& params,
                                   int max_order = kDefaultMaxOrder) {
  const double eps = oscillator_energy(pt, params);
  const double phi = phase_angle(pt, params);
  const double r = std::sqrt(2.0 * eps);
  const int size = c.size();

  std::vector<double> mod(size);
  std::vector<Eigen::Vector2d> dir(size);
  for (int i = 0; i < size; ++i) {
    mod[i] = std::abs(c[i]);
    if (mod[i] > 0.0) {
      const PhaseVectorPair pv = phase_vector(c[i]);
      dir[i] << pv.cos_alpha, pv.sin_alpha;
    }
  }

  double acc = 0.0;
  for (int n = 0; n < size; ++n) {
    if (mod[n] == 0.0) continue;
    for (int k = 0; k < size; ++k) {
      if (mod[k] == 0.0) continue;
      const PolyIndexPair pair{n, k};
      const double quad = dir[k].transpose() * rotation_matrix(pair, phi) * dir[n];
      acc += mod[k] * mod[n] * radial_poly(pair, r, max_order) * quad;
    }
  }
  return acc * std::exp(-2.0 * eps) / (std::numbers::pi * params.hbar());
}

// Cosine/sine basis fields e^{-2 eps} Y_{n,k}(sqrt(2 eps)) {cos,sin}((n-k) phi).
inline double basis_cos(PolyIndexPair pair, PhasePoint pt, const OscillatorParams& params,
                        int max_order = kDefaultMaxOrder) {
  const double eps = oscillator_energy(pt, params);
  return std::exp(-2.0 * eps) * radial_poly(pair, std::sqrt(2.0 * eps), max_order) *
         std::cos(pair.winding() * phase_angle(pt, params));
}

inline double basis_sin(PolyIndexPair pair, PhasePoint pt, const OscillatorParams& params,
                        int max_order = kDefaultMaxOrder) {
  const double eps = oscillator_energy(pt, params);
  return std::exp(-2.0 * eps) * radial_poly(pair, std::sqrt(2.0 * eps), max_order) *
         std::sin(pair.winding() * phase_angle(pt, params));
}

struct ProjectionResult {
  CoefficientVector coeffs;
  double truncation_residual = 0.0;  // 1 - sum |c_n|^2 for normalized input
};

// Trapezoid projection of sampled Psi(x) onto the eigenfunctions,
// c_n = int conj(Psi_n) Psi dx for n = 0..n_max. The grid must resolve the
// fastest oscillation of Psi_{n_max} and cover the support of the input.
inline ProjectionResult coeffs_from_samples(const std::vector<cdouble>& psi, Axis x_axis,
                                            const OscillatorParams& params, int n_max,
                                            int max_order = kDefaultMaxOrder) {
  detail::check_order(n_max, max_order, "coeffs_from_samples");
  x_axis.validate("coeffs_from_samples");
  if (psi.size() != static_cast<std::size_t>(x_axis.n)) {
    throw grid_error("coeffs_from_samples: sample count does not match axis");
  }

  // Nyquist guard: >= 4 samples per shortest wavelength of Psi_{n_max}
  const double k_max = params.kappa() * std::sqrt(2.0 * n_max + 1.0);
  if (x_axis.step() * k_max > 0.5 * std::numbers::pi) {
    throw grid_error("coeffs_from_samples: grid too coarse for requested n_max");
  }

  double max_abs = 0.0, norm = 0.0;
  {
    std::vector<double> absq(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
      absq[i] = std::norm(psi[i]);
      max_abs = std::max(max_abs, std::sqrt(absq[i]));
    }
    norm = trapezoid(absq, x_axis.step());
  }
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw grid_error("coeffs_from_samples: input not normalizable");
  }
  if (std::abs(psi.front()) > 1e-6 * max_abs || std::abs(psi.back()) > 1e-6 * max_abs) {
    throw grid_error("coeffs_from_samples: grid does not cover the support of Psi");
  }

  std::vector<cdouble> coeffs(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    cdouble s = 0.0;
    for (int i = 0; i < x_axis.n; ++i) {
      const double w = (i == 0 || i == x_axis.n - 1) ? 0.5 : 1.0;
      s += w * eigenfunction_x(n, x_axis.at(i), params, max_order) * psi[i];
    }
    coeffs[n] = s * x_axis.step();
  }

  double captured = 0.0;
  for (const cdouble& c : coeffs) captured += std::norm(c);
  return {CoefficientVector::unnormalized(std::move(coeffs)), 1.0 - captured};
}

// Dense W samples, row-major with x outer and p inner.
inline std::vector<double> wigner_grid(const CoefficientVector& c, Axis x_axis, Axis p_axis,
                                       const OscillatorParams& params,
                                       int max_order = kDefaultMaxOrder) {
  x_axis.validate("wigner_grid x");
  p_axis.validate("wigner_grid p");
  std::vector<double> out(std::size_t(x_axis.n) * p_axis.n);
  for (int i = 0; i < x_axis.n; ++i) {
    for (int j = 0; j < p_axis.n; ++j) {
      out[std::size_t(i) * p_axis.n + j] =
          wigner_rotation_form(c, {x_axis.at(i), p_axis.at(j)}, params, max_order);
    }
  }
  return out;
}

}  // namespace wigner
