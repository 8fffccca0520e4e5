#pragma once

// Uniform axes, dense phase-space sample fields and trapezoid helpers shared
// by the kinetic operators and the command-line exporters.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "wigner/errors.hpp"

namespace wigner {

// Uniform closed-interval grid with n samples including both endpoints.
struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;

  double step() const { return (hi - lo) / (n - 1); }
  double at(int i) const { return lo + i * step(); }

  void validate(const char* what) const {
    if (n < 2) throw grid_error(std::string(what) + ": axis needs at least 2 samples");
    if (!(hi > lo)) throw grid_error(std::string(what) + ": axis bounds must be ordered");
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw grid_error(std::string(what) + ": axis bounds must be finite");
    }
  }
};

// NaN marks nodes where a field value is undefined (1/f singularities,
// boundary bands that a stencil cannot reach).
inline double masked_value() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_masked(double v) { return std::isnan(v); }

// Real samples f(x_i, v_j) on a rectangular grid, row-major with x outer and
// the second coordinate (v or p) inner.
class PhaseField {
 public:
  PhaseField(Axis x_axis, Axis v_axis, std::vector<double> values,
             double floor_scale = 1e-12)
      : x_(x_axis), v_(v_axis), values_(std::move(values)), floor_scale_(floor_scale) {
    x_.validate("PhaseField x_axis");
    v_.validate("PhaseField v_axis");
    if (values_.size() != static_cast<std::size_t>(x_.n) * v_.n) {
      throw grid_error("PhaseField: values size does not match axes");
    }
    double m = 0.0;
    for (double f : values_) {
      if (!std::isfinite(f)) throw grid_error("PhaseField: non-finite sample");
      m = std::max(m, std::abs(f));
    }
    max_abs_ = m;
  }

  const Axis& x_axis() const { return x_; }
  const Axis& v_axis() const { return v_; }
  int nx() const { return x_.n; }
  int nv() const { return v_.n; }
  double hx() const { return x_.step(); }
  double hv() const { return v_.step(); }

  double at(int ix, int iv) const { return values_[std::size_t(ix) * v_.n + iv]; }
  const std::vector<double>& values() const { return values_; }
  double max_abs() const { return max_abs_; }

  // Positivity floor below which 1/f terms are treated as undefined.
  double floor() const { return floor_scale_ * max_abs_; }
  bool below_floor(int ix, int iv) const { return std::abs(at(ix, iv)) < floor(); }

 private:
  Axis x_;
  Axis v_;
  std::vector<double> values_;
  double floor_scale_;
  double max_abs_ = 0.0;
};

// Composite trapezoid rule over uniformly sampled values.
inline double trapezoid(const std::vector<double>& f, double h) {
  if (f.size() < 2) throw grid_error("trapezoid: need at least 2 samples");
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

template <typename F>
double trapezoid_sample(const Axis& axis, F&& f) {
  double s = 0.5 * (f(0) + f(axis.n - 1));
  for (int i = 1; i + 1 < axis.n; ++i) s += f(i);
  return s * axis.step();
}

}  // namespace wigner
