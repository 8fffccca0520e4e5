#pragma once

// Closed-form total energy of a pure state under an anharmonic polynomial
// potential: oscillator-level diagonal term plus the winding-selected
// correction series, with the quartic-style diagonal selection rule.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wigner/state.hpp"
#include "wigner/vlasov.hpp"

namespace wigner {

struct EnergyBreakdown {
  double diagonal_part = 0.0;     // sum |rho_nn| hbar w (n + 1/2)
  double offdiagonal_part = 0.0;  // anharmonic correction series
  double total = 0.0;
  std::vector<int> contributing_diagonals;  // admissible winding numbers
};

// Winding numbers w = n - k that can contribute for the given deviation
// series: some a_l != 0 with |w| <= l and w of the same parity as l.
// Empty for the all-zero series.
inline std::vector<int> admissible_windings(const PotentialSeries& du) {
  const auto& a = du.coefficients();
  std::vector<int> out;
  const int lmax = static_cast<int>(a.size()) - 1;
  for (int w = -lmax; w <= lmax; ++w) {
    for (int l = std::abs(w); l <= lmax; ++l) {
      if (a[l] != 0.0 && (l - std::abs(w)) % 2 == 0) {
        out.push_back(w);
        break;
      }
    }
  }
  return out;
}

namespace detail {

// Inner alternating sum over s with the Gamma-pole guard: terms whose
// factorial argument would go negative are dropped (they only arise outside
// the admissible index range).
inline double energy_inner_sum(int n, int k, int l) {
  std::vector<double> logmag;
  std::vector<int> sign;
  const int half = (k + n + l) / 2;
  for (int s = 0; s <= std::min(n, k); ++s) {
    if (half - s < 0) continue;
    logmag.push_back(log_factorial(half - s) - s * std::numbers::ln2 - log_factorial(s) -
                     log_factorial(k - s) - log_factorial(n - s));
    sign.push_back(s % 2 == 0 ? 1 : -1);
  }
  return signed_exp_sum(logmag, sign);
}

}  // namespace detail

// Both sums of the closed-form energy: requires a rank-1 density matrix with
// the coefficient phases alpha_k recorded alongside (|rho| alone loses them).
inline EnergyBreakdown total_energy(const DensityMatrix& rho, const std::vector<double>& phases,
                                    const PotentialSeries& du, const OscillatorParams& params) {
  if (!rho.is_rank_one()) {
    throw std::invalid_argument("total_energy: density matrix is not rank-1 (pure states only)");
  }
  const int size = rho.size();
  if (static_cast<int>(phases.size()) != size) {
    throw std::invalid_argument("total_energy: phase list size does not match rho");
  }

  EnergyBreakdown out;
  const double hw = params.hbar() * params.omega();
  for (int n = 0; n < size; ++n) {
    out.diagonal_part += std::abs(rho.at(n, n)) * hw * (n + 0.5);
  }

  const auto& a = du.coefficients();
  const int lmax = static_cast<int>(a.size()) - 1;
  const double log_scale = std::log(params.hbar() / (4.0 * params.mass() * params.omega()));

  for (int n = 0; n < size; ++n) {
    for (int k = 0; k < size; ++k) {
      const double mod = std::abs(rho.at(k, n));
      if (mod == 0.0) continue;
      const double lead = 0.5 * ((n + k) * std::numbers::ln2 + log_factorial(n) +
                                 log_factorial(k));
      std::vector<double> logmag;
      std::vector<int> sign;
      for (int l = std::abs(n - k); l <= lmax; l += 2) {
        if (a[l] == 0.0) continue;
        const int m = (n - k + l) / 2;
        const double log_binom = log_factorial(l) - log_factorial(m) - log_factorial(l - m);
        const double inner = detail::energy_inner_sum(n, k, l);
        if (inner == 0.0) continue;
        logmag.push_back(lead + std::log(std::abs(a[l])) + 0.5 * l * log_scale + log_binom +
                         std::log(std::abs(inner)));
        sign.push_back((a[l] > 0.0 ? 1 : -1) * (inner > 0.0 ? 1 : -1));
      }
      out.offdiagonal_part +=
          mod * std::cos(phases[k] - phases[n]) * detail::signed_exp_sum(logmag, sign);
    }
  }

  out.total = out.diagonal_part + out.offdiagonal_part;
  out.contributing_diagonals = admissible_windings(du);
  return out;
}

// Convenience: build the density matrix and phase list from a pure state.
inline EnergyBreakdown total_energy(const CoefficientVector& c, const PotentialSeries& du,
                                    const OscillatorParams& params) {
  std::vector<double> phases(c.size(), 0.0);
  for (int i = 0; i < c.size(); ++i) {
    if (std::abs(c[i]) > 0.0) phases[i] = std::arg(c[i]);
  }
  return total_energy(density_from_coeffs(c), phases, du, params);
}

// Integrand E(x,p) W(x,p) of the energy quadrature, with
// E = hbar w eps(x,p) + delta U(x).
inline double energy_density(const DensityMatrix& rho, PhasePoint pt, const PotentialSeries& du,
                             const OscillatorParams& params, int max_order = kDefaultMaxOrder) {
  const double e = params.hbar() * params.omega() * oscillator_energy(pt, params) +
                   du.delta_u(pt.x);
  return e * wigner_trace(rho, pt, params, max_order);
}

}  // namespace wigner
