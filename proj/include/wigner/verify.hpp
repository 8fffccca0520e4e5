#pragma once

// Cross-checking suites: every closed form in the library against its
// brute-force quadrature oracle, plus the identity, winding, kinetic and
// energy criteria. The command-line `verify` subcommand and the acceptance
// test binary both run these.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "wigner/energy.hpp"
#include "wigner/oracles.hpp"
#include "wigner/state.hpp"
#include "wigner/udm.hpp"
#include "wigner/vlasov.hpp"

namespace wigner::verify {

struct CheckResult {
  int criterion = 0;  // 1..12 map to the acceptance criteria, 0 = auxiliary
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Options {
  OscillatorParams params{};         // closed-form side
  OscillatorParams oracle_params{};  // reference side; skew it to test the canary
  int transform_max_order = 8;       // order bound of the transform sweep
  int transform_grid = 21;           // grid points per axis of that sweep

  static Options defaults() { return {}; }

  // Reduced sweep for smoke tests.
  static Options quick() {
    Options o;
    o.transform_max_order = 3;
    o.transform_grid = 7;
    return o;
  }
};

inline bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

namespace detail {

inline CheckResult make_result(int criterion, std::string name, double dev, double tol) {
  return {criterion, std::move(name), dev, tol, dev <= tol};
}

template <typename Fn>
CheckResult guarded(int criterion, std::string name, double tol, Fn&& fn) {
  try {
    return make_result(criterion, std::move(name), fn(), tol);
  } catch (const std::exception& e) {
    return {criterion, name + " (error: " + e.what() + ")",
            std::numeric_limits<double>::infinity(), tol, false};
  }
}

inline std::mt19937 seeded_rng(unsigned seed) { return std::mt19937(seed); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Universal-matrix checks: closed form vs transform (both routes),
// hermiticity, marginals, circle modulus and winding.
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> udm_checks(const Options& opts) {
  std::vector<CheckResult> out;
  const OscillatorParams& mp = opts.params;
  const OscillatorParams& op = opts.oracle_params;

  // criteria 1 + 2: one sweep computes the direct-route and momentum-route
  // transforms on the grid and compares against the closed form. The
  // integrand arrays are shared across the grid row, which is the only
  // difference from calling the public oracle per point (spot-checked below).
  {
    const auto t0 = std::chrono::steady_clock::now();
    const int order = opts.transform_max_order;
    const int g = opts.transform_grid;
    const Axis xg{-4.0, 4.0, g}, pg{-4.0, 4.0, g};
    const double kappa = op.kappa();
    const double pscale = op.hbar() * op.kappa();

    double dev_closed = 0.0, dev_dual = 0.0, conv = 0.0;
    for (int n = 0; n <= order; ++n) {
      for (int k = 0; k <= order; ++k) {
        std::vector<cdouble> direct(std::size_t(g) * g), momentum(std::size_t(g) * g);
        // direct route: s-integral, row-shared eigenfunction samples
        for (int i = 0; i < g; ++i) {
          const double x = xg.at(i);
          const double u = oracles::detail::tail_half_range(n + k, kappa * std::abs(x));
          const double s_max = 2.0 * u / kappa;
          const double freq = 4.0 / op.hbar() +
                              kappa * (std::sqrt(2.0 * n + 1.0) + std::sqrt(2.0 * k + 1.0));
          const double ds_t = 2.0 * std::numbers::pi / (2.5 * freq + 25.0 * kappa);
          int m = std::max(256, int(2.0 * s_max / ds_t) + 1);
          if (m % 2 != 0) ++m;
          const double ds = 2.0 * s_max / m;
          std::vector<double> fab(m + 1);
          for (int l = 0; l <= m; ++l) {
            const double s = -s_max + l * ds;
            fab[l] = eigenfunction_x(n, x - 0.5 * s, op) * eigenfunction_x(k, x + 0.5 * s, op);
          }
          for (int j = 0; j < g; ++j) {
            const double p = pg.at(j);
            const cdouble step = std::polar(1.0, -p * ds / op.hbar());
            cdouble phase = std::polar(1.0, p * s_max / op.hbar());
            cdouble fine = 0.0, coarse = 0.0;
            for (int l = 0; l <= m; ++l) {
              const cdouble v = fab[l] * phase;
              const double wt = (l == 0 || l == m) ? 0.5 : 1.0;
              fine += wt * v;
              if (l % 2 == 0) coarse += (l == 0 || l == m) ? 0.5 * v : v;
              phase *= step;
            }
            const double scale = ds / (2.0 * std::numbers::pi * op.hbar());
            direct[std::size_t(i) * g + j] = fine * scale;
            conv = std::max(conv, std::abs(fine - 2.0 * coarse) * scale);
          }
        }
        // momentum route: xi-integral, column-shared samples
        for (int j = 0; j < g; ++j) {
          const double p = pg.at(j);
          const double u = oracles::detail::tail_half_range(n + k, std::abs(p) / pscale);
          const double xi_max = 2.0 * u * pscale;
          const double freq = 4.0 / op.hbar() +
                              (std::sqrt(2.0 * n + 1.0) + std::sqrt(2.0 * k + 1.0)) / pscale;
          const double dxi_t = 2.0 * std::numbers::pi / (2.5 * freq + 25.0 / pscale);
          int m = std::max(256, int(2.0 * xi_max / dxi_t) + 1);
          if (m % 2 != 0) ++m;
          const double dxi = 2.0 * xi_max / m;
          std::vector<cdouble> fab(m + 1);
          for (int l = 0; l <= m; ++l) {
            const double xi = -xi_max + l * dxi;
            fab[l] = std::conj(eigenfunction_p(n, p - 0.5 * xi, op)) *
                     eigenfunction_p(k, p + 0.5 * xi, op);
          }
          for (int i = 0; i < g; ++i) {
            const double x = xg.at(i);
            const cdouble step = std::polar(1.0, x * dxi / op.hbar());
            cdouble phase = std::polar(1.0, -x * xi_max / op.hbar());
            cdouble fine = 0.0, coarse = 0.0;
            for (int l = 0; l <= m; ++l) {
              const cdouble v = fab[l] * phase;
              const double wt = (l == 0 || l == m) ? 0.5 : 1.0;
              fine += wt * v;
              if (l % 2 == 0) coarse += (l == 0 || l == m) ? 0.5 * v : v;
              phase *= step;
            }
            const double scale = dxi / (2.0 * std::numbers::pi * op.hbar());
            momentum[std::size_t(i) * g + j] = fine * scale;
            conv = std::max(conv, std::abs(fine - 2.0 * coarse) * scale);
          }
        }
        for (int i = 0; i < g; ++i) {
          for (int j = 0; j < g; ++j) {
            const cdouble closed = udm_element({n, k}, {xg.at(i), pg.at(j)}, mp);
            dev_closed = std::max(dev_closed, std::abs(closed - direct[std::size_t(i) * g + j]));
            dev_dual = std::max(dev_dual, std::abs(direct[std::size_t(i) * g + j] -
                                                   momentum[std::size_t(i) * g + j]));
          }
        }
      }
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - t0).count();
    CheckResult c1 = detail::make_result(1, "udm element vs direct transform", dev_closed, 1e-8);
    c1.pass = c1.pass && seconds <= 60.0 && conv < 1e-9;
    char note[96];
    std::snprintf(note, sizeof(note), " (%.2f s, oracle convergence %.2e)", seconds, conv);
    c1.name += note;
    out.push_back(c1);
    out.push_back(detail::make_result(2, "transform dual-route consistency", dev_dual, 1e-8));

    // spot agreement between the sweep integrals and the public oracle ops
    out.push_back(detail::guarded(0, "sweep vs public oracle spot check", 1e-10, [&] {
      auto rng = detail::seeded_rng(7);
      std::uniform_int_distribution<int> oi(0, opts.transform_max_order);
      std::uniform_real_distribution<double> ur(-4.0, 4.0);
      double dev = 0.0;
      for (int t = 0; t < 8; ++t) {
        const int n = oi(rng), k = oi(rng);
        const double x = ur(rng), p = ur(rng);
        const cdouble a = oracles::wigner_transform_direct(n, k, x, p, op).value;
        const cdouble b = oracles::wigner_transform_momentum(n, k, x, p, op).value;
        dev = std::max(dev, std::abs(a - b));
        dev = std::max(dev, std::abs(a - udm_element({n, k}, {x, p}, mp)));
      }
      return dev;
    }));
  }

  // criterion 3: hermiticity on random points
  out.push_back(detail::guarded(3, "hermiticity w_nk = conj(w_kn)", 1e-12, [&] {
    auto rng = detail::seeded_rng(11);
    std::uniform_real_distribution<double> ur(-3.0, 3.0);
    double dev = 0.0;
    for (int t = 0; t < 200; ++t) {
      const PhasePoint pt{ur(rng), ur(rng)};
      for (int n = 0; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
          dev = std::max(dev, std::abs(udm_element({n, k}, pt, mp) -
                                       std::conj(udm_element({k, n}, pt, mp))));
        }
      }
    }
    return dev;
  }));

  // criterion 4: marginals against eigenfunction products
  out.push_back(detail::guarded(4, "coordinate and momentum marginals", 1e-8, [&] {
    const Axis eval{-3.0, 3.0, 25};
    const Axis integration{-12.0, 12.0, 401};
    double dev = 0.0;
    for (int n = 0; n <= 8; ++n) {
      for (int k = 0; k <= 8; ++k) {
        auto w = [&](double x, double p) { return udm_element({n, k}, {x, p}, mp); };
        dev = std::max(dev, oracles::marginal_max_deviation(n, k, 'x', w, op, eval, integration));
        dev = std::max(dev, oracles::marginal_max_deviation(n, k, 'p', w, op, eval, integration));
      }
    }
    return dev;
  }));

  // criterion 9: constant modulus and exact phase winding along circles,
  // plus the angular sign-change counts of the cosine basis fields
  {
    auto circle_point = [&](double eps, double phi) {
      const double r = std::sqrt(2.0 * eps);
      return PhasePoint{r * std::cos(phi) / mp.kappa(),
                        r * std::sin(phi) * mp.hbar() * mp.kappa()};
    };
    auto pick_eps = [&](PolyIndexPair pair) {
      for (double eps : {1.0, 0.8, 1.3, 1.7, 2.2}) {
        if (std::abs(radial_poly(pair, std::sqrt(2.0 * eps))) > 1e-3) return eps;
      }
      return 0.6;
    };

    out.push_back(detail::guarded(9, "modulus constant on circles", 1e-12, [&] {
      double dev = 0.0;
      for (int n = 0; n <= 10; ++n) {
        for (int k = 0; k <= 10; ++k) {
          const double eps = pick_eps({n, k});
          double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
          for (int j = 0; j < 256; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / 256.0;
            const double m = std::abs(udm_element({n, k}, circle_point(eps, phi), mp));
            lo = std::min(lo, m);
            hi = std::max(hi, m);
          }
          if (hi > 0.0) dev = std::max(dev, (hi - lo) / hi);
        }
      }
      return dev;
    }));

    out.push_back(detail::guarded(9, "phase winding 2 pi (n - k)", 1e-8, [&] {
      double dev = 0.0;
      for (int n = 0; n <= 10; ++n) {
        for (int k = 0; k <= 10; ++k) {
          const double eps = pick_eps({n, k});
          double total = 0.0;
          double prev = std::arg(udm_element({n, k}, circle_point(eps, 0.0), mp));
          for (int j = 1; j <= 256; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / 256.0;
            const double cur = std::arg(udm_element({n, k}, circle_point(eps, phi), mp));
            double d = cur - prev;
            while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
            while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
            total += d;
            prev = cur;
          }
          dev = std::max(dev, std::abs(total - 2.0 * std::numbers::pi * (n - k)));
        }
      }
      return dev;
    }));

    out.push_back(detail::guarded(9, "angular sign changes of cosine basis", 0.0, [&] {
      auto count_changes = [&](PolyIndexPair pair) {
        const double eps = 1.0;
        int changes = 0;
        auto value = [&](int j) {
          // half-step offset keeps samples away from the exact zeros
          const double phi = 2.0 * std::numbers::pi * (j + 0.5) / 720.0;
          return basis_cos(pair, circle_point(eps, phi), mp);
        };
        double prev = value(719);
        for (int j = 0; j < 720; ++j) {
          const double cur = value(j);
          if ((cur > 0.0) != (prev > 0.0)) ++changes;
          prev = cur;
        }
        return changes;
      };
      const int c52 = count_changes({5, 2});
      const int c520 = count_changes({5, 20});
      return double(std::abs(c52 - 6) + std::abs(c520 - 30));
    }));
  }

  return out;
}

// ---------------------------------------------------------------------------
// Polynomial checks: Laguerre reduction, shift integral, orthogonality norms.
// ---------------------------------------------------------------------------

// The polynomial identities are unit-system independent; the options are
// accepted for suite-runner uniformity.
inline std::vector<CheckResult> polynomial_checks([[maybe_unused]] const Options& opts) {
  std::vector<CheckResult> out;

  // criterion 5: diagonal reduction to Laguerre on random complex points
  out.push_back(detail::guarded(5, "diagonal reduction to Laguerre", 1e-10, [&] {
    auto rng = detail::seeded_rng(5);
    std::uniform_real_distribution<double> ur(-3.0, 3.0);
    double dev = 0.0;
    for (int t = 0; t < 100; ++t) {
      cdouble z1(ur(rng), ur(rng)), z2(ur(rng), ur(rng));
      if (std::abs(z1) > 3.0) z1 *= 3.0 / std::abs(z1);
      if (std::abs(z2) > 3.0) z2 *= 3.0 / std::abs(z2);
      for (int n = 0; n <= 12; ++n) {
        const cdouble lag = wigner::detail::laguerre_impl<cdouble>(n, -2.0 * z1 * z2);
        const cdouble p = binomial_poly({n, n}, z1, z2);
        dev = std::max(dev, std::abs(p - lag) / std::max(1.0, std::abs(lag)));
      }
    }
    return dev;
  }));

  // criterion 6: Hermite shift integral vs the closed-form sum
  out.push_back(detail::guarded(6, "shift-integral identity", 1e-8, [&] {
    auto rng = detail::seeded_rng(6);
    std::uniform_real_distribution<double> ur(-2.0, 2.0);
    double dev = 0.0;
    for (int t = 0; t < 12; ++t) {
      const double s1 = ur(rng), s2 = ur(rng);
      for (int n = 0; n <= 8; ++n) {
        for (int k = 0; k <= 8; ++k) {
          const auto r = oracles::hermite_shift_integral<double>(n, k, s1, s2);
          r.require_converged(1e-9);
          dev = std::max(dev, std::abs(r.value - binomial_poly({n, k}, s1, s2).real()));
        }
      }
    }
    return dev;
  }));

  // criterion 7: orthogonality sweep over all quadruples with index sum <= 12.
  // The polynomial value tables on the Gauss-Hermite grids are precomputed
  // per pair; the per-quadruple integral is then a weighted dot product.
  {
    double dev_allowed_2d = 0.0, dev_zero_2d = 0.0;
    double dev_allowed_1d = 0.0, dev_zero_1d = 0.0;
    double max_conv = 0.0;
    bool failed = false;
    std::string error;
    try {
      const int sum_cap = 12;
      std::vector<std::pair<int, int>> pairs;
      std::vector<int> pair_id((sum_cap + 1) * (sum_cap + 1), -1);
      for (int n = 0; n <= sum_cap; ++n) {
        for (int k = 0; n + k <= sum_cap; ++k) {
          pair_id[n * (sum_cap + 1) + k] = static_cast<int>(pairs.size());
          pairs.emplace_back(n, k);
        }
      }
      const auto& coarse_rule = oracles::gauss_hermite(oracles::kDefaultGaussHermiteOrder);
      const auto& fine_rule = oracles::gauss_hermite(2 * oracles::kDefaultGaussHermiteOrder);
      const int nc = coarse_rule.order(), nf = fine_rule.order();

      std::vector<std::vector<double>> grid_c(pairs.size()), grid_f(pairs.size());
      std::vector<std::vector<double>> rad_c(pairs.size()), rad_f(pairs.size());
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const oracles::detail::BinomialPolyTable table(pairs[p].first, pairs[p].second);
        grid_c[p].resize(std::size_t(nc) * nc);
        for (int i = 0; i < nc; ++i) {
          for (int j = 0; j < nc; ++j) {
            grid_c[p][std::size_t(i) * nc + j] =
                table.eval_real(coarse_rule.nodes()[i], coarse_rule.nodes()[j]);
          }
        }
        grid_f[p].resize(std::size_t(nf) * nf);
        for (int i = 0; i < nf; ++i) {
          for (int j = 0; j < nf; ++j) {
            grid_f[p][std::size_t(i) * nf + j] =
                table.eval_real(fine_rule.nodes()[i], fine_rule.nodes()[j]);
          }
        }
        rad_c[p].resize(nc);
        for (int i = 0; i < nc; ++i) rad_c[p][i] = table.eval_radial(coarse_rule.nodes()[i]);
        rad_f[p].resize(nf);
        for (int i = 0; i < nf; ++i) rad_f[p][i] = table.eval_radial(fine_rule.nodes()[i]);
      }

      auto dot2d = [](const std::vector<double>& a, const std::vector<double>& b,
                      const oracles::GaussHermiteRule& rule) {
        double acc = 0.0;
        const int n = rule.order();
        for (int i = 0; i < n; ++i) {
          double inner = 0.0;
          for (int j = 0; j < n; ++j) {
            inner += rule.weights()[j] * a[std::size_t(i) * n + j] * b[std::size_t(i) * n + j];
          }
          acc += rule.weights()[i] * inner;
        }
        return acc;
      };
      auto dot1d = [](const std::vector<double>& a, const std::vector<double>& b,
                      const oracles::GaussHermiteRule& rule) {
        double acc = 0.0;
        for (int i = 0; i < rule.order(); ++i) acc += rule.weights()[i] * a[i] * b[i];
        return acc;
      };

      for (std::size_t pa = 0; pa < pairs.size(); ++pa) {
        const auto [n1, k1] = pairs[pa];
        for (std::size_t pb = pa; pb < pairs.size(); ++pb) {
          const auto [n2, k2] = pairs[pb];
          if (n1 + k1 + n2 + k2 > sum_cap) continue;
          const double i2 = dot2d(grid_f[pa], grid_f[pb], fine_rule);
          const double i2c = dot2d(grid_c[pa], grid_c[pb], coarse_rule);
          const double i1 = dot1d(rad_f[pa], rad_f[pb], fine_rule);
          const double i1c = dot1d(rad_c[pa], rad_c[pb], coarse_rule);
          const double n2d = ortho_norm_2d(n1, k1, n2, k2);
          const double n1d = ortho_norm_1d(n1, k1, n2, k2);
          if (parity_kronecker(n1 + n2, k1 + k2) == 0) {
            dev_zero_2d = std::max(dev_zero_2d, std::abs(i2));
            dev_zero_1d = std::max(dev_zero_1d, std::abs(i1));
            dev_zero_2d = std::max(dev_zero_2d, std::abs(n2d));
            dev_zero_1d = std::max(dev_zero_1d, std::abs(n1d));
          } else {
            dev_allowed_2d = std::max(dev_allowed_2d,
                                      std::abs(i2 - n2d) / std::max(1.0, std::abs(n2d)));
            dev_allowed_1d = std::max(dev_allowed_1d,
                                      std::abs(i1 - n1d) / std::max(1.0, std::abs(n1d)));
            max_conv = std::max(max_conv, std::abs(i2 - i2c) / std::max(1.0, std::abs(i2)));
            max_conv = std::max(max_conv, std::abs(i1 - i1c) / std::max(1.0, std::abs(i1)));
          }
        }
      }
    } catch (const std::exception& e) {
      failed = true;
      error = e.what();
    }
    auto push = [&](std::string name, double dev, double tol) {
      CheckResult r = detail::make_result(7, std::move(name), dev, tol);
      if (failed) {
        r.pass = false;
        r.name += " (error: " + error + ")";
      }
      out.push_back(r);
    };
    push("2D orthogonality: parity-forbidden", dev_zero_2d, 1e-10);
    push("2D orthogonality: norms vs quadrature", dev_allowed_2d, 1e-8);
    push("1D orthogonality: parity-forbidden", dev_zero_1d, 1e-10);
    push("1D orthogonality: norms vs quadrature", dev_allowed_1d, 1e-8);
    push("orthogonality quadrature convergence", max_conv, 1e-9);
    out.push_back(detail::make_result(
        7, "radial norm (1,1,1,1) = 2 sqrt(pi)",
        std::abs(ortho_norm_1d(1, 1, 1, 1) - 2.0 * std::sqrt(std::numbers::pi)), 1e-10));
  }

  return out;
}

// ---------------------------------------------------------------------------
// State-assembly checks: rotation form vs trace form, realness, circle
// constancy for diagonal (mixed) density matrices.
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> state_checks(const Options& opts) {
  std::vector<CheckResult> out;
  const OscillatorParams& mp = opts.params;

  auto random_state = [](std::mt19937& rng, int n_coeffs) {
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    std::vector<cdouble> c(n_coeffs);
    double norm = 0.0;
    for (auto& v : c) {
      v = cdouble(ur(rng), ur(rng));
      norm += std::norm(v);
    }
    for (auto& v : c) v /= std::sqrt(norm);
    return CoefficientVector::normalized(std::move(c));
  };

  out.push_back(detail::guarded(8, "rotation form equals trace form", 1e-10, [&] {
    auto rng = detail::seeded_rng(8);
    std::uniform_real_distribution<double> ur(-3.0, 3.0);
    double dev = 0.0;
    for (int s = 0; s < 100; ++s) {
      const CoefficientVector c = random_state(rng, 11);
      const DensityMatrix rho = density_from_coeffs(c);
      for (int t = 0; t < 50; ++t) {
        const PhasePoint pt{ur(rng), ur(rng)};
        dev = std::max(dev, std::abs(wigner_rotation_form(c, pt, mp) -
                                     wigner_trace(rho, pt, mp)));
      }
    }
    return dev;
  }));

  out.push_back(detail::guarded(8, "trace sum real for Hermitian rho", 1e-10, [&] {
    auto rng = detail::seeded_rng(88);
    std::uniform_real_distribution<double> ur(-3.0, 3.0);
    double dev = 0.0;
    for (int s = 0; s < 20; ++s) {
      const CoefficientVector c = random_state(rng, 11);
      const DensityMatrix rho = density_from_coeffs(c);
      for (int t = 0; t < 20; ++t) {
        const PhasePoint pt{ur(rng), ur(rng)};
        cdouble acc = 0.0;
        for (int n = 0; n < rho.size(); ++n) {
          for (int k = 0; k < rho.size(); ++k) {
            acc += rho.at(k, n) * udm_element({n, k}, pt, mp);
          }
        }
        dev = std::max(dev, std::abs(acc.imag()) / (1.0 + std::abs(acc.real())));
      }
    }
    return dev;
  }));

  out.push_back(detail::guarded(8, "diagonal rho constant on circles", 1e-12, [&] {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m(0, 0) = 0.5;
    m(1, 1) = 0.3;
    m(2, 2) = 0.2;
    const DensityMatrix rho = DensityMatrix::from_matrix(m);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < 256; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / 256.0;
      const double r = std::sqrt(2.0);
      const PhasePoint pt{r * std::cos(phi) / mp.kappa(),
                          r * std::sin(phi) * mp.hbar() * mp.kappa()};
      const double w = wigner_trace(rho, pt, mp);
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
    return (hi - lo) / std::max(1.0, std::abs(hi));
  }));

  return out;
}

// ---------------------------------------------------------------------------
// Kinetic checks: the Vlasov-to-Moyal residual and the dissipation averages.
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> vlasov_checks(const Options& opts) {
  std::vector<CheckResult> out;
  const OscillatorParams& mp = opts.params;

  out.push_back(detail::guarded(10, "kinetic residual, harmonic potential", 1e-10, [&] {
    const PotentialSeries u({}, 1.0);
    const PhaseField f2 = gaussian_field({-1.0, 1.0, 21}, {-3.6, 3.6, 721}, 1.0, 0.6);
    return vlasov_moyal_residual(u, f2, 3, mp);
  }));

  {
    double res_h = 0.0, res_h2 = 0.0;
    bool failed = false;
    std::string error;
    try {
      const PotentialSeries u({0.0, 0.0, 0.0, 0.0, 0.3}, 1.0);
      const PhaseField f2 = gaussian_field({-1.0, 1.0, 21}, {-3.6, 3.6, 721}, 1.0, 0.6);
      const PhaseField f2_fine = gaussian_field({-1.0, 1.0, 21}, {-3.6, 3.6, 1441}, 1.0, 0.6);
      res_h = vlasov_moyal_residual(u, f2, 2, mp);
      res_h2 = vlasov_moyal_residual(u, f2_fine, 2, mp);
    } catch (const std::exception& e) {
      failed = true;
      error = e.what();
    }
    CheckResult a = detail::make_result(10, "kinetic residual, quartic at h = 0.01", res_h, 1e-5);
    const double ratio = res_h2 > 0.0 ? res_h / res_h2 : 0.0;
    char note[64];
    std::snprintf(note, sizeof(note), " (measured %.1fx)", ratio);
    // reported as the shortfall below the required 8x reduction
    CheckResult b = detail::make_result(10,
                                        std::string("kinetic residual refinement >= 8x") + note,
                                        std::max(0.0, 8.0 - ratio), 0.0);
    if (failed) {
      a.pass = false;
      b.pass = false;
      a.name += " (error: " + error + ")";
      b.name += " (error: " + error + ")";
    }
    out.push_back(a);
    out.push_back(b);
  }

  out.push_back(detail::guarded(11, "averaged acceleration equals -U'/m", 1e-6, [&] {
    const PotentialSeries u({0.0, 0.0, 0.0, 0.0, 0.1}, 1.0);
    const PhaseField f2 = gaussian_field({-1.5, 1.5, 31}, {-7.0, 7.0, 701}, 1.0, 1.0);
    const std::vector<double> avg = mean_acceleration_avg(u, f2, mp);
    double dev = 0.0;
    for (int ix = 0; ix < f2.nx(); ++ix) {
      if (is_masked(avg[ix])) continue;
      const double x = f2.x_axis().at(ix);
      const double expected = -potential_odd_derivative(u, 1, x, mp) / mp.mass();
      dev = std::max(dev, std::abs(avg[ix] - expected));
    }
    return dev;
  }));

  out.push_back(detail::guarded(11, "dissipation average vanishes for Gaussian", 1e-8, [&] {
    const PotentialSeries u({0.0, 0.0, 0.0, 0.0, 0.1}, 1.0);
    const PhaseField f2 = gaussian_field({-1.5, 1.5, 31}, {-7.0, 7.0, 701}, 1.0, 1.0);
    const std::vector<double> q = dissipation_source_avg(u, f2, 3, mp);
    double dev = 0.0;
    for (double v : q) {
      if (!is_masked(v)) dev = std::max(dev, std::abs(v));
    }
    return dev;
  }));

  out.push_back(detail::guarded(11, "dissipation average two-route agreement", 1e-6, [&] {
    const PotentialSeries u({0.0, 0.0, 0.0, 0.0, 0.1}, 1.0);
    const PhaseField f2 =
        perturbed_gaussian_field({-1.5, 1.5, 31}, {-6.0, 8.0, 701}, 1.0, 1.0, 0.1, 0.8);
    const std::vector<double> s2_route = dissipation_source_avg(u, f2, 2, mp);
    const std::vector<double> q2 = dissipation_source(u, f2, 2, mp);
    const int nv = f2.nv();
    double dev = 0.0;
    for (int ix = 0; ix < f2.nx(); ++ix) {
      double num = 0.0, den = 0.0;
      for (int iv = 0; iv < nv; ++iv) {
        const double w = (iv == 0 || iv == nv - 1) ? 0.5 : 1.0;
        den += w * f2.at(ix, iv);
        const double q = q2[std::size_t(ix) * nv + iv];
        if (!is_masked(q)) num += w * q * f2.at(ix, iv);
      }
      const double direct = num / den;
      if (!is_masked(s2_route[ix])) dev = std::max(dev, std::abs(direct - s2_route[ix]));
    }
    return dev;
  }));

  return out;
}

// ---------------------------------------------------------------------------
// Energy checks: exact oscillator levels, the quartic correction, the
// admissible-diagonal set, and the end-to-end quadrature comparison.
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> energy_checks(const Options& opts) {
  std::vector<CheckResult> out;
  const OscillatorParams& mp = opts.params;
  const OscillatorParams& op = opts.oracle_params;

  out.push_back(detail::guarded(12, "oscillator levels hbar w (n + 1/2)", 1e-12, [&] {
    const PotentialSeries none({}, mp.omega());
    double dev = 0.0;
    for (int n = 0; n <= 5; ++n) {
      std::vector<cdouble> c(n + 1, 0.0);
      c[n] = 1.0;
      const EnergyBreakdown e = total_energy(CoefficientVector::normalized(std::move(c)),
                                             none, mp);
      dev = std::max(dev, std::abs(e.total - mp.hbar() * mp.omega() * (n + 0.5)));
    }
    return dev;
  }));

  out.push_back(detail::guarded(12, "quartic ground-state correction 0.75 mu", 1e-8, [&] {
    double dev = 0.0;
    for (double mu : {0.05, 0.1, 0.2}) {
      const PotentialSeries du({0.0, 0.0, 0.0, 0.0, mu}, mp.omega());
      const EnergyBreakdown e =
          total_energy(CoefficientVector::normalized({cdouble(1.0, 0.0)}), du, mp);
      dev = std::max(dev, std::abs(e.total - (0.5 + 0.75 * mu)));
    }
    return dev;
  }));

  {
    const PotentialSeries du({0.0, 0.0, 0.0, 0.0, 0.1}, mp.omega());
    const std::vector<int> expected{-4, -2, 0, 2, 4};
    const bool ok = admissible_windings(du) == expected;
    out.push_back({12, "quartic admissible diagonals {-4,-2,0,2,4}", ok ? 0.0 : 1.0, 0.0, ok});
  }

  out.push_back(detail::guarded(12, "closed form vs quadrature, random states", 1e-6, [&] {
    auto rng = detail::seeded_rng(12);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    std::uniform_int_distribution<int> un(2, 6);
    double dev = 0.0;
    for (int s = 0; s < 20; ++s) {
      const int nmax = un(rng);
      std::vector<cdouble> c(nmax + 1);
      double norm = 0.0;
      for (auto& v : c) {
        v = cdouble(ur(rng), ur(rng));
        norm += std::norm(v);
      }
      for (auto& v : c) v /= std::sqrt(norm);
      const CoefficientVector state = CoefficientVector::normalized(c);
      const oracles::StateWignerGrid grid(c, op);
      for (double mu : {0.0, 0.05, 0.2}) {
        const PotentialSeries du({0.0, 0.0, 0.0, 0.0, mu}, mp.omega());
        const double closed = total_energy(state, du, mp).total;
        const auto quad = grid.energy(du.coefficients());
        quad.require_converged(1e-7 * std::max(1.0, std::abs(closed)));
        dev = std::max(dev, std::abs(closed - quad.value) / std::max(1.0, std::abs(closed)));
      }
    }
    return dev;
  }));

  return out;
}

inline std::vector<CheckResult> run_suite(const std::string& selector, const Options& opts) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> r) {
    out.insert(out.end(), r.begin(), r.end());
  };
  if (selector == "udm") {
    append(udm_checks(opts));
  } else if (selector == "poly") {
    append(polynomial_checks(opts));
  } else if (selector == "state") {
    append(state_checks(opts));
  } else if (selector == "vlasov") {
    append(vlasov_checks(opts));
  } else if (selector == "energy") {
    append(energy_checks(opts));
  } else if (selector == "all") {
    append(udm_checks(opts));
    append(polynomial_checks(opts));
    append(state_checks(opts));
    append(vlasov_checks(opts));
    append(energy_checks(opts));
  } else {
    throw std::invalid_argument("unknown verify suite: " + selector);
  }
  return out;
}

}  // namespace wigner::verify
