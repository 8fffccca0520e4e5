#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "wigner/state.hpp"

using wigner::cdouble;
using wigner::CoefficientVector;
using wigner::DensityMatrix;
using wigner::OscillatorParams;
using wigner::PhasePoint;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

CoefficientVector random_state(std::mt19937& rng, int n_coeffs) {
  std::uniform_real_distribution<double> ur(-1.0, 1.0);
  std::vector<cdouble> c(n_coeffs);
  double norm = 0.0;
  for (auto& v : c) {
    v = cdouble(ur(rng), ur(rng));
    norm += std::norm(v);
  }
  for (auto& v : c) v /= std::sqrt(norm);
  return CoefficientVector::normalized(std::move(c));
}

}  // namespace

TEST(CoefficientVector, NormalizationInvariant) {
  EXPECT_NO_THROW(CoefficientVector::normalized({kInvSqrt2, kInvSqrt2}));
  EXPECT_THROW(CoefficientVector::normalized({0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(CoefficientVector::normalized({}), std::invalid_argument);
  const CoefficientVector loose = CoefficientVector::unnormalized({0.5, 0.5});
  EXPECT_FALSE(loose.is_normalized());
  EXPECT_NEAR(loose.norm_sq(), 0.5, 1e-15);
}

TEST(DensityMatrix, FromCoefficients) {
  const DensityMatrix ground =
      wigner::density_from_coeffs(CoefficientVector::normalized({1.0}));
  EXPECT_EQ(ground.size(), 1);
  EXPECT_NEAR(std::abs(ground.at(0, 0) - cdouble(1.0)), 0.0, 1e-15);

  const DensityMatrix even =
      wigner::density_from_coeffs(CoefficientVector::normalized({kInvSqrt2, kInvSqrt2}));
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      EXPECT_NEAR(std::abs(even.at(a, b) - cdouble(0.5)), 0.0, 1e-14);
    }
  }

  const DensityMatrix phased = wigner::density_from_coeffs(
      CoefficientVector::normalized({kInvSqrt2, cdouble(0.0, kInvSqrt2)}));
  EXPECT_NEAR(std::abs(phased.at(0, 1) - cdouble(0.0, -0.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(phased.at(1, 0) - cdouble(0.0, 0.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(phased.at(0, 0) - cdouble(0.5)), 0.0, 1e-14);
  EXPECT_TRUE(phased.is_rank_one());

  EXPECT_THROW(
      wigner::density_from_coeffs(CoefficientVector::unnormalized({cdouble(0.0, 0.0)})),
      std::invalid_argument);
}

TEST(DensityMatrix, FromMatrixValidation) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 0.6;
  m(1, 1) = 0.4;
  EXPECT_NO_THROW(DensityMatrix::from_matrix(m));
  EXPECT_FALSE(DensityMatrix::from_matrix(m).is_rank_one());

  m(0, 1) = cdouble(0.0, 0.3);  // breaks hermiticity
  EXPECT_THROW(DensityMatrix::from_matrix(m), std::invalid_argument);
  m(0, 1) = cdouble(0.0, 0.3);
  m(1, 0) = cdouble(0.0, -0.3);
  EXPECT_NO_THROW(DensityMatrix::from_matrix(m));

  m(0, 0) = 0.9;  // trace 1.3
  EXPECT_THROW(DensityMatrix::from_matrix(m), std::invalid_argument);
}

TEST(PhaseVector, ExamplesAndZeroRejection) {
  const auto a = wigner::phase_vector(cdouble(1.0, 0.0));
  EXPECT_DOUBLE_EQ(a.cos_alpha, 1.0);
  EXPECT_DOUBLE_EQ(a.sin_alpha, 0.0);
  const auto b = wigner::phase_vector(cdouble(0.0, 1.0));
  EXPECT_DOUBLE_EQ(b.cos_alpha, 0.0);
  EXPECT_DOUBLE_EQ(b.sin_alpha, 1.0);
  const auto c = wigner::phase_vector(cdouble(kInvSqrt2, kInvSqrt2));
  EXPECT_NEAR(c.cos_alpha, kInvSqrt2, 1e-15);
  EXPECT_NEAR(c.sin_alpha, kInvSqrt2, 1e-15);
  EXPECT_NEAR(c.cos_alpha * c.cos_alpha + c.sin_alpha * c.sin_alpha, 1.0, 1e-14);
  EXPECT_THROW(wigner::phase_vector(cdouble(0.0, 0.0)), wigner::undefined_phase_error);
}

TEST(RotationMatrix, WindingAngles) {
  const Eigen::Matrix2d id = wigner::rotation_matrix({3, 3}, 1.234);
  EXPECT_NEAR((id - Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-15);

  const Eigen::Matrix2d r10 = wigner::rotation_matrix({1, 0}, std::numbers::pi / 2.0);
  Eigen::Matrix2d expected10;
  expected10 << 0.0, 1.0, -1.0, 0.0;
  EXPECT_NEAR((r10 - expected10).norm(), 0.0, 1e-15);

  const Eigen::Matrix2d r02 = wigner::rotation_matrix({0, 2}, std::numbers::pi / 2.0);
  Eigen::Matrix2d expected02;
  expected02 << -1.0, 0.0, 0.0, -1.0;
  EXPECT_NEAR((r02 - expected02).norm(), 0.0, 1e-14);

  std::mt19937 rng(2);
  std::uniform_real_distribution<double> ur(-3.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Matrix2d r = wigner::rotation_matrix({7, 2}, ur(rng));
    EXPECT_NEAR((r * r.transpose() - Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-14);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-14);
  }
}

TEST(WignerTrace, PureStateExamples) {
  const OscillatorParams unit;
  const double inv_pi = 1.0 / std::numbers::pi;
  const auto rho0 = wigner::density_from_coeffs(CoefficientVector::normalized({1.0}));
  EXPECT_NEAR(wigner::wigner_trace(rho0, {0.0, 0.0}, unit), inv_pi, 1e-14);

  const auto rho1 =
      wigner::density_from_coeffs(CoefficientVector::normalized({0.0, 1.0}));
  EXPECT_NEAR(wigner::wigner_trace(rho1, {0.0, 0.0}, unit), -inv_pi, 1e-14);

  const auto rho_mix =
      wigner::density_from_coeffs(CoefficientVector::normalized({kInvSqrt2, kInvSqrt2}));
  EXPECT_NEAR(wigner::wigner_trace(rho_mix, {0.0, 0.0}, unit), 0.0, 1e-14);
}

TEST(WignerRotationForm, EqualsTraceForm) {
  const OscillatorParams unit;
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> ur(-3.0, 3.0);
  for (int s = 0; s < 20; ++s) {
    const CoefficientVector c = random_state(rng, 9);
    const DensityMatrix rho = wigner::density_from_coeffs(c);
    for (int t = 0; t < 20; ++t) {
      const PhasePoint pt{ur(rng), ur(rng)};
      EXPECT_NEAR(wigner::wigner_rotation_form(c, pt, unit),
                  wigner::wigner_trace(rho, pt, unit), 1e-10);
    }
  }
}

TEST(WignerRotationForm, SingleAndComplexCoefficients) {
  const OscillatorParams unit;
  const CoefficientVector ground = CoefficientVector::normalized({1.0});
  for (const PhasePoint pt : {PhasePoint{0.3, -1.2}, PhasePoint{1.5, 0.4}}) {
    EXPECT_NEAR(wigner::wigner_rotation_form(ground, pt, unit),
                wigner::diagonal_wigner(0, pt, unit), 1e-14);
  }
  // zero coefficients are skipped, not given an arbitrary phase
  const CoefficientVector gappy =
      CoefficientVector::normalized({kInvSqrt2, 0.0, cdouble(0.0, kInvSqrt2)});
  const DensityMatrix rho = wigner::density_from_coeffs(gappy);
  const PhasePoint pt{0.0, 1.0};
  EXPECT_NEAR(wigner::wigner_rotation_form(gappy, pt, unit),
              wigner::wigner_trace(rho, pt, unit), 1e-12);
}

TEST(WignerGrid, NormalizationAndMarginals) {
  const OscillatorParams unit;
  std::mt19937 rng(21);
  const CoefficientVector c = random_state(rng, 9);

  const wigner::Axis xa{-8.0, 8.0, 201}, pa{-8.0, 8.0, 201};
  const std::vector<double> grid = wigner::wigner_grid(c, xa, pa, unit);

  double mass = 0.0;
  for (int i = 0; i < xa.n; ++i) {
    const double wx = (i == 0 || i == xa.n - 1) ? 0.5 : 1.0;
    for (int j = 0; j < pa.n; ++j) {
      const double wp = (j == 0 || j == pa.n - 1) ? 0.5 : 1.0;
      mass += wx * wp * grid[std::size_t(i) * pa.n + j];
    }
  }
  mass *= xa.step() * pa.step();
  EXPECT_NEAR(mass, 1.0, 1e-6);

  // x-marginal reproduces |Psi(x)|^2
  for (int i = 40; i < xa.n; i += 23) {
    double marginal = 0.0;
    for (int j = 0; j < pa.n; ++j) {
      const double wp = (j == 0 || j == pa.n - 1) ? 0.5 : 1.0;
      marginal += wp * grid[std::size_t(i) * pa.n + j];
    }
    marginal *= pa.step();
    cdouble psi = 0.0;
    for (int n = 0; n < c.size(); ++n) psi += c[n] * wigner::eigenfunction_x(n, xa.at(i), unit);
    EXPECT_NEAR(marginal, std::norm(psi), 1e-7);
  }
}

TEST(BasisFields, DiagonalCosineConstantOnCircles) {
  const OscillatorParams unit;
  // winding zero: no angular dependence at all
  const double r = std::sqrt(2.0);
  double lo = 1e300, hi = -1e300;
  for (int j = 0; j < 64; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / 64.0;
    const double v = wigner::basis_cos({1, 1}, {r * std::cos(phi), r * std::sin(phi)}, unit);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_LT(hi - lo, 1e-12);
  // and the sine component of a diagonal pair vanishes identically
  EXPECT_DOUBLE_EQ(wigner::basis_sin({3, 3}, {0.7, -0.4}, unit), 0.0);
  // value at the origin is (-1)^n
  EXPECT_NEAR(wigner::basis_cos({2, 2}, {0.0, 0.0}, unit), 1.0, 1e-14);
  EXPECT_NEAR(wigner::basis_cos({3, 3}, {0.0, 0.0}, unit), -1.0, 1e-14);
}

TEST(WignerTrace, DiagonalMixedStateConstantOnCircles) {
  const OscillatorParams unit;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.3;
  m(2, 2) = 0.2;
  const DensityMatrix rho = DensityMatrix::from_matrix(m);
  const double r = std::sqrt(2.0 * 1.3);
  double lo = 1e300, hi = -1e300;
  for (int j = 0; j < 128; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / 128.0;
    const double w = wigner::wigner_trace(rho, {r * std::cos(phi), r * std::sin(phi)}, unit);
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  EXPECT_LT(hi - lo, 1e-12 * std::max(1.0, std::abs(hi)));
}

TEST(CoeffsFromSamples, RecoversBasisStates) {
  const OscillatorParams unit;
  const wigner::Axis xa{-10.0, 10.0, 2001};

  std::vector<cdouble> psi0(xa.n), psi03(xa.n);
  for (int i = 0; i < xa.n; ++i) {
    const double x = xa.at(i);
    psi0[i] = wigner::eigenfunction_x(0, x, unit);
    psi03[i] = (wigner::eigenfunction_x(0, x, unit) + wigner::eigenfunction_x(3, x, unit)) *
               kInvSqrt2;
  }

  const auto r0 = wigner::coeffs_from_samples(psi0, xa, unit, 6);
  EXPECT_NEAR(std::abs(r0.coeffs[0] - cdouble(1.0)), 0.0, 1e-8);
  for (int n = 1; n <= 6; ++n) EXPECT_NEAR(std::abs(r0.coeffs[n]), 0.0, 1e-8);
  EXPECT_NEAR(r0.truncation_residual, 0.0, 1e-8);

  const auto r03 = wigner::coeffs_from_samples(psi03, xa, unit, 6);
  EXPECT_NEAR(std::abs(r03.coeffs[0] - cdouble(kInvSqrt2)), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(r03.coeffs[3] - cdouble(kInvSqrt2)), 0.0, 1e-8);
}

TEST(CoeffsFromSamples, CoherentStateOverlap) {
  const OscillatorParams unit;
  const wigner::Axis xa{-9.0, 11.0, 4001};
  std::vector<cdouble> psi(xa.n);
  for (int i = 0; i < xa.n; ++i) {
    const double x = xa.at(i);
    psi[i] = std::exp(-0.5 * (x - 1.0) * (x - 1.0)) / std::pow(std::numbers::pi, 0.25);
  }
  const auto r = wigner::coeffs_from_samples(psi, xa, unit, 20);
  for (int n = 0; n <= 8; ++n) {
    const double expected = std::exp(-0.25) * std::pow(kInvSqrt2, n) /
                            std::exp(0.5 * wigner::log_factorial(n));
    EXPECT_NEAR(std::abs(r.coeffs[n] - cdouble(expected)), 0.0, 1e-6) << "n=" << n;
  }
}

TEST(CoeffsFromSamples, GridErrors) {
  const OscillatorParams unit;
  // too coarse for n_max = 40
  {
    const wigner::Axis xa{-10.0, 10.0, 41};
    std::vector<cdouble> psi(xa.n, 0.1);
    EXPECT_THROW(wigner::coeffs_from_samples(psi, xa, unit, 40), wigner::grid_error);
  }
  // support not covered
  {
    const wigner::Axis xa{-1.0, 1.0, 201};
    std::vector<cdouble> psi(xa.n);
    for (int i = 0; i < xa.n; ++i) {
      psi[i] = wigner::eigenfunction_x(0, xa.at(i), unit);
    }
    EXPECT_THROW(wigner::coeffs_from_samples(psi, xa, unit, 2), wigner::grid_error);
  }
  // not normalizable
  {
    const wigner::Axis xa{-10.0, 10.0, 201};
    std::vector<cdouble> psi(xa.n, 0.0);
    EXPECT_THROW(wigner::coeffs_from_samples(psi, xa, unit, 2), wigner::grid_error);
  }
}
