#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "wigner/energy.hpp"
#include "wigner/oracles.hpp"

using wigner::cdouble;
using wigner::CoefficientVector;
using wigner::EnergyBreakdown;
using wigner::OscillatorParams;
using wigner::PotentialSeries;

namespace {

const OscillatorParams kUnit;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

CoefficientVector basis_state(int n) {
  std::vector<cdouble> c(n + 1, 0.0);
  c[n] = 1.0;
  return CoefficientVector::normalized(std::move(c));
}

}  // namespace

TEST(TotalEnergy, OscillatorLevels) {
  const PotentialSeries none({}, 1.0);
  for (int n = 0; n <= 6; ++n) {
    const EnergyBreakdown e = wigner::total_energy(basis_state(n), none, kUnit);
    EXPECT_NEAR(e.total, n + 0.5, 1e-13);
    EXPECT_NEAR(e.offdiagonal_part, 0.0, 1e-13);
    EXPECT_DOUBLE_EQ(e.total, e.diagonal_part + e.offdiagonal_part);
  }
  const OscillatorParams p(2.0, 1.0, 3.0);
  const EnergyBreakdown e = wigner::total_energy(basis_state(2), PotentialSeries({}, 3.0), p);
  EXPECT_NEAR(e.total, 2.0 * 3.0 * 2.5, 1e-12);
}

TEST(TotalEnergy, QuarticGroundStateCorrection) {
  for (double mu : {0.05, 0.1, 0.2}) {
    const PotentialSeries du({0.0, 0.0, 0.0, 0.0, mu}, 1.0);
    const EnergyBreakdown e = wigner::total_energy(basis_state(0), du, kUnit);
    EXPECT_NEAR(e.total, 0.5 + 0.75 * mu, 1e-12);
    EXPECT_NEAR(e.offdiagonal_part, 0.75 * mu, 1e-12);
  }
}

TEST(TotalEnergy, DiagonalMixtureOfLevels) {
  const PotentialSeries none({}, 1.0);
  const CoefficientVector c = CoefficientVector::normalized({kInvSqrt2, 0.0, kInvSqrt2});
  EXPECT_NEAR(wigner::total_energy(c, none, kUnit).total, 0.5 * 0.5 + 0.5 * 2.5, 1e-13);
}

TEST(TotalEnergy, GlobalPhaseInvariance) {
  const PotentialSeries du({0.0, 0.0, 0.3, 0.0, 0.1}, 1.0);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> ur(-1.0, 1.0);
  std::vector<cdouble> c(5);
  double norm = 0.0;
  for (auto& v : c) {
    v = cdouble(ur(rng), ur(rng));
    norm += std::norm(v);
  }
  for (auto& v : c) v /= std::sqrt(norm);
  const EnergyBreakdown base = wigner::total_energy(CoefficientVector::normalized(c), du, kUnit);
  const cdouble phase = std::polar(1.0, 1.234);
  for (auto& v : c) v *= phase;
  const EnergyBreakdown rotated =
      wigner::total_energy(CoefficientVector::normalized(c), du, kUnit);
  EXPECT_NEAR(base.total, rotated.total, 1e-12);
  EXPECT_NEAR(base.diagonal_part, rotated.diagonal_part, 1e-12);
}

TEST(TotalEnergy, SelectionRuleSilencesOddWindings) {
  // under a quartic deviation the (0,1) cross term has winding 1 and cannot
  // contribute: the superposition energy is the population-weighted mixture
  const PotentialSeries du({0.0, 0.0, 0.0, 0.0, 0.2}, 1.0);
  const double e0 = wigner::total_energy(basis_state(0), du, kUnit).total;
  const double e1 = wigner::total_energy(basis_state(1), du, kUnit).total;
  const CoefficientVector mix = CoefficientVector::normalized({0.6, 0.8});
  EXPECT_NEAR(wigner::total_energy(mix, du, kUnit).total, 0.36 * e0 + 0.64 * e1, 1e-12);
}

TEST(TotalEnergy, RejectsMixedStates) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  const auto rho = wigner::DensityMatrix::from_matrix(m);
  EXPECT_THROW(wigner::total_energy(rho, {0.0, 0.0}, PotentialSeries({}, 1.0), kUnit),
               std::invalid_argument);
}

TEST(AdmissibleWindings, SelectionSets) {
  const PotentialSeries quartic({0.0, 0.0, 0.0, 0.0, 0.1}, 1.0);
  EXPECT_EQ(wigner::admissible_windings(quartic), (std::vector<int>{-4, -2, 0, 2, 4}));

  const PotentialSeries none({}, 1.0);
  EXPECT_TRUE(wigner::admissible_windings(none).empty());
  EXPECT_TRUE(wigner::admissible_windings(PotentialSeries({0.0, 0.0}, 1.0)).empty());

  const PotentialSeries cubic({0.0, 0.0, 0.0, 0.7}, 1.0);
  EXPECT_EQ(wigner::admissible_windings(cubic), (std::vector<int>{-3, -1, 1, 3}));

  const PotentialSeries shifted({0.5}, 1.0);
  EXPECT_EQ(wigner::admissible_windings(shifted), (std::vector<int>{0}));
}

TEST(EnergyDensity, IntegrandValues) {
  const auto rho = wigner::density_from_coeffs(basis_state(0));
  const PotentialSeries none({}, 1.0);
  EXPECT_DOUBLE_EQ(wigner::energy_density(rho, {0.0, 0.0}, none, kUnit), 0.0);

  const double mu = 0.3;
  const PotentialSeries du({0.0, 0.0, 0.0, 0.0, mu}, 1.0);
  const double w10 = wigner::wigner_trace(rho, {1.0, 0.0}, kUnit);
  EXPECT_NEAR(wigner::energy_density(rho, {1.0, 0.0}, du, kUnit), (0.5 + mu) * w10, 1e-13);
  const double w01 = wigner::wigner_trace(rho, {0.0, 1.0}, kUnit);
  EXPECT_NEAR(wigner::energy_density(rho, {0.0, 1.0}, du, kUnit), 0.5 * w01, 1e-13);
}

TEST(TotalEnergy, MatchesQuadratureOracle) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> ur(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<cdouble> c(5);
    double norm = 0.0;
    for (auto& v : c) {
      v = cdouble(ur(rng), ur(rng));
      norm += std::norm(v);
    }
    for (auto& v : c) v /= std::sqrt(norm);
    const CoefficientVector state = CoefficientVector::normalized(c);
    const wigner::oracles::StateWignerGrid grid(c, kUnit);
    for (double mu : {0.0, 0.1}) {
      const PotentialSeries du({0.0, 0.0, 0.0, 0.0, mu}, 1.0);
      const double closed = wigner::total_energy(state, du, kUnit).total;
      const auto quad = grid.energy(du.coefficients());
      EXPECT_NEAR(quad.value, closed, 1e-6 * std::max(1.0, std::abs(closed)));
    }
  }
}
