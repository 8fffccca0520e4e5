#include <gtest/gtest.h>

#include "wigner/verify.hpp"

namespace verify = wigner::verify;

TEST(VerifySuite, QuickUdmSweepPasses) {
  const auto results = verify::udm_checks(verify::Options::quick());
  for (const auto& r : results) {
    EXPECT_TRUE(r.pass) << r.name << " deviation " << r.max_deviation << " tol " << r.tolerance;
  }
}

TEST(VerifySuite, SkewedOracleHbarIsDetected) {
  verify::Options opts = verify::Options::quick();
  opts.oracle_params = wigner::OscillatorParams(1.0 + 1e-3, 1.0, 1.0);
  const auto results = verify::udm_checks(opts);
  EXPECT_FALSE(verify::all_pass(results));
}

TEST(VerifySuite, StateChecksPass) {
  const auto results = verify::state_checks(verify::Options::quick());
  for (const auto& r : results) {
    EXPECT_TRUE(r.pass) << r.name << " deviation " << r.max_deviation;
  }
}

TEST(VerifySuite, SelectorDispatch) {
  EXPECT_THROW(verify::run_suite("nonsense", verify::Options::quick()), std::invalid_argument);
  const auto results = verify::run_suite("state", verify::Options::quick());
  EXPECT_FALSE(results.empty());
}
