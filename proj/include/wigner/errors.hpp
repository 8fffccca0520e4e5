#pragma once

#include <stdexcept>
#include <string>

namespace wigner {

// Requested polynomial or eigenfunction order above the configured maximum.
class order_overflow_error : public std::domain_error {
 public:
  explicit order_overflow_error(const std::string& msg) : std::domain_error(msg) {}
};

// Sampled-grid problems: spacing too coarse, grid too small for a stencil,
// non-normalizable input.
class grid_error : public std::invalid_argument {
 public:
  explicit grid_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A quadrature did not settle under node doubling, or its integrand leaked
// through the domain boundary.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// arg(c) requested for a zero coefficient.
class undefined_phase_error : public std::domain_error {
 public:
  explicit undefined_phase_error(const std::string& msg) : std::domain_error(msg) {}
};

// The trace sum over a supposedly Hermitian density matrix kept an imaginary
// part beyond tolerance.
class imaginary_residue_error : public std::runtime_error {
 public:
  explicit imaginary_residue_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wigner
