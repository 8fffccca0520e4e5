#pragma once

// Umbrella header.

#include "wigner/energy.hpp"
#include "wigner/errors.hpp"
#include "wigner/grid.hpp"
#include "wigner/oracles.hpp"
#include "wigner/oscillator.hpp"
#include "wigner/polynomials.hpp"
#include "wigner/state.hpp"
#include "wigner/udm.hpp"
#include "wigner/verify.hpp"
#include "wigner/vlasov.hpp"
