#pragma once

// Umbrella header: aggregation of linear Diophantine systems into equivalent
// knapsack equations, exact solution counting, and brute-force verification.

#include "dagg/aggregation.hpp"
#include "dagg/cone.hpp"
#include "dagg/counting.hpp"
#include "dagg/errors.hpp"
#include "dagg/lattice.hpp"
#include "dagg/linalg.hpp"
#include "dagg/lp.hpp"
#include "dagg/matrix.hpp"
#include "dagg/oracle.hpp"
#include "dagg/primes.hpp"
#include "dagg/rational.hpp"
#include "dagg/system_io.hpp"
