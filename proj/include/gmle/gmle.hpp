#pragma once

// Umbrella header: maximum likelihood estimation for Gaussian graphical
// models on loopless mixed graphs, via exact score equations, Groebner-basis
// analysis and complete solving of the zero-dimensional critical systems.

#include "gmle/errors.hpp"
#include "gmle/graph.hpp"
#include "gmle/groebner.hpp"
#include "gmle/json_io.hpp"
#include "gmle/matrix.hpp"
#include "gmle/mle.hpp"
#include "gmle/model_ring.hpp"
#include "gmle/numeric.hpp"
#include "gmle/poly_gcd.hpp"
#include "gmle/polynomial.hpp"
#include "gmle/rational.hpp"
#include "gmle/rational_function.hpp"
#include "gmle/score.hpp"
#include "gmle/solver.hpp"
#include "gmle/variable.hpp"
