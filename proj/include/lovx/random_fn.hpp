#pragma once

#include "lovx/random.hpp"
#include "lovx/setfun.hpp"

namespace lovx {

// Uniform table values in [lo, hi]; f(empty) = 0.
SetFunction random_function(int n, Mode mode, int k, Rng& rng, double lo = -1.0, double hi = 1.0);

// Indicator values of a random convex piecewise-linear extension plus a
// concave function of |A|; submodular by construction.
SetFunction random_submodular(int n, Rng& rng);

// Indicator values of random sums of |x_i ± x_j|, |x_i|, ||x||_inf and a
// linear term; bisubmodular by construction.
SetFunction random_bisubmodular(int n, Rng& rng);

// Random table, redrawn until some pair violates submodularity
// (bisubmodularity in Pair mode).
SetFunction random_nonsubmodular(int n, Mode mode, Rng& rng);

}  // namespace lovx
