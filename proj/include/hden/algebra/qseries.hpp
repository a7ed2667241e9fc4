#pragma once

#include "hden/algebra/laurent.hpp"
#include "hden/algebra/ratfunc.hpp"

namespace hden {

/// (-q)^e as a reduced rational function.
RatFunc neg_q_power(int e);

/// Gaussian binomial [u; v] in the variable (-q)^{-1}:
///   prod_{i<=u}(1-(-q)^{-i}) / (prod_{i<=v}(1-(-q)^{-i}) prod_{i<=u-v}(1-(-q)^{-i})).
/// Built literally as a quotient of products. Throws InvalidArgument if v > u.
RatFunc gauss_binomial(int u, int v);

/// Same value via the q-Pascal recurrence, directly as a Laurent polynomial.
/// Rows are computed on first use and cached process-wide (thread-safe).
const Laurent& gauss_binomial_laurent(int u, int v);

}  // namespace hden
