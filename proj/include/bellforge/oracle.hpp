#pragma once

// Slow, independent reference implementations used by the test suites.
// Nothing here shares code paths with the production kernels beyond the
// data types.

#include <Eigen/Dense>

#include "bellforge/quantum_engine.hpp"
#include "bellforge/term_algebra.hpp"

namespace bellforge::oracle {

// prod_j (A_1^j + A_2^j) / (A_1^j - A_2^j) / 1 by direct substitution.
std::int64_t term_value(const SignPattern& p, const Assignment& a);

// sum over covered full strings s of |prod_j (A_1^j + s_j A_2^j)|.
std::int64_t covered_abs_sum(const SignPattern& p, const Assignment& a);

// Exact max over all assignments of the wrapped value, computed by expanding
// every term into its covered full strings and weighting each by w / 2^zeros.
Rational seed_wrapped_bound(const BellInequality& ineq);

// Dense 2^N x 2^N matrix of sum_t sign_t weight_t prod_j F_{t,j}.
Eigen::MatrixXcd dense_bell_operator(const BellInequality& ineq, const SettingSet& settings,
                                     std::span<const int> signs);

// Dense sigma_{k_1} x ... x sigma_{k_N}.
Eigen::MatrixXcd dense_pauli(std::span<const int> index);

double dense_expectation(const PureState& psi, std::span<const int> index);

// Largest eigenvalue over every sign vector by full diagonalization.
double dense_max_eigenvalue(const BellInequality& ineq, const SettingSet& settings);

}  // namespace bellforge::oracle
