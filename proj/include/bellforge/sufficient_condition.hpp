#pragma once

// Sum-of-squares screen on correlation-tensor entries. For settings whose
// bracket directions are x (for the sum) and z (for the difference), Cauchy-
// Schwarz bounds the Bell value by sqrt(sum_t T_t^2) times the norm of the
// trigonometric weight vector, which is at most 1. So a state whose
// condition value is <= 1 cannot violate with such settings in that frame.

#include <cstdint>
#include <vector>

#include "bellforge/quantum_engine.hpp"

namespace bellforge {

// One tuple per term: PLUS -> 1 (x), MINUS -> 3 (z), ZERO -> 0.
using ConditionIndexSet = std::vector<std::vector<int>>;

ConditionIndexSet condition_indices(const BellInequality& ineq);

// sum over tuples of T_tuple^2 in the state's own frame.
double condition_value(const MixedState& rho, const ConditionIndexSet& indices);

struct FrameSweep {
  double identity_frame = 0.0;
  double max_value = 0.0;
  int max_frame = 0;  // 0 is the identity frame
  int frames = 0;
};

// Evaluates the identity frame plus `frames` Haar-random local frames.
FrameSweep condition_frame_sweep(const MixedState& rho, const ConditionIndexSet& indices, int frames,
                                 std::uint64_t seed);

// Max over a per-party angle grid of the norm of the weight vector
// t_t = weight_t * 2^order_t * prod_PLUS cos(theta_j) * prod_MINUS sin(theta_j).
// The product grid has `grid` points per party on [0, pi).
double trig_vector_norm_max(const BellInequality& ineq, int grid);

// Hadamard on every qubit: swaps the x and z axes of each party's frame.
PureState hadamard_all(const PureState& psi);
MixedState hadamard_all(const MixedState& rho);

// Random single-qubit unitary applied to every qubit (Haar, per qubit).
PureState random_local_frame(const PureState& psi, std::mt19937_64& rng);

}  // namespace bellforge
