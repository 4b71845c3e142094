#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace bellforge {

struct LanczosOptions {
  int krylov_dim = 40;
  double tolerance = 1e-11;  // residual ||Av - theta v|| relative to max(1, |theta|)
  long max_matvecs = 100000;
};

struct Eigenpair {
  double value = 0.0;
  std::vector<std::complex<double>> vector;
  long matvecs = 0;
  double residual = 0.0;
};

using LinearOperator =
    std::function<void(std::span<const std::complex<double>>, std::span<std::complex<double>>)>;

// Largest eigenpair of a Hermitian operator given only by its action.
// Restarted Lanczos with full reorthogonalization; each restart begins from
// the current Ritz vector. Throws ConvergenceFailure when the matvec budget
// runs out.
Eigenpair largest_eigenpair(const LinearOperator& op, std::vector<std::complex<double>> start,
                            const LanczosOptions& options = {});

}  // namespace bellforge
