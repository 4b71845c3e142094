#include "bellforge/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "bellforge/errors.hpp"

namespace bellforge {

namespace {

using Vec = std::vector<std::complex<double>>;

std::complex<double> dot(const Vec& a, const Vec& b) {
  std::complex<double> s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(std::max(0.0, dot(a, a).real())); }

void axpy(std::complex<double> alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

Eigenpair largest_eigenpair(const LinearOperator& op, Vec start, const LanczosOptions& options) {
  const std::size_t dim = start.size();
  if (dim == 0) throw ConvergenceFailure("empty operator");
  double start_norm = norm(start);
  if (!(start_norm > 0.0)) {
    start.assign(dim, {1.0, 0.0});
    start_norm = std::sqrt(static_cast<double>(dim));
  }
  for (auto& c : start) c /= start_norm;

  // Clustered top eigenvalues stall a short restarted basis; every restart
  // that misses the tolerance doubles the basis size, up to kMaxKrylov.
  constexpr int kMaxKrylov = 320;
  int m_max = static_cast<int>(std::min<std::size_t>(dim, std::max(2, options.krylov_dim)));
  Eigenpair result;
  Vec v = std::move(start);
  Vec w(dim);

  while (true) {
    std::vector<Vec> basis;
    basis.reserve(m_max);
    basis.push_back(v);
    std::vector<double> alpha;
    std::vector<double> beta;
    double last_beta = 0.0;

    for (int k = 0; k < m_max; ++k) {
      std::fill(w.begin(), w.end(), std::complex<double>{});
      op(basis[k], w);
      ++result.matvecs;
      const double a = dot(basis[k], w).real();
      alpha.push_back(a);
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) axpy(-dot(q, w), q, w);
      }
      last_beta = norm(w);
      const double scale = std::max(1.0, std::abs(a));
      if (k + 1 == m_max || last_beta <= 1e-13 * scale) break;
      beta.push_back(last_beta);
      for (auto& c : w) c /= last_beta;
      basis.push_back(w);
    }

    const int m = static_cast<int>(alpha.size());
    Eigen::VectorXd diag(m);
    Eigen::VectorXd sub(std::max(0, m - 1));
    for (int i = 0; i < m; ++i) diag[i] = alpha[i];
    for (int i = 0; i + 1 < m; ++i) sub[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const double theta = solver.eigenvalues()[m - 1];
    const Eigen::VectorXd s = solver.eigenvectors().col(m - 1);

    Vec y(dim, std::complex<double>{});
    for (int i = 0; i < m; ++i) axpy(s[i], basis[i], y);
    const double ynorm = norm(y);
    for (auto& c : y) c /= ynorm;

    result.value = theta;
    result.residual = std::abs(last_beta * s[m - 1]);
    result.vector = y;
    if (result.residual <= options.tolerance * std::max(1.0, std::abs(theta))) return result;
    if (result.matvecs >= options.max_matvecs) {
      throw ConvergenceFailure("Lanczos did not converge within " + std::to_string(options.max_matvecs) +
                               " operator applications (residual " + std::to_string(result.residual) + ")");
    }
    v = std::move(y);
    m_max = static_cast<int>(std::min<std::size_t>(dim, std::max(m_max, std::min(2 * m_max, kMaxKrylov))));
  }
}

}  // namespace bellforge
