#include "bellforge/oracle.hpp"

#include <Eigen/Eigenvalues>

namespace bellforge::oracle {

std::int64_t term_value(const SignPattern& p, const Assignment& a) {
  if (p.size() != a.parties()) throw LengthMismatch("pattern and assignment lengths differ");
  std::int64_t v = 1;
  for (int j = 0; j < p.size(); ++j) {
    const int a1 = a.value(j, 1);
    const int a2 = a.value(j, 2);
    switch (p.at(j)) {
      case Symbol::Plus: v *= a1 + a2; break;
      case Symbol::Minus: v *= a1 - a2; break;
      case Symbol::Zero: break;
    }
  }
  return v;
}

std::int64_t covered_abs_sum(const SignPattern& p, const Assignment& a) {
  std::int64_t total = 0;
  for (const auto& s : covered_strings(p)) {
    const auto v = term_value(s, a);
    total += v < 0 ? -v : v;
  }
  return total;
}

Rational seed_wrapped_bound(const BellInequality& ineq) {
  const int n = ineq.parties();
  if (n > 8) throw NTooLarge("oracle enumeration limited to N <= 8");
  Rational best(0);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); ++code) {
    const Assignment a(n, code);
    Rational v(0);
    for (const auto& t : ineq.terms()) {
      v += t.weight / Rational(std::int64_t{1} << t.pattern.zero_count()) * covered_abs_sum(t.pattern, a);
    }
    if (v > best) best = v;
  }
  return best;
}

namespace {

Eigen::Matrix2cd to_eigen(const Mat2& m) {
  Eigen::Matrix2cd out;
  out << m[0], m[1], m[2], m[3];
  return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd dense_bell_operator(const BellInequality& ineq, const SettingSet& settings,
                                     std::span<const int> signs) {
  const int n = ineq.parties();
  const auto dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t t = 0; t < ineq.terms().size(); ++t) {
    const auto& term = ineq.terms()[t];
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
    for (int j = 0; j < n; ++j) {
      const auto& party = settings.party(j);
      Eigen::Matrix2cd f;
      switch (term.pattern.at(j)) {
        case Symbol::Plus: f = to_eigen(observable(party.first)) + to_eigen(observable(party.second)); break;
        case Symbol::Minus: f = to_eigen(observable(party.first)) - to_eigen(observable(party.second)); break;
        case Symbol::Zero: f = Eigen::Matrix2cd::Identity(); break;
      }
      op = kron(op, f);
    }
    total += (to_double(term.weight) * signs[t]) * op;
  }
  return total;
}

Eigen::MatrixXcd dense_pauli(std::span<const int> index) {
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
  for (int k : index) op = kron(op, to_eigen(pauli(k)));
  return op;
}

double dense_expectation(const PureState& psi, std::span<const int> index) {
  const Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.dimension()));
  return (v.adjoint() * dense_pauli(index) * v)(0, 0).real();
}

double dense_max_eigenvalue(const BellInequality& ineq, const SettingSet& settings) {
  const std::size_t terms = ineq.terms().size();
  if (terms > 16) throw NTooLarge("dense sign enumeration limited to 16 terms");
  double best = -1e300;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << terms); ++code) {
    std::vector<int> signs(terms);
    for (std::size_t t = 0; t < terms; ++t) signs[t] = (code >> t & 1) ? -1 : 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_bell_operator(ineq, settings, signs),
                                                       Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues().maxCoeff());
  }
  return best;
}

}  // namespace bellforge::oracle
