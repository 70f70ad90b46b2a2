#include "qsl/states.hpp"

#include <cmath>

namespace qsl {

namespace {

void validate_density(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b) {
  if (!m.square() || m.rows() != d_a * d_b)
    throw DimensionMismatch("DensityOperator: matrix dimension is not d_a * d_b");
  if (m.hermiticity_defect() > tol_herm)
    throw NotHermitian("DensityOperator: matrix is not Hermitian within 1e-10");
  if (std::abs(m.trace() - Complex(1.0)) > tol_herm)
    throw OutOfRange("DensityOperator: trace deviates from 1 beyond 1e-10");
  const EigResult eig = eig_hermitian(m);
  if (eig.values.front() < -eps_psd)
    throw NotPSD("DensityOperator: eigenvalue below -1e-10");
}

double norm3(const std::array<double, 3>& n) {
  return std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix m, std::size_t da, std::size_t db)
    : mat(std::move(m)), d_a(da), d_b(db) {
  validate_density(mat, d_a, d_b);
}

Observable::Observable(ComplexMatrix m, std::size_t da, std::size_t db)
    : mat(std::move(m)), d_a(da), d_b(db) {
  if (!mat.square() || mat.rows() != d_a * d_b)
    throw DimensionMismatch("Observable: matrix dimension is not d_a * d_b");
  if (mat.hermiticity_defect() > tol_herm)
    throw NotHermitian("Observable: matrix is not Hermitian within 1e-10");
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

ComplexMatrix identity2() { return ComplexMatrix::identity(2); }

ComplexMatrix bloch_dot(const std::array<double, 3>& n) {
  ComplexMatrix m(2, 2);
  m(0, 0) = n[2];
  m(1, 1) = -n[2];
  m(0, 1) = Complex(n[0], -n[1]);
  m(1, 0) = Complex(n[0], n[1]);
  return m;
}

DensityOperator make_psi_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw OutOfRange("make_psi_p: p must lie in [0, 1]");
  const double sp = std::sqrt(p);
  const double sq = std::sqrt(1.0 - p);
  ComplexMatrix m(4, 4);
  m(0, 0) = sp * sp;
  m(0, 3) = sp * sq;
  m(3, 0) = sp * sq;
  m(3, 3) = sq * sq;
  return DensityOperator(std::move(m), 2, 2);
}

Observable make_chsh(const std::array<double, 3>& a, const std::array<double, 3>& a_prime,
                     const std::array<double, 3>& b, const std::array<double, 3>& b_prime) {
  for (const auto* v : {&a, &a_prime, &b, &b_prime})
    if (std::abs(norm3(*v) - 1.0) > 1e-10)
      throw NotUnitVector("make_chsh: measurement direction is not a unit vector");

  const std::array<double, 3> b_sum{b[0] + b_prime[0], b[1] + b_prime[1], b[2] + b_prime[2]};
  const std::array<double, 3> b_diff{b[0] - b_prime[0], b[1] - b_prime[1], b[2] - b_prime[2]};
  ComplexMatrix m = kron(bloch_dot(a), bloch_dot(b_sum)) + kron(bloch_dot(a_prime), bloch_dot(b_diff));
  return Observable(std::move(m), 2, 2);
}

ChshSettings optimal_chsh_settings(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw OutOfRange("optimal_chsh_settings: p must lie in [0, 1]");
  const double eta = std::atan(2.0 * std::sqrt(p * (1.0 - p)));
  const double ce = std::cos(eta);
  const double se = std::sin(eta);
  ChshSettings s;
  s.a = {0.0, 0.0, 1.0};
  s.a_prime = {1.0, 0.0, 0.0};
  s.b = {se, 0.0, ce};
  s.b_prime = {-se, 0.0, ce};
  s.eta = eta;
  return s;
}

Observable optimal_chsh_operator(double p) {
  const ChshSettings s = optimal_chsh_settings(p);
  return make_chsh(s.a, s.a_prime, s.b, s.b_prime);
}

}  // namespace qsl
