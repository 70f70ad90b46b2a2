#include "qsl/correlations.hpp"

#include <cmath>
#include <limits>

namespace qsl {

namespace {

constexpr double clip_eps = 1e-12;

// Roundoff guard: map values in [-1e-12, 0) to 0, leave the rest unchanged.
double clip_nonnegative(double v) {
  if (v < 0.0 && v >= -clip_eps) return 0.0;
  return v;
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw DimensionMismatch("trace product: shapes are incompatible");
  Complex t = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(r, k) * b(k, r);
  return t.real();
}

void require_pure(const DensityOperator& psi, const char* op) {
  if (std::abs(purity(psi) - 1.0) > tol_purity)
    throw NotPure(std::string(op) + ": purity deviates from 1 beyond 1e-8");
}

// Entropy from an eigenvalue list, ignoring kernel-level eigenvalues.
double entropy_of_spectrum(const std::vector<double>& values) {
  double s = 0.0;
  for (double lambda : values) {
    const double v = clip_nonnegative(lambda);
    if (v > eps_support) s -= v * std::log(v);
  }
  return clip_nonnegative(s);
}

}  // namespace

double purity(const DensityOperator& rho) {
  return real_trace_product(rho.mat, rho.mat);
}

double negativity(const DensityOperator& rho) {
  const ComplexMatrix pt = partial_transpose(rho.mat, rho.d_a, rho.d_b, Subsystem::b);
  const double trace_norm = schatten_norm(pt, SchattenOrder::one);
  return clip_nonnegative(0.5 * (trace_norm - 1.0));
}

double concurrence_sq(const DensityOperator& psi) {
  if (psi.d_a != 2 || psi.d_b != 2)
    throw NotTwoQubit("concurrence_sq: defined for two-qubit states only");
  require_pure(psi, "concurrence_sq");
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  ComplexMatrix conj_psi(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) conj_psi(r, c) = std::conj(psi.mat(r, c));
  const double value = real_trace_product(psi.mat, yy * conj_psi * yy);
  const double clipped = clip_nonnegative(value);
  if (clipped < 0.0 || clipped > 1.0 + clip_eps)
    throw OutOfRange("concurrence_sq: value escaped [0, 1]");
  return std::min(clipped, 1.0);
}

double i_concurrence_sq(const DensityOperator& psi, double nu_a, double nu_b) {
  require_pure(psi, "i_concurrence_sq");
  const ComplexMatrix rho_a = partial_trace(psi.mat, psi.d_a, psi.d_b, Subsystem::b);
  double purity_a = 0.0;
  for (std::size_t r = 0; r < rho_a.rows(); ++r)
    for (std::size_t c = 0; c < rho_a.cols(); ++c)
      purity_a += (rho_a(r, c) * rho_a(c, r)).real();
  return clip_nonnegative(2.0 * nu_a * nu_b * (1.0 - purity_a));
}

double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_of_spectrum(eig_hermitian(rho.mat).values);
}

double entanglement_entropy(const DensityOperator& psi) {
  require_pure(psi, "entanglement_entropy");
  const ComplexMatrix rho_a = partial_trace(psi.mat, psi.d_a, psi.d_b, Subsystem::b);
  return entropy_of_spectrum(eig_hermitian(rho_a).values);
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.mat.rows() != sigma.mat.rows())
    throw DimensionMismatch("relative_entropy: states live on different spaces");
  const LogOnSupport log_sigma = matrix_log_on_support(sigma.mat);
  // Support containment: the mass of rho outside supp(sigma) must vanish.
  const double leak = 1.0 - real_trace_product(rho.mat, log_sigma.projector);
  if (leak > 100.0 * eps_support) return std::numeric_limits<double>::infinity();

  const EigResult eig_rho = eig_hermitian(rho.mat);
  double tr_rho_log_rho = 0.0;
  for (double lambda : eig_rho.values) {
    const double v = clip_nonnegative(lambda);
    if (v > eps_support) tr_rho_log_rho += v * std::log(v);
  }
  const double cross = real_trace_product(rho.mat, log_sigma.log);
  return clip_nonnegative(tr_rho_log_rho - cross);
}

double mutual_information(const DensityOperator& rho) {
  const double s_a = entropy_of_spectrum(
      eig_hermitian(partial_trace(rho.mat, rho.d_a, rho.d_b, Subsystem::b)).values);
  const double s_b = entropy_of_spectrum(
      eig_hermitian(partial_trace(rho.mat, rho.d_a, rho.d_b, Subsystem::a)).values);
  const double s_ab = von_neumann_entropy(rho);
  return clip_nonnegative(s_a + s_b - s_ab);
}

double chsh_expectation(const DensityOperator& rho, const Observable& bell) {
  if (rho.mat.rows() != bell.mat.rows())
    throw DimensionMismatch("chsh_expectation: state and operator dimensions differ");
  Complex t = 0.0;
  for (std::size_t r = 0; r < rho.mat.rows(); ++r)
    for (std::size_t k = 0; k < rho.mat.cols(); ++k) t += rho.mat(r, k) * bell.mat(k, r);
  if (std::abs(t.imag()) > 1e-10)
    throw Error("chsh_expectation: imaginary residue beyond 1e-10");
  return t.real();
}

}  // namespace qsl
