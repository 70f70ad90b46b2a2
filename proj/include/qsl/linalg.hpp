// Dense complex matrices plus the small set of linear-algebra operations the
// rest of the library is built on: a cyclic Jacobi eigensolver for Hermitian
// matrices, Schatten norms, partial transpose, partial trace, and the matrix
// logarithm restricted to the support of a positive semidefinite operator.
//
// Matrices here are tiny (16x16 at most), so the implementation favours
// robustness and simplicity over asymptotic speed.

#ifndef QSL_LINALG_HPP
#define QSL_LINALG_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsl {

using Complex = std::complex<double>;

// Common base for all library errors so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian final : Error { using Error::Error; };
struct NoConvergence final : Error { using Error::Error; };
struct DimensionMismatch final : Error { using Error::Error; };
struct NotPSD final : Error { using Error::Error; };

// Default validation tolerances.
inline constexpr double tol_herm = 1e-10;     // Hermiticity deviation
inline constexpr double tol_unitary = 1e-9;   // eigenvector orthonormality
inline constexpr double eps_support = 1e-12;  // support / kernel split
inline constexpr double eps_psd = 1e-10;      // admissible negative eigenvalue

// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  // Largest entry magnitude; zero for empty matrices.
  double max_abs() const;

  // max_ij |a_ij - conj(a_ji)|
  double hermiticity_defect() const;

  bool is_hermitian(double tol = tol_herm) const { return square() && hermiticity_defect() <= tol; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scale);

// a x b (Kronecker product), with a acting on the left factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Frobenius norm of the difference; matrices must have equal shape.
double distance_2(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigResult {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

// Eigendecomposition of a Hermitian matrix by the cyclic Jacobi method.
// The input must be Hermitian within tol_herm; it is symmetrised internally
// before the sweeps.  Rotations stop once every off-diagonal magnitude falls
// below 1e-13 relative to the matrix scale; more than 100 sweeps raises
// NoConvergence.  Eigenvalues are returned in ascending order.
EigResult eig_hermitian(const ComplexMatrix& m);

enum class SchattenOrder { one, two, inf };

// Schatten p-norm for p in {1, 2, inf}.  Hermitian inputs use eigenvalue
// magnitudes directly; general inputs use singular values obtained from
// m^dagger m.  The 2-norm is evaluated as the Frobenius norm in both cases.
double schatten_norm(const ComplexMatrix& m, SchattenOrder order);

enum class Subsystem { a, b };

// Partial transpose over one tensor factor of a (d_a * d_b) square matrix.
// Composite row index is i = alpha * d_b + beta.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b,
                                Subsystem which);

// Partial trace over one tensor factor of a (d_a * d_b) square matrix.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b,
                            Subsystem traced);

struct LogOnSupport {
  ComplexMatrix log;        // sum over eigenvalues above eps of ln(lambda) P_lambda
  ComplexMatrix projector;  // projector onto the same eigenspaces
};

// Matrix logarithm restricted to the support of a PSD matrix.  Eigenvalues
// below -eps raise NotPSD; eigenvalues in [-eps, eps] are treated as kernel.
LogOnSupport matrix_log_on_support(const ComplexMatrix& m, double eps = eps_support);

}  // namespace qsl

#endif  // QSL_LINALG_HPP
