// Bipartite state and observable types together with the specific families
// used throughout: the one-parameter pure states
//
//     |psi_p> = sqrt(p)|00> + sqrt(1-p)|11>
//
// and Bell-CHSH operators built from four measurement directions on the
// Bloch sphere.  Composite basis ordering is |00>, |01>, |10>, |11> with
// index i = alpha * d_b + beta (first factor slow).

#ifndef QSL_STATES_HPP
#define QSL_STATES_HPP

#include <array>

#include "qsl/linalg.hpp"

namespace qsl {

struct OutOfRange final : Error { using Error::Error; };
struct NotUnitVector final : Error { using Error::Error; };

// Density operator on a bipartite Hilbert space of dimension d_a * d_b.
// Construction validates hermiticity, unit trace, and positivity.
struct DensityOperator {
  ComplexMatrix mat;
  std::size_t d_a = 2;
  std::size_t d_b = 2;

  DensityOperator() = default;
  DensityOperator(ComplexMatrix m, std::size_t da, std::size_t db);

  std::size_t dim() const { return d_a * d_b; }
};

// Hermitian observable on the same kind of bipartite space.
struct Observable {
  ComplexMatrix mat;
  std::size_t d_a = 2;
  std::size_t d_b = 2;

  Observable() = default;
  Observable(ComplexMatrix m, std::size_t da, std::size_t db);

  std::size_t dim() const { return d_a * d_b; }
};

// Pauli matrices and the 2x2 identity.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix identity2();

// n . sigma for a real unit three-vector n.
ComplexMatrix bloch_dot(const std::array<double, 3>& n);

// |psi_p><psi_p| for p in [0, 1].
DensityOperator make_psi_p(double p);

// CHSH operator  a.s (x) (b + b').s  +  a'.s (x) (b - b').s  for unit vectors
// a, a', b, b' (deviation from unit norm beyond 1e-10 raises NotUnitVector).
Observable make_chsh(const std::array<double, 3>& a, const std::array<double, 3>& a_prime,
                     const std::array<double, 3>& b, const std::array<double, 3>& b_prime);

struct ChshSettings {
  std::array<double, 3> a;
  std::array<double, 3> a_prime;
  std::array<double, 3> b;
  std::array<double, 3> b_prime;
  double eta;  // tilt angle, tan(eta) = 2 sqrt(p(1-p))
};

// Measurement directions that maximise the CHSH value on |psi_p>:
// a = z, a' = x, b/b' = cos(eta) z +/- sin(eta) x with tan(eta) = 2sqrt(p(1-p)).
ChshSettings optimal_chsh_settings(double p);

// Convenience: the CHSH operator at the optimal settings for |psi_p>.
Observable optimal_chsh_operator(double p);

}  // namespace qsl

#endif  // QSL_STATES_HPP
