// Correlation and entanglement measures on bipartite states: negativity,
// squared concurrence (two-qubit pure states), squared I-concurrence
// (bipartite pure states of any dimension), von Neumann entropy,
// entanglement entropy, relative entropy, mutual information, and the
// expectation value of a Bell-CHSH operator.
//
// Values that land a hair outside their mathematical range from roundoff are
// clipped: anything in [-1e-12, 0) is treated as 0 before range checks.

#ifndef QSL_CORRELATIONS_HPP
#define QSL_CORRELATIONS_HPP

#include "qsl/states.hpp"

namespace qsl {

struct NotPure final : Error { using Error::Error; };
struct NotTwoQubit final : Error { using Error::Error; };

// Purity must match 1 within this tolerance for pure-state measures.
inline constexpr double tol_purity = 1e-8;

// tr(rho^2), real part (the imaginary residue of the trace is discarded).
double purity(const DensityOperator& rho);

// Negativity N = (||rho^{T_B}||_1 - 1) / 2.
double negativity(const DensityOperator& rho);

// Squared concurrence of a two-qubit pure state,
// C^2 = <psi| sigma_y x sigma_y |psi*> <psi*| sigma_y x sigma_y |psi>
// evaluated as tr(rho R) with R = (sy x sy) conj(rho) (sy x sy).
double concurrence_sq(const DensityOperator& psi);

// Squared I-concurrence of a bipartite pure state,
// C_I^2 = 2 nu_a nu_b (1 - tr(rho_A^2)).
double i_concurrence_sq(const DensityOperator& psi, double nu_a = 1.0, double nu_b = 1.0);

// S(rho) = -tr(rho ln rho), natural logarithm.
double von_neumann_entropy(const DensityOperator& rho);

// Entropy of the reduced state of a bipartite pure state.
double entanglement_entropy(const DensityOperator& psi);

// D(rho || sigma) = tr(rho ln rho) - tr(rho ln sigma).  Returns +infinity
// when the support of rho is not contained in the support of sigma.
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

// I(A;B) = S(rho_A) + S(rho_B) - S(rho_AB).
double mutual_information(const DensityOperator& rho);

// tr(rho B); the result is real within 1e-10 for valid inputs.
double chsh_expectation(const DensityOperator& rho, const Observable& bell);

}  // namespace qsl

#endif  // QSL_CORRELATIONS_HPP
