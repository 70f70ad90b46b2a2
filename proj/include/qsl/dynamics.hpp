// Two-qubit dynamical processes and their integration.
//
// Four processes are provided: a nonlocal two-qubit unitary generated by
// H = theta sx(x)sx + mu_z sz(x)sz, and three local open processes (pure
// dephasing, depolarizing, amplitude damping) acting independently on each
// qubit with rates gamma_a, gamma_b.  Open dynamics follow the convention
//
//     d rho/dt = -i[H, rho] + sum_k (2 L_k rho L_k^dag - {L_k^dag L_k, rho})
//
// with hbar = 1, so a dephasing jump operator sqrt(gamma/2) sz contributes
// gamma (sz rho sz - rho).  Amplitude damping uses sigma_minus = |1><0|,
// i.e. |0> is the decaying level.  The adjoint (Heisenberg) generator is
// exposed alongside, and closed-form solutions are available for the
// supported picture/process combinations as integration oracles.

#ifndef QSL_DYNAMICS_HPP
#define QSL_DYNAMICS_HPP

#include <optional>

#include "qsl/states.hpp"

namespace qsl {

struct UnsupportedCombination final : Error { using Error::Error; };
struct InvariantDrift final : Error { using Error::Error; };

enum class ProcessKind { nonlocal_unitary, pure_dephasing, depolarizing, amplitude_damping };
enum class Picture { schrodinger, heisenberg };

struct Process {
  ProcessKind kind = ProcessKind::pure_dephasing;
  double theta = 0.0;    // nonlocal unitary: sx(x)sx coupling
  double mu_z = 0.0;     // nonlocal unitary: sz(x)sz coupling
  double gamma_a = 0.0;  // open processes: rate on qubit A
  double gamma_b = 0.0;  // open processes: rate on qubit B

  static Process nonlocal_unitary(double theta, double mu_z = 0.0);
  static Process pure_dephasing(double gamma_a, double gamma_b);
  static Process depolarizing(double gamma_a, double gamma_b);
  static Process amplitude_damping(double gamma_a, double gamma_b);

  bool is_unitary() const { return kind == ProcessKind::nonlocal_unitary; }

  // Hamiltonian of the unitary process; UnsupportedCombination otherwise.
  ComplexMatrix hamiltonian() const;
};

// Generator applied to a 4x4 operator in the Schroedinger picture.  The
// processes here are time independent; t is part of the interface so that
// callers can treat the generator as L_t uniformly.
ComplexMatrix liouvillian_apply(const Process& proc, double t, const ComplexMatrix& rho);

// Adjoint generator (Heisenberg picture) applied to a 4x4 observable.
ComplexMatrix adjoint_apply(const Process& proc, double t, const ComplexMatrix& obs);

// Adjoint generator of one local factor of an open process applied to a 2x2
// observable.  UnsupportedCombination for the nonlocal unitary.
ComplexMatrix local_adjoint_apply(const Process& proc, Subsystem side, const ComplexMatrix& obs);

struct Trajectory {
  Picture picture = Picture::schrodinger;
  double t_final = 0.0;
  std::vector<double> times;          // uniform grid including both endpoints
  std::vector<ComplexMatrix> states;  // one per grid time
  double max_herm_correction = 0.0;   // largest per-step re-hermitisation
  double max_trace_correction = 0.0;  // largest per-step trace renormalisation

  std::size_t steps() const { return states.empty() ? 0 : states.size() - 1; }
  double dt() const { return steps() == 0 ? 0.0 : t_final / static_cast<double>(steps()); }
};

// Fixed-step classic Runge-Kutta integration of d m/dt = G(m), where G is the
// Liouvillian (Schroedinger) or its adjoint (Heisenberg).  Every accepted step
// is re-hermitised, and Schroedinger steps are trace-renormalised; corrections
// beyond 1e-9 raise InvariantDrift, as do stored Schroedinger states with an
// eigenvalue below -1e-7.  t_final = 0 yields a single-point trajectory.
Trajectory evolve(const Process& proc, const ComplexMatrix& initial, double t_final,
                  std::size_t steps, Picture picture);

// Heisenberg-picture evolution of a 2x2 observable under one local factor of
// an open process.  Used by the separable-map Bell bound, whose speed is
// built from locally evolved measurement operators.
Trajectory evolve_local(const Process& proc, Subsystem side, const ComplexMatrix& initial,
                        double t_final, std::size_t steps);

// Default grid resolution: steps per unit of evolved time, rounded up to an
// even count of at least two.
std::size_t default_steps(double t_final);

// Closed-form evolved operator for |psi_p> initial data.
//
// Schroedinger picture: the evolved density matrix for all four processes.
// Heisenberg picture: the evolved CHSH operator at tilt angle eta (defaults
// to the optimal angle for |psi_p>) for the three open processes; the
// nonlocal unitary raises UnsupportedCombination.  Open processes require
// gamma_a = gamma_b here; unequal rates raise UnsupportedCombination.
ComplexMatrix closed_form(const Process& proc, double p, double t, Picture picture,
                          std::optional<double> eta = std::nullopt);

}  // namespace qsl

#endif  // QSL_DYNAMICS_HPP
