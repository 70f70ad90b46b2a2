// Speed limits on correlation measures for two-qubit dynamics.  Each bound
// function returns a BoundReport whose bound_value is a lower bound on the
// evolution time needed to change the relevant measure by the observed
// amount.  Denominators are time-averaged speeds
//
//     Lambda = (1/T) integral_0^T speed(t) dt
//
// evaluated with composite Simpson quadrature on the trajectory grid, which
// must therefore contain an even number of steps.
//
// Bounds provided: negativity (any process), squared concurrence and squared
// I-concurrence (unitary process), observable expectation values and their
// Bell-CHSH specialisation (any process), a separable-map variant of the
// Bell bound built from locally evolved measurement operators (open
// processes), mutual information generated from a product state, and von
// Neumann entropy (with a weaker doubly-averaged variant for comparison).

#ifndef QSL_SPEEDLIMITS_HPP
#define QSL_SPEEDLIMITS_HPP

#include <string>

#include "qsl/correlations.hpp"
#include "qsl/dynamics.hpp"

namespace qsl {

struct ZeroSpeed final : Error { using Error::Error; };
struct NotUnitaryProcess final : Error { using Error::Error; };
struct NotSeparableProcess final : Error { using Error::Error; };
struct NotProductInitial final : Error { using Error::Error; };
struct SupportEscape final : Error { using Error::Error; };

// Acceptance tolerance on bound comparisons (validity, tightness).
inline constexpr double tol_bound = 1e-6;

struct SpeedIntegral {
  std::vector<double> times;
  std::vector<double> speeds;  // instantaneous speed at the stored times
  double lambda = 0.0;         // time-averaged speed
};

struct BoundReport {
  std::string kind;       // "nsl", "csl", "icsl", "bqsl", "bqsl-sep", "misl", "esl", "oqsl"
  double t_final = 0.0;
  double numerator = 0.0;    // measure change driving the bound
  double lambda = 0.0;       // time-averaged speed in the denominator
  double bound_value = 0.0;  // speed-limit time
  double tightness = 0.0;    // bound_value / t_final (0 when t_final = 0)
  std::string argmin_alpha;  // "1", "2" or "inf" for observable bounds, else empty
  bool indeterminate = false;  // numerator and speed both vanished (0/0)
  // Per-norm averaged speeds, populated by the observable bounds.
  double lambda_one = 0.0;
  double lambda_two = 0.0;
  double lambda_inf = 0.0;
};

// Composite Simpson rule on a uniform grid with an even interval count.
double simpson(const std::vector<double>& values, double dt);

// Negativity bound: numerator 2|N(rho_T) - N(rho_0)|, speed the trace norm
// of the partially transposed generator output ||(L rho_t)^{T_B}||_1.
BoundReport bound_negativity(const Trajectory& traj, const Process& proc);

// Squared-concurrence bound for a pure state under the nonlocal unitary:
// numerator |C^2(psi_T) - C^2(psi_0)|, speed sqrt(tr(psi_t H^2)), bound
// value (hbar/4) numerator / Lambda.
BoundReport bound_concurrence(const Trajectory& traj, const Process& proc, double hbar = 1.0);

// Squared-I-concurrence bound for a pure state under the nonlocal unitary:
// speed 4 nu_a nu_b ||rho_A(t)||_2 ||tr_B(L psi_t)||_2.
BoundReport bound_i_concurrence(const Trajectory& traj, const Process& proc, double nu_a = 1.0,
                                double nu_b = 1.0);

// Observable bound from a Heisenberg trajectory: numerator |<O_T> - <O_0>|
// on rho0 divided by ||rho0||_1, speed ||L^dag(O_t)||_alpha for alpha in
// {1, 2, inf}; the reported bound uses the smallest averaged speed and
// records which norm attained it.
BoundReport bound_observable(const Trajectory& traj, const DensityOperator& rho0,
                             const Process& proc);

// bound_observable specialised to an evolved Bell-CHSH operator.
BoundReport bound_bell(const Trajectory& traj, const DensityOperator& rho0, const Process& proc);

// Separable-map Bell bound: the four measurement operators evolve under the
// local adjoint generators, the speed is
//     ||L_A(a1_t)||_2 ||L_B(b1_t)||_2 + ||L_A(a2_t)||_2 ||L_B(b2_t)||_2
// (the Frobenius norm factorises over tensor products), and the bound value
// is |<B_T> - <B_0>| / (sqrt(tr rho0^2) Lambda).  Open processes only.
BoundReport bound_bell_separable(const Process& proc, const ChshSettings& settings,
                                 const DensityOperator& rho0, double t_final, std::size_t steps);

// Mutual-information generation bound from a product initial state:
// numerator I(A;B) at the final time, speed ||L omega_t||_2 ||ln omega_t -
// ln omega_0||_2 with logarithms on the support of omega_0.  States whose
// support escapes that of omega_0 raise SupportEscape.
BoundReport bound_mutual_info(const Trajectory& traj, const Process& proc);

enum class EntropyBoundVariant { single_average, double_average };

// Entropy bound: numerator |S(rho_T) - S(rho_0)|, speed ||L rho_t||_2
// ||ln rho_t||_2.  The double_average variant applies Cauchy-Schwarz once
// more across the time integral and is never tighter.  Trajectories that
// stay exactly pure give 0/0 and report bound 0 with the indeterminate flag.
BoundReport bound_entropy(const Trajectory& traj, const Process& proc,
                          EntropyBoundVariant variant = EntropyBoundVariant::single_average);

enum class RateMeasure { negativity, concurrence_sq, entropy };

struct RateCheckReport {
  double max_excess = 0.0;   // max over interior grid points of |dM/dt| - speed - tol
  double worst_time = 0.0;   // grid time attaining the maximum
  std::size_t points = 0;    // number of interior points checked
};

// Checks |dM/dt| <= speed(t) at interior grid points by central differences.
// The tolerance is max(1e-6, 10 h^2) per point, widened to 1e-3 within 3h of
// an eigenvalue of rho_t^{T_B} crossing through the support threshold (the
// negativity speed is not differentiable there).  max_excess <= 0 passes.
RateCheckReport verify_rate_inequality(const Trajectory& traj, RateMeasure measure,
                                       const Process& proc);

}  // namespace qsl

#endif  // QSL_SPEEDLIMITS_HPP
