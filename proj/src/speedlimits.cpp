#include "qsl/speedlimits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qsl {

namespace {

// A time-averaged speed below this is treated as zero.
constexpr double lambda_floor = 1e-13;
// A numerator below this together with zero speed counts as 0/0.
constexpr double numerator_floor = 1e-10;

double real_expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
  Complex t = 0.0;
  for (std::size_t r = 0; r < rho.rows(); ++r)
    for (std::size_t k = 0; k < rho.cols(); ++k) t += rho(r, k) * op(k, r);
  return t.real();
}

double purity_of(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) s += (m(r, c) * m(c, r)).real();
  return s;
}

double entropy_of(const ComplexMatrix& m) {
  double s = 0.0;
  for (double lambda : eig_hermitian(m).values)
    if (lambda > eps_support) s -= lambda * std::log(lambda);
  return std::max(s, 0.0);
}

void require_picture(const Trajectory& traj, Picture expected, const char* op) {
  if (traj.picture != expected)
    throw UnsupportedCombination(std::string(op) + ": trajectory is in the wrong picture");
}

void require_quadrature_grid(const Trajectory& traj, const char* op) {
  if (traj.steps() > 0 && traj.steps() % 2 != 0)
    throw OutOfRange(std::string(op) + ": quadrature needs an even step count");
}

void require_unitary(const Process& proc, const char* op) {
  if (!proc.is_unitary())
    throw NotUnitaryProcess(std::string(op) + ": requires the unitary process");
}

// Assembles the report, resolving the 0/0 and division-by-zero policies.
BoundReport finalize(std::string kind, double t_final, double numerator, double lambda) {
  BoundReport report;
  report.kind = std::move(kind);
  report.t_final = t_final;
  report.numerator = numerator;
  report.lambda = lambda;
  if (lambda <= lambda_floor) {
    if (numerator > numerator_floor)
      throw ZeroSpeed(report.kind + ": zero speed with a nonzero measure change");
    report.numerator = 0.0;
    report.bound_value = 0.0;
    report.indeterminate = true;
  } else {
    report.bound_value = numerator / lambda;
  }
  report.tightness = t_final > 0.0 ? report.bound_value / t_final : 0.0;
  return report;
}

// Lambda from per-grid-point speeds.
double averaged(const std::vector<double>& speeds, const Trajectory& traj) {
  if (traj.t_final == 0.0) return 0.0;
  return simpson(speeds, traj.dt()) / traj.t_final;
}

}  // namespace

double simpson(const std::vector<double>& values, double dt) {
  if (values.size() <= 1) return 0.0;
  const std::size_t n = values.size() - 1;
  if (n % 2 != 0) throw OutOfRange("simpson: interval count must be even");
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n; i += 2) odd += values[i];
  for (std::size_t i = 2; i < n; i += 2) even += values[i];
  return dt / 3.0 * (values.front() + values.back() + 4.0 * odd + 2.0 * even);
}

BoundReport bound_negativity(const Trajectory& traj, const Process& proc) {
  require_picture(traj, Picture::schrodinger, "bound_negativity");
  require_quadrature_grid(traj, "bound_negativity");

  const double n0 = negativity(DensityOperator(traj.states.front(), 2, 2));
  const double nT = negativity(DensityOperator(traj.states.back(), 2, 2));
  const double numerator = 2.0 * std::abs(nT - n0);

  std::vector<double> speeds;
  speeds.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const ComplexMatrix flow = liouvillian_apply(proc, traj.times[i], traj.states[i]);
    speeds.push_back(schatten_norm(partial_transpose(flow, 2, 2, Subsystem::b),
                                   SchattenOrder::one));
  }
  return finalize("nsl", traj.t_final, numerator, averaged(speeds, traj));
}

BoundReport bound_concurrence(const Trajectory& traj, const Process& proc, double hbar) {
  require_picture(traj, Picture::schrodinger, "bound_concurrence");
  require_quadrature_grid(traj, "bound_concurrence");
  require_unitary(proc, "bound_concurrence");
  if (!(hbar > 0.0)) throw OutOfRange("bound_concurrence: hbar must be positive");

  for (const ComplexMatrix& m : traj.states)
    if (std::abs(purity_of(m) - 1.0) > tol_purity)
      throw NotPure("bound_concurrence: trajectory left the pure-state manifold");

  const double c0 = concurrence_sq(DensityOperator(traj.states.front(), 2, 2));
  const double cT = concurrence_sq(DensityOperator(traj.states.back(), 2, 2));
  const double numerator = std::abs(cT - c0);

  const ComplexMatrix h = proc.hamiltonian();
  const ComplexMatrix h2 = h * h;
  std::vector<double> speeds;
  speeds.reserve(traj.states.size());
  for (const ComplexMatrix& m : traj.states)
    speeds.push_back(std::sqrt(std::max(real_expectation(m, h2), 0.0)));

  BoundReport report = finalize("csl", traj.t_final, numerator, averaged(speeds, traj));
  if (!report.indeterminate) {
    report.bound_value *= hbar / 4.0;
    report.tightness = traj.t_final > 0.0 ? report.bound_value / traj.t_final : 0.0;
  }
  return report;
}

BoundReport bound_i_concurrence(const Trajectory& traj, const Process& proc, double nu_a,
                                double nu_b) {
  require_picture(traj, Picture::schrodinger, "bound_i_concurrence");
  require_quadrature_grid(traj, "bound_i_concurrence");
  require_unitary(proc, "bound_i_concurrence");
  if (!(nu_a > 0.0) || !(nu_b > 0.0))
    throw OutOfRange("bound_i_concurrence: the nu factors must be positive");

  const double c0 = i_concurrence_sq(DensityOperator(traj.states.front(), 2, 2), nu_a, nu_b);
  const double cT = i_concurrence_sq(DensityOperator(traj.states.back(), 2, 2), nu_a, nu_b);
  const double numerator = std::abs(cT - c0);

  std::vector<double> speeds;
  speeds.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const ComplexMatrix rho_a = partial_trace(traj.states[i], 2, 2, Subsystem::b);
    const ComplexMatrix flow_a =
        partial_trace(liouvillian_apply(proc, traj.times[i], traj.states[i]), 2, 2, Subsystem::b);
    speeds.push_back(4.0 * nu_a * nu_b * schatten_norm(rho_a, SchattenOrder::two) *
                     schatten_norm(flow_a, SchattenOrder::two));
  }
  return finalize("icsl", traj.t_final, numerator, averaged(speeds, traj));
}

BoundReport bound_observable(const Trajectory& traj, const DensityOperator& rho0,
                             const Process& proc) {
  require_picture(traj, Picture::heisenberg, "bound_observable");
  require_quadrature_grid(traj, "bound_observable");
  if (rho0.dim() != traj.states.front().rows())
    throw DimensionMismatch("bound_observable: state and observable dimensions differ");

  const double e0 = real_expectation(rho0.mat, traj.states.front());
  const double eT = real_expectation(rho0.mat, traj.states.back());
  const double numerator = std::abs(eT - e0);

  std::vector<double> speed_one, speed_two, speed_inf;
  speed_one.reserve(traj.states.size());
  speed_two.reserve(traj.states.size());
  speed_inf.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const ComplexMatrix flow = adjoint_apply(proc, traj.times[i], traj.states[i]);
    speed_two.push_back(schatten_norm(flow, SchattenOrder::two));
    double sum = 0.0, peak = 0.0;
    for (double lambda : eig_hermitian(flow).values) {
      sum += std::abs(lambda);
      peak = std::max(peak, std::abs(lambda));
    }
    speed_one.push_back(sum);
    speed_inf.push_back(peak);
  }

  const double lambda_one = averaged(speed_one, traj);
  const double lambda_two = averaged(speed_two, traj);
  const double lambda_inf = averaged(speed_inf, traj);
  // Schatten norms are ordered, so the infinity norm always attains the
  // minimum; keeping the explicit comparison documents the selection rule.
  double lambda_min = lambda_inf;
  std::string argmin = "inf";
  if (lambda_two < lambda_min) { lambda_min = lambda_two; argmin = "2"; }
  if (lambda_one < lambda_min) { lambda_min = lambda_one; argmin = "1"; }

  const double trace_norm_rho = schatten_norm(rho0.mat, SchattenOrder::one);
  BoundReport report = finalize("oqsl", traj.t_final, numerator, lambda_min);
  if (!report.indeterminate) {
    report.bound_value /= trace_norm_rho;
    report.tightness = traj.t_final > 0.0 ? report.bound_value / traj.t_final : 0.0;
  }
  report.argmin_alpha = argmin;
  report.lambda_one = lambda_one;
  report.lambda_two = lambda_two;
  report.lambda_inf = lambda_inf;
  return report;
}

BoundReport bound_bell(const Trajectory& traj, const DensityOperator& rho0, const Process& proc) {
  if (traj.states.front().rows() != 4)
    throw DimensionMismatch("bound_bell: expected a two-qubit operator trajectory");
  BoundReport report = bound_observable(traj, rho0, proc);
  report.kind = "bqsl";
  return report;
}

BoundReport bound_bell_separable(const Process& proc, const ChshSettings& settings,
                                 const DensityOperator& rho0, double t_final,
                                 std::size_t steps) {
  if (proc.is_unitary())
    throw NotSeparableProcess("bound_bell_separable: requires a separable (local) process");
  if (t_final > 0.0 && steps % 2 != 0)
    throw OutOfRange("bound_bell_separable: quadrature needs an even step count");

  const std::array<double, 3> b_sum{settings.b[0] + settings.b_prime[0],
                                    settings.b[1] + settings.b_prime[1],
                                    settings.b[2] + settings.b_prime[2]};
  const std::array<double, 3> b_diff{settings.b[0] - settings.b_prime[0],
                                     settings.b[1] - settings.b_prime[1],
                                     settings.b[2] - settings.b_prime[2]};
  const Trajectory a1 = evolve_local(proc, Subsystem::a, bloch_dot(settings.a), t_final, steps);
  const Trajectory a2 =
      evolve_local(proc, Subsystem::a, bloch_dot(settings.a_prime), t_final, steps);
  const Trajectory b1 = evolve_local(proc, Subsystem::b, bloch_dot(b_sum), t_final, steps);
  const Trajectory b2 = evolve_local(proc, Subsystem::b, bloch_dot(b_diff), t_final, steps);

  auto bell_at = [&](std::size_t i) {
    return kron(a1.states[i], b1.states[i]) + kron(a2.states[i], b2.states[i]);
  };
  const double e0 = real_expectation(rho0.mat, bell_at(0));
  const double eT = real_expectation(rho0.mat, bell_at(a1.states.size() - 1));
  const double numerator = std::abs(eT - e0);

  std::vector<double> speeds;
  speeds.reserve(a1.states.size());
  for (std::size_t i = 0; i < a1.states.size(); ++i) {
    const double term1 =
        schatten_norm(local_adjoint_apply(proc, Subsystem::a, a1.states[i]), SchattenOrder::two) *
        schatten_norm(local_adjoint_apply(proc, Subsystem::b, b1.states[i]), SchattenOrder::two);
    const double term2 =
        schatten_norm(local_adjoint_apply(proc, Subsystem::a, a2.states[i]), SchattenOrder::two) *
        schatten_norm(local_adjoint_apply(proc, Subsystem::b, b2.states[i]), SchattenOrder::two);
    speeds.push_back(term1 + term2);
  }
  const double lambda = averaged(speeds, a1);

  BoundReport report = finalize("bqsl-sep", t_final, numerator, lambda);
  if (!report.indeterminate) {
    report.bound_value /= std::sqrt(purity(rho0));
    report.tightness = t_final > 0.0 ? report.bound_value / t_final : 0.0;
  }
  return report;
}

BoundReport bound_mutual_info(const Trajectory& traj, const Process& proc) {
  require_picture(traj, Picture::schrodinger, "bound_mutual_info");
  require_quadrature_grid(traj, "bound_mutual_info");

  const ComplexMatrix& omega0 = traj.states.front();
  const ComplexMatrix marginal_a = partial_trace(omega0, 2, 2, Subsystem::b);
  const ComplexMatrix marginal_b = partial_trace(omega0, 2, 2, Subsystem::a);
  ComplexMatrix product = kron(marginal_a, marginal_b);
  product -= omega0;
  if (product.max_abs() > 1e-10)
    throw NotProductInitial("bound_mutual_info: initial state is not a product state");

  const LogOnSupport log0 = matrix_log_on_support(omega0);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const double leak = 1.0 - real_expectation(traj.states[i], log0.projector);
    if (leak > 100.0 * eps_support)
      throw SupportEscape("bound_mutual_info: state support escaped the initial support");
  }

  const double numerator = mutual_information(DensityOperator(traj.states.back(), 2, 2));

  std::vector<double> speeds;
  speeds.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const ComplexMatrix flow = liouvillian_apply(proc, traj.times[i], traj.states[i]);
    const LogOnSupport log_t = matrix_log_on_support(traj.states[i]);
    speeds.push_back(schatten_norm(flow, SchattenOrder::two) *
                     distance_2(log_t.log, log0.log));
  }
  return finalize("misl", traj.t_final, numerator, averaged(speeds, traj));
}

BoundReport bound_entropy(const Trajectory& traj, const Process& proc,
                          EntropyBoundVariant variant) {
  require_picture(traj, Picture::schrodinger, "bound_entropy");
  require_quadrature_grid(traj, "bound_entropy");

  bool all_pure = true;
  for (const ComplexMatrix& m : traj.states)
    if (std::abs(purity_of(m) - 1.0) > tol_purity) { all_pure = false; break; }
  if (all_pure) {
    BoundReport report;
    report.kind = "esl";
    report.t_final = traj.t_final;
    report.indeterminate = true;
    return report;
  }

  const double numerator =
      std::abs(entropy_of(traj.states.back()) - entropy_of(traj.states.front()));

  std::vector<double> flow_norm, log_norm, speeds;
  flow_norm.reserve(traj.states.size());
  log_norm.reserve(traj.states.size());
  speeds.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const ComplexMatrix flow = liouvillian_apply(proc, traj.times[i], traj.states[i]);
    const LogOnSupport log_t = matrix_log_on_support(traj.states[i]);
    flow_norm.push_back(schatten_norm(flow, SchattenOrder::two));
    log_norm.push_back(schatten_norm(log_t.log, SchattenOrder::two));
    speeds.push_back(flow_norm.back() * log_norm.back());
  }

  double lambda = 0.0;
  if (traj.t_final > 0.0) {
    if (variant == EntropyBoundVariant::single_average) {
      lambda = simpson(speeds, traj.dt()) / traj.t_final;
    } else {
      std::vector<double> flow_sq(flow_norm.size()), log_sq(log_norm.size());
      for (std::size_t i = 0; i < flow_norm.size(); ++i) {
        flow_sq[i] = flow_norm[i] * flow_norm[i];
        log_sq[i] = log_norm[i] * log_norm[i];
      }
      lambda = std::sqrt(simpson(flow_sq, traj.dt())) * std::sqrt(simpson(log_sq, traj.dt())) /
               traj.t_final;
    }
  }
  return finalize("esl", traj.t_final, numerator, lambda);
}

RateCheckReport verify_rate_inequality(const Trajectory& traj, RateMeasure measure,
                                       const Process& proc) {
  require_picture(traj, Picture::schrodinger, "verify_rate_inequality");
  if (measure == RateMeasure::concurrence_sq) require_unitary(proc, "verify_rate_inequality");

  RateCheckReport report;
  const std::size_t n = traj.states.size();
  if (n < 3) return report;
  const double h = traj.dt();

  // Measure values at every grid point.
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const DensityOperator rho(traj.states[i], 2, 2);
    switch (measure) {
      case RateMeasure::negativity: values[i] = negativity(rho); break;
      case RateMeasure::concurrence_sq: values[i] = concurrence_sq(rho); break;
      case RateMeasure::entropy: values[i] = von_neumann_entropy(rho); break;
    }
  }

  // Indices within 3h of a partial-transpose eigenvalue crossing, where the
  // negativity speed is not differentiable and central differences degrade.
  std::vector<bool> near_crossing(n, false);
  if (measure == RateMeasure::negativity) {
    std::vector<std::vector<double>> spectra(n);
    for (std::size_t i = 0; i < n; ++i)
      spectra[i] = eig_hermitian(partial_transpose(traj.states[i], 2, 2, Subsystem::b)).values;
    std::vector<bool> crossing(n, false);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < spectra[i].size(); ++k) {
        if (std::abs(spectra[i][k]) <= eps_support) crossing[i] = true;
        if (i + 1 < n && spectra[i][k] * spectra[i + 1][k] < 0.0) {
          crossing[i] = true;
          crossing[i + 1] = true;
        }
      }
    for (std::size_t i = 0; i < n; ++i)
      if (crossing[i])
        for (std::size_t j = (i >= 3 ? i - 3 : 0); j < std::min(n, i + 4); ++j)
          near_crossing[j] = true;
  }

  ComplexMatrix h2;
  if (measure == RateMeasure::concurrence_sq) {
    const ComplexMatrix ham = proc.hamiltonian();
    h2 = ham * ham;
  }

  report.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double lhs = std::abs(values[i + 1] - values[i - 1]) / (2.0 * h);
    double rhs = 0.0;
    const ComplexMatrix flow = liouvillian_apply(proc, traj.times[i], traj.states[i]);
    switch (measure) {
      case RateMeasure::negativity:
        rhs = 0.5 * schatten_norm(partial_transpose(flow, 2, 2, Subsystem::b),
                                  SchattenOrder::one);
        break;
      case RateMeasure::concurrence_sq:
        rhs = 4.0 * std::sqrt(std::max(real_expectation(traj.states[i], h2), 0.0));
        break;
      case RateMeasure::entropy: {
        const LogOnSupport log_t = matrix_log_on_support(traj.states[i]);
        rhs = schatten_norm(flow, SchattenOrder::two) *
              schatten_norm(log_t.log, SchattenOrder::two);
        break;
      }
    }
    double tol = std::max(tol_bound, 10.0 * h * h);
    if (near_crossing[i]) tol = std::max(tol, 1e-3);
    const double excess = lhs - rhs - tol;
    if (excess > report.max_excess) {
      report.max_excess = excess;
      report.worst_time = traj.times[i];
    }
    ++report.points;
  }
  if (report.points == 0) report.max_excess = 0.0;
  return report;
}

}  // namespace qsl
