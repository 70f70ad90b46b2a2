#include "qsl/dynamics.hpp"

#include <cmath>

namespace qsl {

namespace {

const ComplexMatrix& sigma_x() { static const ComplexMatrix m = pauli_x(); return m; }
const ComplexMatrix& sigma_y() { static const ComplexMatrix m = pauli_y(); return m; }
const ComplexMatrix& sigma_z() { static const ComplexMatrix m = pauli_z(); return m; }
const ComplexMatrix& id2() { static const ComplexMatrix m = identity2(); return m; }

// sigma_minus = |1><0| in the {|0>, |1>} basis.
ComplexMatrix make_sigma_minus() {
  ComplexMatrix m(2, 2);
  m(1, 0) = 1.0;
  return m;
}

const ComplexMatrix& sigma_minus() { static const ComplexMatrix m = make_sigma_minus(); return m; }

ComplexMatrix embed(const ComplexMatrix& op, Subsystem side) {
  return side == Subsystem::a ? kron(op, id2()) : kron(id2(), op);
}

// 2 L m L^dag - {L^dag L, m} with weight g, accumulated into out.
void add_dissipator(ComplexMatrix& out, double g, const ComplexMatrix& l,
                    const ComplexMatrix& m) {
  if (g == 0.0) return;
  const ComplexMatrix ldag = l.adjoint();
  const ComplexMatrix ldl = ldag * l;
  out += Complex(g) * (Complex(2.0) * (l * m * ldag) - ldl * m - m * ldl);
}

// Adjoint dissipator 2 L^dag m L - {L^dag L, m} with weight g.
void add_adjoint_dissipator(ComplexMatrix& out, double g, const ComplexMatrix& l,
                            const ComplexMatrix& m) {
  if (g == 0.0) return;
  const ComplexMatrix ldag = l.adjoint();
  const ComplexMatrix ldl = ldag * l;
  out += Complex(g) * (Complex(2.0) * (ldag * m * l) - ldl * m - m * ldl);
}

void require_open(const Process& proc, const char* op) {
  if (proc.is_unitary())
    throw UnsupportedCombination(std::string(op) + ": not defined for the unitary process");
}

void require_dim(const ComplexMatrix& m, std::size_t n, const char* op) {
  if (m.rows() != n || m.cols() != n)
    throw DimensionMismatch(std::string(op) + ": expected a " + std::to_string(n) + "x" +
                            std::to_string(n) + " matrix");
}

// Dissipative part of the generator; direction picks L (Schroedinger) or its
// adjoint (Heisenberg).  Jump weights follow the printed master equations:
// dephasing gamma (sz m sz - m) per qubit, depolarizing (gamma/4) sum_i
// (si m si - m) per qubit, amplitude damping weight gamma/2 on sigma_minus.
ComplexMatrix open_generator(const Process& proc, const ComplexMatrix& m, bool adjoint) {
  ComplexMatrix out(m.rows(), m.cols());
  const auto add = adjoint ? add_adjoint_dissipator : add_dissipator;
  switch (proc.kind) {
    case ProcessKind::pure_dephasing:
      add(out, proc.gamma_a / 2.0, embed(sigma_z(), Subsystem::a), m);
      add(out, proc.gamma_b / 2.0, embed(sigma_z(), Subsystem::b), m);
      break;
    case ProcessKind::depolarizing:
      for (const ComplexMatrix* s : {&sigma_x(), &sigma_y(), &sigma_z()}) {
        add(out, proc.gamma_a / 8.0, embed(*s, Subsystem::a), m);
        add(out, proc.gamma_b / 8.0, embed(*s, Subsystem::b), m);
      }
      break;
    case ProcessKind::amplitude_damping:
      add(out, proc.gamma_a / 2.0, embed(sigma_minus(), Subsystem::a), m);
      add(out, proc.gamma_b / 2.0, embed(sigma_minus(), Subsystem::b), m);
      break;
    case ProcessKind::nonlocal_unitary:
      break;
  }
  return out;
}

}  // namespace

Process Process::nonlocal_unitary(double theta, double mu_z) {
  Process p;
  p.kind = ProcessKind::nonlocal_unitary;
  p.theta = theta;
  p.mu_z = mu_z;
  return p;
}

Process Process::pure_dephasing(double gamma_a, double gamma_b) {
  if (gamma_a < 0.0 || gamma_b < 0.0)
    throw OutOfRange("Process: rates must be nonnegative");
  Process p;
  p.kind = ProcessKind::pure_dephasing;
  p.gamma_a = gamma_a;
  p.gamma_b = gamma_b;
  return p;
}

Process Process::depolarizing(double gamma_a, double gamma_b) {
  Process p = pure_dephasing(gamma_a, gamma_b);
  p.kind = ProcessKind::depolarizing;
  return p;
}

Process Process::amplitude_damping(double gamma_a, double gamma_b) {
  Process p = pure_dephasing(gamma_a, gamma_b);
  p.kind = ProcessKind::amplitude_damping;
  return p;
}

ComplexMatrix Process::hamiltonian() const {
  if (!is_unitary())
    throw UnsupportedCombination("hamiltonian: defined for the unitary process only");
  return Complex(theta) * kron(sigma_x(), sigma_x()) + Complex(mu_z) * kron(sigma_z(), sigma_z());
}

ComplexMatrix liouvillian_apply(const Process& proc, double /*t*/, const ComplexMatrix& rho) {
  require_dim(rho, 4, "liouvillian_apply");
  if (proc.is_unitary()) {
    const ComplexMatrix h = proc.hamiltonian();
    return Complex(0.0, -1.0) * (h * rho - rho * h);
  }
  return open_generator(proc, rho, false);
}

ComplexMatrix adjoint_apply(const Process& proc, double /*t*/, const ComplexMatrix& obs) {
  require_dim(obs, 4, "adjoint_apply");
  if (proc.is_unitary()) {
    const ComplexMatrix h = proc.hamiltonian();
    return Complex(0.0, 1.0) * (h * obs - obs * h);
  }
  return open_generator(proc, obs, true);
}

ComplexMatrix local_adjoint_apply(const Process& proc, Subsystem side, const ComplexMatrix& obs) {
  require_open(proc, "local_adjoint_apply");
  require_dim(obs, 2, "local_adjoint_apply");
  const double g = side == Subsystem::a ? proc.gamma_a : proc.gamma_b;
  ComplexMatrix out(2, 2);
  switch (proc.kind) {
    case ProcessKind::pure_dephasing:
      add_adjoint_dissipator(out, g / 2.0, sigma_z(), obs);
      break;
    case ProcessKind::depolarizing:
      for (const ComplexMatrix* s : {&sigma_x(), &sigma_y(), &sigma_z()})
        add_adjoint_dissipator(out, g / 8.0, *s, obs);
      break;
    case ProcessKind::amplitude_damping:
      add_adjoint_dissipator(out, g / 2.0, sigma_minus(), obs);
      break;
    case ProcessKind::nonlocal_unitary:
      break;
  }
  return out;
}

std::size_t default_steps(double t_final) {
  std::size_t n = static_cast<std::size_t>(std::ceil(2000.0 * t_final));
  if (n < 2) n = 2;
  if (n % 2 != 0) ++n;
  return n;
}

namespace {

template <typename Generator>
Trajectory integrate(Generator&& generator, const ComplexMatrix& initial, double t_final,
                     std::size_t steps, Picture picture) {
  if (!(t_final >= 0.0)) throw OutOfRange("evolve: t_final must be nonnegative");
  if (initial.hermiticity_defect() > tol_herm)
    throw NotHermitian("evolve: initial operator is not Hermitian within 1e-10");
  if (picture == Picture::schrodinger &&
      std::abs(initial.trace() - Complex(1.0)) > 1e-9)
    throw OutOfRange("evolve: initial state trace deviates from 1 beyond 1e-9");

  Trajectory traj;
  traj.picture = picture;
  traj.t_final = t_final;
  traj.times.push_back(0.0);
  traj.states.push_back(initial);
  if (t_final == 0.0) return traj;
  if (steps == 0) throw OutOfRange("evolve: steps must be at least 1");

  const double h = t_final / static_cast<double>(steps);
  ComplexMatrix state = initial;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const ComplexMatrix k1 = generator(t, state);
    const ComplexMatrix k2 = generator(t + 0.5 * h, state + Complex(0.5 * h) * k1);
    const ComplexMatrix k3 = generator(t + 0.5 * h, state + Complex(0.5 * h) * k2);
    const ComplexMatrix k4 = generator(t + h, state + Complex(h) * k3);
    state += Complex(h / 6.0) * (k1 + Complex(2.0) * k2 + Complex(2.0) * k3 + k4);

    // Re-hermitise, tracking how much was removed.
    const double herm_corr = 0.5 * state.hermiticity_defect();
    traj.max_herm_correction = std::max(traj.max_herm_correction, herm_corr);
    if (herm_corr > 1e-9)
      throw InvariantDrift("evolve: hermiticity correction exceeded 1e-9");
    state = Complex(0.5) * (state + state.adjoint());

    if (picture == Picture::schrodinger) {
      const double tr = state.trace().real();
      const double trace_corr = std::abs(tr - 1.0);
      traj.max_trace_correction = std::max(traj.max_trace_correction, trace_corr);
      if (trace_corr > 1e-9)
        throw InvariantDrift("evolve: trace correction exceeded 1e-9");
      state *= Complex(1.0 / tr);
    }

    traj.times.push_back(static_cast<double>(k + 1) * h);
    traj.states.push_back(state);
  }
  return traj;
}

}  // namespace

Trajectory evolve(const Process& proc, const ComplexMatrix& initial, double t_final,
                  std::size_t steps, Picture picture) {
  require_dim(initial, 4, "evolve");
  Trajectory traj = integrate(
      [&](double t, const ComplexMatrix& m) {
        return picture == Picture::schrodinger ? liouvillian_apply(proc, t, m)
                                               : adjoint_apply(proc, t, m);
      },
      initial, t_final, steps, picture);

  if (picture == Picture::schrodinger) {
    for (const ComplexMatrix& m : traj.states) {
      const EigResult eig = eig_hermitian(m);
      if (eig.values.front() < -1e-7)
        throw InvariantDrift("evolve: stored state eigenvalue below -1e-7");
    }
  }
  return traj;
}

Trajectory evolve_local(const Process& proc, Subsystem side, const ComplexMatrix& initial,
                        double t_final, std::size_t steps) {
  require_open(proc, "evolve_local");
  require_dim(initial, 2, "evolve_local");
  return integrate(
      [&](double, const ComplexMatrix& m) { return local_adjoint_apply(proc, side, m); },
      initial, t_final, steps, Picture::heisenberg);
}

ComplexMatrix closed_form(const Process& proc, double p, double t, Picture picture,
                          std::optional<double> eta) {
  if (!(p >= 0.0 && p <= 1.0)) throw OutOfRange("closed_form: p must lie in [0, 1]");
  if (!proc.is_unitary() && proc.gamma_a != proc.gamma_b)
    throw UnsupportedCombination("closed_form: requires gamma_a = gamma_b");
  const double g = proc.gamma_a;
  const double k = std::sqrt(p * (1.0 - p));

  if (picture == Picture::schrodinger) {
    ComplexMatrix m(4, 4);
    switch (proc.kind) {
      case ProcessKind::nonlocal_unitary: {
        const double c2 = std::cos(2.0 * proc.theta * t);
        const double s2 = std::sin(2.0 * proc.theta * t);
        m(0, 0) = 0.5 * (1.0 + (2.0 * p - 1.0) * c2);
        m(3, 3) = 0.5 * (1.0 - (2.0 * p - 1.0) * c2);
        m(0, 3) = Complex(k, 0.5 * (2.0 * p - 1.0) * s2);
        m(3, 0) = std::conj(m(0, 3));
        break;
      }
      case ProcessKind::pure_dephasing: {
        m(0, 0) = p;
        m(3, 3) = 1.0 - p;
        m(0, 3) = m(3, 0) = k * std::exp(-4.0 * g * t);
        break;
      }
      case ProcessKind::depolarizing: {
        const double e1 = std::exp(-g * t);
        const double e2 = std::exp(-2.0 * g * t);
        m(0, 0) = 0.5 * e1 * (2.0 * p + std::cosh(g * t) - 1.0);
        m(1, 1) = m(2, 2) = 0.25 * (1.0 - e2);
        m(3, 3) = 0.5 * e1 * (1.0 - 2.0 * p + std::cosh(g * t));
        m(0, 3) = m(3, 0) = k * e2;
        break;
      }
      case ProcessKind::amplitude_damping: {
        const double e1 = std::exp(-g * t);
        const double e2 = e1 * e1;
        const double grow = std::exp(g * t) - 1.0;
        m(0, 0) = p * e2;
        m(1, 1) = m(2, 2) = p * e2 * grow;
        m(3, 3) = 1.0 - p + p * e2 * grow * grow;
        m(0, 3) = m(3, 0) = k * e1;
        break;
      }
    }
    return m;
  }

  if (proc.is_unitary())
    throw UnsupportedCombination("closed_form: no Heisenberg form for the unitary process");

  const double eta_val = eta.value_or(optimal_chsh_settings(p).eta);
  const double ce = 2.0 * std::cos(eta_val);
  const double se = 2.0 * std::sin(eta_val);
  ComplexMatrix m(4, 4);
  double off = 0.0;
  switch (proc.kind) {
    case ProcessKind::pure_dephasing: {
      m(0, 0) = ce;
      m(1, 1) = m(2, 2) = -ce;
      m(3, 3) = ce;
      off = se * std::exp(-4.0 * g * t);
      break;
    }
    case ProcessKind::depolarizing: {
      const double e2 = std::exp(-2.0 * g * t);
      m(0, 0) = ce * e2;
      m(1, 1) = m(2, 2) = -ce * e2;
      m(3, 3) = ce * e2;
      off = se * e2;
      break;
    }
    case ProcessKind::amplitude_damping: {
      const double w = std::exp(-g * t);
      m(0, 0) = ce * (1.0 - 2.0 * w) * (1.0 - 2.0 * w);
      m(1, 1) = m(2, 2) = ce * (1.0 - 2.0 * w);
      m(3, 3) = ce;
      off = se * w;
      break;
    }
    case ProcessKind::nonlocal_unitary:
      break;
  }
  m(0, 3) = m(3, 0) = off;
  m(1, 2) = m(2, 1) = off;
  return m;
}

}  // namespace qsl
