#pragma once

// Numerical evaluation of synthesized systems and time stepping.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bipara/eom.hpp"

namespace bipara {

struct PhaseState {
  double t = 0.0;
  std::vector<ParaComplex> z;
  std::vector<ParaComplex> zb;

  EvalState eval_state() const { return {z, zb, {}, {}}; }
};

/// `z1=<v> ... zb1=<v> ...`; the time is reported separately.
std::string describe(const PhaseState& s);

struct StateDerivative {
  std::vector<ParaComplex> dz;
  std::vector<ParaComplex> dzb;
};

using RhsFunction = std::function<StateDerivative(const PhaseState&)>;

enum class Method { rk4, rkf45 };

struct IntegratorConfig {
  Method method = Method::rk4;
  double dt = 1e-3;   // rk4
  double tol = 1e-8;  // rkf45, absolute and relative
  double t0 = 0.0;
  double t1 = 1.0;
  std::size_t max_steps = 10'000'000;

  /// Throws std::invalid_argument on a non-positive step/tolerance, t1 <= t0
  /// or max_steps == 0.
  void validate() const;
};

struct SampleDiagnostics {
  std::optional<ParaComplex> energy;
  std::optional<double> residual;
};

struct Trajectory {
  std::vector<PhaseState> samples;
  std::vector<SampleDiagnostics> diagnostics;  // parallel to samples
};

/// Evaluates M and b at `s`, solves for (ξ, ξ̄) and returns them as (ż, ż̄).
StateDerivative el_rhs(const ImplicitODE& ode, const PhaseState& s);

/// Checks D± and evaluates the explicit right-hand sides at `s`.
StateDerivative ham_rhs(const ExplicitODE& ode, const PhaseState& s);

RhsFunction make_rhs(ImplicitODE ode);
RhsFunction make_rhs(ExplicitODE ode);

/// Classical RK4 with fixed dt (the last step is shortened to land on t1) or
/// Fehlberg 4(5) with local extrapolation and mixed absolute/relative error
/// control at `tol`. Library errors raised by `rhs` are rethrown with the
/// failing stage time and state attached. Throws StepFailure when RKF45
/// needs a step below 1e-12·(t1 - t0), when max_steps is exceeded, or when
/// the state stops being finite.
Trajectory integrate(const RhsFunction& rhs, const PhaseState& s0, const IntegratorConfig& cfg);

/// Per-sample residual of the Euler-Lagrange rows with d/dt replaced by a
/// central difference of e^λ ∂L/∂z̄_i and e^-λ ∂L/∂z_i over ±h. Samples
/// without neighbours exactly h away (boundaries, irregular spacing) are
/// nullopt.
std::vector<std::optional<double>> residual_series(const LagrangianProblem& p,
                                                   const Trajectory& tr, double h);

/// Stores H(sample) in every diagnostics entry.
void attach_energy(Trajectory& tr, const HamiltonianProblem& p);
/// Stores E_L(sample, ξ(sample)) with ξ solved from `ode`.
void attach_energy(Trajectory& tr, const LagrangianProblem& p, const ImplicitODE& ode);

/// Stores the plug-back residual of audit_lagrange / audit_hamilton.
void attach_audit_residuals(Trajectory& tr, const LagrangianProblem& p, const ImplicitODE& ode);
void attach_audit_residuals(Trajectory& tr, const HamiltonianProblem& p, const ExplicitODE& ode);

}  // namespace bipara
