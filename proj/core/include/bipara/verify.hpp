#pragma once

// Invariant suites and reports.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bipara/dynamics.hpp"

namespace bipara {

inline constexpr std::uint64_t kDefaultSeed = 20240613;

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
};

struct Report {
  std::vector<Check> checks;
  std::uint64_t seed = 0;

  /// Records a check that passes when measured <= threshold.
  void add(std::string name, double measured, double threshold);
  void append(const Report& other);
  bool passed() const;
};

/// One `CHECK <name> <PASS|FAIL> measured=<v> threshold=<t>` line per check.
std::string to_text(const Report& r);

/// Draws states with components uniform in [-2, 2], rejecting any coordinate
/// within 1e-3 of a zero-divisor line and any state `accept` turns down.
class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed) : rng_(seed) {}

  /// Throws std::runtime_error after 100000 rejected draws.
  EvalState draw(const CoordinateChart& chart,
                 const std::function<bool(const EvalState&)>& accept = {});
  ParaComplex draw_value();
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Accepts states where D± have both idempotent components at least 1e-3
/// away from zero and the right-hand sides evaluate.
bool hamilton_regular(const ExplicitODE& ode, const EvalState& s);
/// Accepts states where the velocity system is solvable.
bool lagrange_regular(const ImplicitODE& ode, const EvalState& s);

/// Idempotent identities, conversion round trip, ring laws, division and
/// exp additivity over 1000 random operands.
Report selftest_algebra(std::uint64_t seed);

/// Structure operator tables on every basis element, J² = I, J = P⁺ - P⁻,
/// W± at λ = 0 against P±, W± scaling with e^{±λ}.
Report selftest_structure(std::uint64_t seed);

/// Conformal synthesis with λ = 0 against a separate classical para
/// synthesizer at `samples` random states. Threshold 1e-12 (relative).
Report check_reduction(const LagrangianProblem& p, int samples, std::uint64_t seed);
Report check_reduction(const HamiltonianProblem& p, int samples, std::uint64_t seed);

/// Symbolic partials of `e` against central differences along the real and
/// j directions of every chart coordinate, h = 1e-5, threshold 1e-6
/// relative.
Report check_fd(const Expr& e, const CoordinateChart& chart, int samples, std::uint64_t seed);

/// Random analytic expression over the chart, safe to evaluate at sampled
/// states.
Expr random_expression(std::mt19937_64& rng, const CoordinateChart& chart, int depth);

/// parse(to_text(e)) against e and check_fd over `count` random expressions.
Report check_symbolic(int count, std::uint64_t seed);

/// max_t |H(t) - H(0)| per component. Asserted at 1e-8 when λ is constant,
/// otherwise reported only.
Report conservation_report(const HamiltonianProblem& p, const Trajectory& tr);
/// E_L drift, reported only.
Report conservation_report(const LagrangianProblem& p, const ImplicitODE& ode,
                           const Trajectory& tr);

/// Plug-back audits at `samples` random regular states.
Report audit_report(const LagrangianProblem& p, int samples, std::uint64_t seed);
Report audit_report(const HamiltonianProblem& p, int samples, std::uint64_t seed);

/// Integrates from a seeded start over [0, 0.5] (RK4, dt = 1e-4) and reports
/// the finite-difference residual (1e-5), the plug-back residual along the
/// path (1e-10) and the endpoint gap to RKF45 at 1e-10 (1e-7). Starts are
/// redrawn until RKF45 gets through and the velocity system stays within
/// condition 1e2 at every RK4 sample.
Report trajectory_report(const LagrangianProblem& p, std::uint64_t seed);

/// Lagrangians and Hamiltonians used by the reduction battery (λ = 0).
std::vector<LagrangianProblem> lagrangian_fixtures();
std::vector<HamiltonianProblem> hamiltonian_fixtures();

/// Conformal factors the audit battery is run with.
std::vector<std::string> conformal_factor_fixtures();

/// Every suite above plus a short closed-form integration check.
Report run_selftest(std::uint64_t seed);

}  // namespace bipara
