#pragma once

/**
 * @file eom.hpp
 * @brief Geometric objects of conformal bi-para mechanics and the synthesized
 * equations of motion.
 *
 * Every construction uses the collapsed form e⁺x - e⁻x = j·x of the idempotent
 * expansions, so each object is a single para-complex expression per
 * component.
 *
 * Lagrangian side, with conformal factor λ and velocities ξ = ż, ξ̄ = ż̄:
 *
 *     j·d/dt(e^λ  ∂L/∂z̄_i) + ∂L/∂z_i = 0      (row A_i)
 *     j·d/dt(e^-λ ∂L/∂z_i) - ∂L/∂z̄_i = 0      (row B_i)
 *
 * expanded with d/dt = ξ^k ∂/∂z_k + ξ̄^k ∂/∂z̄_k into M(z)·(ξ, ξ̄) = b(z).
 *
 * Hamiltonian side, with S = Σ_i (z_i ∂λ/∂z_i + z̄_i ∂λ/∂z̄_i) and
 * D± = 1 ± e^λ S / 2:
 *
 *     dz_i/dt = -j ∂H/∂z̄_i / D⁺,    dz̄_i/dt = j ∂H/∂z_i / D⁻.
 */

#include <vector>

#include "bipara/calculus.hpp"
#include "bipara/forms.hpp"

namespace bipara {

struct LagrangianProblem {
  CoordinateChart chart;
  Expr lagrangian;
  Expr lambda;  // conformal factor

  /// Throws IndexOutOfRange when L or λ mention coordinates outside the chart.
  LagrangianProblem(CoordinateChart chart, Expr lagrangian, Expr lambda);
};

struct HamiltonianProblem {
  CoordinateChart chart;
  Expr hamiltonian;
  Expr lambda;

  HamiltonianProblem(CoordinateChart chart, Expr hamiltonian, Expr lambda);
};

/// ξ^i and ξ̄^i, either symbolic or constant expressions.
struct Semispray {
  std::vector<Expr> xi;
  std::vector<Expr> xibar;

  /// The formal velocity variables xi1..xin, xib1..xibn.
  static Semispray formal(const CoordinateChart& chart);
};

/// M·(ξ¹..ξⁿ, ξ̄¹..ξ̄ⁿ) = b; rows A_1..A_n then B_1..B_n.
struct ImplicitODE {
  CoordinateChart chart;
  std::vector<std::vector<Expr>> matrix;  // 2n × 2n
  std::vector<Expr> rhs;                  // 2n
};

struct ExplicitODE {
  CoordinateChart chart;
  std::vector<Expr> rhs_z;
  std::vector<Expr> rhs_zb;
  Expr denom_plus;   // D⁺
  Expr denom_minus;  // D⁻
};

/// d_(W⁺-W⁻)L = Σ (-j e^λ ∂L/∂z̄_i) dz_i + (j e^-λ ∂L/∂z_i) dz̄_i.
OneForm vertical_differential(const LagrangianProblem& p);

/// Φ_L = -d(d_(W⁺-W⁻)L).
TwoForm lagrangian_two_form(const LagrangianProblem& p);

/// V = (W⁺-W⁻)(ξ): -e^λ j ξ^i ∂/∂z_i + e^-λ j ξ̄^i ∂/∂z̄_i.
VectorField liouville_vector_field(const Semispray& xi, const Expr& lambda);

/// E_L = -j ξ^i e^λ ∂L/∂z̄_i + j ξ̄^i e^-λ ∂L/∂z_i - L, in the chart
/// coordinates and the formal velocities.
Expr energy(const LagrangianProblem& p);

/// (1/2) j e^λ (z̄_i dz_i - z_i dz̄_i).
OneForm liouville_one_form(const Expr& lambda, const CoordinateChart& chart);

/// ω = (1/2)[(z_i dz_i + z̄_i dz̄_i) e⁺ + e^{2λ}(z_i dz_i + z̄_i dz̄_i) e⁻].
OneForm canonical_one_form(const Expr& lambda, const CoordinateChart& chart);

/// Φ = -d(liouville_one_form).
TwoForm canonical_two_form(const Expr& lambda, const CoordinateChart& chart);

ImplicitODE synthesize_el(const LagrangianProblem& p);
ExplicitODE synthesize_ham(const HamiltonianProblem& p);

/// Rows A_i, B_i written directly as expressions in z, z̄, ξ, ξ̄, with the
/// time derivative taken as ξ(f) = ξ^k ∂f/∂z_k + ξ̄^k ∂f/∂z̄_k:
///   A_i = j e^λ ξ(∂L/∂z̄_i) + j e^λ ξ(λ) ∂L/∂z̄_i + ∂L/∂z_i
///   B_i = -j e^-λ ξ(∂L/∂z_i) + j e^-λ ξ(λ) ∂L/∂z_i + ∂L/∂z̄_i
std::vector<Expr> lagrange_residual_expressions(const LagrangianProblem& p);

/// Max norm of the row residuals at (s, ξ). Uses s.z, s.zb and the
/// velocities `xi`, `xibar`.
double audit_lagrange(const LagrangianProblem& p, const EvalState& s,
                      const std::vector<ParaComplex>& xi, const std::vector<ParaComplex>& xibar);

/// audit_lagrange with the row expressions built once.
class LagrangeAuditor {
 public:
  explicit LagrangeAuditor(const LagrangianProblem& p);
  double operator()(const EvalState& s, const std::vector<ParaComplex>& xi,
                    const std::vector<ParaComplex>& xibar) const;

 private:
  std::vector<Expr> rows_;
};

/// audit_hamilton with all partial derivatives built once.
class HamiltonAuditor {
 public:
  HamiltonAuditor(const HamiltonianProblem& p, ExplicitODE ode);
  double operator()(const EvalState& s) const;

 private:
  ExplicitODE ode_;
  Expr lambda_;
  Expr sum_;  // Σ z_k λ_{z_k} + z̄_k λ_{z̄_k}
  std::vector<Expr> h_z_;
  std::vector<Expr> h_zb_;
};

/// Evaluates D⁺ and D⁻ of `ode` at `s`; throws SingularDenominator naming
/// the first one with a vanishing idempotent component.
void check_denominators(const ExplicitODE& ode, const EvalState& s);

/// Compares i_Z Φ against dH coefficientwise at `s`, with Z taken from
/// `ode` (normally synthesize_ham(p)). Returns the max norm of the mismatch.
double audit_hamilton(const HamiltonianProblem& p, const ExplicitODE& ode, const EvalState& s);
double audit_hamilton(const HamiltonianProblem& p, const EvalState& s);

/// True when every partial derivative of λ simplifies to zero.
bool is_constant_in_chart(const Expr& e, const CoordinateChart& chart);

}  // namespace bipara
