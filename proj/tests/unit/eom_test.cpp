#include <cmath>
#include <random>

#include "bipara/dynamics.hpp"
#include "bipara/eom.hpp"
#include "support.hpp"

namespace bipara {
namespace {

using testing::equivalent;
using testing::near;
using testing::state;

const CoordinateChart kOne(1);
const CoordinateChart kTwo(2);

Expr P(const char* text, const CoordinateChart& chart = kOne) { return parse(text, chart); }

TEST(VerticalDifferential, Examples) {
  const OneForm w = vertical_differential(LagrangianProblem(kOne, P("z1*zb1"), Expr()));
  EXPECT_TRUE(equivalent(w.dz[0], P("-j*z1"), 1));
  EXPECT_TRUE(equivalent(w.dzb[0], P("j*zb1"), 1));

  EXPECT_TRUE(vertical_differential(LagrangianProblem(kOne, P("3+j"), Expr())).is_zero());

  const OneForm wc = vertical_differential(LagrangianProblem(kOne, P("z1*zb1"), P("0.4")));
  EXPECT_TRUE(equivalent(wc.dz[0], P("-j*exp(0.4)*z1"), 1));
  EXPECT_TRUE(equivalent(wc.dzb[0], P("j*exp(-0.4)*zb1"), 1));
}

TEST(LagrangianTwoForm, Examples) {
  EXPECT_TRUE(lagrangian_two_form(LagrangianProblem(kOne, P("z1*zb1"), Expr())).is_zero());
  EXPECT_TRUE(lagrangian_two_form(LagrangianProblem(kOne, P("2.5"), Expr())).is_zero());
  const TwoForm phi = lagrangian_two_form(LagrangianProblem(kOne, P("z1^2*zb1"), Expr()));
  EXPECT_TRUE(equivalent(phi.coefficient(0, 1), P("-2*j*zb1"), 1));
  EXPECT_TRUE(equivalent(phi.coefficient(1, 0), P("2*j*zb1"), 1));
}

TEST(LiouvilleVectorField, Examples) {
  const Semispray unit{{Expr::constant(1.0)}, {Expr()}};
  const VectorField v = liouville_vector_field(unit, Expr());
  EXPECT_TRUE(equivalent(v.d_z[0], P("-j"), 1));
  EXPECT_TRUE(is_zero(v.d_zb[0]));

  const VectorField zero = liouville_vector_field(Semispray{{Expr()}, {Expr()}}, P("z1"));
  EXPECT_TRUE(is_zero(zero.d_z[0]) && is_zero(zero.d_zb[0]));

  const Semispray both{{Expr::constant(1.0)}, {Expr::constant(1.0)}};
  const VectorField w = liouville_vector_field(both, P("0.3"));
  EXPECT_TRUE(equivalent(w.d_z[0], P("-exp(0.3)*j"), 1));
  EXPECT_TRUE(equivalent(w.d_zb[0], P("exp(-0.3)*j"), 1));
}

TEST(Energy, Examples) {
  const Expr e = energy(LagrangianProblem(kOne, P("z1*zb1"), Expr()));
  const Expr xi = Expr::variable(Coord::xi(1));
  const Expr xib = Expr::variable(Coord::xibar(1));
  const Expr j = Expr::constant(pc::j);
  EXPECT_TRUE(equivalent(e, -(j * xi * P("z1")) + j * xib * P("zb1") - P("z1*zb1"), 1));

  EXPECT_TRUE(energy(LagrangianProblem(kOne, P("1.25"), Expr())).is_constant(-1.25));

  const Expr ec = energy(LagrangianProblem(kOne, P("0.5*zb1^2"), P("0.2")));
  EXPECT_TRUE(equivalent(ec, -(j * xi * P("exp(0.2)*zb1")) - P("0.5*zb1^2"), 1));
}

TEST(LiouvilleForms, Examples) {
  const OneForm l = liouville_one_form(Expr(), kOne);
  EXPECT_TRUE(equivalent(l.dz[0], P("0.5*j*zb1"), 1));
  EXPECT_TRUE(equivalent(l.dzb[0], P("-0.5*j*z1"), 1));

  const OneForm w = canonical_one_form(Expr(), kOne);
  EXPECT_TRUE(equivalent(w.dz[0], P("0.5*z1"), 1));
  EXPECT_TRUE(equivalent(w.dzb[0], P("0.5*zb1"), 1));

  const OneForm lc = liouville_one_form(P("0.7"), kOne);
  EXPECT_TRUE(equivalent(lc.dz[0], P("0.5*j*exp(0.7)*zb1"), 1));
}

TEST(CanonicalTwoForm, Examples) {
  const TwoForm phi = canonical_two_form(Expr(), kOne);
  EXPECT_TRUE(phi.coefficient(0, 1).is_constant(pc::j));
  EXPECT_EQ(phi.terms().size(), 1u);

  const TwoForm phic = canonical_two_form(P("0.7"), kOne);
  EXPECT_TRUE(equivalent(phic.coefficient(0, 1), P("exp(0.7)*j"), 1));

  const TwoForm phi2 = canonical_two_form(Expr(), kTwo);
  EXPECT_TRUE(phi2.coefficient(0, 2).is_constant(pc::j));
  EXPECT_TRUE(phi2.coefficient(1, 3).is_constant(pc::j));
  EXPECT_EQ(phi2.terms().size(), 2u);
}

TEST(CanonicalTwoForm, Closed) {
  for (const char* lambda : {"0", "0.7", "0.2*z1 - 0.1*zb2", "sin(z1*zb1) + z2^2"}) {
    EXPECT_TRUE(exterior_derivative(canonical_two_form(P(lambda, kTwo), kTwo)).is_zero()) << lambda;
  }
}

std::pair<ParaComplex, ParaComplex> solved(const LagrangianProblem& p, ParaComplex z,
                                           ParaComplex zb) {
  const StateDerivative d = el_rhs(synthesize_el(p), PhaseState{0.0, {z}, {zb}});
  return {d.dz[0], d.dzb[0]};
}

TEST(SynthesizeEL, Oscillator) {
  const LagrangianProblem p(kOne, P("z1*zb1"), Expr());
  const ParaComplex z(0.3, -1.2), zb(0.8, 0.1);
  const auto [xi, xib] = solved(p, z, zb);
  EXPECT_TRUE(near(xi, -pc::j * zb, 1e-15));
  EXPECT_TRUE(near(xib, pc::j * z, 1e-15));
}

TEST(SynthesizeEL, ConstantLambda) {
  const double c = 0.6;
  const LagrangianProblem p(kOne, P("z1*zb1"), P("0.6"));
  const ParaComplex z(0.3, -1.2), zb(0.8, 0.1);
  const auto [xi, xib] = solved(p, z, zb);
  EXPECT_TRUE(near(xi, -pc::j * ParaComplex(std::exp(-c)) * zb, 1e-14));
  EXPECT_TRUE(near(xib, pc::j * ParaComplex(std::exp(c)) * z, 1e-14));
}

TEST(SynthesizeEL, DegenerateHasZeroRow) {
  const ImplicitODE ode = synthesize_el(LagrangianProblem(kOne, P("z1"), Expr()));
  for (const auto& e : ode.matrix[0]) EXPECT_TRUE(is_zero(e));
  EXPECT_FALSE(is_zero(ode.rhs[0]));
  EXPECT_THROW(el_rhs(ode, PhaseState{0.0, {ParaComplex(0.5)}, {ParaComplex(0.2)}}),
               DegenerateLagrangian);
}

TEST(SynthesizeHam, Oscillator) {
  const ExplicitODE ode = synthesize_ham(HamiltonianProblem(kOne, P("z1*zb1"), Expr()));
  EXPECT_TRUE(equivalent(ode.rhs_z[0], P("-j*z1"), 1));
  EXPECT_TRUE(equivalent(ode.rhs_zb[0], P("j*zb1"), 1));
}

TEST(SynthesizeHam, ConstantLambdaInvariance) {
  const Expr h = P("z1*zb1 + 0.2*z1*zb2 + exp(0.2*z2)*zb1", kTwo);
  const ExplicitODE base = synthesize_ham(HamiltonianProblem(kTwo, h, Expr()));
  const ExplicitODE scaled = synthesize_ham(HamiltonianProblem(kTwo, h, P("1.3", kTwo)));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const EvalState s = testing::random_state(rng, 2);
    for (int i = 0; i < 2; ++i) {
      EXPECT_TRUE(near(evaluate(scaled.rhs_z[i], s), evaluate(base.rhs_z[i], s), 1e-12));
      EXPECT_TRUE(near(evaluate(scaled.rhs_zb[i], s), evaluate(base.rhs_zb[i], s), 1e-12));
    }
  }
}

TEST(SynthesizeHam, SingularDenominator) {
  const ExplicitODE ode = synthesize_ham(HamiltonianProblem(kOne, P("z1*zb1"), P("2*z1 - 2")));
  EXPECT_TRUE(near(evaluate(ode.denom_minus, state({pc::one}, {ParaComplex(0.5)})), {}, 1e-15));
  try {
    check_denominators(ode, state({pc::one}, {ParaComplex(0.5)}));
    FAIL() << "expected SingularDenominator";
  } catch (const SingularDenominator& e) {
    EXPECT_EQ(e.which(), "D-");
  }
}

TEST(SynthesizeHam, EnergyRateVanishesForConstantLambda) {
  const HamiltonianProblem p(kOne, P("z1*zb1 + 0.1*z1^2 + cos(zb1)"), P("0.7"));
  const ExplicitODE ode = synthesize_ham(p);
  const Expr hz = differentiate(p.hamiltonian, Coord::z(1));
  const Expr hzb = differentiate(p.hamiltonian, Coord::zbar(1));
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const EvalState s = testing::random_state(rng, 1);
    const ParaComplex rate =
        evaluate(hz, s) * evaluate(ode.rhs_z[0], s) + evaluate(hzb, s) * evaluate(ode.rhs_zb[0], s);
    EXPECT_TRUE(near(rate, {}, 1e-13));
  }
}

TEST(AuditLagrange, Examples) {
  const LagrangianProblem p(kOne, P("z1*zb1"), Expr());
  const EvalState s = state({pc::one}, {ParaComplex(2)});
  EXPECT_LE(audit_lagrange(p, s, {ParaComplex(0, -2)}, {pc::j}), 1e-12);
  EXPECT_DOUBLE_EQ(audit_lagrange(p, s, {ParaComplex()}, {ParaComplex()}), 2.0);

  const LagrangianProblem flat(kOne, P("4-j"), P("z1"));
  EXPECT_EQ(audit_lagrange(flat, s, {ParaComplex(3, 1)}, {ParaComplex(-1, 2)}), 0.0);
}

TEST(AuditLagrange, AgreesWithSolvedSystem) {
  const LagrangianProblem p(kTwo, P("z1*zb1 + z2*zb2 + 0.1*z1*z2", kTwo), P("0.2*z1 - 0.1*zb2", kTwo));
  const ImplicitODE ode = synthesize_el(p);
  const LagrangeAuditor audit(p);
  std::mt19937_64 rng(17);
  for (int k = 0; k < 20; ++k) {
    const EvalState s = testing::random_state(rng, 2);
    const StateDerivative v = el_rhs(ode, PhaseState{0.0, s.z, s.zb});
    EXPECT_LE(audit(s, v.dz, v.dzb), 1e-10);
  }
}

TEST(AuditHamilton, Examples) {
  const HamiltonianProblem p(kOne, P("z1*zb1"), Expr());
  EXPECT_LE(audit_hamilton(p, state({pc::one}, {pc::one})), 1e-12);

  const HamiltonianProblem flat(kOne, P("2"), P("0.3*z1"));
  EXPECT_EQ(audit_hamilton(flat, state({ParaComplex(0.4, 0.1)}, {ParaComplex(0.2)})), 0.0);

  const HamiltonianProblem singular(kOne, P("z1*zb1"), P("2*z1 - 2"));
  EXPECT_THROW(audit_hamilton(singular, state({pc::one}, {ParaComplex(0.5)})), SingularDenominator);
}

TEST(AuditHamilton, DetectsCorruption) {
  const HamiltonianProblem p(kOne, P("z1*zb1 + 0.1*z1^2"), P("0.2*z1"));
  ExplicitODE ode = synthesize_ham(p);
  ode.rhs_z[0] = -ode.rhs_z[0];
  EXPECT_GT(audit_hamilton(p, ode, state({ParaComplex(0.4, 0.1)}, {ParaComplex(0.2, -0.3)})), 1e-3);
}

TEST(ConstantInChart, Detects) {
  EXPECT_TRUE(is_constant_in_chart(P("0.7 + exp(1)"), kOne));
  EXPECT_FALSE(is_constant_in_chart(P("0.7*zb1"), kOne));
}

}  // namespace
}  // namespace bipara
