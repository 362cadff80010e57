#include <limits>

#include "bipara/verify.hpp"
#include "support.hpp"

namespace bipara {
namespace {

const CoordinateChart kOne(1);

Expr P(const char* text) { return parse(text, kOne); }

TEST(Verify, ReportAddAndText) {
  Report r;
  r.add("a", 0.5, 1.0);
  r.add("b", 2.0, 1.0);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(to_text(r),
            "CHECK a PASS measured=0.5 threshold=1\nCHECK b FAIL measured=2 threshold=1\n");
  Report ok;
  ok.add("c", 0.0, 0.0);
  EXPECT_TRUE(ok.passed());
  ok.append(r);
  EXPECT_EQ(ok.checks.size(), 3u);
  Report nan;
  nan.add("d", std::numeric_limits<double>::quiet_NaN(), 1.0);
  EXPECT_FALSE(nan.passed());
}

TEST(Verify, AlgebraAndStructureSuites) {
  for (std::uint64_t seed : {std::uint64_t{1}, std::uint64_t{7}, kDefaultSeed}) {
    EXPECT_TRUE(selftest_algebra(seed).passed()) << to_text(selftest_algebra(seed));
    EXPECT_TRUE(selftest_structure(seed).passed());
  }
}

TEST(Verify, ReductionExamples) {
  const LagrangianProblem l(kOne, P("z1*zb1 + 0.3*z1^2"), Expr());
  EXPECT_TRUE(check_reduction(l, 20, 3).passed());
  const HamiltonianProblem h(kOne, P("z1*zb1 + 0.1*z1^2"), Expr());
  EXPECT_TRUE(check_reduction(h, 20, 3).passed());
  EXPECT_THROW(check_reduction(LagrangianProblem(kOne, P("z1*zb1"), P("0.5")), 5, 3),
               std::invalid_argument);
}

TEST(Verify, FiniteDifferences) {
  const Report r = check_fd(P("exp(0.1*z1)*zb1 + z1^3"), kOne, 10, 5);
  EXPECT_TRUE(r.passed()) << to_text(r);
  EXPECT_TRUE(check_symbolic(20, 11).passed());
}

TEST(Verify, ReportsAreDeterministic) {
  EXPECT_EQ(to_text(run_selftest(42)), to_text(run_selftest(42)));
  EXPECT_NE(to_text(audit_report(HamiltonianProblem(kOne, P("z1*zb1"), P("0.3*z1")), 10, 1)),
            to_text(audit_report(HamiltonianProblem(kOne, P("z1*zb1"), P("0.3*z1")), 10, 2)));
}

TEST(Verify, AuditsPassOnFixtures) {
  for (const auto& lam : conformal_factor_fixtures()) {
    for (const auto& p : lagrangian_fixtures()) {
      const LagrangianProblem q(p.chart, p.lagrangian, parse(lam, p.chart));
      EXPECT_TRUE(audit_report(q, 20, 9).passed()) << lam;
    }
    for (const auto& p : hamiltonian_fixtures()) {
      const HamiltonianProblem q(p.chart, p.hamiltonian, parse(lam, p.chart));
      EXPECT_TRUE(audit_report(q, 20, 9).passed()) << lam;
    }
  }
}

TEST(Verify, SamplerAvoidsZeroDivisorLines) {
  StateSampler s(5);
  for (int k = 0; k < 200; ++k) {
    const EvalState e = s.draw(CoordinateChart(2));
    for (const auto& v : e.z) {
      const auto [u, w] = v.idempotent();
      EXPECT_GE(std::abs(u), 1e-3);
      EXPECT_GE(std::abs(w), 1e-3);
    }
  }
  EXPECT_THROW(s.draw(kOne, [](const EvalState&) { return false; }), std::runtime_error);
}

TEST(Verify, ConservationFlagsOnlyConstantLambda) {
  const HamiltonianProblem p(kOne, P("z1*zb1 + 0.1*z1^2"), P("0.7"));
  IntegratorConfig cfg;
  cfg.method = Method::rkf45;
  cfg.tol = 1e-10;
  cfg.t1 = 10.0;
  Trajectory tr = integrate(make_rhs(synthesize_ham(p)),
                            PhaseState{0.0, {ParaComplex(0.505, 0.495)}, {ParaComplex(0.455, -0.545)}},
                            cfg);
  const Report r = conservation_report(p, tr);
  EXPECT_TRUE(r.passed()) << to_text(r);
  for (const auto& c : r.checks) EXPECT_LE(c.threshold, 1e-8);
}

}  // namespace
}  // namespace bipara
