// Prints one line per acceptance criterion and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <variant>

#include "bipara/dynamics.hpp"
#include "bipara/errors.hpp"
#include "bipara/number_format.hpp"
#include "bipara/text.hpp"
#include "bipara/verify.hpp"
#include "commands.hpp"
#include "problem_file.hpp"

namespace {

using namespace bipara;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string measure(const Report& r) {
  std::size_t failed = 0;
  for (const auto& c : r.checks) failed += c.passed ? 0 : 1;
  std::string s = std::to_string(r.checks.size()) + " checks, " + std::to_string(failed) + " failed";
  for (const auto& c : r.checks) {
    if (!c.passed) s += "; " + c.name + " measured=" + format_double(c.measured);
  }
  return s;
}

Outcome from_report(const Report& r) { return {r.passed(), measure(r)}; }

const CoordinateChart kOne(1);

Trajectory oscillator_run(double dt) {
  const LagrangianProblem p(kOne, parse("z1*zb1", kOne), Expr());
  IntegratorConfig cfg;
  cfg.dt = dt;
  cfg.t1 = 2 * std::numbers::pi;
  return integrate(make_rhs(synthesize_el(p)), PhaseState{0.0, {ParaComplex(1)}, {ParaComplex()}}, cfg);
}

double oscillator_error(const PhaseState& s) {
  return std::max(norm_max(s.z[0] - ParaComplex(std::cos(s.t))),
                  norm_max(s.zb[0] - ParaComplex(0, std::sin(s.t))));
}

Outcome algebra(std::uint64_t seed) { return from_report(selftest_algebra(seed)); }

Outcome structure(std::uint64_t seed) { return from_report(selftest_structure(seed)); }

Outcome oscillator(std::uint64_t) {
  double worst = 0.0;
  for (const auto& s : oscillator_run(1e-3).samples) worst = std::max(worst, oscillator_error(s));
  return {worst <= 1e-8, "max deviation " + format_double(worst) + " (threshold 1e-08)"};
}

Outcome reduction(std::uint64_t seed) {
  Report r;
  for (const auto& p : lagrangian_fixtures()) r.append(check_reduction(p, 100, seed));
  for (const auto& p : hamiltonian_fixtures()) r.append(check_reduction(p, 100, seed));
  double worst = 0.0;
  for (const auto& c : r.checks) worst = std::max(worst, c.measured);
  return {r.passed() && r.checks.size() == 10, measure(r) + ", max " + format_double(worst)};
}

Outcome conservation(std::uint64_t) {
  const HamiltonianProblem p(kOne, parse("z1*zb1 + 0.1*z1^2", kOne), parse("0.7", kOne));
  IntegratorConfig cfg;
  cfg.method = Method::rkf45;
  cfg.tol = 1e-10;
  cfg.t1 = 10.0;
  const Trajectory tr = integrate(
      make_rhs(synthesize_ham(p)),
      PhaseState{0.0, {ParaComplex(0.505, 0.495)}, {ParaComplex(0.455, -0.545)}}, cfg);
  const ParaComplex h0 = evaluate(p.hamiltonian, tr.samples.front().eval_state());
  double da = 0.0, db = 0.0;
  for (const auto& s : tr.samples) {
    const ParaComplex d = evaluate(p.hamiltonian, s.eval_state()) - h0;
    da = std::max(da, std::abs(d.a()));
    db = std::max(db, std::abs(d.b()));
  }
  return {da <= 1e-8 && db <= 1e-8, "H(0)=" + to_string(h0) + ", drift a=" + format_double(da) +
                                        " b=" + format_double(db) + " (threshold 1e-08)"};
}

Outcome trajectories(std::uint64_t seed) {
  Report r;
  for (const auto& text : conformal_factor_fixtures()) {
    for (const auto& f : lagrangian_fixtures()) {
      const LagrangianProblem p(f.chart, f.lagrangian, parse(text, f.chart));
      r.append(audit_report(p, 100, seed));
      r.append(trajectory_report(p, seed));
    }
    for (const auto& f : hamiltonian_fixtures()) {
      r.append(audit_report(HamiltonianProblem(f.chart, f.hamiltonian, parse(text, f.chart)), 100, seed));
    }
  }
  double fd = 0.0, audit = 0.0;
  for (const auto& c : r.checks) {
    if (c.name.rfind("trajectory.fd_residual", 0) == 0) {
      fd = std::max(fd, c.measured);
    } else if (c.threshold == 1e-10) {
      audit = std::max(audit, c.measured);
    }
  }
  return {r.passed(), measure(r) + ", max FD residual " + format_double(fd) +
                          ", max plug-back " + format_double(audit)};
}

Outcome singularities(std::uint64_t) {
  std::string found;
  bool singular = false, degenerate = false;
  const auto run = [](const std::string& file) {
    const cli::ProblemFile f = cli::load_problem(std::string(BIPARA_FIXTURE_DIR) + "/" + file);
    const cli::Problem p = cli::build_problem(f);
    const RhsFunction rhs = std::visit(
        [](const auto& q) -> RhsFunction {
          if constexpr (std::is_same_v<std::decay_t<decltype(q)>, LagrangianProblem>) {
            return make_rhs(synthesize_el(q));
          } else {
            return make_rhs(synthesize_ham(q));
          }
        },
        p);
    integrate(rhs, f.initial, f.integrator);
  };
  try {
    run("singular_lambda.json");
  } catch (const SingularDenominator& e) {
    singular = e.which() == "D-";
    found += "SingularDenominator(" + e.which() + ")";
  }
  try {
    run("degenerate.json");
  } catch (const DegenerateLagrangian&) {
    degenerate = true;
    found += " DegenerateLagrangian";
  }
  return {singular && degenerate, found.empty() ? "nothing raised" : "raised " + found};
}

Outcome order(std::uint64_t) {
  const double e1 = oscillator_error(oscillator_run(4e-3).samples.back());
  const double e2 = oscillator_error(oscillator_run(2e-3).samples.back());
  const double e3 = oscillator_error(oscillator_run(1e-3).samples.back());
  const double r1 = e1 / e2, r2 = e2 / e3;
  const auto in = [](double r) { return r >= 12.0 && r <= 20.0; };
  return {in(r1) && in(r2), "ratios " + format_double(r1) + ", " + format_double(r2) + " (range [12, 20])"};
}

Outcome symbolic(std::uint64_t seed) { return from_report(check_symbolic(100, seed)); }

struct Criterion {
  int id;
  const char* name;
  double budget;  // seconds
  std::function<Outcome(std::uint64_t)> run;
};

}  // namespace

int main() {
  const std::uint64_t seed = bipara::cli::default_seed();
  const Criterion criteria[] = {
      {1, "algebra identities", 1.0, algebra},
      {2, "structure tables", 1.0, structure},
      {3, "oscillator closed form", 1.0, oscillator},
      {4, "lambda reduction", 5.0, reduction},
      {5, "Hamiltonian conservation", 2.0, conservation},
      {6, "trajectory residuals and audits", 10.0, trajectories},
      {7, "singularity reporting", 1.0, singularities},
      {8, "RK4 convergence order", 2.0, order},
      {9, "parser round trip and FD", 5.0, symbolic},
  };
  int failed = 0;
  double total = 0.0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(seed);
    } catch (const std::exception& e) {
      o = {false, std::string("unexpected exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total += secs;
    const bool ok = o.passed && secs < c.budget;
    failed += ok ? 0 : 1;
    std::printf("[%s] %d %s: %s; %.3f s (budget %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget);
  }
  std::printf("%d of 9 criteria passed in %.2f s (seed %llu)\n", 9 - failed, total,
              static_cast<unsigned long long>(seed));
  return failed == 0 ? 0 : 1;
}
