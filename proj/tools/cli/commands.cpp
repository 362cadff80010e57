#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "bipara/linear_solve.hpp"
#include "bipara/number_format.hpp"
#include "bipara/text.hpp"
#include "bipara/trajectory_csv.hpp"
#include "bipara/verify.hpp"
#include "problem_file.hpp"
#include "svg_plot.hpp"

namespace bipara::cli {

namespace {

constexpr double kAuditThreshold = 1e-10;

void report_failure(std::ostream& err, const Error& e) {
  err << "error: " << e.what();
  if (e.time()) err << " at t=" << format_double(*e.time());
  if (!e.state().empty()) err << " (" << e.state() << ")";
  err << '\n';
}

std::string velocity_name(std::size_t k, int n) {
  const auto i = static_cast<int>(k);
  return i < n ? "xi" + std::to_string(i + 1) : "xib" + std::to_string(i - n + 1);
}

int derive_lagrangian(const LagrangianProblem& p, std::ostream& out, std::ostream& err) {
  const ImplicitODE ode = synthesize_el(p);
  const int n = p.chart.n();
  const std::size_t dim = ode.rhs.size();
  for (std::size_t r = 0; r < dim; ++r) {
    const int i = static_cast<int>(r % n) + 1;
    out << "# EL row " << (static_cast<int>(r) < n ? "A_" : "B_") << i << '\n';
    std::vector<Expr> terms;
    for (std::size_t c = 0; c < dim; ++c) {
      const Coord v = static_cast<int>(c) < n ? Coord::xi(static_cast<int>(c) + 1)
                                              : Coord::xibar(static_cast<int>(c) - n + 1);
      terms.push_back(ode.matrix[r][c] * Expr::variable(v));
    }
    out << to_text(simplify(Expr::sum(terms))) << " = " << to_text(ode.rhs[r]) << '\n';
  }

  const bool constant = std::all_of(ode.matrix.begin(), ode.matrix.end(), [&](const auto& row) {
    return std::all_of(row.begin(), row.end(),
                       [&](const Expr& e) { return is_constant_in_chart(e, p.chart); });
  });
  if (!constant) {
    out << "# velocities are solved numerically at each state\n";
    return kOk;
  }

  const EvalState origin{std::vector<ParaComplex>(n), std::vector<ParaComplex>(n), {}, {}};
  ParaMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = evaluate(ode.matrix[r][c], origin);
  }
  std::vector<std::vector<ParaComplex>> inverse_columns;
  try {
    for (std::size_t c = 0; c < dim; ++c) {
      std::vector<ParaComplex> e(dim);
      e[c] = pc::one;
      inverse_columns.push_back(solve_para_linear(m, e));
    }
  } catch (const DegenerateLagrangian& e) {
    report_failure(err, e);
    return kSingularity;
  }
  out << "# velocities\n";
  for (std::size_t r = 0; r < dim; ++r) {
    std::vector<Expr> terms;
    for (std::size_t c = 0; c < dim; ++c) {
      terms.push_back(Expr::constant(inverse_columns[c][r]) * ode.rhs[c]);
    }
    out << velocity_name(r, n) << " = " << to_text(simplify(Expr::sum(terms))) << '\n';
  }
  return kOk;
}

int derive_hamiltonian(const HamiltonianProblem& p, std::ostream& out) {
  const ExplicitODE ode = synthesize_ham(p);
  for (int i = 1; i <= p.chart.n(); ++i) {
    out << "# HAM z_" << i << '\n';
    out << "dz" << i << "/dt = " << to_text(ode.rhs_z[i - 1]) << '\n';
  }
  for (int i = 1; i <= p.chart.n(); ++i) {
    out << "# HAM zb_" << i << '\n';
    out << "dzb" << i << "/dt = " << to_text(ode.rhs_zb[i - 1]) << '\n';
  }
  out << "# denominators\n";
  out << "D+ = " << to_text(ode.denom_plus) << '\n';
  out << "D- = " << to_text(ode.denom_minus) << '\n';
  return kOk;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BPC_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return kDefaultSeed;
}

int cmd_derive(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem problem = build_problem(load_problem(path));
    if (const auto* lp = std::get_if<LagrangianProblem>(&problem)) {
      return derive_lagrangian(*lp, out, err);
    }
    return derive_hamiltonian(std::get<HamiltonianProblem>(problem), out);
  });
}

int cmd_integrate(const std::string& path, const IntegrateOptions& opts, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile file = load_problem(path);
    const Problem problem = build_problem(file);
    const auto* lp = std::get_if<LagrangianProblem>(&problem);
    const auto* hp = std::get_if<HamiltonianProblem>(&problem);
    if (opts.residual && lp && file.integrator.method != Method::rk4) {
      throw InputError("--residual on a lagrangian problem needs the rk4 integrator");
    }

    Trajectory tr;
    try {
      if (lp) {
        const ImplicitODE ode = synthesize_el(*lp);
        tr = integrate(make_rhs(ode), file.initial, file.integrator);
        if (file.emit_energy) attach_energy(tr, *lp, ode);
        if (opts.residual) {
          const auto res = residual_series(*lp, tr, file.integrator.dt);
          for (std::size_t k = 0; k < res.size(); ++k) tr.diagnostics[k].residual = res[k];
        }
      } else {
        const ExplicitODE ode = synthesize_ham(*hp);
        tr = integrate(make_rhs(ode), file.initial, file.integrator);
        if (file.emit_energy) attach_energy(tr, *hp);
        if (opts.residual) attach_audit_residuals(tr, *hp, ode);
      }
    } catch (const Error& e) {
      report_failure(err, e);
      return static_cast<int>(kSingularity);
    }

    const CsvColumns cols{file.emit_energy, opts.residual};
    if (opts.output == "-") {
      write_trajectory_csv(out, tr, cols);
      return static_cast<int>(kOk);
    }
    std::ofstream csv(opts.output);
    if (!csv) throw InputError("cannot write " + opts.output);
    write_trajectory_csv(csv, tr, cols);
    out << "wrote " << tr.samples.size() << " samples to " << opts.output << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_audit(const std::string& path, const AuditOptions& opts, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    if (opts.samples < 1) throw InputError("--samples must be positive");
    const Problem problem = build_problem(load_problem(path));
    const double sign = opts.flip_sign ? -1.0 : 1.0;
    StateSampler sampler(opts.seed);
    double worst = 0.0;
    std::string name;
    try {
      if (const auto* lp = std::get_if<LagrangianProblem>(&problem)) {
        const ImplicitODE ode = synthesize_el(*lp);
        const LagrangeAuditor audit(*lp);
        for (int k = 0; k < opts.samples; ++k) {
          const EvalState s = sampler.draw(
              lp->chart, [&](const EvalState& st) { return lagrange_regular(ode, st); });
          StateDerivative v = el_rhs(ode, PhaseState{0.0, s.z, s.zb});
          for (auto& x : v.dz) x = x * ParaComplex(sign);
          for (auto& x : v.dzb) x = x * ParaComplex(sign);
          worst = std::max(worst, audit(s, v.dz, v.dzb));
        }
        name = "audit.lagrange";
      } else {
        const auto& hp = std::get<HamiltonianProblem>(problem);
        const ExplicitODE ode = synthesize_ham(hp);
        ExplicitODE audited = ode;
        if (opts.flip_sign) {
          for (auto& e : audited.rhs_z) e = -e;
          for (auto& e : audited.rhs_zb) e = -e;
        }
        const HamiltonAuditor audit(hp, audited);
        for (int k = 0; k < opts.samples; ++k) {
          const EvalState s = sampler.draw(
              hp.chart, [&](const EvalState& st) { return hamilton_regular(ode, st); });
          worst = std::max(worst, audit(s));
        }
        name = "audit.hamilton";
      }
    } catch (const Error& e) {
      report_failure(err, e);
      return static_cast<int>(kSingularity);
    } catch (const std::runtime_error& e) {
      err << "error: " << e.what() << '\n';
      return static_cast<int>(kSingularity);
    }

    Report r;
    r.seed = opts.seed;
    r.add(name, worst, kAuditThreshold);
    out << to_text(r);
    out << "max residual " << format_double(worst) << " over " << opts.samples
        << " states (seed " << opts.seed << ")\n";
    return static_cast<int>(r.passed() ? kOk : kAuditBreach);
  });
}

int cmd_selftest(std::uint64_t seed, std::ostream& out) {
  const Report r = run_selftest(seed);
  out << to_text(r);
  const auto failed = std::count_if(r.checks.begin(), r.checks.end(),
                                    [](const Check& c) { return !c.passed; });
  out << r.checks.size() << " checks, " << failed << " failed (seed " << seed << ")\n";
  return failed == 0 ? kOk : kSelftestFailed;
}

int cmd_plot(const std::string& csv_path, const PlotOptions& opts, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.width < 100 || opts.height < 100) throw InputError("--width and --height must be at least 100");
    std::ifstream in(csv_path);
    if (!in) throw InputError("cannot open " + csv_path);
    CsvTable table;
    try {
      table = read_csv(in);
    } catch (const std::runtime_error& e) {
      throw InputError(csv_path + ": " + e.what());
    }
    const std::ptrdiff_t tcol = table.column("t");
    if (tcol < 0) throw InputError(csv_path + ": no t column");

    std::vector<std::string> names = opts.columns;
    if (names.empty()) {
      for (const auto& h : table.header) {
        if (h != "t") names.push_back(h);
      }
    }
    std::vector<Series> series;
    for (const auto& name : names) {
      const std::ptrdiff_t c = table.column(name);
      if (c < 0) throw InputError("unknown column \"" + name + "\" in " + csv_path);
      Series s{name, {}, {}};
      for (const auto& row : table.rows) {
        s.x.push_back(row[tcol]);
        s.y.push_back(row[c]);
      }
      series.push_back(std::move(s));
    }

    std::ofstream svg(opts.output);
    if (!svg) throw InputError("cannot write " + opts.output);
    write_svg(svg, series, opts.width, opts.height);
    return static_cast<int>(kOk);
  });
}

}  // namespace bipara::cli
