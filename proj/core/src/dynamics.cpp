#include "bipara/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "bipara/linear_solve.hpp"
#include "bipara/number_format.hpp"

namespace bipara {

std::string describe(const PhaseState& s) {
  std::string out;
  for (std::size_t i = 0; i < s.z.size(); ++i) {
    out += (out.empty() ? "z" : " z") + std::to_string(i + 1) + "=" + to_string(s.z[i]);
  }
  for (std::size_t i = 0; i < s.zb.size(); ++i) {
    out += " zb" + std::to_string(i + 1) + "=" + to_string(s.zb[i]);
  }
  return out;
}

void IntegratorConfig::validate() const {
  if (!(t1 > t0)) throw std::invalid_argument("integrator: t1 must exceed t0");
  if (method == Method::rk4 && !(dt > 0)) throw std::invalid_argument("integrator: dt must be > 0");
  if (method == Method::rkf45 && !(tol > 0)) {
    throw std::invalid_argument("integrator: tol must be > 0");
  }
  if (max_steps == 0) throw std::invalid_argument("integrator: max_steps must be positive");
}

StateDerivative el_rhs(const ImplicitODE& ode, const PhaseState& s) {
  const EvalState es = s.eval_state();
  const std::size_t dim = ode.rhs.size();
  ParaMatrix m(dim);
  std::vector<ParaComplex> b(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = evaluate(ode.matrix[r][c], es);
    b[r] = evaluate(ode.rhs[r], es);
  }
  auto x = solve_para_linear(m, b);
  const std::size_t n = dim / 2;
  return {{x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)},
          {x.begin() + static_cast<std::ptrdiff_t>(n), x.end()}};
}

StateDerivative ham_rhs(const ExplicitODE& ode, const PhaseState& s) {
  const EvalState es = s.eval_state();
  check_denominators(ode, es);
  StateDerivative d;
  for (const auto& e : ode.rhs_z) d.dz.push_back(evaluate(e, es));
  for (const auto& e : ode.rhs_zb) d.dzb.push_back(evaluate(e, es));
  return d;
}

RhsFunction make_rhs(ImplicitODE ode) {
  return [ode = std::move(ode)](const PhaseState& s) { return el_rhs(ode, s); };
}

RhsFunction make_rhs(ExplicitODE ode) {
  return [ode = std::move(ode)](const PhaseState& s) { return ham_rhs(ode, s); };
}

namespace {

// Real packing in idempotent components: [z1.u, z1.v, ..., zn.v, zb1.u, ..., zbn.v].
using Vec = std::vector<double>;

Vec pack(const std::vector<ParaComplex>& z, const std::vector<ParaComplex>& zb) {
  Vec y;
  y.reserve(2 * (z.size() + zb.size()));
  for (const auto* side : {&z, &zb}) {
    for (auto c : *side) {
      const IdempotentPair p = c.idempotent();
      y.push_back(p.u);
      y.push_back(p.v);
    }
  }
  return y;
}

PhaseState unpack(double t, const Vec& y, std::size_t n) {
  PhaseState s;
  s.t = t;
  for (std::size_t i = 0; i < n; ++i) s.z.push_back(ParaComplex::from_idempotent({y[2 * i], y[2 * i + 1]}));
  for (std::size_t i = 0; i < n; ++i) {
    s.zb.push_back(ParaComplex::from_idempotent({y[2 * (n + i)], y[2 * (n + i) + 1]}));
  }
  return s;
}

class Stepper {
 public:
  Stepper(const RhsFunction& rhs, std::size_t n) : rhs_(rhs), n_(n) {}

  Vec derivative(double t, const Vec& y) const {
    PhaseState s = unpack(t, y, n_);
    StateDerivative d;
    try {
      d = rhs_(s);
    } catch (Error& e) {
      if (!e.time()) e.set_context(t, describe(s));
      throw;
    }
    if (d.dz.size() != n_ || d.dzb.size() != n_) {
      throw std::logic_error("rhs returned a derivative of the wrong dimension");
    }
    Vec out = pack(d.dz, d.dzb);
    if (!std::all_of(out.begin(), out.end(), [](double v) { return std::isfinite(v); })) {
      StepFailure err("non-finite derivative");
      err.set_context(t, describe(s));
      throw err;
    }
    return out;
  }

 private:
  const RhsFunction& rhs_;
  std::size_t n_;
};

Vec axpy(const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
  Vec out = y;
  for (const auto& [coef, k] : terms) {
    if (coef == 0.0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * coef * (*k)[i];
  }
  return out;
}

Vec rk4_step(const Stepper& f, double t, const Vec& y, double h) {
  const Vec k1 = f.derivative(t, y);
  const Vec k2 = f.derivative(t + h / 2, axpy(y, h, {{0.5, &k1}}));
  const Vec k3 = f.derivative(t + h / 2, axpy(y, h, {{0.5, &k2}}));
  const Vec k4 = f.derivative(t + h, axpy(y, h, {{1.0, &k3}}));
  Vec out = y;
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

void push_sample(Trajectory& tr, double t, const Vec& y, std::size_t n) {
  tr.samples.push_back(unpack(t, y, n));
  tr.diagnostics.emplace_back();
}

void check_finite(double t, const Vec& y, std::size_t n) {
  if (!std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); })) {
    StepFailure err("state became non-finite");
    err.set_context(t, describe(unpack(t, y, n)));
    throw err;
  }
}

Trajectory integrate_rk4(const Stepper& f, const PhaseState& s0, const IntegratorConfig& cfg) {
  const std::size_t n = s0.z.size();
  const double span = cfg.t1 - cfg.t0;
  // Steps of exactly dt, plus one shortened step if dt does not divide the span.
  const double ratio = span / cfg.dt;
  auto steps = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
  steps = std::max<std::size_t>(steps, 1);
  if (steps > cfg.max_steps) {
    throw StepFailure("rk4 needs " + std::to_string(steps) + " steps, max_steps is " +
                      std::to_string(cfg.max_steps));
  }

  Trajectory tr;
  tr.samples.reserve(steps + 1);
  Vec y = pack(s0.z, s0.zb);
  double t = cfg.t0;
  push_sample(tr, t, y, n);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_next = k == steps ? cfg.t1 : cfg.t0 + static_cast<double>(k) * cfg.dt;
    y = rk4_step(f, t, y, t_next - t);
    t = t_next;
    check_finite(t, y, n);
    push_sample(tr, t, y, n);
  }
  return tr;
}

// Fehlberg 4(5) tableau.
constexpr std::array<double, 6> kC{0.0, 1.0 / 4, 3.0 / 8, 12.0 / 13, 1.0, 1.0 / 2};
constexpr double kA[6][5] = {
    {0, 0, 0, 0, 0},
    {1.0 / 4, 0, 0, 0, 0},
    {3.0 / 32, 9.0 / 32, 0, 0, 0},
    {1932.0 / 2197, -7200.0 / 2197, 7296.0 / 2197, 0, 0},
    {439.0 / 216, -8.0, 3680.0 / 513, -845.0 / 4104, 0},
    {-8.0 / 27, 2.0, -3544.0 / 2565, 1859.0 / 4104, -11.0 / 40},
};
constexpr std::array<double, 6> kB4{25.0 / 216, 0, 1408.0 / 2565, 2197.0 / 4104, -1.0 / 5, 0};
constexpr std::array<double, 6> kB5{16.0 / 135,      0,           6656.0 / 12825,
                                    28561.0 / 56430, -9.0 / 50, 2.0 / 55};

Trajectory integrate_rkf45(const Stepper& f, const PhaseState& s0, const IntegratorConfig& cfg) {
  const std::size_t n = s0.z.size();
  const double span = cfg.t1 - cfg.t0;
  const double h_min = 1e-12 * span;

  Trajectory tr;
  Vec y = pack(s0.z, s0.zb);
  double t = cfg.t0;
  double h = span / 100.0;
  push_sample(tr, t, y, n);

  std::size_t attempts = 0;
  while (t < cfg.t1) {
    if (++attempts > cfg.max_steps) {
      StepFailure err("rkf45 exceeded max_steps = " + std::to_string(cfg.max_steps));
      err.set_context(t, describe(unpack(t, y, n)));
      throw err;
    }
    bool last = false;
    if (t + h >= cfg.t1) {
      h = cfg.t1 - t;
      last = true;
    }

    std::array<Vec, 6> k;
    for (std::size_t s = 0; s < 6; ++s) {
      Vec ys = y;
      for (std::size_t r = 0; r < s; ++r) {
        if (kA[s][r] == 0.0) continue;
        for (std::size_t i = 0; i < y.size(); ++i) ys[i] += h * kA[s][r] * k[r][i];
      }
      k[s] = f.derivative(t + kC[s] * h, ys);
    }
    Vec y5 = y;
    double err_norm = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      double d4 = 0.0, d5 = 0.0;
      for (std::size_t s = 0; s < 6; ++s) {
        d4 += kB4[s] * k[s][i];
        d5 += kB5[s] * k[s][i];
      }
      y5[i] += h * d5;
      const double scale = cfg.tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
      err_norm = std::max(err_norm, std::abs(h * (d5 - d4)) / scale);
    }
    if (!std::isfinite(err_norm)) err_norm = 1e10;

    if (err_norm <= 1.0) {
      t = last ? cfg.t1 : t + h;
      y = std::move(y5);
      check_finite(t, y, n);
      push_sample(tr, t, y, n);
    }
    const double factor =
        err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
    h *= factor;
    if (t < cfg.t1 && h < h_min) {
      StepFailure err("rkf45 step size underflow (h = " + format_double(h) + ")");
      err.set_context(t, describe(unpack(t, y, n)));
      throw err;
    }
  }
  return tr;
}

}  // namespace

Trajectory integrate(const RhsFunction& rhs, const PhaseState& s0, const IntegratorConfig& cfg) {
  cfg.validate();
  if (s0.z.size() != s0.zb.size() || s0.z.empty()) {
    throw std::invalid_argument("integrate: initial state must have matching non-empty z, zb");
  }
  PhaseState start = s0;
  start.t = cfg.t0;
  const Stepper f(rhs, start.z.size());
  return cfg.method == Method::rk4 ? integrate_rk4(f, start, cfg) : integrate_rkf45(f, start, cfg);
}

std::vector<std::optional<double>> residual_series(const LagrangianProblem& p,
                                                   const Trajectory& tr, double h) {
  const auto& samples = tr.samples;
  std::vector<std::optional<double>> out(samples.size());
  if (samples.size() < 3 || !(h > 0)) return out;

  const int n = p.chart.n();
  std::vector<Expr> momentum_a, momentum_b, l_z, l_zb;
  for (int i = 1; i <= n; ++i) {
    l_z.push_back(differentiate(p.lagrangian, Coord::z(i)));
    l_zb.push_back(differentiate(p.lagrangian, Coord::zbar(i)));
    momentum_a.push_back(simplify(exp(p.lambda) * l_zb.back()));
    momentum_b.push_back(simplify(exp(-p.lambda) * l_z.back()));
  }

  const double spacing = samples[1].t - samples[0].t;
  const auto stride = static_cast<std::size_t>(std::max(1.0, std::round(h / spacing)));
  const double tol = 1e-6 * h;
  for (std::size_t k = stride; k + stride < samples.size(); ++k) {
    const auto& prev = samples[k - stride];
    const auto& next = samples[k + stride];
    const auto& here = samples[k];
    if (std::abs(next.t - here.t - h) > tol || std::abs(here.t - prev.t - h) > tol) continue;

    const EvalState sp = prev.eval_state(), sn = next.eval_state(), sh = here.eval_state();
    const double width = next.t - prev.t;
    double worst = 0.0;
    for (std::size_t i = 0; i < momentum_a.size(); ++i) {
      const ParaComplex dp = (evaluate(momentum_a[i], sn) - evaluate(momentum_a[i], sp)) /
                             ParaComplex(width);
      const ParaComplex dq = (evaluate(momentum_b[i], sn) - evaluate(momentum_b[i], sp)) /
                             ParaComplex(width);
      worst = std::max(worst, norm_max(pc::j * dp + evaluate(l_z[i], sh)));
      worst = std::max(worst, norm_max(pc::j * dq - evaluate(l_zb[i], sh)));
    }
    out[k] = worst;
  }
  return out;
}

void attach_energy(Trajectory& tr, const HamiltonianProblem& p) {
  for (std::size_t k = 0; k < tr.samples.size(); ++k) {
    tr.diagnostics[k].energy = evaluate(p.hamiltonian, tr.samples[k].eval_state());
  }
}

void attach_energy(Trajectory& tr, const LagrangianProblem& p, const ImplicitODE& ode) {
  const Expr e_l = energy(p);
  for (std::size_t k = 0; k < tr.samples.size(); ++k) {
    const auto& s = tr.samples[k];
    const StateDerivative v = el_rhs(ode, s);
    EvalState es = s.eval_state();
    es.xi = v.dz;
    es.xib = v.dzb;
    tr.diagnostics[k].energy = evaluate(e_l, es);
  }
}

void attach_audit_residuals(Trajectory& tr, const LagrangianProblem& p, const ImplicitODE& ode) {
  const LagrangeAuditor audit(p);
  for (std::size_t k = 0; k < tr.samples.size(); ++k) {
    const auto& s = tr.samples[k];
    const StateDerivative v = el_rhs(ode, s);
    tr.diagnostics[k].residual = audit(s.eval_state(), v.dz, v.dzb);
  }
}

void attach_audit_residuals(Trajectory& tr, const HamiltonianProblem& p, const ExplicitODE& ode) {
  const HamiltonAuditor audit(p, ode);
  for (std::size_t k = 0; k < tr.samples.size(); ++k) {
    tr.diagnostics[k].residual = audit(tr.samples[k].eval_state());
  }
}

}  // namespace bipara
