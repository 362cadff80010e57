#include "bipara/eom.hpp"

#include <algorithm>

#include "bipara/text.hpp"

namespace bipara {

namespace {

Expr constant(ParaComplex c) { return Expr::constant(c); }
Expr j_expr() { return Expr::constant(pc::j); }
Expr half() { return Expr::constant(0.5); }

Expr add_all(std::vector<Expr> terms) {
  if (terms.empty()) return Expr();
  if (terms.size() == 1) return terms.front();
  return Expr::sum(std::move(terms));
}

void check_in_chart(const CoordinateChart& chart, const Expr& e, const char* what) {
  for (Coord c : free_coordinates(e)) {
    if (!chart.contains(c)) {
      throw IndexOutOfRange(std::string(what) + " uses " + to_string(c) +
                            " outside the chart (n = " + std::to_string(chart.n()) + ")");
    }
  }
}

std::size_t idx(int i) { return static_cast<std::size_t>(i - 1); }

}  // namespace

LagrangianProblem::LagrangianProblem(CoordinateChart chart_, Expr lagrangian_, Expr lambda_)
    : chart(chart_), lagrangian(std::move(lagrangian_)), lambda(std::move(lambda_)) {
  check_in_chart(chart, lagrangian, "Lagrangian");
  check_in_chart(chart, lambda, "lambda");
}

HamiltonianProblem::HamiltonianProblem(CoordinateChart chart_, Expr hamiltonian_, Expr lambda_)
    : chart(chart_), hamiltonian(std::move(hamiltonian_)), lambda(std::move(lambda_)) {
  check_in_chart(chart, hamiltonian, "Hamiltonian");
  check_in_chart(chart, lambda, "lambda");
}

Semispray Semispray::formal(const CoordinateChart& chart) {
  Semispray s;
  for (int i = 1; i <= chart.n(); ++i) {
    s.xi.push_back(Expr::variable(Coord::xi(i)));
    s.xibar.push_back(Expr::variable(Coord::xibar(i)));
  }
  return s;
}

OneForm vertical_differential(const LagrangianProblem& p) {
  const Expr e_pos = exp(p.lambda);
  const Expr e_neg = exp(-p.lambda);
  OneForm out = OneForm::zero(p.chart);
  for (int i = 1; i <= p.chart.n(); ++i) {
    const Expr l_z = differentiate(p.lagrangian, Coord::z(i));
    const Expr l_zb = differentiate(p.lagrangian, Coord::zbar(i));
    out.dz[idx(i)] = simplify(-(j_expr() * e_pos * l_zb));
    out.dzb[idx(i)] = simplify(j_expr() * e_neg * l_z);
  }
  return out;
}

TwoForm lagrangian_two_form(const LagrangianProblem& p) {
  return -exterior_derivative(vertical_differential(p), p.chart);
}

VectorField liouville_vector_field(const Semispray& xi, const Expr& lambda) {
  VectorField v;
  const Expr e_pos = exp(lambda);
  const Expr e_neg = exp(-lambda);
  for (const auto& x : xi.xi) v.d_z.push_back(simplify(-(e_pos * j_expr() * x)));
  for (const auto& x : xi.xibar) v.d_zb.push_back(simplify(e_neg * j_expr() * x));
  return v;
}

Expr energy(const LagrangianProblem& p) {
  const Semispray xi = Semispray::formal(p.chart);
  const Expr up = exp(p.lambda);
  const Expr down = exp(-p.lambda);
  std::vector<Expr> terms;
  for (int i = 1; i <= p.chart.n(); ++i) {
    terms.push_back(-(j_expr() * xi.xi[idx(i)] * up * differentiate(p.lagrangian, Coord::zbar(i))));
    terms.push_back(j_expr() * xi.xibar[idx(i)] * down * differentiate(p.lagrangian, Coord::z(i)));
  }
  terms.push_back(-p.lagrangian);
  return simplify(add_all(std::move(terms)));
}

OneForm liouville_one_form(const Expr& lambda, const CoordinateChart& chart) {
  const Expr scale = half() * j_expr() * exp(lambda);
  OneForm out = OneForm::zero(chart);
  for (int i = 1; i <= chart.n(); ++i) {
    out.dz[idx(i)] = simplify(scale * Expr::variable(Coord::zbar(i)));
    out.dzb[idx(i)] = simplify(-(scale * Expr::variable(Coord::z(i))));
  }
  return out;
}

OneForm canonical_one_form(const Expr& lambda, const CoordinateChart& chart) {
  const Expr scale =
      half() * (constant(pc::e_plus) + exp(constant(2.0) * lambda) * constant(pc::e_minus));
  OneForm out = OneForm::zero(chart);
  for (int i = 1; i <= chart.n(); ++i) {
    out.dz[idx(i)] = simplify(scale * Expr::variable(Coord::z(i)));
    out.dzb[idx(i)] = simplify(scale * Expr::variable(Coord::zbar(i)));
  }
  return out;
}

TwoForm canonical_two_form(const Expr& lambda, const CoordinateChart& chart) {
  return -exterior_derivative(liouville_one_form(lambda, chart), chart);
}

ImplicitODE synthesize_el(const LagrangianProblem& p) {
  const int n = p.chart.n();
  const auto coords = p.chart.coordinates();  // z1..zn, zb1..zbn = unknown order
  const Expr e_pos = exp(p.lambda);
  const Expr e_neg = exp(-p.lambda);

  std::vector<Expr> lambda_grad;
  for (Coord c : coords) lambda_grad.push_back(differentiate(p.lambda, c));

  const auto dim = coords.size();
  ImplicitODE ode{p.chart, std::vector<std::vector<Expr>>(dim), std::vector<Expr>(dim)};
  for (int i = 1; i <= n; ++i) {
    const Expr l_z = differentiate(p.lagrangian, Coord::z(i));
    const Expr l_zb = differentiate(p.lagrangian, Coord::zbar(i));
    auto& row_a = ode.matrix[idx(i)];
    auto& row_b = ode.matrix[idx(n + i)];
    for (std::size_t k = 0; k < coords.size(); ++k) {
      // Row A: j e^λ [∂²L/∂z̄_i∂x_k + ∂λ/∂x_k · ∂L/∂z̄_i]
      row_a.push_back(
          simplify(j_expr() * e_pos * (differentiate(l_zb, coords[k]) + lambda_grad[k] * l_zb)));
      // Row B: j e^-λ [∂²L/∂z_i∂x_k - ∂λ/∂x_k · ∂L/∂z_i]
      row_b.push_back(
          simplify(j_expr() * e_neg * (differentiate(l_z, coords[k]) - lambda_grad[k] * l_z)));
    }
    ode.rhs[idx(i)] = simplify(-l_z);
    ode.rhs[idx(n + i)] = l_zb;
  }
  return ode;
}

ExplicitODE synthesize_ham(const HamiltonianProblem& p) {
  std::vector<Expr> s_terms;
  for (Coord c : p.chart.coordinates()) {
    s_terms.push_back(Expr::variable(c) * differentiate(p.lambda, c));
  }
  const Expr s = simplify(add_all(std::move(s_terms)));
  const Expr half_scaled = half() * exp(p.lambda) * s;
  ExplicitODE ode{p.chart, {}, {}, simplify(constant(1.0) + half_scaled),
                  simplify(constant(1.0) - half_scaled)};
  for (int i = 1; i <= p.chart.n(); ++i) {
    const Expr h_z = differentiate(p.hamiltonian, Coord::z(i));
    const Expr h_zb = differentiate(p.hamiltonian, Coord::zbar(i));
    ode.rhs_z.push_back(simplify(-(j_expr() * h_zb) / ode.denom_plus));
    ode.rhs_zb.push_back(simplify(j_expr() * h_z / ode.denom_minus));
  }
  return ode;
}

std::vector<Expr> lagrange_residual_expressions(const LagrangianProblem& p) {
  const auto coords = p.chart.coordinates();
  const Semispray formal = Semispray::formal(p.chart);
  const int n = p.chart.n();
  auto along_xi = [&](const Expr& f) {
    std::vector<Expr> terms;
    for (int k = 1; k <= n; ++k) {
      terms.push_back(formal.xi[idx(k)] * differentiate(f, Coord::z(k)));
      terms.push_back(formal.xibar[idx(k)] * differentiate(f, Coord::zbar(k)));
    }
    return add_all(std::move(terms));
  };
  const Expr e_pos = exp(p.lambda);
  const Expr e_neg = exp(-p.lambda);
  const Expr xi_lambda = along_xi(p.lambda);

  std::vector<Expr> rows(coords.size());
  for (int i = 1; i <= n; ++i) {
    const Expr l_z = differentiate(p.lagrangian, Coord::z(i));
    const Expr l_zb = differentiate(p.lagrangian, Coord::zbar(i));
    rows[idx(i)] = simplify(j_expr() * e_pos * along_xi(l_zb) +
                            j_expr() * e_pos * xi_lambda * l_zb + l_z);
    rows[idx(n + i)] = simplify(-(j_expr() * e_neg * along_xi(l_z)) +
                                j_expr() * e_neg * xi_lambda * l_z + l_zb);
  }
  return rows;
}

LagrangeAuditor::LagrangeAuditor(const LagrangianProblem& p)
    : rows_(lagrange_residual_expressions(p)) {}

double LagrangeAuditor::operator()(const EvalState& s, const std::vector<ParaComplex>& xi,
                                   const std::vector<ParaComplex>& xibar) const {
  EvalState full = s;
  full.xi = xi;
  full.xib = xibar;
  double worst = 0.0;
  for (const auto& row : rows_) worst = std::max(worst, norm_max(evaluate(row, full)));
  return worst;
}

double audit_lagrange(const LagrangianProblem& p, const EvalState& s,
                      const std::vector<ParaComplex>& xi, const std::vector<ParaComplex>& xibar) {
  return LagrangeAuditor(p)(s, xi, xibar);
}

void check_denominators(const ExplicitODE& ode, const EvalState& s) {
  const ParaComplex plus = evaluate(ode.denom_plus, s);
  if (!plus.invertible()) {
    throw SingularDenominator("D+", "D+ = " + to_string(plus) + " (" + to_text(ode.denom_plus) + ")");
  }
  const ParaComplex minus = evaluate(ode.denom_minus, s);
  if (!minus.invertible()) {
    throw SingularDenominator("D-",
                              "D- = " + to_string(minus) + " (" + to_text(ode.denom_minus) + ")");
  }
}

HamiltonAuditor::HamiltonAuditor(const HamiltonianProblem& p, ExplicitODE ode)
    : ode_(std::move(ode)), lambda_(p.lambda) {
  std::vector<Expr> terms;
  for (int k = 1; k <= p.chart.n(); ++k) {
    terms.push_back(Expr::variable(Coord::z(k)) * differentiate(p.lambda, Coord::z(k)));
    terms.push_back(Expr::variable(Coord::zbar(k)) * differentiate(p.lambda, Coord::zbar(k)));
    h_z_.push_back(differentiate(p.hamiltonian, Coord::z(k)));
    h_zb_.push_back(differentiate(p.hamiltonian, Coord::zbar(k)));
  }
  sum_ = add_all(std::move(terms));
}

double HamiltonAuditor::operator()(const EvalState& s) const {
  check_denominators(ode_, s);

  // Bracket factors rebuilt from λ rather than read from the synthesized ODE.
  const ParaComplex half_scaled =
      ParaComplex(0.5) * exp(evaluate(lambda_, s)) * evaluate(sum_, s);
  const ParaComplex bracket_minus = pc::one - half_scaled;
  const ParaComplex bracket_plus = pc::one + half_scaled;

  double worst = 0.0;
  for (std::size_t i = 0; i < h_z_.size(); ++i) {
    const ParaComplex z_dot = evaluate(ode_.rhs_z[i], s);
    const ParaComplex zb_dot = evaluate(ode_.rhs_zb[i], s);
    // i_Z Φ = Z̄ e⁺[D⁻] dz - Z e⁺[D⁺] dz̄ - Z̄ e⁻[D⁻] dz + Z e⁻[D⁺] dz̄
    const ParaComplex phi_dz = zb_dot * pc::e_plus * bracket_minus -
                               zb_dot * pc::e_minus * bracket_minus;
    const ParaComplex phi_dzb = -(z_dot * pc::e_plus * bracket_plus) +
                                z_dot * pc::e_minus * bracket_plus;
    // dH = (H_z dz + H_z̄ dz̄) e⁺ + (H_z dz + H_z̄ dz̄) e⁻
    const ParaComplex h_z = evaluate(h_z_[i], s);
    const ParaComplex h_zb = evaluate(h_zb_[i], s);
    const ParaComplex dh_dz = h_z * pc::e_plus + h_z * pc::e_minus;
    const ParaComplex dh_dzb = h_zb * pc::e_plus + h_zb * pc::e_minus;
    worst = std::max({worst, norm_max(phi_dz - dh_dz), norm_max(phi_dzb - dh_dzb)});
  }
  return worst;
}

double audit_hamilton(const HamiltonianProblem& p, const ExplicitODE& ode, const EvalState& s) {
  return HamiltonAuditor(p, ode)(s);
}

double audit_hamilton(const HamiltonianProblem& p, const EvalState& s) {
  return audit_hamilton(p, synthesize_ham(p), s);
}

bool is_constant_in_chart(const Expr& e, const CoordinateChart& chart) {
  const auto coords = chart.coordinates();
  return std::all_of(coords.begin(), coords.end(),
                     [&](Coord c) { return is_zero(differentiate(e, c)); });
}

}  // namespace bipara
