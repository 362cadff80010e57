#include "bipara/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bipara/linear_solve.hpp"
#include "bipara/number_format.hpp"
#include "bipara/structure.hpp"
#include "bipara/text.hpp"

namespace bipara {

void Report::add(std::string name, double measured, double threshold) {
  checks.push_back({std::move(name), measured <= threshold, measured, threshold});
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string to_text(const Report& r) {
  std::string out;
  for (const auto& c : r.checks) {
    out += "CHECK " + c.name + (c.passed ? " PASS" : " FAIL") +
           " measured=" + format_double(c.measured) + " threshold=" + format_double(c.threshold) +
           "\n";
  }
  return out;
}

namespace {

constexpr double kLineMargin = 1e-3;

bool near_zero_divisor(ParaComplex x) {
  const auto p = x.idempotent();
  return std::abs(p.u) < kLineMargin || std::abs(p.v) < kLineMargin;
}

double rel_error(ParaComplex got, ParaComplex want) {
  return norm_max(got - want) / std::max(1.0, norm_max(want));
}

IdempotentPair abs_pair(ParaComplex x) {
  const auto p = x.idempotent();
  return {std::abs(p.u), std::abs(p.v)};
}

// Componentwise bound on the terms an evaluation of `e` combines: sums add
// magnitudes, so cancellation does not shrink it. Rounding errors of
// evaluate(e, s) are proportional to this rather than to the result.
IdempotentPair magnitude(const Expr& e, const EvalState& s) {
  if (const auto* c = e.as<node::Constant>()) return abs_pair(c->value);
  if (const auto* v = e.as<node::Variable>()) return abs_pair(s.value(v->coord));
  if (const auto* n = e.as<node::Negate>()) return magnitude(n->child, s);
  if (const auto* sum = e.as<node::Sum>()) {
    IdempotentPair acc;
    for (const auto& t : sum->terms) acc = acc + magnitude(t, s);
    return acc;
  }
  if (const auto* prod = e.as<node::Product>()) {
    IdempotentPair acc{1.0, 1.0};
    for (const auto& f : prod->factors) acc = acc * magnitude(f, s);
    return acc;
  }
  if (const auto* pw = e.as<node::Power>()) {
    const IdempotentPair base = pw->exponent > 0 ? magnitude(pw->base, s)
                                                 : abs_pair(pc::one / evaluate(pw->base, s));
    const int k = std::abs(pw->exponent);
    return {std::pow(base.u, k), std::pow(base.v, k)};
  }
  if (const auto* q = e.as<node::Quotient>()) {
    const IdempotentPair den = abs_pair(evaluate(q->denominator, s));
    const IdempotentPair num = magnitude(q->numerator, s);
    return {num.u / den.u, num.v / den.v};
  }
  const auto& ap = *e.as<node::Apply>();
  const ParaComplex arg = evaluate(ap.argument, s);
  const IdempotentPair arg_mag = magnitude(ap.argument, s);
  ParaComplex value, slope;
  switch (ap.function) {
    case Function::exp: value = slope = exp(arg); break;
    case Function::ln: value = log(arg); slope = pc::one / arg; break;
    case Function::sin: value = sin(arg); slope = cos(arg); break;
    case Function::cos: value = cos(arg); slope = sin(arg); break;
  }
  return abs_pair(value) + abs_pair(slope) * arg_mag;
}

double scale_of(const IdempotentPair& m) { return std::max({1.0, m.u, m.v}); }

}  // namespace

ParaComplex StateSampler::draw_value() {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (;;) {
    const double a = dist(rng_);
    const double b = dist(rng_);
    ParaComplex x(a, b);
    if (!near_zero_divisor(x)) return x;
  }
}

EvalState StateSampler::draw(const CoordinateChart& chart,
                             const std::function<bool(const EvalState&)>& accept) {
  const auto n = static_cast<std::size_t>(chart.n());
  for (int attempt = 0; attempt < 100000; ++attempt) {
    EvalState s;
    for (std::size_t i = 0; i < n; ++i) s.z.push_back(draw_value());
    for (std::size_t i = 0; i < n; ++i) s.zb.push_back(draw_value());
    if (!accept || accept(s)) return s;
  }
  throw std::runtime_error("state sampler: no acceptable state in 100000 draws");
}

bool hamilton_regular(const ExplicitODE& ode, const EvalState& s) {
  try {
    for (const auto& d : {ode.denom_plus, ode.denom_minus}) {
      if (near_zero_divisor(evaluate(d, s))) return false;
    }
    for (const auto& e : ode.rhs_z) evaluate(e, s);
    for (const auto& e : ode.rhs_zb) evaluate(e, s);
  } catch (const Error&) {
    return false;
  }
  return true;
}

namespace {

// ‖M‖∞·‖M⁻¹‖∞ of the worse idempotent component.
double condition_estimate(const ParaMatrix& m) {
  const std::size_t n = m.size;
  ParaMatrix inv(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<ParaComplex> e(n);
    e[c] = pc::one;
    const auto col = solve_para_linear(m, e);
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  auto row_norm = [n](const ParaMatrix& a, bool upper) {
    double best = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        const auto p = a(r, c).idempotent();
        acc += std::abs(upper ? p.u : p.v);
      }
      best = std::max(best, acc);
    }
    return best;
  };
  return std::max(row_norm(m, true) * row_norm(inv, true), row_norm(m, false) * row_norm(inv, false));
}

ParaMatrix evaluate_matrix(const ImplicitODE& ode, const EvalState& s) {
  const std::size_t dim = ode.rhs.size();
  ParaMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = evaluate(ode.matrix[r][c], s);
  }
  return m;
}

}  // namespace

namespace {

constexpr double kPathCondition = 1e2;

bool well_conditioned(const ImplicitODE& ode, const EvalState& s, double limit) {
  try {
    if (condition_estimate(evaluate_matrix(ode, s)) > limit) return false;
    for (const auto& e : ode.rhs) evaluate(e, s);
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace

bool lagrange_regular(const ImplicitODE& ode, const EvalState& s) {
  return well_conditioned(ode, s, 1e3);
}

Report selftest_algebra(std::uint64_t seed) {
  Report r;
  r.seed = seed;
  StateSampler sampler(seed);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  auto any_value = [&] { return ParaComplex(dist(sampler.engine()), dist(sampler.engine())); };

  using pc::e_minus;
  using pc::e_plus;
  using pc::j;
  const IdempotentPair ip_plus = e_plus.idempotent();
  const IdempotentPair ip_minus = e_minus.idempotent();
  const IdempotentPair ip_j = j.idempotent();
  double fixed = 0.0;
  fixed += !(ip_plus == IdempotentPair{1, 0});
  fixed += !(ip_minus == IdempotentPair{0, 1});
  fixed += !(ip_j == IdempotentPair{1, -1});
  fixed += !(pc::one.idempotent() == IdempotentPair{1, 1});
  fixed += !(e_plus * e_plus == e_plus);
  fixed += !(e_minus * e_minus == e_minus);
  fixed += !((e_plus * e_minus).is_zero());
  fixed += !(e_plus + e_minus == pc::one);
  fixed += !(e_plus - e_minus == j);
  fixed += !(j * j == pc::one);
  r.add("algebra.basis_identities", fixed, 0);

  double idempotent_failures = 0.0, round_trip = 0.0, commute = 0.0, assoc = 0.0,
         division = 0.0, exp_add = 0.0, distrib = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const ParaComplex x = any_value();
    const ParaComplex y = any_value();
    const ParaComplex w = any_value();
    const IdempotentPair px = x.idempotent();

    // Identities in the idempotent representation, exact.
    const IdempotentPair xp = px * ip_plus;
    const IdempotentPair xm = px * ip_minus;
    idempotent_failures += !(xp == IdempotentPair{px.u, 0.0});
    idempotent_failures += !(xm == IdempotentPair{0.0, px.v});
    idempotent_failures += !(xp * ip_plus == xp);
    idempotent_failures += !(xm * ip_minus == xm);
    idempotent_failures += !(px * ip_plus * ip_minus == IdempotentPair{0.0, 0.0});
    idempotent_failures += !(xp + xm == px);
    idempotent_failures += !(xp - xm == px * ip_j);
    idempotent_failures += !(px * ip_j * ip_j == px);

    // Canonical round trip.
    round_trip = std::max(round_trip, rel_error(ParaComplex::from_idempotent(px), x));
    round_trip = std::max(round_trip, rel_error(x * e_plus + x * e_minus, x));
    round_trip = std::max(round_trip, rel_error(x * e_plus - x * e_minus, x * j));

    commute = std::max(commute, norm_max(x * y - y * x));
    assoc = std::max(assoc, rel_error((x * y) * w, x * (y * w)));
    distrib = std::max(distrib, rel_error(x * (y + w), x * y + x * w));
    if (y.invertible()) {
      // Canonical rounding of x/y scales with |x/y|·|y| when y is near a
      // zero-divisor line.
      const ParaComplex q = x / y;
      const double scale = std::max({1.0, norm_max(x), norm_max(q) * norm_max(y)});
      division = std::max(division, norm_max(q * y - x) / scale);
    }

    if (k < 100) {
      const ParaComplex a = ParaComplex(x.a() / 5, x.b() / 5);
      const ParaComplex b = ParaComplex(y.a() / 5, y.b() / 5);
      exp_add = std::max(exp_add, rel_error(exp(a + b), exp(a) * exp(b)));
    }
  }
  r.add("algebra.idempotent_exact", idempotent_failures, 0);
  r.add("algebra.round_trip", round_trip, 1e-15);
  r.add("algebra.commutative", commute, 0);
  r.add("algebra.associative", assoc, 1e-12);
  r.add("algebra.distributive", distrib, 1e-12);
  r.add("algebra.division", division, 1e-12);
  r.add("algebra.exp_additive", exp_add, 1e-12);

  double zero_div = 0.0;
  for (const ParaComplex d : {ParaComplex(1, 1), ParaComplex(2, -2), e_plus, e_minus}) {
    try {
      (void)(pc::one / d);
      zero_div += 1;
    } catch (const ZeroDivisor&) {
    }
  }
  r.add("algebra.zero_divisors_rejected", zero_div, 0);

  double fn = 0.0;
  fn = std::max(fn, rel_error(exp(j), ParaComplex(std::cosh(1.0), std::sinh(1.0))));
  fn = std::max(fn, rel_error(log(exp(ParaComplex(0.3, -0.2))), ParaComplex(0.3, -0.2)));
  fn = std::max(fn, rel_error(sin(ParaComplex(0.4, 0.1)) * sin(ParaComplex(0.4, 0.1)) +
                                  cos(ParaComplex(0.4, 0.1)) * cos(ParaComplex(0.4, 0.1)),
                              pc::one));
  r.add("algebra.functions", fn, 1e-15);
  return r;
}

namespace {

struct Expected {
  Basis basis;
  ParaComplex factor;
};

// The action tables written out entry by entry.
Expected table(StructureKind kind, Basis b, ParaComplex lambda) {
  using pc::e_minus;
  using pc::e_plus;
  using pc::j;
  const bool hol = b == Basis::d_z || b == Basis::dz;
  const Basis partner = b == Basis::d_z    ? Basis::d_zbar
                        : b == Basis::d_zbar ? Basis::d_z
                        : b == Basis::dz     ? Basis::dzbar
                                             : Basis::dz;
  switch (kind) {
    case StructureKind::J:
    case StructureKind::Jstar:
      return {partner, hol ? -j : j};
    case StructureKind::Pplus:
    case StructureKind::PstarPlus:
      return {partner, hol ? -e_plus : e_plus};
    case StructureKind::Pminus:
    case StructureKind::PstarMinus:
      return {partner, hol ? -e_minus : e_minus};
    case StructureKind::Wplus:
    case StructureKind::WstarPlus:
      return {partner, hol ? -(e_plus * exp(lambda)) : e_plus * exp(-lambda)};
    case StructureKind::Wminus:
    case StructureKind::WstarMinus:
      return {partner, hol ? -(e_minus * exp(lambda)) : e_minus * exp(-lambda)};
    default:
      throw std::logic_error("no para-complex table");
  }
}

double frame_distance(const std::vector<FrameVector>& x, const std::vector<FrameVector>& y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].basis != y[k].basis || x[k].index != y[k].index) {
      return std::numeric_limits<double>::infinity();
    }
    worst = std::max(worst, rel_error(x[k].coefficient, y[k].coefficient));
  }
  return worst;
}

std::vector<FrameVector> difference(StructureKind plus, StructureKind minus,
                                    std::span<const FrameVector> vs, ParaComplex lambda) {
  auto out = structure_apply(plus, vs, lambda);
  for (auto t : structure_apply(minus, vs, lambda)) {
    t.coefficient = -t.coefficient;
    out.push_back(t);
  }
  return combine(std::move(out));
}

}  // namespace

Report selftest_structure(std::uint64_t seed) {
  Report r;
  r.seed = seed;
  StateSampler sampler(seed);

  const std::vector<StructureKind> vector_kinds{StructureKind::J, StructureKind::Pplus,
                                                StructureKind::Pminus, StructureKind::Wplus,
                                                StructureKind::Wminus};
  const std::vector<StructureKind> covector_kinds{StructureKind::Jstar, StructureKind::PstarPlus,
                                                  StructureKind::PstarMinus,
                                                  StructureKind::WstarPlus,
                                                  StructureKind::WstarMinus};
  const std::vector<Basis> vectors{Basis::d_z, Basis::d_zbar};
  const std::vector<Basis> covectors{Basis::dz, Basis::dzbar};

  double tables = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ParaComplex lambda = trial == 0 ? ParaComplex() : sampler.draw_value();
    for (int index = 1; index <= 3; ++index) {
      auto check = [&](StructureKind kind, Basis b) {
        const Expected e = table(kind, b, lambda);
        const auto got = structure_apply(kind, FrameVector{b, index, pc::one}, lambda);
        tables = std::max(tables, frame_distance(got, {FrameVector{e.basis, index, e.factor}}));
      };
      for (auto kind : vector_kinds) {
        for (auto b : vectors) check(kind, b);
      }
      for (auto kind : covector_kinds) {
        for (auto b : covectors) check(kind, b);
      }
    }
  }
  r.add("structure.para_tables", tables, 1e-15);

  double real = 0.0;
  auto real_check = [&](StructureKind kind, Basis from, Basis to, double sign) {
    const auto got = structure_apply(kind, FrameVector{from, 2, pc::one});
    real = std::max(real, frame_distance(got, {FrameVector{to, 2, ParaComplex(sign)}}));
  };
  real_check(StructureKind::J, Basis::d_x, Basis::d_y, 1);
  real_check(StructureKind::J, Basis::d_y, Basis::d_x, 1);
  real_check(StructureKind::F, Basis::d_x, Basis::d_y, 1);
  real_check(StructureKind::F, Basis::d_y, Basis::d_x, 1);
  real_check(StructureKind::P, Basis::d_x, Basis::d_x, 1);
  real_check(StructureKind::P, Basis::d_y, Basis::d_y, -1);
  r.add("structure.real_tables", real, 0);

  double involution = 0.0, j_split = 0.0, w_at_zero = 0.0, w_scaling = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const ParaComplex c = sampler.draw_value();
    const ParaComplex lambda = sampler.draw_value();
    for (auto b : {Basis::d_z, Basis::d_zbar, Basis::dz, Basis::dzbar}) {
      const bool co = is_covector(b);
      const FrameVector v{b, 1, c};
      const std::vector<FrameVector> one_term{v};
      const auto jk = co ? StructureKind::Jstar : StructureKind::J;
      const auto pp = co ? StructureKind::PstarPlus : StructureKind::Pplus;
      const auto pm = co ? StructureKind::PstarMinus : StructureKind::Pminus;
      const auto wp = co ? StructureKind::WstarPlus : StructureKind::Wplus;
      const auto wm = co ? StructureKind::WstarMinus : StructureKind::Wminus;

      involution = std::max(involution,
                            frame_distance(structure_apply(jk, structure_apply(jk, v)), one_term));
      const auto p_diff = difference(pp, pm, one_term, {});
      involution = std::max(involution,
                            frame_distance(difference(pp, pm, p_diff, {}), one_term));
      j_split = std::max(j_split, frame_distance(p_diff, structure_apply(jk, v)));

      for (auto [w, p] : {std::pair{wp, pp}, std::pair{wm, pm}}) {
        w_at_zero = std::max(w_at_zero, frame_distance(structure_apply(w, v, {}),
                                                       structure_apply(p, v)));
        auto scaled = structure_apply(p, v);
        const bool hol = b == Basis::d_z || b == Basis::dz;
        for (auto& t : scaled) t.coefficient = t.coefficient * exp(hol ? lambda : -lambda);
        w_scaling = std::max(w_scaling, frame_distance(structure_apply(w, v, lambda), scaled));
      }
    }
  }
  r.add("structure.involution", involution, 1e-15);
  r.add("structure.J_equals_P_difference", j_split, 0);
  r.add("structure.W_at_zero_equals_P", w_at_zero, 0);
  r.add("structure.W_conformal_scaling", w_scaling, 1e-15);

  double mismatches = 0.0;
  auto expect_throw = [&](StructureKind kind, Basis b) {
    try {
      structure_apply(kind, FrameVector{b, 1, pc::one});
      mismatches += 1;
    } catch (const KindMismatch&) {
    }
  };
  expect_throw(StructureKind::J, Basis::dz);
  expect_throw(StructureKind::Wplus, Basis::dzbar);
  expect_throw(StructureKind::Jstar, Basis::d_z);
  expect_throw(StructureKind::PstarMinus, Basis::d_zbar);
  expect_throw(StructureKind::Pplus, Basis::d_x);
  r.add("structure.kind_mismatch_rejected", mismatches, 0);
  return r;
}

namespace {

// Gauss-Jordan elimination with full pivoting on one real component.
std::vector<double> gauss_jordan(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> col_of(n);
  for (std::size_t i = 0; i < n; ++i) col_of[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc_ = k;
    for (std::size_t r = k; r < n; ++r) {
      for (std::size_t c = k; c < n; ++c) {
        if (std::abs(a[r][c]) > std::abs(a[pr][pc_])) {
          pr = r;
          pc_ = c;
        }
      }
    }
    if (a[pr][pc_] == 0.0) throw DegenerateLagrangian("classical baseline: singular system");
    std::swap(a[k], a[pr]);
    std::swap(b[k], b[pr]);
    for (auto& row : a) std::swap(row[k], row[pc_]);
    std::swap(col_of[k], col_of[pc_]);

    const double piv = a[k][k];
    for (std::size_t c = 0; c < n; ++c) a[k][c] /= piv;
    b[k] /= piv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k || a[r][k] == 0.0) continue;
      const double f = a[r][k];
      for (std::size_t c = 0; c < n; ++c) a[r][c] -= f * a[k][c];
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[col_of[k]] = b[k];
  return x;
}

// Classical para Euler-Lagrange velocities:
//   j d/dt(∂L/∂z̄_i) + ∂L/∂z_i = 0,   j d/dt(∂L/∂z_i) - ∂L/∂z̄_i = 0.
class ClassicalLagrange {
 public:
  explicit ClassicalLagrange(const LagrangianProblem& p) : n_(p.chart.n()) {
    const auto coords = p.chart.coordinates();
    for (int i = 1; i <= n_; ++i) {
      l_z_.push_back(differentiate(p.lagrangian, Coord::z(i)));
      l_zb_.push_back(differentiate(p.lagrangian, Coord::zbar(i)));
    }
    for (const auto& first : {l_zb_, l_z_}) {
      for (const auto& f : first) {
        std::vector<Expr> row;
        for (Coord c : coords) row.push_back(differentiate(f, c));
        hessian_.push_back(std::move(row));
      }
    }
  }

  std::vector<ParaComplex> velocities(const EvalState& s) const {
    const std::size_t dim = hessian_.size();
    const auto n = static_cast<std::size_t>(n_);
    std::vector<std::vector<double>> au(dim, std::vector<double>(dim)), av = au;
    std::vector<double> bu(dim), bv(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        const auto p = evaluate(hessian_[r][c], s).idempotent();
        au[r][c] = p.u;
        av[r][c] = p.v;
      }
      // j·(H ξ) = rhs  ⇒  H ξ = j·rhs.
      const ParaComplex rhs = r < n ? -evaluate(l_z_[r], s) : evaluate(l_zb_[r - n], s);
      const auto p = (pc::j * rhs).idempotent();
      bu[r] = p.u;
      bv[r] = p.v;
    }
    const auto xu = gauss_jordan(std::move(au), std::move(bu));
    const auto xv = gauss_jordan(std::move(av), std::move(bv));
    std::vector<ParaComplex> x(dim);
    for (std::size_t k = 0; k < dim; ++k) x[k] = ParaComplex::from_idempotent({xu[k], xv[k]});
    return x;
  }

 private:
  int n_;
  std::vector<Expr> l_z_, l_zb_;
  std::vector<std::vector<Expr>> hessian_;
};

void require_zero_lambda(const Expr& lambda) {
  if (!is_zero(lambda)) throw std::invalid_argument("check_reduction: lambda must be zero");
}

}  // namespace

Report check_reduction(const LagrangianProblem& p, int samples, std::uint64_t seed) {
  require_zero_lambda(p.lambda);
  Report r;
  r.seed = seed;
  const ImplicitODE ode = synthesize_el(p);
  const ClassicalLagrange classical(p);
  StateSampler sampler(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const EvalState s = sampler.draw(p.chart, [&](const EvalState& st) {
      return lagrange_regular(ode, st);
    });
    const StateDerivative conformal = el_rhs(ode, PhaseState{0.0, s.z, s.zb});
    const auto base = classical.velocities(s);
    const auto n = static_cast<std::size_t>(p.chart.n());
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max({worst, rel_error(conformal.dz[i], base[i]),
                        rel_error(conformal.dzb[i], base[n + i])});
    }
  }
  r.add("reduction.lagrange[" + to_text(p.lagrangian) + "]", worst, 1e-12);
  return r;
}

Report check_reduction(const HamiltonianProblem& p, int samples, std::uint64_t seed) {
  require_zero_lambda(p.lambda);
  Report r;
  r.seed = seed;
  const ExplicitODE ode = synthesize_ham(p);
  // Classical para Hamilton equations: ż = -j ∂H/∂z̄, ż̄ = j ∂H/∂z.
  std::vector<Expr> h_z, h_zb;
  for (int i = 1; i <= p.chart.n(); ++i) {
    h_z.push_back(differentiate(p.hamiltonian, Coord::z(i)));
    h_zb.push_back(differentiate(p.hamiltonian, Coord::zbar(i)));
  }
  StateSampler sampler(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const EvalState s = sampler.draw(p.chart, [&](const EvalState& st) {
      return hamilton_regular(ode, st);
    });
    const StateDerivative conformal = ham_rhs(ode, PhaseState{0.0, s.z, s.zb});
    for (std::size_t i = 0; i < h_z.size(); ++i) {
      worst = std::max({worst, rel_error(conformal.dz[i], -(pc::j * evaluate(h_zb[i], s))),
                        rel_error(conformal.dzb[i], pc::j * evaluate(h_z[i], s))});
    }
  }
  r.add("reduction.hamilton[" + to_text(p.hamiltonian) + "]", worst, 1e-12);
  return r;
}

namespace {

// Relative FD error of all partials of `e` at `s`; nullopt when `e` cannot be
// evaluated in the stencil.
std::optional<double> fd_error(const Expr& e, const std::vector<Expr>& partials,
                               const std::vector<Coord>& coords, const EvalState& s) {
  constexpr double h = 1e-5;
  double worst = 0.0;
  try {
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const ParaComplex d = evaluate(partials[k], s);
      for (const ParaComplex dir : {pc::one, pc::j}) {
        EvalState plus = s, minus = s;
        plus.value(coords[k]) += ParaComplex(h) * dir;
        minus.value(coords[k]) -= ParaComplex(h) * dir;
        const ParaComplex fd = (evaluate(e, plus) - evaluate(e, minus)) / ParaComplex(2 * h);
        // Along j the difference quotient is j·∂e/∂z.
        worst = std::max(worst, rel_error(fd, dir * d));
      }
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return worst;
}

}  // namespace

Report check_fd(const Expr& e, const CoordinateChart& chart, int samples, std::uint64_t seed) {
  Report r;
  r.seed = seed;
  const auto coords = chart.coordinates();
  std::vector<Expr> partials;
  for (Coord c : coords) partials.push_back(differentiate(e, c));
  StateSampler sampler(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    std::optional<double> err;
    sampler.draw(chart, [&](const EvalState& s) {
      err = fd_error(e, partials, coords, s);
      return err.has_value();
    });
    worst = std::max(worst, *err);
  }
  r.add("fd[" + to_text(e) + "]", worst, 1e-6);
  return r;
}

Expr random_expression(std::mt19937_64& rng, const CoordinateChart& chart, int depth) {
  std::uniform_int_distribution<int> pick(0, 99);
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  std::uniform_int_distribution<int> coord_pick(0, 2 * chart.n() - 1);
  const auto coords = chart.coordinates();
  auto variable = [&] {
    return Expr::variable(coords[static_cast<std::size_t>(coord_pick(rng))]);
  };
  auto leaf = [&] {
    const int roll = pick(rng);
    if (roll < 55) return variable();
    if (roll < 85) return Expr::constant(value(rng));
    return Expr::constant(ParaComplex(value(rng), value(rng)));
  };
  // 1.5 + x², with both idempotent components >= 1.5.
  auto positive = [&] {
    return Expr::sum({Expr::constant(1.5), Expr::power(variable(), 2)});
  };
  // Affine argument c·x + d for the transcendental functions.
  auto affine = [&](double c) {
    return Expr::sum({Expr::product({Expr::constant(c * value(rng) / 2), variable()}), leaf()});
  };
  if (depth <= 0) return leaf();

  const int roll = pick(rng);
  if (roll < 10) return leaf();
  if (roll < 30) {
    std::vector<Expr> terms;
    for (int k = 0; k < 2 + pick(rng) % 2; ++k) terms.push_back(random_expression(rng, chart, depth - 1));
    return Expr::sum(std::move(terms));
  }
  if (roll < 48) {
    return Expr::product(
        {random_expression(rng, chart, depth - 1), random_expression(rng, chart, depth - 1)});
  }
  if (roll < 56) {
    Expr base = pick(rng) < 50 ? variable() : Expr::sum({leaf(), leaf()});
    return Expr::power(std::move(base), 2 + pick(rng) % 2);
  }
  if (roll < 61) return Expr::power(positive(), -(1 + pick(rng) % 2));
  if (roll < 69) return Expr::quotient(random_expression(rng, chart, depth - 1), positive());
  if (roll < 76) return Expr::apply(Function::exp, affine(0.5));
  if (roll < 82) return Expr::apply(Function::sin, affine(1.0));
  if (roll < 88) return Expr::apply(Function::cos, affine(1.0));
  if (roll < 93) return Expr::apply(Function::ln, positive());
  return Expr::negate(random_expression(rng, chart, depth - 1));
}

Report check_symbolic(int count, std::uint64_t seed) {
  Report r;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  StateSampler sampler(seed ^ 0x9e3779b97f4a7c15ULL);
  const CoordinateChart chart(2);
  double round_trip = 0.0, simplified = 0.0, fd = 0.0, linearity = 0.0, mixed = 0.0;
  double parse_failures = 0.0;
  for (int k = 0; k < count; ++k) {
    const Expr e = random_expression(rng, chart, 3);
    const Expr g = random_expression(rng, chart, 2);
    Expr back;
    try {
      back = parse(to_text(e), chart);
    } catch (const Error&) {
      parse_failures += 1;
      continue;
    }
    const Expr simp = simplify(e);
    const ParaComplex a = sampler.draw_value(), b = sampler.draw_value();
    const Coord var = chart.coordinates()[static_cast<std::size_t>(k) % 4];
    const Coord other = chart.coordinates()[static_cast<std::size_t>(k + 1) % 4];
    const Expr lin = differentiate(Expr::constant(a) * e + Expr::constant(b) * g, var);
    const Expr de = differentiate(e, var);
    const Expr dg = differentiate(g, var);
    const Expr mixed_1 = differentiate(de, other);
    const Expr mixed_2 = differentiate(differentiate(e, other), var);
    for (int i = 0; i < 10; ++i) {
      const EvalState s = sampler.draw(chart);
      try {
        const ParaComplex value = evaluate(e, s);
        round_trip = std::max(round_trip, rel_error(evaluate(back, s), value));
        const double simp_scale = std::max(scale_of(magnitude(e, s)), scale_of(magnitude(simp, s)));
        simplified = std::max(simplified, norm_max(evaluate(simp, s) - value) / simp_scale);
        const double lin_scale =
            std::max(scale_of(magnitude(lin, s)),
                     scale_of(abs_pair(a) * magnitude(de, s) + abs_pair(b) * magnitude(dg, s)));
        linearity = std::max(linearity, norm_max(evaluate(lin, s) - a * evaluate(de, s) -
                                                 b * evaluate(dg, s)) / lin_scale);
        const double mixed_scale =
            std::max(scale_of(magnitude(mixed_1, s)), scale_of(magnitude(mixed_2, s)));
        mixed = std::max(mixed, norm_max(evaluate(mixed_1, s) - evaluate(mixed_2, s)) / mixed_scale);
      } catch (const Error&) {
        // Zero divisor in the generated expression at this state.
      }
    }
    fd = std::max(fd, check_fd(e, chart, 3, seed + static_cast<std::uint64_t>(k)).checks[0].measured);
  }
  r.add("symbolic.parse_failures", parse_failures, 0);
  r.add("symbolic.round_trip", round_trip, 1e-12);
  r.add("symbolic.simplify_equivalent", simplified, 1e-12);
  r.add("symbolic.derivative_linearity", linearity, 1e-12);
  r.add("symbolic.mixed_partials", mixed, 1e-12);
  r.add("symbolic.finite_difference", fd, 1e-6);
  return r;
}

Report conservation_report(const HamiltonianProblem& p, const Trajectory& tr) {
  Report r;
  double drift = 0.0;
  if (!tr.samples.empty()) {
    auto value = [&](std::size_t k) {
      if (k < tr.diagnostics.size() && tr.diagnostics[k].energy) return *tr.diagnostics[k].energy;
      return evaluate(p.hamiltonian, tr.samples[k].eval_state());
    };
    const ParaComplex h0 = value(0);
    for (std::size_t k = 1; k < tr.samples.size(); ++k) drift = std::max(drift, norm_max(value(k) - h0));
  }
  const bool asserted = is_constant_in_chart(p.lambda, p.chart);
  r.add("conservation.H_drift", drift,
        asserted ? 1e-8 : std::numeric_limits<double>::infinity());
  return r;
}

Report conservation_report(const LagrangianProblem& p, const ImplicitODE& ode,
                           const Trajectory& tr) {
  Report r;
  Trajectory copy = tr;
  attach_energy(copy, p, ode);
  double drift = 0.0;
  for (std::size_t k = 1; k < copy.samples.size(); ++k) {
    drift = std::max(drift, norm_max(*copy.diagnostics[k].energy - *copy.diagnostics[0].energy));
  }
  r.add("conservation.E_L_drift", drift, std::numeric_limits<double>::infinity());
  return r;
}

Report audit_report(const LagrangianProblem& p, int samples, std::uint64_t seed) {
  Report r;
  r.seed = seed;
  const ImplicitODE ode = synthesize_el(p);
  const LagrangeAuditor audit(p);
  StateSampler sampler(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const EvalState s =
        sampler.draw(p.chart, [&](const EvalState& st) { return lagrange_regular(ode, st); });
    const StateDerivative v = el_rhs(ode, PhaseState{0.0, s.z, s.zb});
    worst = std::max(worst, audit(s, v.dz, v.dzb));
  }
  r.add("audit.lagrange[" + to_text(p.lagrangian) + "; lambda=" + to_text(p.lambda) + "]", worst,
        1e-10);
  return r;
}

Report audit_report(const HamiltonianProblem& p, int samples, std::uint64_t seed) {
  Report r;
  r.seed = seed;
  const ExplicitODE ode = synthesize_ham(p);
  const HamiltonAuditor audit(p, ode);
  StateSampler sampler(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const EvalState s =
        sampler.draw(p.chart, [&](const EvalState& st) { return hamilton_regular(ode, st); });
    worst = std::max(worst, audit(s));
  }
  r.add("audit.hamilton[" + to_text(p.hamiltonian) + "; lambda=" + to_text(p.lambda) + "]", worst,
        1e-10);
  return r;
}

Report trajectory_report(const LagrangianProblem& p, std::uint64_t seed) {
  Report r;
  r.seed = seed;
  const ImplicitODE ode = synthesize_el(p);
  const RhsFunction rhs = make_rhs(ode);
  IntegratorConfig fixed;
  fixed.dt = 1e-4;
  fixed.t1 = 0.5;
  IntegratorConfig adaptive = fixed;
  adaptive.method = Method::rkf45;
  adaptive.tol = 1e-10;
  StateSampler sampler(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const EvalState s =
        sampler.draw(p.chart, [&](const EvalState& st) { return lagrange_regular(ode, st); });
    const PhaseState s0{0.0, s.z, s.zb};
    Trajectory reference;
    Trajectory tr;
    try {
      reference = integrate(rhs, s0, adaptive);
      tr = integrate(rhs, s0, fixed);
    } catch (const Error&) {
      continue;
    }
    const bool regular = std::all_of(tr.samples.begin(), tr.samples.end(), [&](const PhaseState& x) {
      return well_conditioned(ode, x.eval_state(), kPathCondition);
    });
    if (!regular) continue;

    const std::string tag = "[" + to_text(p.lagrangian) + "; lambda=" + to_text(p.lambda) + "]";
    double fd = 0.0;
    for (const auto& v : residual_series(p, tr, fixed.dt)) {
      if (v) fd = std::max(fd, *v);
    }
    attach_audit_residuals(tr, p, ode);
    double plug = 0.0;
    for (const auto& d : tr.diagnostics) plug = std::max(plug, d.residual.value_or(0.0));
    double gap = 0.0;
    const PhaseState& a = tr.samples.back();
    const PhaseState& b = reference.samples.back();
    for (std::size_t i = 0; i < a.z.size(); ++i) {
      gap = std::max({gap, rel_error(a.z[i], b.z[i]), rel_error(a.zb[i], b.zb[i])});
    }
    r.add("trajectory.fd_residual" + tag, fd, 1e-5);
    r.add("trajectory.plug_back" + tag, plug, 1e-10);
    r.add("trajectory.rk4_vs_rkf45" + tag, gap, 1e-7);
    return r;
  }
  throw std::runtime_error("no regular trajectory found for " + to_text(p.lagrangian));
}

std::vector<LagrangianProblem> lagrangian_fixtures() {
  const std::vector<std::pair<int, const char*>> sources{
      {1, "z1*zb1"},
      {1, "z1^2*zb1 + 0.3*zb1^2"},
      {2, "z1*zb1 + z2*zb2 + 0.1*z1*z2"},
      {1, "0.5*zb1^2 - 0.5*z1^2 + 2*z1*zb1"},
      {1, "exp(0.1*z1)*zb1 + cos(0.3*zb1)"},
  };
  std::vector<LagrangianProblem> out;
  for (const auto& [n, text] : sources) {
    const CoordinateChart chart(n);
    out.emplace_back(chart, parse(text, chart), Expr());
  }
  return out;
}

std::vector<HamiltonianProblem> hamiltonian_fixtures() {
  const std::vector<std::pair<int, const char*>> sources{
      {1, "z1*zb1"},
      {1, "z1*zb1 + 0.1*z1^2"},
      {1, "0.5*zb1^2 + 0.5*z1^2"},
      {2, "z1*zb1 + z2*zb2 + 0.2*z1*zb2"},
      {1, "exp(0.2*z1)*zb1 + sin(zb1)"},
  };
  std::vector<HamiltonianProblem> out;
  for (const auto& [n, text] : sources) {
    const CoordinateChart chart(n);
    out.emplace_back(chart, parse(text, chart), Expr());
  }
  return out;
}

std::vector<std::string> conformal_factor_fixtures() {
  return {"0", "0.7", "0.2*z1 - 0.1*zb1"};
}

namespace {

Report closed_form_oscillator() {
  Report r;
  const CoordinateChart chart(1);
  const LagrangianProblem p(chart, parse("z1*zb1", chart), Expr());
  IntegratorConfig cfg;
  cfg.method = Method::rk4;
  cfg.dt = 1e-3;
  cfg.t0 = 0.0;
  cfg.t1 = 2 * std::numbers::pi;
  const Trajectory tr = integrate(make_rhs(synthesize_el(p)), PhaseState{0.0, {pc::one}, {{}}}, cfg);
  double worst = 0.0;
  for (const auto& s : tr.samples) {
    worst = std::max({worst, norm_max(s.z[0] - ParaComplex(std::cos(s.t))),
                      norm_max(s.zb[0] - ParaComplex(0.0, std::sin(s.t)))});
  }
  r.add("dynamics.oscillator_closed_form", worst, 1e-8);
  return r;
}

}  // namespace

Report run_selftest(std::uint64_t seed) {
  Report r;
  r.seed = seed;
  r.append(selftest_algebra(seed));
  r.append(selftest_structure(seed));
  for (const auto& p : lagrangian_fixtures()) r.append(check_reduction(p, 100, seed));
  for (const auto& p : hamiltonian_fixtures()) r.append(check_reduction(p, 100, seed));
  r.append(check_symbolic(100, seed));
  for (const auto& text : conformal_factor_fixtures()) {
    for (const auto& f : lagrangian_fixtures()) {
      const LagrangianProblem p(f.chart, f.lagrangian, parse(text, f.chart));
      r.append(audit_report(p, 20, seed));
      r.append(trajectory_report(p, seed));
    }
    for (const auto& f : hamiltonian_fixtures()) {
      const HamiltonianProblem p(f.chart, f.hamiltonian, parse(text, f.chart));
      r.append(audit_report(p, 20, seed));
    }
  }
  r.append(closed_form_oscillator());
  return r;
}

}  // namespace bipara
