#include "bipara/calculus.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "bipara/number_format.hpp"
#include "bipara/text.hpp"

namespace bipara {

// ---------------------------------------------------------------------------
// EvalState

namespace {

std::vector<ParaComplex>& slot(EvalState& s, CoordKind kind) {
  switch (kind) {
    case CoordKind::z: return s.z;
    case CoordKind::zbar: return s.zb;
    case CoordKind::xi: return s.xi;
    case CoordKind::xibar: return s.xib;
  }
  return s.z;
}

}  // namespace

ParaComplex EvalState::value(Coord c) const { return const_cast<EvalState&>(*this).value(c); }

ParaComplex& EvalState::value(Coord c) {
  auto& v = slot(*this, c.kind);
  if (c.index < 1 || static_cast<std::size_t>(c.index) > v.size()) {
    throw IndexOutOfRange("no value bound for " + to_string(c));
  }
  return v[static_cast<std::size_t>(c.index - 1)];
}

// ---------------------------------------------------------------------------
// evaluate

namespace {

bool vanishes(double c) {
  return c < ParaComplex::kZeroComponent && c > -ParaComplex::kZeroComponent;
}

double component_power(double x, int exponent) {
  double result = 1.0;
  double base = x;
  for (unsigned k = static_cast<unsigned>(exponent < 0 ? -exponent : exponent); k != 0; k >>= 1) {
    if (k & 1u) result *= base;
    base *= base;
  }
  return exponent < 0 ? 1.0 / result : result;
}

[[noreturn]] void zero_divisor(const Expr& e, IdempotentPair p) {
  throw EvaluationError<ZeroDivisor>(
      ZeroDivisor("division by zero divisor " + to_string(ParaComplex::from_idempotent(p))),
      to_text(e));
}

IdempotentPair apply_function(const Expr& e, Function f, IdempotentPair x) {
  switch (f) {
    case Function::exp: return {std::exp(x.u), std::exp(x.v)};
    case Function::ln:
      if (!(x.u > 0.0) || !(x.v > 0.0)) {
        throw EvaluationError<DomainError>(
            DomainError("ln of " + to_string(ParaComplex::from_idempotent(x)) +
                        " (idempotent components " + format_double(x.u) + ", " +
                        format_double(x.v) + ")"),
            to_text(e));
      }
      return {std::log(x.u), std::log(x.v)};
    case Function::sin: return {std::sin(x.u), std::sin(x.v)};
    case Function::cos: return {std::cos(x.u), std::cos(x.v)};
  }
  return x;
}

}  // namespace

IdempotentPair evaluate_idempotent(const Expr& e, const EvalState& s) {
  return std::visit(
      [&](const auto& n) -> IdempotentPair {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Constant>) {
          return n.value.idempotent();
        } else if constexpr (std::is_same_v<T, node::Variable>) {
          return s.value(n.coord).idempotent();
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          IdempotentPair acc;
          for (const auto& t : n.terms) acc = acc + evaluate_idempotent(t, s);
          return acc;
        } else if constexpr (std::is_same_v<T, node::Product>) {
          IdempotentPair acc{1.0, 1.0};
          for (const auto& f : n.factors) acc = acc * evaluate_idempotent(f, s);
          return acc;
        } else if constexpr (std::is_same_v<T, node::Power>) {
          const IdempotentPair base = evaluate_idempotent(n.base, s);
          if (n.exponent < 0 && (vanishes(base.u) || vanishes(base.v))) zero_divisor(e, base);
          return {component_power(base.u, n.exponent), component_power(base.v, n.exponent)};
        } else if constexpr (std::is_same_v<T, node::Quotient>) {
          const IdempotentPair num = evaluate_idempotent(n.numerator, s);
          const IdempotentPair den = evaluate_idempotent(n.denominator, s);
          if (vanishes(den.u) || vanishes(den.v)) zero_divisor(e, den);
          return {num.u / den.u, num.v / den.v};
        } else if constexpr (std::is_same_v<T, node::Apply>) {
          return apply_function(e, n.function, evaluate_idempotent(n.argument, s));
        } else {
          const IdempotentPair c = evaluate_idempotent(n.child, s);
          return {-c.u, -c.v};
        }
      },
      e.node());
}

ParaComplex evaluate(const Expr& e, const EvalState& s) {
  return ParaComplex::from_idempotent(evaluate_idempotent(e, s));
}

// ---------------------------------------------------------------------------
// simplify
//
// Expressions are normalized into a sparse "polynomial": a map from monomials
// (sorted lists of atom^exponent) to para-complex coefficients. Atoms are
// variables, function applications with normalized arguments, and sums that
// could not be expanded (negative or large powers of multi-term sums).

namespace {

using Factor = std::pair<Expr, int>;
using Monomial = std::vector<Factor>;

struct MonomialLess {
  bool operator()(const Monomial& x, const Monomial& y) const {
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = compare(x[i].first, y[i].first); c != 0) return c < 0;
      if (x[i].second != y[i].second) return x[i].second < y[i].second;
    }
    return x.size() < y.size();
  }
};

using Poly = std::map<Monomial, ParaComplex, MonomialLess>;

constexpr int kMaxExpandedPower = 4;
constexpr std::size_t kMaxExpandedTerms = 256;

Expr from_poly(const Poly& p);

void add_term(Poly& p, const Monomial& m, ParaComplex c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

Monomial multiply(const Monomial& x, const Monomial& y) {
  Monomial out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, k = 0;
  while (i < x.size() || k < y.size()) {
    if (k == y.size() || (i < x.size() && compare(x[i].first, y[k].first) < 0)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || compare(y[k].first, x[i].first) < 0) {
      out.push_back(y[k++]);
    } else {
      const int e = x[i].second + y[k].second;
      if (e != 0) out.emplace_back(x[i].first, e);
      ++i;
      ++k;
    }
  }
  return out;
}

Poly multiply(const Poly& x, const Poly& y) {
  Poly out;
  for (const auto& [mx, cx] : x) {
    for (const auto& [my, cy] : y) add_term(out, multiply(mx, my), cx * cy);
  }
  return out;
}

Poly constant_poly(ParaComplex c) {
  Poly p;
  add_term(p, {}, c);
  return p;
}

Poly atom_poly(const Expr& atom, int exponent) { return Poly{{Monomial{{atom, exponent}}, pc::one}}; }

Poly power(const Poly& base, int n) {
  if (base.size() == 1) {
    const auto& [m, c] = *base.begin();
    if (n > 0 || c.invertible()) {
      Monomial raised = m;
      for (auto& f : raised) f.second *= n;
      std::erase_if(raised, [](const Factor& f) { return f.second == 0; });
      Poly out;
      add_term(out, raised, pow(c, n));
      return out;
    }
  }
  if (n > 0 && n <= kMaxExpandedPower) {
    std::size_t bound = 1;
    for (int i = 0; i < n; ++i) bound *= base.size();
    if (bound <= kMaxExpandedTerms) {
      Poly out = base;
      for (int i = 1; i < n; ++i) out = multiply(out, base);
      return out;
    }
  }
  if (n > 0 && base.empty()) return {};
  return atom_poly(from_poly(base), n);
}

Poly to_poly(const Expr& e);

Expr normalized_apply(Function f, const Expr& argument) {
  Expr arg = from_poly(to_poly(argument));
  if (arg.is<node::Constant>()) {
    try {
      return Expr::constant(evaluate(Expr::apply(f, arg), EvalState{}));
    } catch (const DomainError&) {
      // ln of an invalid constant stays symbolic and fails at evaluation
    }
  }
  return Expr::apply(f, arg);
}

Poly to_poly(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> Poly {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Constant>) {
          return constant_poly(n.value);
        } else if constexpr (std::is_same_v<T, node::Variable>) {
          return atom_poly(e, 1);
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          Poly acc;
          for (const auto& t : n.terms) {
            for (const auto& [m, c] : to_poly(t)) add_term(acc, m, c);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, node::Product>) {
          Poly acc = constant_poly(pc::one);
          for (const auto& f : n.factors) {
            acc = multiply(acc, to_poly(f));
            if (acc.empty()) break;
          }
          return acc;
        } else if constexpr (std::is_same_v<T, node::Power>) {
          return power(to_poly(n.base), n.exponent);
        } else if constexpr (std::is_same_v<T, node::Quotient>) {
          return multiply(to_poly(n.numerator), power(to_poly(n.denominator), -1));
        } else if constexpr (std::is_same_v<T, node::Apply>) {
          Expr folded = normalized_apply(n.function, n.argument);
          if (const auto* c = folded.as<node::Constant>()) return constant_poly(c->value);
          return atom_poly(folded, 1);
        } else {
          Poly p = to_poly(n.child);
          for (auto& [m, c] : p) c = -c;
          return p;
        }
      },
      e.node());
}

bool leading_negative(ParaComplex c) { return c.a() < 0 || (c.a() == 0 && c.b() < 0); }

Expr join_product(std::vector<Expr> factors) {
  if (factors.size() == 1) return factors.front();
  return Expr::product(std::move(factors));
}

Expr from_poly(const Poly& p) {
  if (p.empty()) return Expr();
  if (p.size() == 1 && p.begin()->first.empty()) return Expr::constant(p.begin()->second);
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& [m, coefficient] : p) {
    ParaComplex c = coefficient;
    const bool negative = leading_negative(c);
    if (negative) c = -c;

    std::vector<Expr> numerator;
    std::vector<Expr> denominator;
    for (const auto& [atom, k] : m) {
      const int mag = k < 0 ? -k : k;
      Expr f = mag == 1 ? atom : Expr::power(atom, mag);
      (k > 0 ? numerator : denominator).push_back(std::move(f));
    }
    if (c != pc::one || numerator.empty()) numerator.insert(numerator.begin(), Expr::constant(c));
    Expr term = join_product(std::move(numerator));
    if (!denominator.empty()) term = Expr::quotient(term, join_product(std::move(denominator)));
    terms.push_back(negative ? Expr::negate(term) : term);
  }
  if (terms.size() == 1) return terms.front();
  return Expr::sum(std::move(terms));
}

// ---------------------------------------------------------------------------
// differentiate

Expr zero() { return Expr(); }
Expr one() { return Expr::constant(pc::one); }

Expr raw_derivative(const Expr& e, Coord var) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Constant>) {
          return zero();
        } else if constexpr (std::is_same_v<T, node::Variable>) {
          return n.coord == var ? one() : zero();
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          std::vector<Expr> terms;
          for (const auto& t : n.terms) terms.push_back(raw_derivative(t, var));
          return Expr::sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, node::Product>) {
          std::vector<Expr> terms;
          for (std::size_t i = 0; i < n.factors.size(); ++i) {
            std::vector<Expr> factors = n.factors;
            factors[i] = raw_derivative(n.factors[i], var);
            terms.push_back(Expr::product(std::move(factors)));
          }
          return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, node::Power>) {
          const Expr db = raw_derivative(n.base, var);
          const Expr k = Expr::constant(static_cast<double>(n.exponent));
          if (n.exponent == 1) return db;
          return Expr::product({k, Expr::power(n.base, n.exponent - 1), db});
        } else if constexpr (std::is_same_v<T, node::Quotient>) {
          const Expr& u = n.numerator;
          const Expr& v = n.denominator;
          // (u/v)' = u'/v - u v' / v^2
          return Expr::quotient(raw_derivative(u, var), v) -
                 Expr::quotient(Expr::product({u, raw_derivative(v, var)}), Expr::power(v, 2));
        } else if constexpr (std::is_same_v<T, node::Apply>) {
          const Expr& g = n.argument;
          const Expr dg = raw_derivative(g, var);
          switch (n.function) {
            case Function::exp: return Expr::product({e, dg});
            case Function::ln: return Expr::quotient(dg, g);
            case Function::sin: return Expr::product({cos(g), dg});
            case Function::cos: return Expr::negate(Expr::product({sin(g), dg}));
          }
          return zero();
        } else {
          return Expr::negate(raw_derivative(n.child, var));
        }
      },
      e.node());
}

}  // namespace

Expr simplify(const Expr& e) { return from_poly(to_poly(e)); }

bool is_zero(const Expr& e) { return to_poly(e).empty(); }

Expr differentiate(const Expr& e, Coord var) { return simplify(raw_derivative(e, var)); }

Expr substitute(const Expr& e, Coord var, const Expr& value) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        auto sub = [&](const Expr& c) { return substitute(c, var, value); };
        if constexpr (std::is_same_v<T, node::Constant>) {
          return e;
        } else if constexpr (std::is_same_v<T, node::Variable>) {
          return n.coord == var ? value : e;
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          std::vector<Expr> terms;
          for (const auto& t : n.terms) terms.push_back(sub(t));
          return Expr::sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, node::Product>) {
          std::vector<Expr> factors;
          for (const auto& f : n.factors) factors.push_back(sub(f));
          return Expr::product(std::move(factors));
        } else if constexpr (std::is_same_v<T, node::Power>) {
          return Expr::power(sub(n.base), n.exponent);
        } else if constexpr (std::is_same_v<T, node::Quotient>) {
          return Expr::quotient(sub(n.numerator), sub(n.denominator));
        } else if constexpr (std::is_same_v<T, node::Apply>) {
          return Expr::apply(n.function, sub(n.argument));
        } else {
          return Expr::negate(sub(n.child));
        }
      },
      e.node());
}

}  // namespace bipara
