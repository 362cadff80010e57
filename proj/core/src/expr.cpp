#include "bipara/expr.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace bipara {

std::string to_string(Coord c) {
  switch (c.kind) {
    case CoordKind::z: return "z" + std::to_string(c.index);
    case CoordKind::zbar: return "zb" + std::to_string(c.index);
    case CoordKind::xi: return "xi" + std::to_string(c.index);
    case CoordKind::xibar: return "xib" + std::to_string(c.index);
  }
  return "?";
}

CoordinateChart::CoordinateChart(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("chart dimension must be >= 1");
}

bool CoordinateChart::contains(Coord c) const {
  return (c.kind == CoordKind::z || c.kind == CoordKind::zbar) && c.index >= 1 && c.index <= n_;
}

std::vector<Coord> CoordinateChart::coordinates() const {
  std::vector<Coord> out;
  out.reserve(2 * static_cast<std::size_t>(n_));
  for (int i = 1; i <= n_; ++i) out.push_back(Coord::z(i));
  for (int i = 1; i <= n_; ++i) out.push_back(Coord::zbar(i));
  return out;
}

std::string to_string(Function f) {
  switch (f) {
    case Function::exp: return "exp";
    case Function::ln: return "ln";
    case Function::sin: return "sin";
    case Function::cos: return "cos";
  }
  return "?";
}

Expr::Expr() : Expr(std::make_shared<const Node>(node::Constant{{}})) {}

Expr Expr::constant(ParaComplex value) {
  return Expr(std::make_shared<const Node>(node::Constant{value}));
}

Expr Expr::variable(Coord c) { return Expr(std::make_shared<const Node>(node::Variable{c})); }

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.size() < 2) throw std::invalid_argument("Sum needs at least two terms");
  return Expr(std::make_shared<const Node>(node::Sum{std::move(terms)}));
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.size() < 2) throw std::invalid_argument("Product needs at least two factors");
  return Expr(std::make_shared<const Node>(node::Product{std::move(factors)}));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent == 0) throw std::invalid_argument("Power exponent must be nonzero");
  return Expr(std::make_shared<const Node>(node::Power{std::move(base), exponent}));
}

Expr Expr::quotient(Expr numerator, Expr denominator) {
  return Expr(
      std::make_shared<const Node>(node::Quotient{std::move(numerator), std::move(denominator)}));
}

Expr Expr::apply(Function f, Expr argument) {
  return Expr(std::make_shared<const Node>(node::Apply{f, std::move(argument)}));
}

Expr Expr::negate(Expr child) {
  return Expr(std::make_shared<const Node>(node::Negate{std::move(child)}));
}

bool Expr::is_constant() const { return is<node::Constant>(); }

bool Expr::is_constant(ParaComplex value) const {
  const auto* c = as<node::Constant>();
  return c != nullptr && c->value == value;
}

namespace {

std::strong_ordering compare_double(double x, double y) {
  if (x < y) return std::strong_ordering::less;
  if (y < x) return std::strong_ordering::greater;
  // Equal or unordered (NaN, ±0): fall back to the bit pattern.
  return std::bit_cast<std::uint64_t>(x) <=> std::bit_cast<std::uint64_t>(y);
}

std::strong_ordering compare_children(const std::vector<Expr>& x, const std::vector<Expr>& y) {
  if (auto c = x.size() <=> y.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (auto c = compare(x[i], y[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering compare(const Expr& x, const Expr& y) {
  if (x.node_ == y.node_) return std::strong_ordering::equal;
  if (auto c = x.node_->index() <=> y.node_->index(); c != 0) return c;
  return std::visit(
      [&](const auto& lhs) -> std::strong_ordering {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(*y.node_);
        if constexpr (std::is_same_v<T, node::Constant>) {
          if (auto c = compare_double(lhs.value.a(), rhs.value.a()); c != 0) return c;
          return compare_double(lhs.value.b(), rhs.value.b());
        } else if constexpr (std::is_same_v<T, node::Variable>) {
          return lhs.coord <=> rhs.coord;
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          return compare_children(lhs.terms, rhs.terms);
        } else if constexpr (std::is_same_v<T, node::Product>) {
          return compare_children(lhs.factors, rhs.factors);
        } else if constexpr (std::is_same_v<T, node::Power>) {
          if (auto c = compare(lhs.base, rhs.base); c != 0) return c;
          return lhs.exponent <=> rhs.exponent;
        } else if constexpr (std::is_same_v<T, node::Quotient>) {
          if (auto c = compare(lhs.numerator, rhs.numerator); c != 0) return c;
          return compare(lhs.denominator, rhs.denominator);
        } else if constexpr (std::is_same_v<T, node::Apply>) {
          if (auto c = lhs.function <=> rhs.function; c != 0) return c;
          return compare(lhs.argument, rhs.argument);
        } else {
          return compare(lhs.child, rhs.child);
        }
      },
      *x.node_);
}

namespace {

void append_flat_terms(std::vector<Expr>& out, const Expr& e) {
  if (const auto* s = e.as<node::Sum>()) {
    out.insert(out.end(), s->terms.begin(), s->terms.end());
  } else {
    out.push_back(e);
  }
}

void append_flat_factors(std::vector<Expr>& out, const Expr& e) {
  if (const auto* p = e.as<node::Product>()) {
    out.insert(out.end(), p->factors.begin(), p->factors.end());
  } else {
    out.push_back(e);
  }
}

}  // namespace

Expr operator+(const Expr& x, const Expr& y) {
  std::vector<Expr> terms;
  append_flat_terms(terms, x);
  append_flat_terms(terms, y);
  return Expr::sum(std::move(terms));
}

Expr operator-(const Expr& x, const Expr& y) { return x + Expr::negate(y); }

Expr operator*(const Expr& x, const Expr& y) {
  std::vector<Expr> factors;
  append_flat_factors(factors, x);
  append_flat_factors(factors, y);
  return Expr::product(std::move(factors));
}

Expr operator/(const Expr& x, const Expr& y) { return Expr::quotient(x, y); }

Expr operator-(const Expr& x) { return Expr::negate(x); }

Expr exp(const Expr& x) { return Expr::apply(Function::exp, x); }
Expr log(const Expr& x) { return Expr::apply(Function::ln, x); }
Expr sin(const Expr& x) { return Expr::apply(Function::sin, x); }
Expr cos(const Expr& x) { return Expr::apply(Function::cos, x); }

namespace {

template <typename F>
void for_each_child(const Expr& e, F&& f) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Sum>) {
          for (const auto& c : n.terms) f(c);
        } else if constexpr (std::is_same_v<T, node::Product>) {
          for (const auto& c : n.factors) f(c);
        } else if constexpr (std::is_same_v<T, node::Power>) {
          f(n.base);
        } else if constexpr (std::is_same_v<T, node::Quotient>) {
          f(n.numerator);
          f(n.denominator);
        } else if constexpr (std::is_same_v<T, node::Apply>) {
          f(n.argument);
        } else if constexpr (std::is_same_v<T, node::Negate>) {
          f(n.child);
        }
      },
      e.node());
}

void collect_coordinates(const Expr& e, std::vector<Coord>& out) {
  if (const auto* v = e.as<node::Variable>()) {
    out.push_back(v->coord);
    return;
  }
  for_each_child(e, [&](const Expr& c) { collect_coordinates(c, out); });
}

}  // namespace

std::vector<Coord> free_coordinates(const Expr& e) {
  std::vector<Coord> out;
  collect_coordinates(e, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  for_each_child(e, [&](const Expr& c) { n += node_count(c); });
  return n;
}

}  // namespace bipara
