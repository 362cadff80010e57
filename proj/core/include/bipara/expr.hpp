#pragma once

/**
 * @file expr.hpp
 * @brief Immutable expression trees over para-complex coordinates.
 *
 * Variables are the chart coordinates z_i, z̄_i (spelled `zb<i>` in text) and,
 * for energy functions, the formal velocities ξ_i, ξ̄_i (`xi<i>`, `xib<i>`).
 * z and z̄ are independent: nothing conjugates one into the other.
 *
 * Nodes are shared and never mutated, so copying an Expr is cheap.
 */

#include <compare>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bipara/para_complex.hpp"

namespace bipara {

enum class CoordKind : unsigned char { z, zbar, xi, xibar };

struct Coord {
  CoordKind kind = CoordKind::z;
  int index = 1;  // 1-based

  static constexpr Coord z(int i) { return {CoordKind::z, i}; }
  static constexpr Coord zbar(int i) { return {CoordKind::zbar, i}; }
  static constexpr Coord xi(int i) { return {CoordKind::xi, i}; }
  static constexpr Coord xibar(int i) { return {CoordKind::xibar, i}; }

  auto operator<=>(const Coord&) const = default;
};

std::string to_string(Coord c);

/// n para-complex coordinate pairs: z1..zn, zb1..zbn.
class CoordinateChart {
 public:
  explicit CoordinateChart(int n);

  int n() const { return n_; }
  /// True for z/zb coordinates with index in [1, n].
  bool contains(Coord c) const;
  /// z1..zn followed by zb1..zbn.
  std::vector<Coord> coordinates() const;

  bool operator==(const CoordinateChart&) const = default;

 private:
  int n_;
};

enum class Function : unsigned char { exp, ln, sin, cos };

std::string to_string(Function f);

class Expr;

namespace node {
struct Constant;
struct Variable;
struct Sum;
struct Product;
struct Power;
struct Quotient;
struct Apply;
struct Negate;
}  // namespace node

using Node = std::variant<node::Constant, node::Variable, node::Sum, node::Product, node::Power,
                          node::Quotient, node::Apply, node::Negate>;

class Expr {
 public:
  /// The constant 0.
  Expr();

  static Expr constant(ParaComplex value);
  static Expr variable(Coord c);
  /// Requires at least two terms.
  static Expr sum(std::vector<Expr> terms);
  /// Requires at least two factors.
  static Expr product(std::vector<Expr> factors);
  /// Requires a nonzero exponent.
  static Expr power(Expr base, int exponent);
  static Expr quotient(Expr numerator, Expr denominator);
  static Expr apply(Function f, Expr argument);
  static Expr negate(Expr child);

  const Node& node() const;

  template <typename T>
  const T* as() const;
  template <typename T>
  bool is() const;

  bool is_constant() const;
  /// True for a Constant node holding exactly `value`.
  bool is_constant(ParaComplex value) const;

  /// Structural total order; equal exprs compare equivalent.
  friend std::strong_ordering compare(const Expr& x, const Expr& y);
  friend bool operator==(const Expr& x, const Expr& y) { return compare(x, y) == 0; }
  friend std::strong_ordering operator<=>(const Expr& x, const Expr& y) { return compare(x, y); }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

namespace node {
struct Constant {
  ParaComplex value;
};
struct Variable {
  Coord coord;
};
struct Sum {
  std::vector<Expr> terms;
};
struct Product {
  std::vector<Expr> factors;
};
struct Power {
  Expr base;
  int exponent;
};
struct Quotient {
  Expr numerator;
  Expr denominator;
};
struct Apply {
  Function function;
  Expr argument;
};
struct Negate {
  Expr child;
};
}  // namespace node

inline const Node& Expr::node() const { return *node_; }

template <typename T>
const T* Expr::as() const {
  return std::get_if<T>(node_.get());
}

template <typename T>
bool Expr::is() const {
  return std::holds_alternative<T>(*node_);
}

// Building operators. They flatten nested sums/products and nothing else;
// use simplify() for normalization.
Expr operator+(const Expr& x, const Expr& y);
Expr operator-(const Expr& x, const Expr& y);
Expr operator*(const Expr& x, const Expr& y);
Expr operator/(const Expr& x, const Expr& y);
Expr operator-(const Expr& x);

Expr exp(const Expr& x);
Expr log(const Expr& x);
Expr sin(const Expr& x);
Expr cos(const Expr& x);

/// Every coordinate referenced by `e`, sorted and unique.
std::vector<Coord> free_coordinates(const Expr& e);

/// Number of nodes in the tree.
std::size_t node_count(const Expr& e);

}  // namespace bipara
