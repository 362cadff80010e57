#pragma once

/**
 * @file para_complex.hpp
 * @brief Para-complex (split-complex) scalars a + b·j with j² = +1.
 *
 * Every para-complex number has a second coordinate system, the idempotent
 * basis e⁺ = (1 + j)/2, e⁻ = (1 - j)/2:
 *
 *     a + b·j = u·e⁺ + v·e⁻,   u = a + b,   v = a - b.
 *
 * Since e⁺e⁺ = e⁺, e⁻e⁻ = e⁻ and e⁺e⁻ = 0, products, quotients and analytic
 * functions act componentwise on (u, v). All non-linear operations here are
 * evaluated that way and converted back. Zero divisors are exactly the
 * numbers with u = 0 or v = 0 (the lines a = ±b).
 */

#include <iosfwd>
#include <string>

namespace bipara {

/// Coordinates of a para-complex number in the basis {e⁺, e⁻}.
struct IdempotentPair {
  double u = 0.0;  // e⁺ component
  double v = 0.0;  // e⁻ component

  constexpr bool operator==(const IdempotentPair&) const = default;

  friend constexpr IdempotentPair operator+(IdempotentPair x, IdempotentPair y) {
    return {x.u + y.u, x.v + y.v};
  }
  friend constexpr IdempotentPair operator-(IdempotentPair x, IdempotentPair y) {
    return {x.u - y.u, x.v - y.v};
  }
  friend constexpr IdempotentPair operator*(IdempotentPair x, IdempotentPair y) {
    return {x.u * y.u, x.v * y.v};
  }
};

class ParaComplex {
 public:
  /// Components below this magnitude count as exactly zero for inversion.
  static constexpr double kZeroComponent = 1e-300;

  constexpr ParaComplex() = default;
  constexpr ParaComplex(double a, double b = 0.0) : a_(a), b_(b) {}  // NOLINT(google-explicit-constructor)

  static constexpr ParaComplex from_idempotent(IdempotentPair p) {
    return {(p.u + p.v) / 2.0, (p.u - p.v) / 2.0};
  }
  constexpr IdempotentPair idempotent() const { return {a_ + b_, a_ - b_}; }

  /// Canonical real part.
  constexpr double a() const { return a_; }
  /// Coefficient of j.
  constexpr double b() const { return b_; }

  constexpr bool invertible() const {
    auto p = idempotent();
    return !(p.u < kZeroComponent && p.u > -kZeroComponent) &&
           !(p.v < kZeroComponent && p.v > -kZeroComponent);
  }
  constexpr bool is_zero() const { return a_ == 0.0 && b_ == 0.0; }
  constexpr bool is_real() const { return b_ == 0.0; }

  /// a - b·j; swaps the idempotent components.
  constexpr ParaComplex conj() const { return {a_, -b_}; }

  constexpr ParaComplex operator-() const { return {-a_, -b_}; }
  constexpr ParaComplex& operator+=(ParaComplex o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  constexpr ParaComplex& operator-=(ParaComplex o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  constexpr ParaComplex& operator*=(ParaComplex o) {
    auto p = idempotent();
    auto q = o.idempotent();
    *this = from_idempotent({p.u * q.u, p.v * q.v});
    return *this;
  }
  ParaComplex& operator/=(ParaComplex o);

  friend constexpr ParaComplex operator+(ParaComplex x, ParaComplex y) { return x += y; }
  friend constexpr ParaComplex operator-(ParaComplex x, ParaComplex y) { return x -= y; }
  friend constexpr ParaComplex operator*(ParaComplex x, ParaComplex y) { return x *= y; }
  friend ParaComplex operator/(ParaComplex x, ParaComplex y) { return x /= y; }

  constexpr bool operator==(const ParaComplex&) const = default;

 private:
  double a_ = 0.0;
  double b_ = 0.0;
};

namespace pc {
inline constexpr ParaComplex j{0.0, 1.0};
inline constexpr ParaComplex e_plus{0.5, 0.5};
inline constexpr ParaComplex e_minus{0.5, -0.5};
inline constexpr ParaComplex one{1.0, 0.0};
}  // namespace pc

/// max(|a|, |b|): the norm used for every residual and tolerance check.
double norm_max(ParaComplex x);

/// Integer power by repeated squaring; negative exponents invert.
ParaComplex pow(ParaComplex x, int exponent);

ParaComplex exp(ParaComplex x);
/// Throws DomainError unless both idempotent components are positive.
ParaComplex log(ParaComplex x);
ParaComplex sin(ParaComplex x);
ParaComplex cos(ParaComplex x);

std::string to_string(ParaComplex x);
std::ostream& operator<<(std::ostream& os, ParaComplex x);

}  // namespace bipara
