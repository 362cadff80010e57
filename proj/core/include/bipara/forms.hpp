#pragma once

// Differential forms with symbolic coefficients on a para-complex chart.
//
// Basis covectors are indexed by a flat position p in [0, 2n):
// p < n is dz_{p+1}, p >= n is dz̄_{p-n+1}. Two- and three-forms store only
// strictly increasing index tuples.

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bipara/expr.hpp"

namespace bipara {

/// Flat covector position of a chart coordinate.
int flat_index(const CoordinateChart& chart, Coord c);
Coord coord_at(const CoordinateChart& chart, int flat);

struct VectorField {
  std::vector<Expr> d_z;   // coefficients of ∂/∂z_i
  std::vector<Expr> d_zb;  // coefficients of ∂/∂z̄_i

  Expr component(const CoordinateChart& chart, int flat) const;
};

struct OneForm {
  std::vector<Expr> dz;   // coefficients of dz_i
  std::vector<Expr> dzb;  // coefficients of dz̄_i

  static OneForm zero(const CoordinateChart& chart);
  Expr component(const CoordinateChart& chart, int flat) const;
  bool is_zero() const;
};

class TwoForm {
 public:
  explicit TwoForm(CoordinateChart chart) : chart_(chart) {}

  const CoordinateChart& chart() const { return chart_; }

  /// Coefficient of e_p ∧ e_q, antisymmetric in (p, q).
  Expr coefficient(int p, int q) const;
  /// Adds c·(e_p ∧ e_q); p == q is ignored.
  void add(int p, int q, const Expr& c);

  const std::map<std::pair<int, int>, Expr>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TwoForm operator-() const;

 private:
  CoordinateChart chart_;
  std::map<std::pair<int, int>, Expr> terms_;  // p < q, simplified, nonzero
};

class ThreeForm {
 public:
  explicit ThreeForm(CoordinateChart chart) : chart_(chart) {}

  void add(std::array<int, 3> idx, const Expr& c);
  const std::map<std::array<int, 3>, Expr>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

 private:
  CoordinateChart chart_;
  std::map<std::array<int, 3>, Expr> terms_;
};

/// df over the chart coordinates.
OneForm differential(const Expr& f, const CoordinateChart& chart);
TwoForm exterior_derivative(const OneForm& w, const CoordinateChart& chart);
ThreeForm exterior_derivative(const TwoForm& w);

/// i_X w, with (i_X w)(Y) = w(X, Y).
OneForm interior(const VectorField& x, const TwoForm& w);

std::string to_text(const OneForm& w, const CoordinateChart& chart);
std::string to_text(const TwoForm& w);

}  // namespace bipara
