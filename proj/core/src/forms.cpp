#include "bipara/forms.hpp"

#include <algorithm>
#include <stdexcept>

#include "bipara/calculus.hpp"
#include "bipara/text.hpp"

namespace bipara {

int flat_index(const CoordinateChart& chart, Coord c) {
  if (!chart.contains(c)) throw std::out_of_range("coordinate " + to_string(c) + " not in chart");
  return c.kind == CoordKind::z ? c.index - 1 : chart.n() + c.index - 1;
}

Coord coord_at(const CoordinateChart& chart, int flat) {
  return flat < chart.n() ? Coord::z(flat + 1) : Coord::zbar(flat - chart.n() + 1);
}

Expr VectorField::component(const CoordinateChart& chart, int flat) const {
  return flat < chart.n() ? d_z.at(static_cast<std::size_t>(flat))
                          : d_zb.at(static_cast<std::size_t>(flat - chart.n()));
}

OneForm OneForm::zero(const CoordinateChart& chart) {
  const auto n = static_cast<std::size_t>(chart.n());
  return {std::vector<Expr>(n), std::vector<Expr>(n)};
}

Expr OneForm::component(const CoordinateChart& chart, int flat) const {
  return flat < chart.n() ? dz.at(static_cast<std::size_t>(flat))
                          : dzb.at(static_cast<std::size_t>(flat - chart.n()));
}

bool OneForm::is_zero() const {
  auto zero = [](const Expr& e) { return bipara::is_zero(e); };
  return std::all_of(dz.begin(), dz.end(), zero) && std::all_of(dzb.begin(), dzb.end(), zero);
}

Expr TwoForm::coefficient(int p, int q) const {
  if (p == q) return Expr();
  const bool swapped = p > q;
  auto it = terms_.find(swapped ? std::pair{q, p} : std::pair{p, q});
  if (it == terms_.end()) return Expr();
  return swapped ? simplify(-it->second) : it->second;
}

void TwoForm::add(int p, int q, const Expr& c) {
  if (p == q) return;
  const Expr signed_c = p < q ? c : -c;
  const std::pair key = p < q ? std::pair{p, q} : std::pair{q, p};
  auto it = terms_.find(key);
  Expr sum = simplify(it == terms_.end() ? signed_c : it->second + signed_c);
  if (bipara::is_zero(sum)) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_.insert_or_assign(key, std::move(sum));
  }
}

TwoForm TwoForm::operator-() const {
  TwoForm out(chart_);
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, simplify(-c));
  return out;
}

void ThreeForm::add(std::array<int, 3> idx, const Expr& c) {
  if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2]) return;
  // Sort with sign tracking.
  int sign = 1;
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < 2; ++i) {
      if (idx[i] > idx[i + 1]) {
        std::swap(idx[i], idx[i + 1]);
        sign = -sign;
      }
    }
  }
  const Expr signed_c = sign > 0 ? c : -c;
  auto it = terms_.find(idx);
  Expr sum = simplify(it == terms_.end() ? signed_c : it->second + signed_c);
  if (bipara::is_zero(sum)) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_.insert_or_assign(idx, std::move(sum));
  }
}

OneForm differential(const Expr& f, const CoordinateChart& chart) {
  OneForm out = OneForm::zero(chart);
  for (int i = 1; i <= chart.n(); ++i) {
    out.dz[static_cast<std::size_t>(i - 1)] = differentiate(f, Coord::z(i));
    out.dzb[static_cast<std::size_t>(i - 1)] = differentiate(f, Coord::zbar(i));
  }
  return out;
}

TwoForm exterior_derivative(const OneForm& w, const CoordinateChart& chart) {
  // d(a_q e_q) = Σ_p ∂_p a_q e_p ∧ e_q
  TwoForm out(chart);
  const int dim = 2 * chart.n();
  for (int q = 0; q < dim; ++q) {
    const Expr a = w.component(chart, q);
    for (int p = 0; p < dim; ++p) {
      if (p == q) continue;
      Expr dp = differentiate(a, coord_at(chart, p));
      if (!is_zero(dp)) out.add(p, q, dp);
    }
  }
  return out;
}

ThreeForm exterior_derivative(const TwoForm& w) {
  const CoordinateChart& chart = w.chart();
  ThreeForm out(chart);
  const int dim = 2 * chart.n();
  for (const auto& [key, c] : w.terms()) {
    for (int r = 0; r < dim; ++r) {
      Expr dr = differentiate(c, coord_at(chart, r));
      if (!is_zero(dr)) out.add({r, key.first, key.second}, dr);
    }
  }
  return out;
}

OneForm interior(const VectorField& x, const TwoForm& w) {
  const CoordinateChart& chart = w.chart();
  OneForm out = OneForm::zero(chart);
  const int dim = 2 * chart.n();
  for (int q = 0; q < dim; ++q) {
    std::vector<Expr> terms;
    for (int p = 0; p < dim; ++p) {
      Expr c = w.coefficient(p, q);
      if (!is_zero(c)) terms.push_back(x.component(chart, p) * c);
    }
    Expr value = terms.empty()      ? Expr()
                 : terms.size() == 1 ? simplify(terms.front())
                                     : simplify(Expr::sum(std::move(terms)));
    if (q < chart.n()) {
      out.dz[static_cast<std::size_t>(q)] = value;
    } else {
      out.dzb[static_cast<std::size_t>(q - chart.n())] = value;
    }
  }
  return out;
}

namespace {

std::string basis_name(const CoordinateChart& chart, int flat) {
  return "d" + to_string(coord_at(chart, flat));
}

}  // namespace

std::string to_text(const OneForm& w, const CoordinateChart& chart) {
  std::string s;
  for (int p = 0; p < 2 * chart.n(); ++p) {
    const Expr c = w.component(chart, p);
    if (bipara::is_zero(c)) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_text(c) + ")*" + basis_name(chart, p);
  }
  return s.empty() ? "0" : s;
}

std::string to_text(const TwoForm& w) {
  std::string s;
  for (const auto& [key, c] : w.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_text(c) + ")*" + basis_name(w.chart(), key.first) + "^" +
         basis_name(w.chart(), key.second);
  }
  return s.empty() ? "0" : s;
}

}  // namespace bipara
