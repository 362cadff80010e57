#include "bipara/linear_solve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bipara/errors.hpp"

namespace bipara {

ParaMatrix ParaMatrix::identity(std::size_t n) {
  ParaMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = pc::one;
  return m;
}

namespace {

// Solves a dense real system in place; `a` is row-major n×n.
void solve_real(std::vector<double> a, std::vector<double>& x, std::size_t n, const char* part) {
  std::vector<double> scale(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) scale[r] = std::max(scale[r], std::abs(a[r * n + c]));
    if (scale[r] == 0.0) {
      throw DegenerateLagrangian(std::string("velocity system is singular (") + part +
                                 " component, row " + std::to_string(r + 1) + " vanishes)");
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = -1.0;
    for (std::size_t r = k; r < n; ++r) {
      const double rel = std::abs(a[r * n + k]) / scale[r];
      if (rel > best) {
        best = rel;
        pivot = r;
      }
    }
    if (!(best >= kPivotTolerance)) {
      throw DegenerateLagrangian(std::string("velocity system is singular (") + part +
                                 " component, pivot " + std::to_string(k + 1) + ")");
    }
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[pivot * n + c]);
      std::swap(x[k], x[pivot]);
      std::swap(scale[k], scale[pivot]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a[r * n + k] / a[k * n + k];
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
      x[r] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double acc = x[k];
    for (std::size_t c = k + 1; c < n; ++c) acc -= a[k * n + c] * x[c];
    x[k] = acc / a[k * n + k];
  }
}

}  // namespace

std::vector<ParaComplex> solve_para_linear(const ParaMatrix& m, std::span<const ParaComplex> b) {
  const std::size_t n = m.size;
  if (b.size() != n) throw std::invalid_argument("solve_para_linear: size mismatch");

  std::vector<double> mu(n * n), mv(n * n), xu(n), xv(n);
  for (std::size_t i = 0; i < n * n; ++i) {
    const auto p = m.entries[i].idempotent();
    mu[i] = p.u;
    mv[i] = p.v;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = b[i].idempotent();
    xu[i] = p.u;
    xv[i] = p.v;
  }
  solve_real(std::move(mu), xu, n, "e+");
  solve_real(std::move(mv), xv, n, "e-");

  std::vector<ParaComplex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = ParaComplex::from_idempotent({xu[i], xv[i]});
  return x;
}

std::vector<ParaComplex> multiply(const ParaMatrix& m, std::span<const ParaComplex> x) {
  std::vector<ParaComplex> out(m.size);
  for (std::size_t r = 0; r < m.size; ++r) {
    for (std::size_t c = 0; c < m.size; ++c) out[r] += m(r, c) * x[c];
  }
  return out;
}

}  // namespace bipara
