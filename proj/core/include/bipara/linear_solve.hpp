#pragma once

#include <span>
#include <vector>

#include "bipara/para_complex.hpp"

namespace bipara {

/// Row-major square matrix of para-complex entries.
struct ParaMatrix {
  std::size_t size = 0;
  std::vector<ParaComplex> entries;

  explicit ParaMatrix(std::size_t n) : size(n), entries(n * n) {}

  ParaComplex& operator()(std::size_t r, std::size_t c) { return entries[r * size + c]; }
  ParaComplex operator()(std::size_t r, std::size_t c) const { return entries[r * size + c]; }

  static ParaMatrix identity(std::size_t n);
};

/// Pivots smaller than this fraction of their row's largest entry count as zero.
inline constexpr double kPivotTolerance = 1e-12;

/// Solves M·x = b. Para-complex products are componentwise in the idempotent
/// basis, so the system splits into two independent real systems (e⁺ and e⁻
/// parts), each solved by Gaussian elimination with scaled partial pivoting.
/// Throws DegenerateLagrangian if either real system is singular.
std::vector<ParaComplex> solve_para_linear(const ParaMatrix& m, std::span<const ParaComplex> b);

/// M·x.
std::vector<ParaComplex> multiply(const ParaMatrix& m, std::span<const ParaComplex> x);

}  // namespace bipara
