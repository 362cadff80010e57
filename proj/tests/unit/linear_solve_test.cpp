#include <random>

#include "bipara/errors.hpp"
#include "bipara/linear_solve.hpp"
#include "support.hpp"

namespace bipara {
namespace {

using testing::near;

TEST(SolveParaLinear, Identity) {
  const std::vector<ParaComplex> b{{1, 2}, {-0.5, 3}, {0, -1}};
  const auto x = solve_para_linear(ParaMatrix::identity(3), b);
  ASSERT_EQ(x.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(x[i], b[i]);
}

TEST(SolveParaLinear, OffDiagonalJ) {
  ParaMatrix m(2);
  m(0, 1) = pc::j;
  m(1, 0) = pc::j;
  const std::vector<ParaComplex> b{pc::one, pc::j};
  const auto x = solve_para_linear(m, b);
  EXPECT_TRUE(near(x[0], pc::one, 1e-15));
  EXPECT_TRUE(near(x[1], pc::j, 1e-15));
}

TEST(SolveParaLinear, Singular) {
  const std::vector<ParaComplex> b{pc::one, pc::one};
  EXPECT_THROW(solve_para_linear(ParaMatrix(2), b), DegenerateLagrangian);

  // Invertible as a real matrix in neither idempotent component of row 2.
  ParaMatrix m = ParaMatrix::identity(2);
  m(1, 1) = ParaComplex(1, 1);
  EXPECT_THROW(solve_para_linear(m, b), DegenerateLagrangian);
}

TEST(SolveParaLinear, RandomPlugBack) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 3 * 2;
    ParaMatrix m(n);
    for (auto& e : m.entries) e = ParaComplex(d(rng), d(rng));
    for (std::size_t i = 0; i < n; ++i) m(i, i) += ParaComplex(3.0);  // diagonally dominant
    std::vector<ParaComplex> b(n);
    for (auto& e : b) e = ParaComplex(d(rng), d(rng));
    const auto x = solve_para_linear(m, b);
    const auto back = multiply(m, x);
    for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(near(back[i], b[i], 1e-10));
  }
}

}  // namespace
}  // namespace bipara
