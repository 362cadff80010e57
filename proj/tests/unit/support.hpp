#pragma once

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "bipara/calculus.hpp"
#include "bipara/text.hpp"

namespace bipara::testing {

inline ::testing::AssertionResult near(ParaComplex got, ParaComplex want, double tol) {
  const double d = norm_max(got - want);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure()
         << "got " << got << ", want " << want << " (|diff| = " << d << ", tol " << tol << ")";
}

inline EvalState state(std::vector<ParaComplex> z, std::vector<ParaComplex> zb) {
  return {std::move(z), std::move(zb), {}, {}};
}

/// Random state with the formal velocities filled as well.
inline EvalState random_state(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  EvalState s;
  for (int i = 0; i < n; ++i) {
    s.z.emplace_back(d(rng), d(rng));
    s.zb.emplace_back(d(rng), d(rng));
    s.xi.emplace_back(d(rng), d(rng));
    s.xib.emplace_back(d(rng), d(rng));
  }
  return s;
}

/// a and b evaluate equal at a handful of random states.
inline ::testing::AssertionResult equivalent(const Expr& a, const Expr& b, int n,
                                             double tol = 1e-12) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 8; ++k) {
    const EvalState s = random_state(rng, n);
    const ParaComplex x = evaluate(a, s);
    const ParaComplex y = evaluate(b, s);
    if (norm_max(x - y) > tol * std::max(1.0, norm_max(y))) {
      return ::testing::AssertionFailure()
             << to_text(a) << " = " << x << " but " << to_text(b) << " = " << y;
    }
  }
  return ::testing::AssertionSuccess();
}

}  // namespace bipara::testing
