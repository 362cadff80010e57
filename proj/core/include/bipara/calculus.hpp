#pragma once

#include <vector>

#include "bipara/errors.hpp"
#include "bipara/expr.hpp"

namespace bipara {

/// Coordinate values at which expressions are evaluated. `xi`/`xib` are only
/// needed by expressions that mention the formal velocities.
struct EvalState {
  std::vector<ParaComplex> z;
  std::vector<ParaComplex> zb;
  std::vector<ParaComplex> xi;
  std::vector<ParaComplex> xib;

  ParaComplex value(Coord c) const;
  ParaComplex& value(Coord c);
};

/// Formal partial derivative; z_i and z̄_i are independent. The result is
/// simplified.
Expr differentiate(const Expr& e, Coord var);

/// Evaluation error carrying the text of the subexpression that failed.
template <typename Base>
class EvaluationError : public Base {
 public:
  EvaluationError(const Base& cause, std::string subexpression)
      : Base(std::string(cause.what()) + " in '" + subexpression + "'"),
        subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

/// Recursive evaluation carried out entirely in the idempotent basis, so the
/// two components never mix through rounding.
IdempotentPair evaluate_idempotent(const Expr& e, const EvalState& s);

/// Recursive evaluation. ZeroDivisor / DomainError are rethrown as
/// EvaluationError<ZeroDivisor> / EvaluationError<DomainError> naming the
/// failing subexpression (still catchable as the plain error type).
ParaComplex evaluate(const Expr& e, const EvalState& s);

/// Best-effort normal form: constants folded, sums and products flattened
/// and expanded, like terms and like factors collected, 0/1 absorbed.
/// Evaluates equal to `e` wherever `e` is nonsingular.
Expr simplify(const Expr& e);

/// True when `e` simplifies to the constant 0.
bool is_zero(const Expr& e);

/// Replaces every occurrence of `var` by `value`.
Expr substitute(const Expr& e, Coord var, const Expr& value);

}  // namespace bipara
