#pragma once

// JSON problem files.
//
//   {
//     "n": 1,
//     "kind": "lagrangian",
//     "function": "z1*zb1",
//     "lambda": "0",
//     "initial": {"z": [[1, 0]], "zb": [[0, 0]]},
//     "t0": 0, "t1": 6.283185307179586,
//     "integrator": "rk4", "dt": 0.001,
//     "emit_energy": true
//   }
//
// rk4 takes "dt", rkf45 takes "tol". Every other key is rejected.

#include <istream>
#include <stdexcept>
#include <string>
#include <variant>

#include "bipara/dynamics.hpp"

namespace bipara::cli {

/// Malformed or inconsistent input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { lagrangian, hamiltonian };

struct ProblemFile {
  int n = 1;
  ProblemKind kind = ProblemKind::lagrangian;
  std::string function;
  std::string lambda = "0";
  PhaseState initial;
  IntegratorConfig integrator;
  bool emit_energy = false;
};

/// Throws InputError naming the offending key.
ProblemFile read_problem(std::istream& in);
ProblemFile load_problem(const std::string& path);

/// L or H together with λ, parsed under the file's chart. Parse errors come
/// back as InputError naming the field and the column.
using Problem = std::variant<LagrangianProblem, HamiltonianProblem>;
Problem build_problem(const ProblemFile& f);

}  // namespace bipara::cli
