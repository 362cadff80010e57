#pragma once

// Action tables of the structure operators on coordinate (co)frames.
//
// Vectors:   F, P (real bi-para-complex pair), J, P+, P-, W+, W-
// Covectors: J*, P*+, P*-, W*+, W*-
//
// On the para-complex frames the tables are extended j-antilinearly:
// T(c·X) = conj(c)·T(X). With that extension J∘J is the identity on vectors
// and covectors, and J = P+ - P- holds termwise.
// F and P act on the real frame and are extended linearly to ∂/∂z, ∂/∂z̄
// through ∂/∂z = (∂/∂x - j ∂/∂y)/2, ∂/∂z̄ = (∂/∂x + j ∂/∂y)/2.

#include <span>
#include <string>
#include <vector>

#include "bipara/para_complex.hpp"

namespace bipara {

enum class Basis {
  d_x,     // ∂/∂x_i
  d_y,     // ∂/∂y_i
  d_z,     // ∂/∂z_i
  d_zbar,  // ∂/∂z̄_i
  dz,      // dz_i
  dzbar,   // dz̄_i
};

constexpr bool is_covector(Basis b) { return b == Basis::dz || b == Basis::dzbar; }

enum class StructureKind {
  F,
  P,
  J,
  Pplus,
  Pminus,
  Wplus,
  Wminus,
  Jstar,
  PstarPlus,
  PstarMinus,
  WstarPlus,
  WstarMinus,
};

constexpr bool is_starred(StructureKind k) {
  return k == StructureKind::Jstar || k == StructureKind::PstarPlus ||
         k == StructureKind::PstarMinus || k == StructureKind::WstarPlus ||
         k == StructureKind::WstarMinus;
}

struct FrameVector {
  Basis basis = Basis::d_z;
  int index = 1;  // 1-based coordinate index
  ParaComplex coefficient = pc::one;

  bool operator==(const FrameVector&) const = default;
};

/// Applies `kind` to a single frame element. `lambda` is the value of the
/// conformal factor and is read only by the W kinds. Throws KindMismatch for
/// vector/covector mismatches and for kinds with no table on `v.basis`.
std::vector<FrameVector> structure_apply(StructureKind kind, const FrameVector& v,
                                         ParaComplex lambda = {});

/// Applies `kind` termwise and combines like basis elements.
std::vector<FrameVector> structure_apply(StructureKind kind, std::span<const FrameVector> vs,
                                         ParaComplex lambda = {});

/// Sums coefficients of identical (basis, index) entries, drops zero entries
/// and orders the result by (index, basis).
std::vector<FrameVector> combine(std::vector<FrameVector> terms);

std::string to_string(StructureKind kind);
std::string to_string(Basis basis);
std::string to_string(const FrameVector& v);

}  // namespace bipara
