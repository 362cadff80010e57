#include "bipara/structure.hpp"

#include <algorithm>
#include <tuple>

#include "bipara/errors.hpp"

namespace bipara {

namespace {

using pc::e_minus;
using pc::e_plus;
using pc::j;

FrameVector term(Basis b, int index, ParaComplex c) { return {b, index, c}; }

[[noreturn]] void mismatch(StructureKind kind, Basis basis) {
  throw KindMismatch(to_string(kind) + " has no action on " + to_string(basis));
}

// Real frame, F and P: F(∂x) = ∂y, F(∂y) = ∂x, P(∂x) = ∂x, P(∂y) = -∂y.
// J acts on the real frame like F.
std::vector<FrameVector> real_action(StructureKind kind, const FrameVector& v) {
  const int i = v.index;
  const ParaComplex c = v.coefficient;
  if (v.basis == Basis::d_x) {
    if (kind == StructureKind::P) return {term(Basis::d_x, i, c)};
    return {term(Basis::d_y, i, c)};
  }
  if (v.basis == Basis::d_y) {
    if (kind == StructureKind::P) return {term(Basis::d_y, i, -c)};
    return {term(Basis::d_x, i, c)};
  }
  // ∂/∂z and ∂/∂z̄ expanded in the real frame, then mapped termwise.
  const ParaComplex sign = v.basis == Basis::d_z ? -pc::one : pc::one;
  FrameVector x_part{Basis::d_x, i, c * ParaComplex(0.5)};
  FrameVector y_part{Basis::d_y, i, c * sign * j * ParaComplex(0.5)};
  auto out = real_action(kind, x_part);
  auto more = real_action(kind, y_part);
  out.insert(out.end(), more.begin(), more.end());
  return combine(std::move(out));
}

}  // namespace

std::vector<FrameVector> structure_apply(StructureKind kind, const FrameVector& v,
                                         ParaComplex lambda) {
  if (is_starred(kind) != is_covector(v.basis)) mismatch(kind, v.basis);

  const bool real_frame = v.basis == Basis::d_x || v.basis == Basis::d_y;
  if (kind == StructureKind::F || kind == StructureKind::P) return real_action(kind, v);
  if (real_frame) {
    if (kind == StructureKind::J) return real_action(kind, v);
    mismatch(kind, v.basis);
  }

  // Para-complex frames: T(c X) = conj(c) T(X).
  const int i = v.index;
  const ParaComplex c = v.coefficient.conj();
  const bool holomorphic = v.basis == Basis::d_z || v.basis == Basis::dz;
  const Basis partner = [&] {
    switch (v.basis) {
      case Basis::d_z: return Basis::d_zbar;
      case Basis::d_zbar: return Basis::d_z;
      case Basis::dz: return Basis::dzbar;
      default: return Basis::dz;
    }
  }();

  ParaComplex factor;
  switch (kind) {
    case StructureKind::J:
    case StructureKind::Jstar:
      // J(∂z) = -j ∂z̄, J(∂z̄) = j ∂z; same table for J* on dz, dz̄.
      factor = j;
      break;
    case StructureKind::Pplus:
    case StructureKind::PstarPlus:
      factor = e_plus;
      break;
    case StructureKind::Pminus:
    case StructureKind::PstarMinus:
      factor = e_minus;
      break;
    case StructureKind::Wplus:
    case StructureKind::WstarPlus:
      factor = e_plus * exp(holomorphic ? lambda : -lambda);
      break;
    case StructureKind::Wminus:
    case StructureKind::WstarMinus:
      factor = e_minus * exp(holomorphic ? lambda : -lambda);
      break;
    default:
      mismatch(kind, v.basis);
  }
  if (holomorphic) factor = -factor;
  return {term(partner, i, factor * c)};
}

std::vector<FrameVector> structure_apply(StructureKind kind, std::span<const FrameVector> vs,
                                         ParaComplex lambda) {
  std::vector<FrameVector> out;
  for (const auto& v : vs) {
    auto part = structure_apply(kind, v, lambda);
    out.insert(out.end(), part.begin(), part.end());
  }
  return combine(std::move(out));
}

std::vector<FrameVector> combine(std::vector<FrameVector> terms) {
  std::sort(terms.begin(), terms.end(), [](const FrameVector& x, const FrameVector& y) {
    return std::tie(x.index, x.basis) < std::tie(y.index, y.basis);
  });
  std::vector<FrameVector> out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().index == t.index && out.back().basis == t.basis) {
      out.back().coefficient += t.coefficient;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const FrameVector& t) { return t.coefficient.is_zero(); });
  return out;
}

std::string to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::F: return "F";
    case StructureKind::P: return "P";
    case StructureKind::J: return "J";
    case StructureKind::Pplus: return "P+";
    case StructureKind::Pminus: return "P-";
    case StructureKind::Wplus: return "W+";
    case StructureKind::Wminus: return "W-";
    case StructureKind::Jstar: return "J*";
    case StructureKind::PstarPlus: return "P*+";
    case StructureKind::PstarMinus: return "P*-";
    case StructureKind::WstarPlus: return "W*+";
    case StructureKind::WstarMinus: return "W*-";
  }
  return "?";
}

std::string to_string(Basis basis) {
  switch (basis) {
    case Basis::d_x: return "d/dx";
    case Basis::d_y: return "d/dy";
    case Basis::d_z: return "d/dz";
    case Basis::d_zbar: return "d/dzb";
    case Basis::dz: return "dz";
    case Basis::dzbar: return "dzb";
  }
  return "?";
}

std::string to_string(const FrameVector& v) {
  return "(" + to_string(v.coefficient) + ") " + to_string(v.basis) + std::to_string(v.index);
}

}  // namespace bipara
