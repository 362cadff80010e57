#include <cmath>

#include "bipara/errors.hpp"
#include "bipara/structure.hpp"
#include "support.hpp"

namespace bipara {
namespace {

using K = StructureKind;

std::vector<FrameVector> apply(K kind, Basis b, ParaComplex lambda = {}) {
  return structure_apply(kind, FrameVector{b, 1, pc::one}, lambda);
}

std::vector<FrameVector> one(Basis b, ParaComplex c) { return {FrameVector{b, 1, c}}; }

TEST(Structure, RealFrame) {
  EXPECT_EQ(apply(K::J, Basis::d_x), one(Basis::d_y, pc::one));
  EXPECT_EQ(apply(K::J, Basis::d_y), one(Basis::d_x, pc::one));
  EXPECT_EQ(apply(K::P, Basis::d_x), one(Basis::d_x, pc::one));
  EXPECT_EQ(apply(K::P, Basis::d_y), one(Basis::d_y, -pc::one));
}

TEST(Structure, ParaFrame) {
  EXPECT_EQ(apply(K::J, Basis::d_z), one(Basis::d_zbar, -pc::j));
  EXPECT_EQ(apply(K::J, Basis::d_zbar), one(Basis::d_z, pc::j));
  EXPECT_EQ(apply(K::Jstar, Basis::dz), one(Basis::dzbar, -pc::j));
}

TEST(Structure, ConformalTables) {
  const ParaComplex c(0.5);
  const double ec = std::exp(0.5);
  const auto wm = apply(K::Wminus, Basis::d_z, c);
  ASSERT_EQ(wm.size(), 1u);
  EXPECT_EQ(wm[0].basis, Basis::d_zbar);
  EXPECT_TRUE(testing::near(wm[0].coefficient, -pc::e_minus * ParaComplex(ec), 1e-15));

  const auto wp = apply(K::Wplus, Basis::d_zbar, c);
  ASSERT_EQ(wp.size(), 1u);
  EXPECT_EQ(wp[0].basis, Basis::d_z);
  EXPECT_TRUE(testing::near(wp[0].coefficient, pc::e_plus * ParaComplex(1.0 / ec), 1e-15));
}

TEST(Structure, Involutions) {
  for (Basis b : {Basis::d_z, Basis::d_zbar, Basis::d_x, Basis::d_y}) {
    const auto once = apply(K::J, b);
    EXPECT_EQ(structure_apply(K::J, once), one(b, pc::one));
  }
  for (Basis b : {Basis::dz, Basis::dzbar}) {
    EXPECT_EQ(structure_apply(K::Jstar, apply(K::Jstar, b)), one(b, pc::one));
  }
}

TEST(Structure, JIsPDifference) {
  for (Basis b : {Basis::d_z, Basis::d_zbar}) {
    auto terms = apply(K::Pplus, b);
    for (auto v : apply(K::Pminus, b)) {
      v.coefficient = -v.coefficient;
      terms.push_back(v);
    }
    EXPECT_EQ(combine(terms), apply(K::J, b));
  }
}

TEST(Structure, WAtZeroIsP) {
  for (Basis b : {Basis::d_z, Basis::d_zbar}) {
    EXPECT_EQ(apply(K::Wplus, b), apply(K::Pplus, b));
    EXPECT_EQ(apply(K::Wminus, b), apply(K::Pminus, b));
  }
  for (Basis b : {Basis::dz, Basis::dzbar}) {
    EXPECT_EQ(apply(K::WstarPlus, b), apply(K::PstarPlus, b));
    EXPECT_EQ(apply(K::WstarMinus, b), apply(K::PstarMinus, b));
  }
}

TEST(Structure, KindMismatch) {
  EXPECT_THROW(apply(K::J, Basis::dz), KindMismatch);
  EXPECT_THROW(apply(K::Jstar, Basis::d_z), KindMismatch);
  EXPECT_THROW(apply(K::Wplus, Basis::dzbar), KindMismatch);
}

TEST(Structure, Antilinear) {
  const FrameVector v{Basis::d_z, 1, ParaComplex(2, 3)};
  const auto got = structure_apply(K::J, v);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].coefficient, ParaComplex(2, -3) * -pc::j);
}

}  // namespace
}  // namespace bipara
