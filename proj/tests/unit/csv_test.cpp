#include <cmath>
#include <sstream>

#include "bipara/trajectory_csv.hpp"
#include "support.hpp"

namespace bipara {
namespace {

Trajectory sample_trajectory() {
  Trajectory tr;
  tr.samples.push_back(PhaseState{0.0, {ParaComplex(1, 0)}, {ParaComplex(0, 0.25)}});
  tr.samples.push_back(PhaseState{0.1, {ParaComplex(0.995, -0.1)}, {ParaComplex(0.5, 1e-20)}});
  tr.diagnostics.resize(2);
  tr.diagnostics[0].energy = ParaComplex(1, 2);
  tr.diagnostics[1].residual = 3e-9;
  return tr;
}

TEST(Csv, Header) {
  EXPECT_EQ(trajectory_header(1, {}), "t,z1_a,z1_b,zb1_a,zb1_b");
  EXPECT_EQ(trajectory_header(2, {true, true}),
            "t,z1_a,z1_b,z2_a,z2_b,zb1_a,zb1_b,zb2_a,zb2_b,H_a,H_b,residual");
}

TEST(Csv, RowsAndEmptyFields) {
  std::ostringstream out;
  write_trajectory_csv(out, sample_trajectory(), {true, true});
  EXPECT_EQ(out.str(),
            "t,z1_a,z1_b,zb1_a,zb1_b,H_a,H_b,residual\n"
            "0,1,0,0,0.25,1,2,\n"
            "0.1,0.995,-0.1,0.5,1e-20,,,3e-09\n");
}

TEST(Csv, ReadBack) {
  std::ostringstream out;
  write_trajectory_csv(out, sample_trajectory(), {true, true});
  std::istringstream in(out.str());
  const CsvTable t = read_csv(in);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.column("zb1_b"), 4);
  EXPECT_EQ(t.column("nope"), -1);
  EXPECT_EQ(t.rows[1][4], 1e-20);
  EXPECT_TRUE(std::isnan(t.rows[0][7]));
}

TEST(Csv, ReadErrors) {
  std::istringstream ragged("t,a\n0,1\n1\n");
  try {
    read_csv(ragged);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
  std::istringstream junk("t,a\n0,abc\n");
  EXPECT_THROW(read_csv(junk), std::runtime_error);
  std::istringstream empty("");
  EXPECT_THROW(read_csv(empty), std::runtime_error);
}

}  // namespace
}  // namespace bipara
