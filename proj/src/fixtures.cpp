#include "esoclcp/fixtures.hpp"

namespace esoclcp {

namespace {

Matrix<double> example_matrix() {
  Matrix<double> T(5, 5);
  T << 26, 15, 3, 51, -42,   //
      -7, -39, -16, -17, 18, //
      32, 23, 40, -38, 46,   //
      6, -22, -28, -17, 27,  //
      -38, -25, 24, 47, -16;
  return T;
}

} // namespace

io::ProblemFile paper_example() {
  io::ProblemFile f;
  f.k = 3;
  f.l = 2;
  f.T = example_matrix();
  f.r.resize(5);
  f.r << -55, -26, 50, -19, -26;
  f.comment = "worked example on L(3,2), data as published";
  return f;
}

io::ProblemFile paper_example_reconstructed() {
  io::ProblemFile f = paper_example();
  f.r << -1, 47, 13, -32, -45;
  f.comment = "worked example on L(3,2), r reconstructed from the published solution";
  return f;
}

PointZ<double> paper_solution() {
  Vector<double> x(3), u(2);
  x << 1271.0 / 3582.0, 1072.0 / 1051.0, 1271.0 / 3582.0;
  u << 341.0 / 1480.0, 724.0 / 2683.0;
  return {x, u};
}

MixCpPoint<double> paper_augmented_solution() {
  Vector<double> xhat(3), u(2);
  xhat << 0.0, 439.0 / 660.0, 0.0;
  u << 341.0 / 1480.0, 724.0 / 2683.0;
  return {xhat, u, 1271.0 / 3582.0};
}

} // namespace esoclcp
