#pragma once

#include "esoclcp/io.hpp"

namespace esoclcp {

/// The 5x5 worked example on L(3, 2) with r = (-55, -26, 50, -19, -26).
io::ProblemFile paper_example();

/// Same T with r = (-1, 47, 13, -32, -45), the offset for which the
/// published solution z* is an exact solution (see README).
io::ProblemFile paper_example_reconstructed();

/// The published solution z* = ((1271/3582, 1072/1051, 1271/3582), (341/1480, 724/2683)).
PointZ<double> paper_solution();

/// The published augmented point (xhat, u, t) with u1 = 341/1480.
MixCpPoint<double> paper_augmented_solution();

} // namespace esoclcp
