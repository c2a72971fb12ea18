#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "esoclcp/io.hpp"

namespace esoclcp {

/// Which solution shape a generated instance is built around.
enum class GenCase { UZero, VZero, General, Random };

/// Parses "i", "ii", "vi" or "random".
GenCase parse_gen_case(const std::string &name);
const char *to_string(GenCase c);

struct GeneratedInstance {
  io::ProblemFile problem;
  /// Known solution, present for every case except Random.
  std::optional<io::SolutionFile> solution;
};

/// Seeded instance with entries of T drawn from [-50, 50] (redrawn until T,
/// A and D are nonsingular) and r chosen so that a sampled complementary
/// pair on L(k, l) solves it.
GeneratedInstance generate_instance(Eigen::Index k, Eigen::Index l, GenCase which, std::uint64_t seed);

} // namespace esoclcp
