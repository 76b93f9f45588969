#pragma once

// Named Poisson structures shared by the tests and the command-line tool.

#include <string>
#include <vector>

#include "poisskit/multivec.hpp"

namespace poisskit {

struct Fixture {
  std::string name;
  std::string summary;
  MultiVec pi;
};

std::vector<std::string> fixture_names();
/// Throws DomainError for an unknown name.
Fixture fixture(const std::string& name);

/// π = Σ ∂p_i ^ ∂q_i on the chart (q, p) for n = 1, (q1..qn, p1..pn) otherwise.
MultiVec canonical_bivector(std::size_t n);

}  // namespace poisskit
