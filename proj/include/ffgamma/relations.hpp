#pragma once

#include <string>
#include <vector>

#include "ffgamma/brackets.hpp"

namespace ffg {

struct RelationCheck {
  std::string relation;
  std::string instance;
  bool holds = false;
};

// Randomized instances (x, y, n') over f with deg c(x) <= maxDeg and
// 1 <= deg n' <= maxDeg; each instance checks the arithmetic, geometric and
// two-variable reflection and multiplication identities exactly. The basis
// values q^i/(q^l - 1) are drawn with q^l > 2.
std::vector<RelationCheck> bracketRelationSuite(const FieldPtr& f, unsigned instances, unsigned seed,
                                                unsigned maxDeg = 3);

}  // namespace ffg
