// Named reference sequences bundled with the tool.  They serve as worked
// examples for the CLI and as fixed inputs for the test suite.
#pragma once

#include <string>
#include <vector>

#include "fes/core.hpp"

namespace fes {

struct CatalogEntry {
  std::string name;
  std::string summary;
  // False for point sets bundled as counterexamples: no ordering of the
  // points is exceptional.
  bool exceptional_order = true;
  ExcSeq seq;
};

// Names in listing order.  "stretch" and "standard" take a parameter.
std::vector<std::string> catalog_names();

// Throws std::invalid_argument for unknown names.  The parameter n is used
// by "stretch" (n >= 1, default 1) and "standard" (rank, default 3).
CatalogEntry catalog_get(const std::string& name, long long n = 0);

// Maximal exceptional sequence spanning n+2 layers in every direction.
ExcSeq stretch_sequence(long long n);

}  // namespace fes
