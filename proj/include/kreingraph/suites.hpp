#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace kreingraph {

struct SuiteOptions {
  int trials = 50;
  std::uint64_t seed = 0;
  int j_max = 8;
  double tolerance = 1e-8;
  bool random_attached_potential = false;
};

/// gluing, degree2, glue-points, lengthen, attach, insert-edge, boundary,
/// counting, isoperimetric, resolvent, perturbation.
const std::vector<std::string>& suite_names();

/// Runs one seeded verification suite. The report carries per-trial records
/// and a top-level "passed" flag. Throws BAD_ARGUMENT for unknown names.
nlohmann::json run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace kreingraph
