#pragma once

#include <string>
#include <vector>

#include "kreingraph/spectrum.hpp"

namespace kreingraph {

/// Surgery families with known interlacing chains. "before" is the original
/// operator and "after" the modified one; for `boundary` before uses the
/// larger boundary set B and after the subset.
enum class Theorem { gluing, degree2, glue_points, lengthen, attach, insert_edge, boundary };

std::string to_string(Theorem theorem);
Theorem parse_theorem(const std::string& name);

struct InterlacingParams {
  int k = 0;                  // gluing: |S| - 1; glue_points: points - 1; boundary: |B| - |B~|
  int k0 = 0;                 // inserted degree-2 vertices
  int attached_vertices = 0;  // V0 of the attached graph
  int paired = 0;             // m, number of glued vertex pairs
  int vertices = 0;           // V of the original graph (gluing positivity check)
};

struct InequalityRecord {
  std::string relation;
  int j = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double violation = 0.0;
  bool ok = true;
};

struct InterlacingReport {
  std::string theorem;
  std::vector<InequalityRecord> records;
  double max_violation = 0.0;
  bool passed = true;
};

/// Acceptance tolerance, 1e-8 unless KREINGRAPH_TOL holds a positive number.
double default_tolerance();

/// Eigenvalue counts (kernel included) each spectrum needs for j <= j_max.
std::pair<int, int> required_counts(Theorem theorem, const InterlacingParams& params, const Spectrum& before,
                                    const Spectrum& after, int j_max);

/// Checks every chain of the theorem for j = 1..j_max. Throws
/// INSUFFICIENT_RANGE when a spectrum holds too few eigenvalues.
InterlacingReport verify_interlacing(const Spectrum& before, const Spectrum& after, Theorem theorem,
                                     const InterlacingParams& params, int j_max, double tolerance);

}  // namespace kreingraph
