#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kreingraph/conditions.hpp"
#include "kreingraph/graph.hpp"

namespace kreingraph {

struct SpectralValue {
  double lambda = 0.0;
  int multiplicity = 1;
};

/// Eigenvalues in increasing order. A kernel, when present, is the first
/// pair with lambda exactly 0.
struct Spectrum {
  std::vector<SpectralValue> pairs;
  double certified_up_to = 0.0;
  ConditionSpec condition;

  /// Eigenvalues repeated by multiplicity, kernel included.
  std::vector<double> expanded() const;
  /// Positive eigenvalues repeated by multiplicity.
  std::vector<double> positive() const;
  int kernel_dimension() const;
  int total() const;
};

/// All eigenvalues in [0, lambda_max]. Throws SCAN_INCOMPLETE when the scan
/// cannot be certified and NEGATIVE_SPECTRUM when a custom coupling produces
/// negative eigenvalues.
Spectrum eigenvalues(const MetricGraph& graph, const ConditionSpec& conditions, double lambda_max);

/// Spectrum certified far enough to contain at least n eigenvalues
/// (kernel included).
Spectrum eigenvalues_count(const MetricGraph& graph, const ConditionSpec& conditions, int n);

/// Upper end of a scan guaranteed to contain n eigenvalues.
double lambda_max_for_count(const MetricGraph& graph, int n);

int kernel_dimension(const MetricGraph& graph, const ConditionSpec& conditions);

/// N(lambda): eigenvalues <= lambda with multiplicity, kernel included.
int counting_function(const MetricGraph& graph, const ConditionSpec& conditions, double lambda);
int count_eigenvalues(const Spectrum& spectrum, double lambda);

/// Number of eigenvalues strictly below lambda from the Dirichlet count and the
/// inertia of Lambda(lambda) - C. lambda must avoid edge Dirichlet poles.
int index_count(const MetricGraph& graph, const ConditionSpec& conditions, double lambda);

/// (l sqrt(lambda) / pi - E, l sqrt(lambda) / pi + V). Throws POTENTIAL_NOT_ZERO.
std::pair<double, double> weyl_bounds(const MetricGraph& graph, double lambda);

/// "lambda,multiplicity" CSV.
std::string spectrum_csv(const Spectrum& spectrum);

}  // namespace kreingraph
