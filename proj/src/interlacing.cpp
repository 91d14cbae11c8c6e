#include "kreingraph/interlacing.hpp"

#include <algorithm>
#include <cstdlib>

#include "kreingraph/error.hpp"

namespace kreingraph {

namespace {

enum class Sequence { before_positive, after_positive, before_all, after_all };

struct Term {
  Sequence sequence;
  int shift;
};

struct Inequality {
  Term lhs;
  Term rhs;
};

using Chain = std::vector<Term>;

Term bp(int s) { return {Sequence::before_positive, s}; }
Term ap(int s) { return {Sequence::after_positive, s}; }
Term ba(int s) { return {Sequence::before_all, s}; }
Term aa(int s) { return {Sequence::after_all, s}; }

std::vector<Chain> chains(Theorem theorem, const InterlacingParams& p) {
  const int k = p.k;
  const int k0 = p.k0;
  switch (theorem) {
    case Theorem::gluing:
    case Theorem::boundary:
      return {{ap(0), bp(0), ap(k), bp(k)}, {ba(0), aa(0), ba(k), aa(k)}};
    case Theorem::degree2:
      return {{bp(0), ap(0), bp(k0), ap(k0)}, {aa(0), ba(0), aa(k0), ba(k0)}};
    case Theorem::glue_points:
      return {{ap(0), bp(k0), ap(k + k0), bp(k + 2 * k0)}, {aa(0), ba(k), aa(k + k0), ba(2 * k + k0)}};
    case Theorem::lengthen:
      return {{ap(0), bp(0)}, {aa(0), ba(0)}};
    case Theorem::attach:
      return {{ap(0), bp(0)}, {aa(p.attached_vertices - p.paired), ba(0)}};
    case Theorem::insert_edge:
      return {{ap(0), bp(0)}, {aa(0), ba(0)}};
  }
  return {};
}

std::vector<Inequality> inequalities(Theorem theorem, const InterlacingParams& p) {
  std::vector<Inequality> out;
  for (const auto& chain : chains(theorem, p))
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) out.push_back({chain[i], chain[i + 1]});
  return out;
}

const char* symbol(Sequence s) {
  switch (s) {
    case Sequence::before_positive:
      return "lambda+";
    case Sequence::after_positive:
      return "lambda~+";
    case Sequence::before_all:
      return "lambda";
    case Sequence::after_all:
      return "lambda~";
  }
  return "";
}

std::string label(Term t) {
  return std::string(symbol(t.sequence)) + "[j" + (t.shift > 0 ? "+" + std::to_string(t.shift) : "") + "]";
}

struct Sequences {
  std::vector<double> before_positive, after_positive, before_all, after_all;
  const std::vector<double>& of(Sequence s) const {
    switch (s) {
      case Sequence::before_positive:
        return before_positive;
      case Sequence::after_positive:
        return after_positive;
      case Sequence::before_all:
        return before_all;
      case Sequence::after_all:
        return after_all;
    }
    return before_all;
  }
};

int full_index(Term t, int j, const Spectrum& before, const Spectrum& after) {
  const int index = j + t.shift;
  switch (t.sequence) {
    case Sequence::before_positive:
      return index + before.kernel_dimension();
    case Sequence::after_positive:
      return index + after.kernel_dimension();
    default:
      return index;
  }
}

bool is_before(Sequence s) { return s == Sequence::before_positive || s == Sequence::before_all; }

}  // namespace

std::string to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::gluing:
      return "gluing";
    case Theorem::degree2:
      return "degree2";
    case Theorem::glue_points:
      return "glue-points";
    case Theorem::lengthen:
      return "lengthen";
    case Theorem::attach:
      return "attach";
    case Theorem::insert_edge:
      return "insert-edge";
    case Theorem::boundary:
      return "boundary";
  }
  return "";
}

Theorem parse_theorem(const std::string& name) {
  for (Theorem t : {Theorem::gluing, Theorem::degree2, Theorem::glue_points, Theorem::lengthen, Theorem::attach,
                    Theorem::insert_edge, Theorem::boundary})
    if (to_string(t) == name) return t;
  throw Error("BAD_ARGUMENT", "unknown theorem '" + name + "'");
}

double default_tolerance() {
  if (const char* text = std::getenv("KREINGRAPH_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(text, &end);
    if (end != text && *end == '\0' && value > 0.0) return value;
  }
  return 1e-8;
}

std::pair<int, int> required_counts(Theorem theorem, const InterlacingParams& params, const Spectrum& before,
                                    const Spectrum& after, int j_max) {
  int need_before = 0;
  int need_after = 0;
  for (const auto& ineq : inequalities(theorem, params))
    for (const Term& t : {ineq.lhs, ineq.rhs}) {
      const int n = full_index(t, j_max, before, after);
      (is_before(t.sequence) ? need_before : need_after) =
          std::max(is_before(t.sequence) ? need_before : need_after, n);
    }
  if (theorem == Theorem::gluing) need_after = std::max(need_after, params.vertices - params.k + 1);
  return {need_before, need_after};
}

InterlacingReport verify_interlacing(const Spectrum& before, const Spectrum& after, Theorem theorem,
                                     const InterlacingParams& params, int j_max, double tolerance) {
  const auto [need_before, need_after] = required_counts(theorem, params, before, after, j_max);
  if (before.total() < need_before || after.total() < need_after)
    throw Error("INSUFFICIENT_RANGE", "spectra hold " + std::to_string(before.total()) + " and " +
                                          std::to_string(after.total()) + " eigenvalues, need " +
                                          std::to_string(need_before) + " and " + std::to_string(need_after));
  const std::vector<double> all_before = before.expanded();
  const std::vector<double> all_after = after.expanded();
  InterlacingReport report;
  report.theorem = to_string(theorem);
  auto value = [&](Term t, int j) {
    const int n = full_index(t, j, before, after);
    return (is_before(t.sequence) ? all_before : all_after)[static_cast<std::size_t>(n - 1)];
  };
  for (const auto& ineq : inequalities(theorem, params)) {
    for (int j = 1; j <= j_max; ++j) {
      InequalityRecord rec;
      rec.relation = label(ineq.lhs) + " <= " + label(ineq.rhs);
      rec.j = j;
      rec.lhs = value(ineq.lhs, j);
      rec.rhs = value(ineq.rhs, j);
      rec.violation = std::max(0.0, rec.lhs - rec.rhs);
      rec.ok = rec.violation <= tolerance;
      report.records.push_back(rec);
    }
  }
  if (theorem == Theorem::gluing) {
    InequalityRecord rec;
    const int index = params.vertices - params.k + 1;
    rec.relation = "0 < lambda~[" + std::to_string(index) + "]";
    rec.j = index;
    rec.lhs = 0.0;
    rec.rhs = all_after[static_cast<std::size_t>(index - 1)];
    rec.violation = std::max(0.0, -rec.rhs);
    rec.ok = rec.rhs > tolerance;
    report.records.push_back(rec);
  }
  for (const auto& rec : report.records) {
    report.max_violation = std::max(report.max_violation, rec.violation);
    if (!rec.ok) report.passed = false;
  }
  return report;
}

}  // namespace kreingraph
