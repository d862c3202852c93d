#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "indep/brute.hpp"
#include "indep/report.hpp"
#include "indep/space.hpp"

namespace indep {

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Over a product structure [m_0, ..., m_{f-1}], factor i owns the variables
/// x{i}_{1} .. x{i}_{m_i - 1} (the probabilities of its first m_i - 1
/// outcomes); its last outcome has probability 1 - sum_j x{i}_{j}. Variables
/// are numbered factor by factor.
class ParamPoly {
 public:
  using Exponents = std::vector<unsigned>;

  explicit ParamPoly(std::size_t variables = 0) : variables_(variables) {}
  static ParamPoly constant(std::size_t variables, const Rational& c);
  static ParamPoly variable(std::size_t variables, std::size_t index);

  std::size_t variables() const { return variables_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t total_degree() const;

  ParamPoly& operator+=(const ParamPoly& other);
  ParamPoly& operator-=(const ParamPoly& other);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  friend bool operator==(const ParamPoly&, const ParamPoly&) = default;

  Rational evaluate(std::span<const Rational> point) const;

  /// Human-readable form; `names[i]` labels variable i.
  std::string to_string(std::span<const std::string> names) const;

 private:
  void add_term(const Exponents& e, const Rational& c);

  std::size_t variables_;
  std::map<Exponents, Rational> terms_;
};

/// Number of free parameters: sum of (m_i - 1).
std::size_t parameter_count(std::span<const int> structure);
/// Names "x{i}_{j}" in variable order.
std::vector<std::string> parameter_names(std::span<const int> structure);

/// Probability of `e` as a polynomial in the factor biases.
ParamPoly symbolic_prob(std::span<const int> structure, const Event& e);
ParamPoly symbolic_prob(const SampleSpace& space, const Event& e);

/// symbolic_prob(A∩B) - symbolic_prob(A) * symbolic_prob(B).
ParamPoly independence_defect(std::span<const int> structure, const Event& a, const Event& b);

/// True iff A and B are independent for every choice of factor biases.
bool identically_independent(std::span<const int> structure, const Event& a, const Event& b);
bool identically_independent(const SampleSpace& space, const Event& a, const Event& b);

struct PersistentOptions {
  unsigned threads = 1;
  std::size_t list_cap = 0;
  /// Seed for the random-evaluation cross-check points.
  std::uint64_t seed = 20240101;
  /// Random parameter points evaluated per pair.
  int check_points = 5;
};

/// Counts unordered pairs of nontrivial events whose independence holds
/// identically in the factor biases. Each verdict is cross-checked by exact
/// evaluation at `check_points` random positive bias vectors; disagreements
/// are reported in `cross_check_mismatches`. Classes and signatures are
/// those of the pairs under uniform weights.
CensusReport persistent_pairs(std::span<const int> structure, const PersistentOptions& options = {});

/// Multiplies each weight by (1 + delta_s), with distinct rational deltas
/// |delta_s| < epsilon drawn deterministically from `seed`. Epsilon above
/// 1/2 is clamped to 1/2 so weights stay positive.
SampleSpace perturb(const SampleSpace& space, const Rational& epsilon, std::uint64_t seed);

CensusReport perturbed_census(const SampleSpace& space, const Rational& epsilon, std::uint64_t seed,
                              const CensusOptions& options = {});

}  // namespace indep
