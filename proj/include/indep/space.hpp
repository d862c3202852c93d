#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indep/numeric.hpp"

namespace indep {

/// Largest outcome count an Event (one 64-bit word) can address.
inline constexpr int kMaxEventOutcomes = 63;

/// Subset of the outcomes {0, ..., n-1} of a space, one bit per outcome.
class Event {
 public:
  Event() = default;
  /// Throws ValidationError if `bits` has a bit at or above `n`, and
  /// CapabilityError if `n` exceeds kMaxEventOutcomes.
  Event(int n, std::uint64_t bits);

  static Event of(int n, std::span<const int> outcomes);
  static Event of(int n, std::initializer_list<int> outcomes) {
    return of(n, std::span<const int>(outcomes.begin(), outcomes.size()));
  }
  static Event empty(int n) { return Event(n, 0); }
  static Event full(int n) { return Event(n, full_mask(n)); }

  static constexpr std::uint64_t full_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }

  int universe() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  int cardinality() const { return std::popcount(bits_); }
  bool contains(int outcome) const { return (bits_ >> outcome) & 1U; }
  bool nontrivial() const { return bits_ != 0 && bits_ != full_mask(n_); }
  std::vector<int> outcomes() const;

  Event complement() const { return Event(n_, ~bits_ & full_mask(n_), Unchecked{}); }
  Event operator&(const Event& other) const;
  Event operator|(const Event& other) const;

  friend bool operator==(const Event&, const Event&) = default;
  friend auto operator<=>(const Event&, const Event&) = default;

 private:
  struct Unchecked {};
  Event(int n, std::uint64_t bits, Unchecked) : n_(n), bits_(bits) {}

  int n_ = 0;
  std::uint64_t bits_ = 0;
};

/// Mixed-radix coordinates of a product space. Factor 0 is the most
/// significant digit of the outcome index.
struct ProductStructure {
  std::vector<int> sizes;
  std::vector<std::vector<Rational>> weights;  // per factor, normalized

  std::vector<int> coordinates(int outcome) const;
  int outcome(std::span<const int> coords) const;
};

/// Finite probability space with exact rational weights.
///
/// Weights are relative: they are normalized to probabilities on
/// construction, and additionally scaled to the smallest positive integer
/// vector with the same ratios (`integer_weights`), which the counting
/// engines use for cross-multiplied exact comparisons.
class SampleSpace {
 public:
  static SampleSpace uniform(int n);
  static SampleSpace weighted(std::vector<Rational> weights);
  /// Product of independent factors, each a list of >= 2 positive weights.
  static SampleSpace product(const std::vector<std::vector<Rational>>& factors);

  int size() const { return static_cast<int>(probabilities_.size()); }
  bool is_uniform() const { return uniform_; }
  const std::vector<Rational>& probabilities() const { return probabilities_; }
  const std::vector<BigInt>& integer_weights() const { return integer_weights_; }
  const BigInt& integer_total() const { return integer_total_; }
  const std::optional<ProductStructure>& product_structure() const { return structure_; }

  /// Sum of integer weights over the event's outcomes.
  BigInt integer_weight(const Event& e) const;

  friend bool operator==(const SampleSpace& a, const SampleSpace& b) {
    return a.probabilities_ == b.probabilities_;
  }

 private:
  SampleSpace() = default;
  void finish();

  std::vector<Rational> probabilities_;
  std::vector<BigInt> integer_weights_;
  BigInt integer_total_;
  bool uniform_ = true;
  std::optional<ProductStructure> structure_;
};

/// Event whose `coord`-th coordinate lies in `subset`.
Event cylinder_event(const SampleSpace& space, int coord, std::span<const int> subset);
inline Event cylinder_event(const SampleSpace& space, int coord, std::initializer_list<int> subset) {
  return cylinder_event(space, coord, std::span<const int>(subset.begin(), subset.size()));
}

Rational event_prob(const SampleSpace& space, const Event& e);

/// Entry j counts outcomes whose membership pattern is j: bit i of j is set
/// exactly when the outcome lies in events[i].
std::vector<std::int64_t> atom_cardinalities(int n, std::span<const Event> events);
inline std::vector<std::int64_t> atom_cardinalities(const SampleSpace& space,
                                                   std::span<const Event> events) {
  return atom_cardinalities(space.size(), events);
}
std::vector<Rational> atom_weights(const SampleSpace& space, std::span<const Event> events);

/// Weights file: one `INT` or `INT/INT` per line, `#` comment lines and blank
/// lines ignored.
std::vector<Rational> parse_weights(std::istream& in);
std::vector<Rational> load_weights_file(const std::string& path);

}  // namespace indep
