#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "indep/analytic.hpp"
#include "indep/space.hpp"

namespace indep {

enum class CensusMode { pairs, tuples, grand };

std::string to_string(CensusMode mode);

/// Tuples of one solution class (uniform spaces only).
struct ClassCount {
  int k = 0;
  std::vector<std::int64_t> sizes;  // nondecreasing
  std::int64_t intersection = 0;
  Signature signature;
  BigInt count = 0;
};

/// Tuples sharing one sorted atom-mass multiset. Atoms are expressed in the
/// space's integer weight units, so atoms[i] / CensusReport::weight_total is
/// the atom probability; for uniform spaces the atoms are cardinalities.
struct SignatureCount {
  int k = 0;
  std::vector<BigInt> atoms;
  BigInt count = 0;
};

struct CensusReport {
  std::int64_t n = 0;
  int k = 2;
  CensusMode mode = CensusMode::pairs;
  std::string engine;
  bool uniform = true;
  BigInt weight_total = 0;
  std::vector<SignatureCount> signatures;  // label order (see label_before)
  std::vector<ClassCount> classes;         // (k, intersection, sizes) order
  BigInt total = 0;
  std::vector<std::vector<Event>> witnesses;

  unsigned workers = 1;
  double elapsed_ms = 0.0;

  // Persistent-independence census only.
  std::optional<std::uint64_t> distinct_events;
  std::optional<std::uint64_t> cross_check_mismatches;

  /// "N1", "N2", ... by position in `signatures`; empty if not found.
  std::string label_of(int k, const std::vector<BigInt>& atoms) const;
  std::string label_of(const ClassCount& cls) const;
};

/// Sorts signatures into label order and classes into canonical order.
void canonicalize(CensusReport& report);

/// Report built from the analytic class tables of the uniform n-point space.
/// `k` is ignored for pairs; for grand every k up to prop1_max_k(n) is used.
CensusReport analytic_report(std::int64_t n, CensusMode mode, int k = 2);

}  // namespace indep
