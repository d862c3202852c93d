#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "indep/report.hpp"
#include "indep/space.hpp"

namespace indep {

struct CensusOptions {
  /// Admit the empty event and the full space as tuple members.
  bool include_trivial = false;
  /// Keep at most this many witness tuples (lexicographic by event bits).
  std::size_t list_cap = 0;
  /// Worker threads; 0 or 1 runs on the calling thread only.
  unsigned threads = 1;
  /// Uniform spaces only: skip events whose sizes cannot occur in any
  /// analytic solution class, and apply the common-point bound to pairs.
  /// Turn off to run the search as a fully independent oracle.
  bool prune = true;
};

/// Exhaustive census of unordered pairs {A, B}, A < B in bit order.
/// Throws CapabilityError when the space exceeds one machine word.
CensusReport brute_pair_census(const SampleSpace& space, const CensusOptions& options = {});

/// Exhaustive census of unordered mutually independent k-tuples, found by
/// depth-first extension of independent (k-1)-tuples with candidates above
/// the last element. Counters only; witnesses are sampled up to list_cap.
CensusReport brute_tuple_census(const SampleSpace& space, int k, const CensusOptions& options = {});

/// Pairs plus every larger tuple size until no tuples remain (uniform spaces
/// stop at prop1_max_k).
CensusReport brute_grand_census(const SampleSpace& space, const CensusOptions& options = {});

struct VerificationLine {
  int k = 2;
  BigInt brute_total = 0;
  BigInt analytic_total = 0;
  std::size_t classes = 0;
  bool match = true;
};

struct VerificationReport {
  std::int64_t n = 0;
  int k_max = 2;
  std::vector<VerificationLine> lines;
  bool match = true;
  std::string first_mismatch;
};

/// Compares brute and analytic totals and per-class counts on uniform(n)
/// for k = 2..min(k_max, prop1_max_k(n)). The brute side always runs
/// unpruned so it never consults the analytic tables.
VerificationReport verify(std::int64_t n, int k_max, const CensusOptions& options = {});

}  // namespace indep
