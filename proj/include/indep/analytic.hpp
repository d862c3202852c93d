#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "indep/numeric.hpp"

namespace indep {

/// Sorted (ascending) multiset of atom cardinalities of a tuple of events.
/// Invariant under permuting the events and under complementing any of them.
using Signature = std::vector<std::int64_t>;

/// One family of mutually independent k-tuples in the uniform n-point space,
/// fixed by the sorted event sizes. All members are related by relabeling
/// outcomes.
///
/// `atoms` uses the same index convention as atom_cardinalities (bit i of
/// the index means "inside event i", events taken in `sizes` order). Every
/// atom is forced by mutual independence:
///   atoms[w] * n^(k-1) = prod_i (bit i of w ? sizes[i] : n - sizes[i]).
/// `count` is the number of unordered tuples of distinct events in the
/// class: multinomial(n; atoms) divided by `symmetry`, the product of
/// factorials of the multiplicities of equal sizes.
struct SolutionClass {
  std::int64_t n = 0;
  int k = 0;
  std::vector<std::int64_t> sizes;
  std::vector<std::int64_t> atoms;
  std::int64_t intersection = 0;
  BigInt symmetry = 1;
  BigInt count = 0;

  friend bool operator==(const SolutionClass&, const SolutionClass&) = default;
};

/// n! / prod(parts!). Throws ValidationError if parts do not sum to n.
BigInt multinomial(std::int64_t n, std::span<const std::int64_t> parts);

/// Classes of independent pairs, ordered by intersection then sizes.
std::vector<SolutionClass> pair_classes(std::int64_t n);

/// Classes of mutually independent k-tuples of nontrivial events, ordered by
/// intersection then sizes (lexicographic).
std::vector<SolutionClass> tuple_classes(std::int64_t n, int k);

Signature pattern_signature(const SolutionClass& cls);

BigInt total_pairs(std::int64_t n);
BigInt total_tuples(std::int64_t n, int k);
/// Independent tuples of every size k >= 2, pairs included.
BigInt grand_total(std::int64_t n);

/// (floor(n/2)/n)^k, the largest possible P(A_1 ∩ ... ∩ A_k) for k
/// independent nontrivial events in the uniform n-point space.
Rational prop1_bound(std::int64_t n, int k);

/// Largest k admitting a common point (floor(n/2)^k >= n^(k-1)); 1 when no
/// k >= 2 qualifies.
int prop1_max_k(std::int64_t n);

/// Orders signatures for labeling N1, N2, ...: by tuple size, then smallest
/// atom, then largest atoms first. At n = 12 this yields
/// N1=[1,2,3,6], N2=[1,1,5,5], N3=[2,2,4,4], N4=[3,3,3,3], N5=[1,1,1,1,2,2,2,2].
template <class T>
bool label_before(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.empty()) return false;
  if (a.front() != b.front()) return a.front() < b.front();
  return std::lexicographical_compare(b.rbegin(), b.rend(), a.rbegin(), a.rend());
}

}  // namespace indep
