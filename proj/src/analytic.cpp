#include "indep/analytic.hpp"

#include <algorithm>

namespace indep {

namespace {

using Wide = __int128;

BigInt factorial(std::int64_t m) {
  BigInt r = 1;
  for (std::int64_t i = 2; i <= m; ++i) r *= i;
  return r;
}

BigInt size_symmetry(const std::vector<std::int64_t>& sorted_sizes) {
  BigInt symmetry = 1;
  for (std::size_t i = 0; i < sorted_sizes.size();) {
    std::size_t j = i;
    while (j < sorted_sizes.size() && sorted_sizes[j] == sorted_sizes[i]) ++j;
    symmetry *= factorial(static_cast<std::int64_t>(j - i));
    i = j;
  }
  return symmetry;
}

// Depth-first search over nondecreasing sizes. `atoms` holds the atom vector
// of the prefix chosen so far; appending an event of size a splits every
// atom c into c*(n-a)/n (outside) and c*a/n (inside), both of which must be
// positive integers for the prefix to be mutually independent.
struct ClassSearch {
  std::int64_t n;
  int k;
  std::vector<SolutionClass> found;

  void extend(std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& atoms) {
    if (static_cast<int>(sizes.size()) == k) {
      emit(sizes, atoms);
      return;
    }
    const std::int64_t first = sizes.empty() ? 1 : sizes.back();
    std::vector<std::int64_t> next(atoms.size() * 2);
    for (std::int64_t a = first; a < n; ++a) {
      if (split(atoms, a, next)) {
        sizes.push_back(a);
        extend(sizes, next);
        sizes.pop_back();
      }
    }
  }

  bool split(const std::vector<std::int64_t>& atoms, std::int64_t a,
             std::vector<std::int64_t>& next) const {
    const std::size_t half = atoms.size();
    for (std::size_t w = 0; w < half; ++w) {
      const Wide inside = static_cast<Wide>(atoms[w]) * a;
      if (inside % n != 0 || inside < n) return false;
      const Wide outside = static_cast<Wide>(atoms[w]) * (n - a);
      if (outside < n) return false;
      next[w] = static_cast<std::int64_t>(outside / n);
      next[w + half] = static_cast<std::int64_t>(inside / n);
    }
    return true;
  }

  void emit(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& atoms) {
    SolutionClass cls;
    cls.n = n;
    cls.k = k;
    cls.sizes = sizes;
    cls.atoms = atoms;
    cls.intersection = atoms.back();
    cls.symmetry = size_symmetry(sizes);
    cls.count = multinomial(n, atoms) / cls.symmetry;
    found.push_back(std::move(cls));
  }
};

}  // namespace

BigInt multinomial(std::int64_t n, std::span<const std::int64_t> parts) {
  std::int64_t sum = 0;
  for (auto p : parts) {
    if (p < 0) throw ValidationError("multinomial part is negative");
    sum += p;
  }
  if (sum != n) {
    throw ValidationError("multinomial parts sum to " + std::to_string(sum) + ", expected " +
                          std::to_string(n));
  }
  BigInt result = 1;
  std::int64_t running = 0;
  for (auto p : parts) {
    for (std::int64_t i = 1; i <= p; ++i) {
      ++running;
      result *= running;
      result /= i;
    }
  }
  return result;
}

std::vector<SolutionClass> tuple_classes(std::int64_t n, int k) {
  if (k < 2) throw ValidationError("tuple size must be at least 2");
  if (n < 1) throw ValidationError("sample space needs at least one outcome");
  ClassSearch search{n, k, {}};
  std::vector<std::int64_t> sizes;
  search.extend(sizes, {n});
  std::stable_sort(search.found.begin(), search.found.end(),
                   [](const SolutionClass& x, const SolutionClass& y) {
                     return x.intersection < y.intersection;
                   });
  return std::move(search.found);
}

std::vector<SolutionClass> pair_classes(std::int64_t n) { return tuple_classes(n, 2); }

Signature pattern_signature(const SolutionClass& cls) {
  Signature sig = cls.atoms;
  std::sort(sig.begin(), sig.end());
  return sig;
}

BigInt total_tuples(std::int64_t n, int k) {
  BigInt total = 0;
  for (const auto& cls : tuple_classes(n, k)) total += cls.count;
  return total;
}

BigInt total_pairs(std::int64_t n) { return total_tuples(n, 2); }

BigInt grand_total(std::int64_t n) {
  if (n < 2) return 0;
  BigInt total = 0;
  const int max_k = prop1_max_k(n);
  for (int k = 2; k <= max_k; ++k) total += total_tuples(n, k);
  return total;
}

Rational prop1_bound(std::int64_t n, int k) {
  if (n < 2) throw ValidationError("bound needs n >= 2");
  if (k < 1) throw ValidationError("bound needs k >= 1");
  return Rational(boost::multiprecision::pow(BigInt(n / 2), static_cast<unsigned>(k)),
                  boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k)));
}

int prop1_max_k(std::int64_t n) {
  if (n < 2) throw ValidationError("bound needs n >= 2");
  const BigInt half = n / 2;
  int best = 1;
  for (int k = 2;; ++k) {
    if (boost::multiprecision::pow(half, static_cast<unsigned>(k)) <
        boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k - 1))) {
      break;
    }
    best = k;
  }
  return best;
}

}  // namespace indep
