#include "indep/stability.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "parallel.hpp"

namespace indep {

// ---------------------------------------------------------------------------
// ParamPoly

ParamPoly ParamPoly::constant(std::size_t variables, const Rational& c) {
  ParamPoly p(variables);
  p.add_term(Exponents(variables, 0), c);
  return p;
}

ParamPoly ParamPoly::variable(std::size_t variables, std::size_t index) {
  if (index >= variables) throw ValidationError("variable index out of range");
  ParamPoly p(variables);
  Exponents e(variables, 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

std::size_t ParamPoly::total_degree() const {
  std::size_t degree = 0;
  for (const auto& [e, c] : terms_) {
    degree = std::max<std::size_t>(degree, std::accumulate(e.begin(), e.end(), 0U));
  }
  return degree;
}

void ParamPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& other) {
  if (other.variables_ != variables_) throw ValidationError("polynomials over different variables");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& other) {
  if (other.variables_ != variables_) throw ValidationError("polynomials over different variables");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  if (a.variables_ != b.variables_) throw ValidationError("polynomials over different variables");
  ParamPoly out(a.variables_);
  ParamPoly::Exponents e(a.variables_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Rational ParamPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != variables_) throw ValidationError("evaluation point has wrong dimension");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned p = 0; p < e[i]; ++p) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

std::string ParamPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest degree first reads more naturally; the map is ascending.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    out << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    const bool is_constant = std::all_of(e.begin(), e.end(), [](unsigned p) { return p == 0; });
    bool wrote = false;
    if (magnitude != 1 || is_constant) {
      out << indep::to_string(magnitude);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << '*';
      out << (i < names.size() ? names[i] : "v" + std::to_string(i));
      if (e[i] > 1) out << '^' << e[i];
      wrote = true;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Symbolic probabilities

namespace {

void check_structure(std::span<const int> structure) {
  if (structure.empty()) throw ValidationError("product structure has no factors");
  long long n = 1;
  for (int m : structure) {
    if (m < 2) throw ValidationError("every factor needs at least two outcomes");
    n *= m;
    if (n > kMaxEventOutcomes) {
      throw CapabilityError("product structure exceeds " + std::to_string(kMaxEventOutcomes) +
                            " outcomes");
    }
  }
}

int structure_size(std::span<const int> structure) {
  check_structure(structure);
  return std::accumulate(structure.begin(), structure.end(), 1, std::multiplies<>());
}

void check_event(std::span<const int> structure, const Event& e) {
  if (e.universe() != structure_size(structure)) {
    throw ValidationError("event does not belong to the product space");
  }
}

std::vector<int> coordinates(std::span<const int> structure, int outcome) {
  std::vector<int> coords(structure.size());
  for (std::size_t i = structure.size(); i-- > 0;) {
    coords[i] = outcome % structure[i];
    outcome /= structure[i];
  }
  return coords;
}

std::span<const int> require_structure(const SampleSpace& space) {
  if (!space.product_structure()) throw ValidationError("space has no product structure");
  return space.product_structure()->sizes;
}

}  // namespace

std::size_t parameter_count(std::span<const int> structure) {
  std::size_t count = 0;
  for (int m : structure) count += static_cast<std::size_t>(m - 1);
  return count;
}

std::vector<std::string> parameter_names(std::span<const int> structure) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < structure.size(); ++i) {
    for (int j = 1; j < structure[i]; ++j) {
      names.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  return names;
}

ParamPoly symbolic_prob(std::span<const int> structure, const Event& e) {
  check_event(structure, e);
  const std::size_t vars = parameter_count(structure);

  // Per factor, the polynomial weight of each of its outcomes.
  std::vector<std::vector<ParamPoly>> coordinate_weight(structure.size());
  std::size_t offset = 0;
  for (std::size_t i = 0; i < structure.size(); ++i) {
    ParamPoly last = ParamPoly::constant(vars, Rational(1));
    for (int j = 0; j + 1 < structure[i]; ++j) {
      ParamPoly x = ParamPoly::variable(vars, offset + static_cast<std::size_t>(j));
      last -= x;
      coordinate_weight[i].push_back(std::move(x));
    }
    coordinate_weight[i].push_back(std::move(last));
    offset += static_cast<std::size_t>(structure[i] - 1);
  }

  ParamPoly sum(vars);
  for (int s : e.outcomes()) {
    const auto coords = coordinates(structure, s);
    ParamPoly term = ParamPoly::constant(vars, Rational(1));
    for (std::size_t i = 0; i < structure.size(); ++i) term = term * coordinate_weight[i][coords[i]];
    sum += term;
  }
  return sum;
}

ParamPoly symbolic_prob(const SampleSpace& space, const Event& e) {
  return symbolic_prob(require_structure(space), e);
}

ParamPoly independence_defect(std::span<const int> structure, const Event& a, const Event& b) {
  check_event(structure, a);
  check_event(structure, b);
  return symbolic_prob(structure, a & b) - symbolic_prob(structure, a) * symbolic_prob(structure, b);
}

bool identically_independent(std::span<const int> structure, const Event& a, const Event& b) {
  return independence_defect(structure, a, b).is_zero();
}

bool identically_independent(const SampleSpace& space, const Event& a, const Event& b) {
  return identically_independent(require_structure(space), a, b);
}

// ---------------------------------------------------------------------------
// Persistent pairs

namespace {

using U128 = unsigned __int128;

// Dense coefficient tensors. Per factor the affine basis is {1, x_1, ...,
// x_{m-1}} (index 0 is the constant), so an event probability lives in a
// space of dimension prod m_i = n with integer coefficients. Products of two
// probabilities live in the per-factor quadratic basis {x_j x_j' : j <= j'}
// of dimension m(m+1)/2, with x_0 = 1.
class DenseProbabilities {
 public:
  explicit DenseProbabilities(std::span<const int> structure)
      : structure_(structure.begin(), structure.end()), n_(structure_size(structure)) {
    const std::size_t f = structure_.size();
    quad_size_ = 1;
    for (int m : structure_) quad_size_ *= static_cast<std::size_t>(m * (m + 1) / 2);

    // Outcome s contributes the tensor product of its coordinate vectors.
    outcome_terms_.resize(n_);
    for (int s = 0; s < n_; ++s) {
      const auto coords = coordinates(structure_, s);
      std::vector<std::pair<int, std::int64_t>> terms{{0, 1}};
      for (std::size_t i = 0; i < f; ++i) {
        const int m = structure_[i];
        std::vector<std::pair<int, std::int64_t>> factor;
        if (coords[i] + 1 < m) {
          factor.push_back({coords[i] + 1, 1});
        } else {
          factor.push_back({0, 1});
          for (int j = 1; j < m; ++j) factor.push_back({j, -1});
        }
        std::vector<std::pair<int, std::int64_t>> next;
        for (const auto& [idx, c] : terms) {
          for (const auto& [j, d] : factor) next.push_back({idx * m + j, c * d});
        }
        terms = std::move(next);
      }
      outcome_terms_[s] = std::move(terms);
    }

    linear_to_quad_.resize(n_);
    pair_to_quad_.resize(static_cast<std::size_t>(n_) * n_);
    for (int u = 0; u < n_; ++u) {
      const auto ju = coordinates(structure_, u);
      linear_to_quad_[u] = quad_index(std::vector<int>(f, 0), ju);
      for (int v = 0; v < n_; ++v) {
        pair_to_quad_[static_cast<std::size_t>(u) * n_ + v] = quad_index(ju, coordinates(structure_, v));
      }
    }
  }

  int size() const { return n_; }
  std::size_t quad_size() const { return quad_size_; }

  using Sparse = std::vector<std::pair<int, std::int64_t>>;

  Sparse probability(std::uint64_t bits) const {
    std::vector<std::int64_t> dense(n_, 0);
    for (; bits != 0; bits &= bits - 1) {
      for (const auto& [idx, c] : outcome_terms_[std::countr_zero(bits)]) dense[idx] += c;
    }
    Sparse out;
    for (int i = 0; i < n_; ++i) {
      if (dense[i] != 0) out.push_back({i, dense[i]});
    }
    return out;
  }

  /// Exact test that P(A∩B) - P(A)P(B) is the zero polynomial. `scratch`
  /// must be zero-filled with quad_size() entries and is left zeroed.
  bool defect_vanishes(const Sparse& pa, const Sparse& pb, const Sparse& pab,
                       std::vector<std::int64_t>& scratch, std::vector<int>& touched) const {
    touched.clear();
    for (const auto& [u, c] : pab) {
      const int q = linear_to_quad_[u];
      scratch[q] += c;
      touched.push_back(q);
    }
    for (const auto& [u, cu] : pa) {
      const int* row = pair_to_quad_.data() + static_cast<std::size_t>(u) * n_;
      for (const auto& [v, cv] : pb) {
        scratch[row[v]] -= cu * cv;
        touched.push_back(row[v]);
      }
    }
    bool zero = true;
    for (int q : touched) {
      if (scratch[q] != 0) zero = false;
      scratch[q] = 0;
    }
    return zero;
  }

 private:
  int quad_index(const std::vector<int>& ju, const std::vector<int>& jv) const {
    int index = 0;
    for (std::size_t i = 0; i < structure_.size(); ++i) {
      const int m = structure_[i];
      const int lo = std::min(ju[i], jv[i]);
      const int hi = std::max(ju[i], jv[i]);
      index = index * (m * (m + 1) / 2) + hi * (hi + 1) / 2 + lo;
    }
    return index;
  }

  std::vector<int> structure_;
  int n_;
  std::size_t quad_size_ = 1;
  std::vector<std::vector<std::pair<int, std::int64_t>>> outcome_terms_;
  std::vector<int> linear_to_quad_;
  std::vector<int> pair_to_quad_;
};

// Positive integer bias vectors; outcome weight = product of its coordinate
// weights, so P(A) at the point is weight(A) / total.
struct EvaluationPoint {
  std::vector<U128> outcome_weight;
  std::vector<U128> subset_weight;  // every subset, for small spaces
  U128 total = 1;

  U128 weight(std::uint64_t bits) const {
    if (!subset_weight.empty()) return subset_weight[bits];
    U128 sum = 0;
    for (; bits != 0; bits &= bits - 1) sum += outcome_weight[std::countr_zero(bits)];
    return sum;
  }
};

std::vector<EvaluationPoint> sample_points(std::span<const int> structure, int count,
                                           std::uint64_t seed) {
  // Keep total^2 below 2^124: every factor total gets an equal share of bits.
  int spare = 62;
  for (int m : structure) spare -= std::bit_width(static_cast<unsigned>(m));
  const int bits = std::max(2, spare / static_cast<int>(structure.size()));
  const std::uint64_t range = std::uint64_t{1} << std::min(bits, 40);

  std::mt19937_64 rng(seed);
  const int n = structure_size(structure);
  std::vector<EvaluationPoint> points(count);
  for (auto& point : points) {
    std::vector<std::vector<std::uint64_t>> factor(structure.size());
    for (std::size_t i = 0; i < structure.size(); ++i) {
      std::uint64_t sum = 0;
      for (int j = 0; j < structure[i]; ++j) {
        factor[i].push_back(1 + rng() % range);
        sum += factor[i].back();
      }
      point.total *= sum;
    }
    point.outcome_weight.resize(n);
    for (int s = 0; s < n; ++s) {
      const auto coords = coordinates(structure, s);
      U128 w = 1;
      for (std::size_t i = 0; i < structure.size(); ++i) w *= factor[i][coords[i]];
      point.outcome_weight[s] = w;
    }
    if (n <= 16) {
      point.subset_weight.assign(std::size_t{1} << n, 0);
      for (std::uint64_t b = 1; b < (std::uint64_t{1} << n); ++b) {
        point.subset_weight[b] = point.subset_weight[b & (b - 1)] + point.outcome_weight[std::countr_zero(b)];
      }
    }
  }
  return points;
}

struct PersistentChunk {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::uint64_t mismatches = 0;
};

}  // namespace

CensusReport persistent_pairs(std::span<const int> structure, const PersistentOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int n = structure_size(structure);
  const DenseProbabilities dense(structure);
  const auto points = sample_points(structure, options.check_points, options.seed);
  const std::uint64_t full = Event::full_mask(n);

  std::vector<DenseProbabilities::Sparse> table;
  if (n <= 16) {
    table.resize(full + 1);
    for (std::uint64_t b = 0; b <= full; ++b) table[b] = dense.probability(b);
  }
  auto probability = [&](std::uint64_t bits,
                         DenseProbabilities::Sparse& scratch) -> const DenseProbabilities::Sparse& {
    if (!table.empty()) return table[bits];
    scratch = dense.probability(bits);
    return scratch;
  };

  const std::uint64_t count = full + 1;
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(count, 1024));
  auto results = detail::run_chunks<PersistentChunk>(
      chunks, options.threads, [&](std::size_t c, PersistentChunk& out) {
        const auto [lo, hi] = detail::chunk_range(count, chunks, c);
        std::vector<std::int64_t> scratch(dense.quad_size(), 0);
        std::vector<int> touched;
        DenseProbabilities::Sparse tmp_a, tmp_b, tmp_ab;
        for (std::uint64_t a = std::max<std::uint64_t>(lo, 1); a < hi && a < full; ++a) {
          const auto& pa = probability(a, tmp_a);
          for (std::uint64_t b = a + 1; b < full; ++b) {
            const bool exact = dense.defect_vanishes(pa, probability(b, tmp_b),
                                                     probability(a & b, tmp_ab), scratch, touched);
            bool sampled = true;
            for (const auto& p : points) {
              if (p.weight(a & b) * p.total != p.weight(a) * p.weight(b)) {
                sampled = false;
                break;
              }
            }
            if (exact != sampled) ++out.mismatches;
            if (exact) out.pairs.push_back({a, b});
          }
        }
      });

  CensusReport report;
  report.n = n;
  report.k = 2;
  report.mode = CensusMode::pairs;
  report.engine = "symbolic";
  report.uniform = true;
  report.weight_total = n;
  report.workers = std::max(1U, options.threads);

  std::map<Signature, BigInt> by_signature;
  std::map<std::pair<std::int64_t, std::vector<std::int64_t>>, std::pair<Signature, BigInt>> by_class;
  std::set<std::uint64_t> events;
  std::uint64_t mismatches = 0;
  for (const auto& chunk : results) {
    mismatches += chunk.mismatches;
    for (const auto& [a, b] : chunk.pairs) {
      const std::array<Event, 2> pair{Event(n, a), Event(n, b)};
      Signature sig = atom_cardinalities(n, pair);
      std::sort(sig.begin(), sig.end());
      std::vector<std::int64_t> sizes{pair[0].cardinality(), pair[1].cardinality()};
      std::sort(sizes.begin(), sizes.end());
      by_signature[sig] += 1;
      auto& slot = by_class[{(pair[0] & pair[1]).cardinality(), sizes}];
      slot.first = sig;
      slot.second += 1;
      events.insert(a);
      events.insert(b);
      report.total += 1;
      if (report.witnesses.size() < options.list_cap) report.witnesses.push_back({pair[0], pair[1]});
    }
  }
  for (const auto& [sig, c] : by_signature) {
    report.signatures.push_back(SignatureCount{2, std::vector<BigInt>(sig.begin(), sig.end()), c});
  }
  for (const auto& [key, value] : by_class) {
    report.classes.push_back(ClassCount{2, key.second, key.first, value.first, value.second});
  }
  report.distinct_events = events.size();
  report.cross_check_mismatches = mismatches;
  canonicalize(report);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Perturbation

SampleSpace perturb(const SampleSpace& space, const Rational& epsilon, std::uint64_t seed) {
  if (epsilon <= 0) throw ValidationError("perturbation epsilon must be positive");
  const Rational eps = std::min(epsilon, Rational(1, 2));
  // delta_s = r_s / (den * 2^20) with |r_s| < num * 2^20.
  const BigInt scale = BigInt(1) << 20;
  const BigInt limit = boost::multiprecision::numerator(eps) * scale;
  const BigInt denominator = boost::multiprecision::denominator(eps) * scale;
  const BigInt span = 2 * limit - 1;

  std::mt19937_64 rng(seed);
  std::set<BigInt> used;
  std::vector<Rational> weights;
  weights.reserve(space.size());
  for (int s = 0; s < space.size(); ++s) {
    BigInt r;
    do {
      BigInt raw = (BigInt(rng()) << 64) | BigInt(rng());
      r = raw % span - (limit - 1);
    } while (!used.insert(r).second);
    weights.push_back(space.probabilities()[s] * (Rational(1) + Rational(r, denominator)));
  }
  return SampleSpace::weighted(std::move(weights));
}

CensusReport perturbed_census(const SampleSpace& space, const Rational& epsilon, std::uint64_t seed,
                              const CensusOptions& options) {
  return brute_pair_census(perturb(space, epsilon, seed), options);
}

}  // namespace indep
