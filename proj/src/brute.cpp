#include "indep/brute.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <set>

#include "parallel.hpp"

namespace indep {

namespace {

using U128 = unsigned __int128;
using Clock = std::chrono::steady_clock;

BigInt to_big(const BigInt& x) { return x; }
BigInt to_big(U128 x) { return to_bigint(x); }

template <class Acc>
Acc from_big(const BigInt& x) {
  if constexpr (std::is_same_v<Acc, BigInt>) {
    return x;
  } else {
    const BigInt mask = (BigInt(1) << 64) - 1;
    const auto hi = static_cast<std::uint64_t>(x >> 64);
    const auto lo = static_cast<std::uint64_t>(x & mask);
    return (static_cast<U128>(hi) << 64) | lo;
  }
}

// Integer event weights of a space. Uniform spaces use popcount; small
// weighted spaces precompute every subset sum.
template <class Acc>
struct WeightTable {
  int n = 0;
  bool uniform = true;
  std::uint64_t full = 0;
  std::vector<Acc> outcome;
  std::vector<Acc> subset;
  std::vector<Acc> total_pow;  // total^j

  WeightTable(const SampleSpace& space, int max_power)
      : n(space.size()), uniform(space.is_uniform()), full(Event::full_mask(space.size())) {
    for (const auto& w : space.integer_weights()) outcome.push_back(from_big<Acc>(w));
    const Acc total = from_big<Acc>(space.integer_total());
    total_pow.push_back(Acc(1));
    for (int j = 1; j <= max_power; ++j) total_pow.push_back(total_pow.back() * total);
    if (!uniform && n <= 16) {
      subset.assign(std::size_t{1} << n, Acc(0));
      for (std::uint64_t b = 1; b <= full; ++b) {
        subset[b] = subset[b & (b - 1)] + outcome[std::countr_zero(b)];
      }
    }
  }

  Acc operator()(std::uint64_t bits) const {
    if (uniform) return Acc(static_cast<unsigned>(std::popcount(bits)));
    if (!subset.empty()) return subset[bits];
    Acc sum(0);
    for (; bits != 0; bits &= bits - 1) sum += outcome[std::countr_zero(bits)];
    return sum;
  }
};

// Per-chunk counters keyed by (signature, class). The number of distinct
// keys is tiny, so a flat vector with linear search beats any map here.
template <class Acc>
struct Tally {
  struct Entry {
    int k;
    std::vector<Acc> atoms;
    std::vector<std::int64_t> sizes;
    std::int64_t intersection;
    std::uint64_t count;
  };
  std::vector<Entry> entries;
  std::vector<std::vector<Event>> witnesses;

  void add(int k, const std::vector<Acc>& atoms, const std::vector<std::int64_t>& sizes,
           std::int64_t intersection) {
    for (auto& e : entries) {
      if (e.intersection == intersection && e.sizes == sizes && e.atoms == atoms) {
        ++e.count;
        return;
      }
    }
    entries.push_back(Entry{k, atoms, sizes, intersection, 1});
  }
};

template <class Acc>
void merge_into(CensusReport& report, std::vector<Tally<Acc>>& chunks, std::size_t list_cap) {
  std::map<std::pair<int, std::vector<BigInt>>, BigInt> by_signature;
  std::map<std::tuple<int, std::int64_t, std::vector<std::int64_t>>, std::pair<Signature, BigInt>>
      by_class;
  for (auto& chunk : chunks) {
    for (const auto& e : chunk.entries) {
      std::vector<BigInt> atoms;
      for (const auto& a : e.atoms) atoms.push_back(to_big(a));
      by_signature[{e.k, atoms}] += e.count;
      report.total += e.count;
      if (report.uniform) {
        auto& slot = by_class[{e.k, e.intersection, e.sizes}];
        slot.first.clear();
        for (const auto& a : atoms) slot.first.push_back(static_cast<std::int64_t>(a));
        slot.second += e.count;
      }
    }
    for (auto& w : chunk.witnesses) {
      if (report.witnesses.size() >= list_cap) break;
      report.witnesses.push_back(std::move(w));
    }
  }
  for (auto& [key, count] : by_signature) {
    report.signatures.push_back(SignatureCount{key.first, key.second, count});
  }
  for (auto& [key, value] : by_class) {
    report.classes.push_back(
        ClassCount{std::get<0>(key), std::get<2>(key), std::get<1>(key), value.first, value.second});
  }
}

void check_space(const SampleSpace& space) {
  if (space.size() > kMaxEventOutcomes) {
    throw CapabilityError("brute force supports at most " + std::to_string(kMaxEventOutcomes) +
                          " outcomes, got " + std::to_string(space.size()));
  }
}

CensusReport empty_report(const SampleSpace& space, CensusMode mode, int k, unsigned threads) {
  CensusReport report;
  report.n = space.size();
  report.k = k;
  report.mode = mode;
  report.engine = "brute";
  report.uniform = space.is_uniform();
  report.weight_total = space.integer_total();
  report.workers = std::max(1U, threads);
  return report;
}

// True when total^(power+1) fits in 128 bits.
bool fits_wide(const SampleSpace& space, int power) {
  const auto bits = static_cast<int>(boost::multiprecision::msb(space.integer_total())) + 1;
  return bits * (power + 1) < 127;
}

template <class Acc>
CensusReport pair_census(const SampleSpace& space, const CensusOptions& options) {
  const auto start = Clock::now();
  const WeightTable<Acc> weight(space, 2);
  const int n = space.size();
  const std::uint64_t full = weight.full;
  const Acc total = weight.total_pow[1];
  const bool trivial = options.include_trivial;
  // Two nontrivial independent events in a uniform space share at least one
  // point, and so does every complement pair: min(a, n-a) * floor(n/2) >= n.
  const bool bound_prune = options.prune && weight.uniform && !trivial;

  const std::uint64_t count = full + 1;
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(count, 1024));

  auto tallies = detail::run_chunks<Tally<Acc>>(chunks, options.threads, [&](std::size_t c,
                                                                            Tally<Acc>& tally) {
    const auto [lo, hi] = detail::chunk_range(count, chunks, c);
    std::vector<Acc> atoms(4);
    std::vector<std::int64_t> sizes(2);
    for (std::uint64_t a = lo; a < hi; ++a) {
      if (!trivial && (a == 0 || a == full)) continue;
      if (bound_prune) {
        const int ca = std::popcount(a);
        if (static_cast<std::int64_t>(std::min(ca, n - ca)) * (n / 2) < n) continue;
      }
      const Acc wa = weight(a);
      const std::uint64_t last = trivial ? full : full - 1;
      for (std::uint64_t b = a + 1; b <= last; ++b) {
        const std::uint64_t both = a & b;
        const Acc wboth = weight(both);
        const Acc wb = weight(b);
        if (wboth * total != wa * wb) continue;

        atoms[0] = total - wa - wb + wboth;
        atoms[1] = wa - wboth;
        atoms[2] = wb - wboth;
        atoms[3] = wboth;
        std::sort(atoms.begin(), atoms.end());
        if (weight.uniform) {
          sizes[0] = std::popcount(a);
          sizes[1] = std::popcount(b);
          if (sizes[0] > sizes[1]) std::swap(sizes[0], sizes[1]);
          tally.add(2, atoms, sizes, std::popcount(both));
        } else {
          tally.add(2, atoms, {}, 0);
        }
        if (tally.witnesses.size() < options.list_cap) {
          tally.witnesses.push_back({Event(n, a), Event(n, b)});
        }
      }
    }
  });

  CensusReport report = empty_report(space, CensusMode::pairs, 2, options.threads);
  merge_into(report, tallies, options.list_cap);
  canonicalize(report);
  report.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

// Size filters derived from the analytic class table (uniform spaces).
struct SizeFilter {
  bool active = false;
  std::vector<bool> single;
  std::vector<std::vector<bool>> pair;
  std::set<std::vector<std::int64_t>> multisets;

  SizeFilter(int n, int k, bool enabled) : active(enabled) {
    if (!active) return;
    single.assign(n + 1, false);
    pair.assign(n + 1, std::vector<bool>(n + 1, false));
    for (const auto& cls : tuple_classes(n, k)) {
      for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
        std::vector<std::int64_t> sub;
        for (int i = 0; i < k; ++i) {
          if ((mask >> i) & 1U) sub.push_back(cls.sizes[i]);
        }
        if (sub.size() == 1) single[sub[0]] = true;
        if (sub.size() == 2) pair[sub[0]][sub[1]] = pair[sub[1]][sub[0]] = true;
        multisets.insert(std::move(sub));
      }
    }
  }

  bool allows(std::vector<std::int64_t> sizes) const {
    std::sort(sizes.begin(), sizes.end());
    return multisets.contains(sizes);
  }
};

template <class Acc>
class TupleSearch {
 public:
  TupleSearch(const SampleSpace& space, int k, const CensusOptions& options)
      : space_(space),
        k_(k),
        options_(options),
        weight_(space, k),
        filter_(space.size(), k, options.prune && space.is_uniform() && !options.include_trivial) {}

  CensusReport run() {
    const auto start = Clock::now();
    collect_events();
    build_adjacency();

    const std::size_t chunks = std::min<std::size_t>(std::max<std::size_t>(events_.size(), 1), 1024);
    auto tallies = detail::run_chunks<Tally<Acc>>(
        chunks, options_.threads, [&](std::size_t c, Tally<Acc>& tally) {
          const auto [lo, hi] = detail::chunk_range(events_.size(), chunks, c);
          Worker worker(*this, tally);
          for (std::uint64_t i = lo; i < hi; ++i) worker.start(static_cast<std::uint32_t>(i));
        });

    CensusReport report = empty_report(space_, CensusMode::tuples, k_, options_.threads);
    merge_into(report, tallies, options_.list_cap);
    canonicalize(report);
    report.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return report;
  }

 private:
  struct Worker {
    const TupleSearch& search;
    Tally<Acc>& tally;
    std::vector<std::uint64_t> chosen;
    std::vector<std::int64_t> sizes;
    std::vector<std::uint64_t> common;  // intersection per subset mask of chosen
    std::vector<Acc> product;           // weight product per subset mask
    std::vector<std::vector<std::uint32_t>> candidates;
    std::vector<Acc> atoms;
    std::vector<std::int64_t> sorted_sizes;

    Worker(const TupleSearch& s, Tally<Acc>& t)
        : search(s),
          tally(t),
          common(std::size_t{1} << s.k_),
          product(std::size_t{1} << s.k_),
          candidates(s.k_ + 1),
          atoms(std::size_t{1} << s.k_) {
      common[0] = s.weight_.full;
      product[0] = Acc(1);
    }

    void start(std::uint32_t first) {
      const std::uint64_t bits = search.events_[first];
      if (search.filter_.active && !search.filter_.single[std::popcount(bits)]) return;
      push(bits);
      candidates[1].assign(search.neighbors_begin(first), search.neighbors_end(first));
      descend(1);
      pop();
    }

    // `depth` events are chosen; candidates[depth] holds those independent
    // of every chosen event pairwise and above the last one.
    void descend(int depth) {
      const auto& cand = candidates[depth];
      for (std::size_t p = 0; p < cand.size(); ++p) {
        const std::uint32_t idx = cand[p];
        const std::uint64_t bits = search.events_[idx];
        if (!higher_order_ok(depth, bits)) continue;
        if (depth + 1 < search.k_ && depth >= 2 && search.filter_.active) {
          auto grown = sizes;
          grown.push_back(std::popcount(bits));
          if (!search.filter_.allows(std::move(grown))) continue;
        }
        push(bits);
        if (depth + 1 == search.k_) {
          record();
        } else {
          auto& next = candidates[depth + 1];
          next.clear();
          std::set_intersection(cand.begin() + static_cast<std::ptrdiff_t>(p) + 1, cand.end(),
                                search.neighbors_begin(idx), search.neighbors_end(idx),
                                std::back_inserter(next));
          descend(depth + 1);
        }
        pop();
      }
    }

    // Product rule for every subset of size >= 3 that contains the new
    // event; pairs are guaranteed by the adjacency lists.
    bool higher_order_ok(int depth, std::uint64_t bits) const {
      const Acc w = search.weight_(bits);
      for (std::uint32_t mask = 1; mask < (1U << depth); ++mask) {
        const int size = std::popcount(mask);
        if (size < 2) continue;
        const Acc lhs = search.weight_(common[mask] & bits) * search.weight_.total_pow[size];
        if (lhs != product[mask] * w) return false;
      }
      return true;
    }

    void push(std::uint64_t bits) {
      const auto depth = static_cast<std::uint32_t>(chosen.size());
      const Acc w = search.weight_(bits);
      for (std::uint32_t mask = 0; mask < (1U << depth); ++mask) {
        common[mask | (1U << depth)] = common[mask] & bits;
        product[mask | (1U << depth)] = product[mask] * w;
      }
      chosen.push_back(bits);
      sizes.push_back(std::popcount(bits));
    }

    void pop() {
      chosen.pop_back();
      sizes.pop_back();
    }

    void record() {
      const std::uint64_t full = search.weight_.full;
      for (std::size_t w = 0; w < atoms.size(); ++w) {
        std::uint64_t cell = full;
        for (std::size_t i = 0; i < chosen.size(); ++i) {
          cell &= ((w >> i) & 1U) ? chosen[i] : ~chosen[i];
        }
        atoms[w] = search.weight_(cell & full);
      }
      std::sort(atoms.begin(), atoms.end());
      if (search.weight_.uniform) {
        sorted_sizes = sizes;
        std::sort(sorted_sizes.begin(), sorted_sizes.end());
        tally.add(search.k_, atoms, sorted_sizes,
                  std::popcount(common[(std::size_t{1} << search.k_) - 1]));
      } else {
        tally.add(search.k_, atoms, {}, 0);
      }
      if (tally.witnesses.size() < search.options_.list_cap) {
        std::vector<Event> witness;
        for (auto bits : chosen) witness.emplace_back(search.space_.size(), bits);
        tally.witnesses.push_back(std::move(witness));
      }
    }
  };

  void collect_events() {
    const std::uint64_t full = weight_.full;
    for (std::uint64_t b = 0; b <= full; ++b) {
      if (!options_.include_trivial && (b == 0 || b == full)) continue;
      if (filter_.active && !filter_.single[std::popcount(b)]) continue;
      events_.push_back(b);
    }
  }

  void build_adjacency() {
    const std::size_t count = events_.size();
    const std::size_t chunks = std::min<std::size_t>(std::max<std::size_t>(count, 1), 1024);
    const Acc total = weight_.total_pow[1];
    auto lists = detail::run_chunks<std::vector<std::vector<std::uint32_t>>>(
        chunks, options_.threads, [&](std::size_t c, std::vector<std::vector<std::uint32_t>>& out) {
          const auto [lo, hi] = detail::chunk_range(count, chunks, c);
          out.resize(hi - lo);
          for (std::uint64_t i = lo; i < hi; ++i) {
            const std::uint64_t a = events_[i];
            const Acc wa = weight_(a);
            const int ca = std::popcount(a);
            auto& row = out[i - lo];
            for (std::size_t j = i + 1; j < count; ++j) {
              const std::uint64_t b = events_[j];
              if (filter_.active && !filter_.pair[ca][std::popcount(b)]) continue;
              if (weight_(a & b) * total == wa * weight_(b)) row.push_back(static_cast<std::uint32_t>(j));
            }
          }
        });
    offsets_.assign(count + 1, 0);
    std::size_t i = 0;
    for (auto& chunk : lists) {
      for (auto& row : chunk) {
        offsets_[i + 1] = offsets_[i] + row.size();
        neighbors_.insert(neighbors_.end(), row.begin(), row.end());
        ++i;
      }
    }
  }

  const std::uint32_t* neighbors_begin(std::uint32_t i) const { return neighbors_.data() + offsets_[i]; }
  const std::uint32_t* neighbors_end(std::uint32_t i) const { return neighbors_.data() + offsets_[i + 1]; }

  const SampleSpace& space_;
  int k_;
  CensusOptions options_;
  WeightTable<Acc> weight_;
  SizeFilter filter_;
  std::vector<std::uint64_t> events_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> neighbors_;
};

}  // namespace

CensusReport brute_pair_census(const SampleSpace& space, const CensusOptions& options) {
  check_space(space);
  if (fits_wide(space, 2)) return pair_census<U128>(space, options);
  return pair_census<BigInt>(space, options);
}

CensusReport brute_tuple_census(const SampleSpace& space, int k, const CensusOptions& options) {
  check_space(space);
  if (k < 2) throw ValidationError("tuple size must be at least 2");
  if (k > 20) throw CapabilityError("tuple size above 20 is not supported by the brute engine");
  if (fits_wide(space, k)) return TupleSearch<U128>(space, k, options).run();
  return TupleSearch<BigInt>(space, k, options).run();
}

CensusReport brute_grand_census(const SampleSpace& space, const CensusOptions& options) {
  check_space(space);
  const auto start = Clock::now();
  CensusReport grand = brute_pair_census(space, options);
  grand.mode = CensusMode::grand;
  const int max_k = space.is_uniform() && space.size() >= 2 && !options.include_trivial
                        ? prop1_max_k(space.size())
                        : 20;
  BigInt last = grand.total;
  for (int k = 3; k <= max_k && last != 0; ++k) {
    CensusReport part = brute_tuple_census(space, k, options);
    last = part.total;
    grand.k = k;
    grand.total += part.total;
    for (auto& s : part.signatures) grand.signatures.push_back(std::move(s));
    for (auto& c : part.classes) grand.classes.push_back(std::move(c));
    for (auto& w : part.witnesses) {
      if (grand.witnesses.size() >= options.list_cap) break;
      grand.witnesses.push_back(std::move(w));
    }
  }
  canonicalize(grand);
  grand.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return grand;
}

VerificationReport verify(std::int64_t n, int k_max, const CensusOptions& options) {
  VerificationReport result;
  result.n = n;
  result.k_max = k_max;
  if (n < 1) throw ValidationError("sample space needs at least one outcome");
  if (n > kMaxEventOutcomes) throw CapabilityError("verification needs n <= 63");
  const int top = n >= 2 ? std::min(k_max, std::max(2, prop1_max_k(n))) : 2;

  CensusOptions oracle = options;
  oracle.prune = false;
  oracle.include_trivial = false;
  const SampleSpace space = SampleSpace::uniform(static_cast<int>(n));

  for (int k = 2; k <= top; ++k) {
    const CensusReport brute =
        k == 2 ? brute_pair_census(space, oracle) : brute_tuple_census(space, k, oracle);
    const CensusReport analytic =
        analytic_report(n, k == 2 ? CensusMode::pairs : CensusMode::tuples, k);

    VerificationLine line{k, brute.total, analytic.total, analytic.classes.size(), true};
    std::string mismatch;
    if (brute.total != analytic.total) {
      mismatch = "k=" + std::to_string(k) + " totals differ: brute " + to_string(brute.total) +
                 " vs analytic " + to_string(analytic.total);
    } else if (brute.classes.size() != analytic.classes.size()) {
      mismatch = "k=" + std::to_string(k) + " class counts differ: brute " +
                 std::to_string(brute.classes.size()) + " vs analytic " +
                 std::to_string(analytic.classes.size());
    } else {
      for (std::size_t i = 0; i < brute.classes.size(); ++i) {
        const auto& b = brute.classes[i];
        const auto& a = analytic.classes[i];
        if (b.sizes != a.sizes || b.intersection != a.intersection || b.count != a.count ||
            b.signature != a.signature) {
          mismatch = "k=" + std::to_string(k) + " class " + std::to_string(i) +
                     " differs: brute count " + to_string(b.count) + " vs analytic " +
                     to_string(a.count);
          break;
        }
      }
    }
    if (!mismatch.empty()) {
      line.match = false;
      if (result.match) result.first_mismatch = mismatch;
      result.match = false;
    }
    result.lines.push_back(line);
  }
  return result;
}

}  // namespace indep
