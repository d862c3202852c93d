#include "indep/space.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>

namespace indep {

Event::Event(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 0) throw ValidationError("event universe size must be nonnegative");
  if (n > kMaxEventOutcomes) {
    throw CapabilityError("events support at most " + std::to_string(kMaxEventOutcomes) +
                          " outcomes, got " + std::to_string(n));
  }
  if ((bits & ~full_mask(n)) != 0) throw ValidationError("event has bits beyond outcome n-1");
}

Event Event::of(int n, std::span<const int> outcomes) {
  Event checked(n, 0);
  std::uint64_t bits = 0;
  for (int s : outcomes) {
    if (s < 0 || s >= n) {
      throw ValidationError("outcome " + std::to_string(s) + " outside 0.." + std::to_string(n - 1));
    }
    bits |= std::uint64_t{1} << s;
  }
  checked.bits_ = bits;
  return checked;
}

std::vector<int> Event::outcomes() const {
  std::vector<int> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

Event Event::operator&(const Event& other) const {
  if (n_ != other.n_) throw ValidationError("events belong to spaces of different sizes");
  return Event(n_, bits_ & other.bits_, Unchecked{});
}

Event Event::operator|(const Event& other) const {
  if (n_ != other.n_) throw ValidationError("events belong to spaces of different sizes");
  return Event(n_, bits_ | other.bits_, Unchecked{});
}

std::vector<int> ProductStructure::coordinates(int outcome) const {
  std::vector<int> coords(sizes.size());
  for (std::size_t i = sizes.size(); i-- > 0;) {
    coords[i] = outcome % sizes[i];
    outcome /= sizes[i];
  }
  return coords;
}

int ProductStructure::outcome(std::span<const int> coords) const {
  int index = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) index = index * sizes[i] + coords[i];
  return index;
}

SampleSpace SampleSpace::uniform(int n) {
  if (n < 1) throw ValidationError("sample space needs at least one outcome");
  return weighted(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
}

SampleSpace SampleSpace::weighted(std::vector<Rational> weights) {
  if (weights.empty()) throw ValidationError("weight list is empty");
  for (std::size_t s = 0; s < weights.size(); ++s) {
    if (weights[s] <= 0) {
      throw ValidationError("weight of outcome " + std::to_string(s) + " is not positive");
    }
  }
  SampleSpace space;
  space.probabilities_ = std::move(weights);
  space.finish();
  return space;
}

SampleSpace SampleSpace::product(const std::vector<std::vector<Rational>>& factors) {
  if (factors.empty()) throw ValidationError("product space needs at least one factor");
  ProductStructure structure;
  std::vector<Rational> weights{Rational(1)};
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const auto& factor = factors[f];
    if (factor.size() < 2) {
      throw ValidationError("factor " + std::to_string(f) + " has fewer than two outcomes");
    }
    Rational total = 0;
    for (const auto& w : factor) {
      if (w <= 0) throw ValidationError("factor " + std::to_string(f) + " has a nonpositive weight");
      total += w;
    }
    std::vector<Rational> normalized;
    normalized.reserve(factor.size());
    for (const auto& w : factor) normalized.push_back(w / total);

    std::vector<Rational> next;
    next.reserve(weights.size() * normalized.size());
    for (const auto& prefix : weights) {
      for (const auto& w : normalized) next.push_back(prefix * w);
    }
    weights = std::move(next);
    structure.sizes.push_back(static_cast<int>(factor.size()));
    structure.weights.push_back(std::move(normalized));
  }
  SampleSpace space = weighted(std::move(weights));
  space.structure_ = std::move(structure);
  return space;
}

void SampleSpace::finish() {
  Rational total = 0;
  for (const auto& w : probabilities_) total += w;
  for (auto& w : probabilities_) w /= total;

  BigInt lcm_den = 1;
  for (const auto& p : probabilities_) {
    lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(p));
  }
  integer_weights_.clear();
  BigInt g = 0;
  for (const auto& p : probabilities_) {
    BigInt w = boost::multiprecision::numerator(p) * (lcm_den / boost::multiprecision::denominator(p));
    g = boost::multiprecision::gcd(g, w);
    integer_weights_.push_back(std::move(w));
  }
  integer_total_ = 0;
  for (auto& w : integer_weights_) {
    w /= g;
    integer_total_ += w;
  }
  uniform_ = std::all_of(integer_weights_.begin(), integer_weights_.end(),
                         [](const BigInt& w) { return w == 1; });
}

BigInt SampleSpace::integer_weight(const Event& e) const {
  if (e.universe() != size()) throw ValidationError("event does not belong to this space");
  if (uniform_) return e.cardinality();
  BigInt sum = 0;
  for (std::uint64_t b = e.bits(); b != 0; b &= b - 1) sum += integer_weights_[std::countr_zero(b)];
  return sum;
}

Event cylinder_event(const SampleSpace& space, int coord, std::span<const int> subset) {
  const auto& structure = space.product_structure();
  if (!structure) throw ValidationError("space has no product structure");
  if (coord < 0 || coord >= static_cast<int>(structure->sizes.size())) {
    throw ValidationError("coordinate " + std::to_string(coord) + " out of range");
  }
  const int m = structure->sizes[coord];
  std::vector<bool> chosen(m, false);
  for (int v : subset) {
    if (v < 0 || v >= m) throw ValidationError("factor outcome " + std::to_string(v) + " out of range");
    chosen[v] = true;
  }
  const auto picked = std::count(chosen.begin(), chosen.end(), true);
  if (picked == 0 || picked == m) throw ValidationError("cylinder subset must be nonempty and proper");

  std::uint64_t bits = 0;
  for (int s = 0; s < space.size(); ++s) {
    if (chosen[structure->coordinates(s)[coord]]) bits |= std::uint64_t{1} << s;
  }
  return Event(space.size(), bits);
}

Rational event_prob(const SampleSpace& space, const Event& e) {
  return Rational(space.integer_weight(e), space.integer_total());
}

std::vector<std::int64_t> atom_cardinalities(int n, std::span<const Event> events) {
  if (events.empty()) throw ValidationError("atom decomposition needs at least one event");
  if (events.size() > 20) throw CapabilityError("too many events for an atom table");
  std::vector<std::int64_t> atoms(std::size_t{1} << events.size(), 0);
  for (int s = 0; s < n; ++s) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (events[i].contains(s)) index |= std::size_t{1} << i;
    }
    ++atoms[index];
  }
  return atoms;
}

std::vector<Rational> atom_weights(const SampleSpace& space, std::span<const Event> events) {
  if (events.empty()) throw ValidationError("atom decomposition needs at least one event");
  if (events.size() > 20) throw CapabilityError("too many events for an atom table");
  for (const auto& e : events) {
    if (e.universe() != space.size()) throw ValidationError("event does not belong to this space");
  }
  std::vector<Rational> atoms(std::size_t{1} << events.size(), Rational(0));
  for (int s = 0; s < space.size(); ++s) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (events[i].contains(s)) index |= std::size_t{1} << i;
    }
    atoms[index] += space.probabilities()[s];
  }
  return atoms;
}

std::vector<Rational> parse_weights(std::istream& in) {
  std::vector<Rational> weights;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      weights.push_back(parse_rational(line));
    } catch (const ValidationError& e) {
      throw ValidationError("weights line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return weights;
}

std::vector<Rational> load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open weights file '" + path + "'");
  return parse_weights(in);
}

}  // namespace indep
