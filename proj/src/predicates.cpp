#include "indep/predicates.hpp"

#include <bit>

namespace indep {

namespace {

void check_membership(const SampleSpace& space, const Event& e) {
  if (e.universe() != space.size()) {
    throw ValidationError("event over " + std::to_string(e.universe()) +
                          " outcomes used with a space of " + std::to_string(space.size()));
  }
}

void check_tuple(const SampleSpace& space, std::span<const Event> events) {
  if (events.size() < 2) throw ValidationError("independence of a tuple needs at least two events");
  if (events.size() > 30) throw CapabilityError("tuple too long for subset enumeration");
  for (const auto& e : events) check_membership(space, e);
}

}  // namespace

bool pair_independent(const SampleSpace& space, const Event& a, const Event& b) {
  check_membership(space, a);
  check_membership(space, b);
  if (space.is_uniform()) {
    const auto n = static_cast<std::uint64_t>(space.size());
    return static_cast<std::uint64_t>(a.cardinality()) * b.cardinality() ==
           n * static_cast<std::uint64_t>((a & b).cardinality());
  }
  return space.integer_weight(a & b) * space.integer_total() ==
         space.integer_weight(a) * space.integer_weight(b);
}

bool mutually_independent(const SampleSpace& space, std::span<const Event> events) {
  check_tuple(space, events);
  const std::uint32_t k = static_cast<std::uint32_t>(events.size());
  std::vector<BigInt> weight(k);
  for (std::uint32_t i = 0; i < k; ++i) weight[i] = space.integer_weight(events[i]);
  const BigInt& total = space.integer_total();

  for (std::uint32_t subset = 1; subset < (1U << k); ++subset) {
    const int size = std::popcount(subset);
    if (size < 2) continue;
    Event common = Event::full(space.size());
    BigInt product = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      if ((subset >> i) & 1U) {
        common = common & events[i];
        product *= weight[i];
      }
    }
    if (space.integer_weight(common) * boost::multiprecision::pow(total, size - 1) != product) {
      return false;
    }
  }
  return true;
}

bool pairwise_independent(const SampleSpace& space, std::span<const Event> events) {
  check_tuple(space, events);
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      if (!pair_independent(space, events[i], events[j])) return false;
    }
  }
  return true;
}

bool conditionally_independent(const SampleSpace& space, const Event& a, const Event& b,
                               const Event& c) {
  check_membership(space, a);
  check_membership(space, b);
  check_membership(space, c);
  const BigInt wc = space.integer_weight(c);
  if (wc == 0) throw ValidationError("conditioning event has probability zero");
  return space.integer_weight(a & b & c) * wc ==
         space.integer_weight(a & c) * space.integer_weight(b & c);
}

std::array<std::pair<Event, Event>, 4> complement_family(const Event& a, const Event& b) {
  return {{{a, b}, {a, b.complement()}, {a.complement(), b}, {a.complement(), b.complement()}}};
}

Fixture bernstein_fixture() {
  // Outcome index = 2*coin1 + coin2 with H = 0, T = 1.
  SampleSpace space = SampleSpace::uniform(4);
  const Event first_heads = Event::of(4, {0, 1});
  const Event second_heads = Event::of(4, {0, 2});
  const Event coins_differ = Event::of(4, {1, 2});
  return Fixture{std::move(space), {first_heads, second_heads, coins_differ}};
}

}  // namespace indep
