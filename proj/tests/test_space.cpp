#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "indep/space.hpp"

using namespace indep;

namespace {

Event range_event(int n, int lo, int hi) {
  std::vector<int> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return Event::of(n, v);
}

std::vector<Rational> ints(std::initializer_list<int> xs) {
  return std::vector<Rational>(xs.begin(), xs.end());
}

}  // namespace

TEST_SUITE("space") {

TEST_CASE("numeric parsing and formatting") {
  CHECK(parse_rational("12") == 12);
  CHECK(parse_rational(" 3/6 ") == Rational(1, 2));
  CHECK(parse_rational("-4/8") == Rational(-1, 2));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(7)) == "7");
  CHECK(to_string(to_bigint(static_cast<unsigned __int128>(1) << 100)) ==
        "1267650600228229401496703205376");
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("x"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1.5"), ValidationError);
}

TEST_CASE("events") {
  const Event a = Event::of(12, {0, 1, 2, 3, 4, 5});
  CHECK(a.cardinality() == 6);
  CHECK(a.contains(5));
  CHECK_FALSE(a.contains(6));
  CHECK(a.nontrivial());
  CHECK(a.complement() == range_event(12, 6, 12));
  CHECK((a & a.complement()) == Event::empty(12));
  CHECK((a | a.complement()) == Event::full(12));
  CHECK_FALSE(Event::empty(12).nontrivial());
  CHECK_FALSE(Event::full(12).nontrivial());
  CHECK(a.outcomes() == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(Event::full(63).cardinality() == 63);

  CHECK_THROWS_AS(Event::of(4, {4}), ValidationError);
  CHECK_THROWS_AS(Event::of(4, {-1}), ValidationError);
  CHECK_THROWS_AS(Event(4, 0x10), ValidationError);
  CHECK_THROWS_AS(Event(64, 1), CapabilityError);
  CHECK_THROWS_AS(a & Event::of(6, {0}), ValidationError);
}

TEST_CASE("uniform and weighted spaces") {
  const auto u = SampleSpace::uniform(12);
  CHECK(u.size() == 12);
  CHECK(u.is_uniform());
  for (const auto& p : u.probabilities()) CHECK(p == Rational(1, 12));

  const auto w = SampleSpace::weighted(ints({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}));
  CHECK(w.integer_total() == 78);
  CHECK_FALSE(w.is_uniform());
  CHECK(event_prob(w, Event::of(12, {11})) == Rational(2, 13));

  const auto half = SampleSpace::weighted({Rational(1, 2), Rational(1, 2)});
  CHECK(half == SampleSpace::uniform(2));
  CHECK(half.is_uniform());
  CHECK(half.integer_weights() == std::vector<BigInt>{1, 1});

  const auto scaled = SampleSpace::weighted({Rational(2, 3), Rational(4, 3), 2});
  CHECK(scaled.integer_weights() == std::vector<BigInt>{1, 2, 3});
  CHECK(scaled.integer_total() == 6);

  CHECK_THROWS_AS(SampleSpace::uniform(0), ValidationError);
  CHECK_THROWS_AS(SampleSpace::weighted({}), ValidationError);
  CHECK_THROWS_AS(SampleSpace::weighted(ints({1, 0, 2})), ValidationError);
  CHECK_THROWS_AS(SampleSpace::weighted(ints({1, -3})), ValidationError);
}

TEST_CASE("product spaces and cylinders") {
  const auto coin_die = SampleSpace::product({ints({1, 1}), ints({1, 1, 1, 1, 1, 1})});
  CHECK(coin_die == SampleSpace::uniform(12));
  REQUIRE(coin_die.product_structure());
  CHECK(coin_die.product_structure()->sizes == std::vector<int>{2, 6});
  CHECK(coin_die.product_structure()->coordinates(7) == std::vector<int>{1, 1});
  const std::vector<int> coords{1, 4};
  CHECK(coin_die.product_structure()->outcome(coords) == 10);

  CHECK(SampleSpace::product({ints({1, 1}), ints({1, 1})}) == SampleSpace::uniform(4));

  const auto biased = SampleSpace::product({ints({1, 2}), ints({1, 1, 1, 1, 1, 1})});
  const Event heads = cylinder_event(biased, 0, {0});
  const Event die1 = cylinder_event(biased, 1, {0});
  CHECK(event_prob(biased, heads & die1) == Rational(1, 18));
  CHECK(event_prob(biased, heads) == Rational(1, 3));

  CHECK(cylinder_event(coin_die, 0, {0}).cardinality() == 6);
  CHECK(cylinder_event(coin_die, 1, {0}).cardinality() == 2);
  CHECK(cylinder_event(coin_die, 1, {0, 1, 2}).cardinality() == 6);
  CHECK(cylinder_event(coin_die, 0, {0}) == range_event(12, 0, 6));

  CHECK_THROWS_AS(cylinder_event(coin_die, 1, {}), ValidationError);
  CHECK_THROWS_AS(cylinder_event(coin_die, 0, {0, 1}), ValidationError);
  CHECK_THROWS_AS(cylinder_event(coin_die, 2, {0}), ValidationError);
  CHECK_THROWS_AS(cylinder_event(coin_die, 1, {6}), ValidationError);
  CHECK_THROWS_AS(cylinder_event(SampleSpace::uniform(12), 0, {0}), ValidationError);
  CHECK_THROWS_AS(SampleSpace::product({ints({1}), ints({1, 1})}), ValidationError);
  CHECK_THROWS_AS(SampleSpace::product({}), ValidationError);
  CHECK_THROWS_AS(SampleSpace::product({ints({1, 0})}), ValidationError);
}

TEST_CASE("event probabilities") {
  const auto u = SampleSpace::uniform(12);
  CHECK(event_prob(u, range_event(12, 0, 6)) == Rational(1, 2));
  CHECK(event_prob(u, Event::empty(12)) == 0);
  CHECK(event_prob(u, Event::full(12)) == 1);
  CHECK_THROWS_AS(event_prob(u, Event::of(6, {0})), ValidationError);
}

TEST_CASE("atom cardinalities") {
  const Event a = range_event(12, 0, 6);
  const Event b = Event::of(12, {0, 6});
  const std::vector<Event> pair{a, b};
  CHECK(atom_cardinalities(12, pair) == std::vector<std::int64_t>{5, 5, 1, 1});

  const std::vector<Event> triple{a, Event::of(12, {0, 1, 2, 6, 7, 8}), Event::of(12, {0, 3, 6, 9})};
  CHECK(atom_cardinalities(12, triple) == std::vector<std::int64_t>{2, 2, 2, 2, 1, 1, 1, 1});

  const std::vector<Event> single{Event::of(4, {0, 1})};
  CHECK(atom_cardinalities(4, single) == std::vector<std::int64_t>{2, 2});

  const auto w = SampleSpace::weighted(ints({1, 2, 3, 4}));
  const std::vector<Event> we{Event::of(4, {0, 1}), Event::of(4, {1, 2})};
  CHECK(atom_weights(w, we) == std::vector<Rational>{Rational(4, 10), Rational(1, 10),
                                                     Rational(3, 10), Rational(2, 10)});
  CHECK_THROWS_AS(atom_cardinalities(4, std::span<const Event>{}), ValidationError);
}

TEST_CASE("atom invariants over random events") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const int k = 1 + static_cast<int>(rng() % 4);
    std::vector<Event> events;
    for (int i = 0; i < k; ++i) events.emplace_back(n, rng() & Event::full_mask(n));
    auto atoms = atom_cardinalities(n, events);
    CHECK(std::accumulate(atoms.begin(), atoms.end(), std::int64_t{0}) == n);

    const int flip = static_cast<int>(rng() % k);
    auto flipped_events = events;
    flipped_events[flip] = flipped_events[flip].complement();
    const auto flipped = atom_cardinalities(n, flipped_events);
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      CHECK(flipped[j ^ (std::size_t{1} << flip)] == atoms[j]);
    }

    std::vector<Rational> weights(n);
    for (auto& x : weights) x = Rational(1 + static_cast<int>(rng() % 9), 1 + static_cast<int>(rng() % 5));
    const auto space = SampleSpace::weighted(weights);
    const auto aw = atom_weights(space, events);
    CHECK(std::accumulate(aw.begin(), aw.end(), Rational(0)) == 1);
    CHECK(event_prob(space, events[0]) + event_prob(space, events[0].complement()) == 1);
  }
}

TEST_CASE("weights file parsing") {
  std::istringstream in("# header\n1\n\n2/4\n  3  \n# trailing\n");
  CHECK(parse_weights(in) == std::vector<Rational>{1, Rational(1, 2), 3});
  std::istringstream bad("1\nabc\n");
  CHECK_THROWS_AS(parse_weights(bad), ValidationError);
  CHECK_THROWS_AS(load_weights_file("/nonexistent/weights.txt"), ValidationError);
}

}  // TEST_SUITE
