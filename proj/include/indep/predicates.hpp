#pragma once

#include <array>
#include <span>
#include <utility>

#include "indep/space.hpp"

namespace indep {

/// P(A∩B) = P(A)P(B), exactly. Trivial events are independent of everything.
bool pair_independent(const SampleSpace& space, const Event& a, const Event& b);

/// Every sub-tuple of size >= 2 satisfies the product rule. Requires k >= 2.
bool mutually_independent(const SampleSpace& space, std::span<const Event> events);

/// Every 2-subset is independent. Requires k >= 2.
bool pairwise_independent(const SampleSpace& space, std::span<const Event> events);

/// P(A∩B∩C)·P(C) = P(A∩C)·P(B∩C). Requires P(C) > 0.
bool conditionally_independent(const SampleSpace& space, const Event& a, const Event& b,
                               const Event& c);

/// (A,B), (A,Bᶜ), (Aᶜ,B), (Aᶜ,Bᶜ): all four share one independence verdict.
std::array<std::pair<Event, Event>, 4> complement_family(const Event& a, const Event& b);

struct Fixture {
  SampleSpace space;
  std::array<Event, 3> events;
};

/// Two fair coins on four equally likely outcomes HH, HT, TH, TT (indices
/// 0..3); A = first coin heads, B = second coin heads, C = third coin heads,
/// where the third coin shows heads exactly when the first two differ.
/// Pairwise independent, not mutually independent.
Fixture bernstein_fixture();

}  // namespace indep
