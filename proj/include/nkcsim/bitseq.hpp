#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nkcsim/rational.hpp"

namespace nkcsim {

// A realized search path: ordered binary decision states, oldest first.
using BitSequence = std::vector<std::uint8_t>;

// Throws InvalidInput unless every element is 0 or 1 and the span is
// non-empty. `what` names the argument in diagnostics.
void require_bits(std::span<const std::uint8_t> bits, const char* what);

// Fraction of states realized as 1 ("good pay-off"); exact.
Rational payoff_exact(std::span<const std::uint8_t> seq);

double payoff(std::span<const std::uint8_t> seq);

} // namespace nkcsim
