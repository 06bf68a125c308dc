#pragma once

#include <span>
#include <vector>

#include "nkcsim/task.hpp"

namespace nkcsim {

// Runs split by the leading agent's Step-1 payoff: >= hi is high
// capability, <= lo is low, the rest is mid. Order within each subset is
// preserved.
struct Partition {
    std::vector<RunOutcome> high;
    std::vector<RunOutcome> low;
    std::vector<RunOutcome> mid;
};

Partition capability_partition(std::span<const RunOutcome> runs, double hi, double lo);

} // namespace nkcsim
