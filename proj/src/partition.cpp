#include "nkcsim/partition.hpp"

#include "nkcsim/error.hpp"

namespace nkcsim {

Partition capability_partition(std::span<const RunOutcome> runs, double hi, double lo) {
    if (!(0.0 <= lo && lo < hi && hi <= 1.0)) {
        throw SimError(ErrorCode::InvalidInput,
                       "capability thresholds require 0 <= lo < hi <= 1");
    }
    Partition p;
    for (const auto& run : runs) {
        if (run.h_capability_payoff >= hi) {
            p.high.push_back(run);
        } else if (run.h_capability_payoff <= lo) {
            p.low.push_back(run);
        } else {
            p.mid.push_back(run);
        }
    }
    return p;
}

} // namespace nkcsim
