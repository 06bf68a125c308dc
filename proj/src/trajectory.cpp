#include "nkcsim/trajectory.hpp"

#include "nkcsim/error.hpp"

namespace nkcsim {

int count_local_peaks(std::span<const double> values) {
    if (values.empty()) {
        throw SimError(ErrorCode::InvalidInput, "trajectory must not be empty");
    }
    int peaks = 0;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > values[i - 1] && values[i] > values[i + 1]) {
            ++peaks;
        }
    }
    return peaks;
}

} // namespace nkcsim
