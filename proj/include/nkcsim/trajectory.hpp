#pragma once

#include <span>

namespace nkcsim {

// Strict local maxima of a decision-value trajectory: interior points
// greater than both neighbours. Endpoints and plateaus never count. This is
// the model's operationalization of "peaks discovered" during a search.
// Throws InvalidInput on an empty trajectory.
int count_local_peaks(std::span<const double> values);

} // namespace nkcsim
