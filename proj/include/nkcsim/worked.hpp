#pragma once

#include <string>

namespace nkcsim {

// Recomputes the stylized hand calculations the model is anchored to: the
// recency-weighted vs uniform window values on [0,0,0,1,1] and every row of
// the seeded-AI tables (memory fading, rule-based perpetuation,
// hallucinatory perpetuation). `ok` is false on any mismatch between the
// computed and the pinned values.
struct WorkedReport {
    std::string text;
    bool ok = true;
};

WorkedReport show_worked_examples();

} // namespace nkcsim
