#pragma once

namespace nkcsim {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace nkcsim
