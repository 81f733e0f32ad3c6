// version.hpp

#pragma once

namespace qsync {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kGridHashAlgorithm = "fnv1a-64";

} // namespace qsync
