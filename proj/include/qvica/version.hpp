#pragma once

namespace qvica {
inline constexpr const char* kToolName = "qvica";
inline constexpr const char* kToolVersion = "0.1.0";
}  // namespace qvica
