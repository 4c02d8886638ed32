#pragma once

namespace rmtkit {

inline constexpr const char* kVersion = "0.1.0";

} // namespace rmtkit
