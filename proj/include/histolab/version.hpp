#pragma once

namespace histolab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace histolab
