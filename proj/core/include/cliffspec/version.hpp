#pragma once

namespace cliffspec {

inline constexpr const char* kVersion = "0.1.0";

} // namespace cliffspec
