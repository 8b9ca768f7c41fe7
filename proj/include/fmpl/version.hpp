#pragma once

namespace fmpl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fmpl
