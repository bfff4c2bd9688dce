#pragma once

namespace lrgf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lrgf
