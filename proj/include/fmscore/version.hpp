#pragma once

namespace fmscore {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fmscore
