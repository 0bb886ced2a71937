#pragma once

namespace symg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace symg
