#pragma once

namespace pbwdeg {

inline constexpr const char *kToolVersion = "1.0.0";

} // namespace pbwdeg
