#pragma once

#include <numbers>

namespace so3 {

inline constexpr double pi = std::numbers::pi;

// Euler-Mascheroni constant, 20 significant digits.
inline constexpr double euler_gamma = 0.57721566490153286061;

}  // namespace so3
