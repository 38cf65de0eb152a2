#pragma once

#include <numbers>

namespace mml::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;
/// Apéry's constant ζ(3).
inline constexpr double zeta3 = 1.2020569031595942853997381615114499907649862923405;

}  // namespace mml::constants
