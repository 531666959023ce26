#pragma once

#include <numbers>

namespace tradestudy {

inline constexpr double kMarsGravity = 3.71;  // m/s^2

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

constexpr double grams_to_kg(double g) { return g / 1000.0; }
constexpr double kg_to_grams(double kg) { return kg * 1000.0; }

}  // namespace tradestudy
