#pragma once

#include <numbers>
#include <string_view>

namespace casimir {

inline constexpr double pi = std::numbers::pi;

enum class FirstPlate { horizontal, top };
enum class Branch { plus, minus };

std::string_view to_string(FirstPlate plate);
std::string_view to_string(Branch branch);

// A finite plate of radial extent [r0, r1] and width `width` hinged at the
// origin above an infinite horizontal plane, opening angle gamma.
struct WedgeGeometry {
  double gamma = pi / 4;
  double r0 = 1.0;
  double r1 = 2.0;
  double width = 1.0;

  double beta() const { return pi - gamma; }
  double radius_ratio() const { return r0 / r1; }

  // Throws InvalidArgument unless 0 < gamma < pi/2, 0 < r0 < r1, width > 0.
  void validate() const;
  // Only the opening angle matters for orbit questions.
  static void validate_angle(double gamma);
};

// Base point (R sin psi, R cos psi): psi is measured from the vertical.
struct PolarPoint {
  double r = 1.0;
  double psi = 0.0;

  double a() const;  // horizontal coordinate
  double b() const;  // height above the plane
};

// Strictly between the two plates: pi/2 - gamma < psi < pi/2 and r > 0.
bool strictly_inside(const PolarPoint& p, double gamma);
void require_inside(const PolarPoint& p, double gamma);

}  // namespace casimir
