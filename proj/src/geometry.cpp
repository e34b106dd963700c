#include "casimir/geometry.hpp"

#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

std::string_view to_string(FirstPlate plate) {
  return plate == FirstPlate::horizontal ? "horizontal" : "top";
}

std::string_view to_string(Branch branch) {
  return branch == Branch::plus ? "plus" : "minus";
}

void WedgeGeometry::validate_angle(double g) {
  if (!std::isfinite(g) || !(g > 0.0) || !(g < pi / 2)) {
    throw InvalidArgument("opening angle must satisfy 0 < gamma < pi/2, got " +
                          std::to_string(g));
  }
}

void WedgeGeometry::validate() const {
  validate_angle(gamma);
  if (!std::isfinite(r0) || !std::isfinite(r1) || !(r0 > 0.0) || !(r1 > r0)) {
    throw InvalidArgument("plate radii must satisfy 0 < r0 < r1");
  }
  if (!std::isfinite(width) || !(width > 0.0)) {
    throw InvalidArgument("plate width must be positive");
  }
}

double PolarPoint::a() const { return r * std::sin(psi); }
double PolarPoint::b() const { return r * std::cos(psi); }

bool strictly_inside(const PolarPoint& p, double gamma) {
  return std::isfinite(p.r) && std::isfinite(p.psi) && p.r > 0.0 &&
         p.psi > pi / 2 - gamma && p.psi < pi / 2;
}

void require_inside(const PolarPoint& p, double gamma) {
  if (!strictly_inside(p, gamma)) {
    throw InvalidArgument("base point is not strictly inside the wedge");
  }
}

}  // namespace casimir
