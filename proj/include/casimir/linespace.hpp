#pragma once

#include <complex>
#include <optional>
#include <span>

namespace casimir::linespace {

using Complex = std::complex<double>;

struct Tolerance {
  double absolute = 1e-10;
  double scaled(double magnitude) const;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double k) const { return {k * x, k * y, k * z}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const;
  double norm() const;
};

// A point of the direction sphere, charted by stereographic projection from
// the south pole. The south pole itself (straight down) has no finite chart
// value and is carried as an explicit infinity.
class Direction {
 public:
  static Direction finite(Complex xi);
  static Direction infinity();
  static Direction from_unit_vector(const Vec3& d);

  bool is_infinite() const { return !xi_.has_value(); }
  // Throws PointAtInfinity on the south pole.
  Complex xi() const;
  Vec3 unit_vector() const;

 private:
  std::optional<Complex> xi_;
};

// x1 + i x2 and x3.
struct SpacePoint {
  Complex z;
  double t = 0.0;

  Vec3 cartesian() const { return {z.real(), z.imag(), t}; }
  static SpacePoint from_cartesian(const Vec3& v) { return {{v.x, v.y}, v.z}; }
};

struct OrientedLine {
  Complex xi;
  Complex eta;

  Vec3 direction() const;
  // Closest point to the origin; the line is closest_point() + r * direction().
  SpacePoint closest_point() const;
  SpacePoint point_at(double r) const;
  // Signed position of the foot of p on the line.
  double parameter_of(const SpacePoint& p) const;
  double distance_to(const SpacePoint& p) const;

  static OrientedLine through(const SpacePoint& p, Complex xi);
};

// One reflection: incoming line, the normal line through the bounce point,
// and the positions s (along the normal) and r_in (along the incoming line)
// of the bounce point.
struct BounceFrame {
  OrientedLine line_in;
  OrientedLine normal;
  double s = 0.0;
  double r_in = 0.0;

  SpacePoint from_incoming() const { return line_in.point_at(r_in); }
  SpacePoint from_normal() const { return normal.point_at(s); }
  bool consistent(const Tolerance& tol = {}) const;
};

// eta = (z - 2 t xi - conj(z) xi^2) / 2. Rejects the infinite direction.
Complex incidence(const SpacePoint& p, Complex xi);
Complex incidence(const SpacePoint& p, const Direction& d);

// Reflected direction off a mirror with normal direction nu. A vanishing
// denominator yields Direction::infinity().
Direction reflect_direction(Complex xi, Complex nu);

// Throws PointAtInfinity when the reflected direction is infinite.
Complex reflect_eta(Complex eta, Complex xi, Complex nu, double s);

double reflect_r(double r, Complex xi, Complex nu, double s);

// Position s along the normal line (nu, chi) of its meeting point with the
// line (xi, eta). Throws NoIntersection when the lines are parallel or skew.
double solve_bounce_parameter(Complex eta, Complex xi, Complex nu, Complex chi,
                              const Tolerance& tol = {});

// Reflection of `in` at the mirror whose normal line through the bounce point
// is `normal`.
OrientedLine reflect(const OrientedLine& in, const OrientedLine& normal,
                     const Tolerance& tol = {});

// Van Vleck determinant of a chain of plane reflections: (sum l)^-2.
double van_vleck_plane_chain(std::span<const double> segment_lengths);
// The same quantity by the sqrt(Psi) recursion starting from l0.
double psi_chain(double l0, std::span<const double> segment_lengths);

// Lines in the (x1, x3) plane: xi, eta and nu are real. A planar point is
// (a, b) = (x1, x3); a direction at angle phi from the upward vertical has
// xi = tan(phi / 2).
namespace planar {

class Direction {
 public:
  static Direction finite(double xi);
  static Direction infinity();
  static Direction from_angle(double phi);

  bool is_infinite() const { return !xi_.has_value(); }
  double xi() const;
  // In (-pi, pi]; the infinite direction is pi.
  double angle() const;
  double da() const;
  double db() const;

 private:
  std::optional<double> xi_;
};

struct Line {
  double xi = 0.0;
  double eta = 0.0;

  double da() const;
  double db() const;
  double closest_a() const;
  double closest_b() const;
};

double incidence(double a, double b, double xi);
Direction reflect_direction(double xi, double nu);
double reflect_eta(double eta, double xi, double nu, double s);
double reflect_r(double r, double xi, double nu, double s);
double solve_bounce_parameter(double eta, double xi, double nu, double chi);

}  // namespace planar

}  // namespace casimir::linespace
