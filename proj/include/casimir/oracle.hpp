#pragma once

#include <functional>
#include <vector>

#include "casimir/geometry.hpp"

// Reference engines built only from Euclidean geometry: a mirror-law ray
// tracer, the method of images, a shooting search for closed orbits and an
// adaptive quadrature driver. Nothing here uses the line-space formulas.
namespace casimir::oracle {

struct Vec2 {
  double x = 0.0;  // horizontal coordinate a
  double y = 0.0;  // height b

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {k * x, k * y}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const;
};

Vec2 to_cartesian(const PolarPoint& p);
// Unit vector at angle phi from the upward vertical.
Vec2 unit_from_angle(double phi);
double angle_of(const Vec2& d);

struct Ray2D {
  Vec2 origin;
  Vec2 direction;

  static Ray2D from_angle(const Vec2& origin, double phi);
};

struct TraceResult {
  std::vector<Vec2> points;
  std::vector<FirstPlate> plates;
  // From the origin to the first bounce, then between bounces.
  std::vector<double> segment_lengths;
  std::vector<Vec2> directions;  // outgoing direction after each bounce
  bool exited = false;
  bool grazing = false;  // a bounce landed on the vertex
};

// Specular reflection off the horizontal half-plane and the top half-plane at
// angle gamma. Stops after max_bounces, on exit, or at the vertex.
TraceResult trace(const Ray2D& ray, const WedgeGeometry& geom, int max_bounces);

// Inward unit normal of a plate.
Vec2 plate_normal(FirstPlate plate, double gamma);

// Unfolded image of the start point after n reflections beginning with
// `first`, together with the total angle swept. The closed orbit exists iff
// the sweep is below pi.
struct ImageResult {
  Vec2 image;
  double sweep = 0.0;
  bool exists = false;
};
ImageResult image_point(const PolarPoint& point, double gamma, int n, FirstPlate first);
// Throws PathNotFound when the unfolded chord leaves the wedge copies.
double images_chord(const PolarPoint& point, const WedgeGeometry& geom, int n,
                    FirstPlate first);
double images_direction(const PolarPoint& point, const WedgeGeometry& geom, int n,
                        FirstPlate first);

struct FoundOrbit {
  double launch_angle = 0.0;
  double closure = 0.0;
  double total_length = 0.0;
  std::vector<Vec2> points;
  FirstPlate first_plate = FirstPlate::horizontal;
};

struct OrbitSearchResult {
  std::vector<FoundOrbit> found;
  std::vector<FoundOrbit> grazing;
  int resolution = 0;
  double refinement_tolerance = 0.0;
};

// Scans launch angles over the full circle and refines every sign change of
// the signed miss distance of the n-th outgoing ray.
OrbitSearchResult find_closed_orbits(const PolarPoint& point, const WedgeGeometry& geom,
                                     int n, int angular_resolution = 20000);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod on [a, b]. Throws ConvergenceError with the best
// estimate when the error estimate exceeds rel_tol * |value|.
QuadratureResult adaptive_psi_quadrature(const std::function<double(double)>& f,
                                         double a, double b, double rel_tol,
                                         double abs_floor = 0.0);

// Brute-force single-direction energies: every base point is launched along
// its image direction, traced, and kept while all top-plate bounces land on
// [r0, r1]. The weight of a closed path of length l is -W/(2 pi^2 l^4) for even
// and +W/(2 pi^2 l^4) for odd bounce counts; odd paths are integrated with no
// outer radius.
QuadratureResult traced_even_energy(const WedgeGeometry& geom, int m,
                                    double rel_tol = 1e-9);
QuadratureResult traced_odd_energy(const WedgeGeometry& geom, int m, FirstPlate first,
                                   double rel_tol = 1e-9);

}  // namespace casimir::oracle
