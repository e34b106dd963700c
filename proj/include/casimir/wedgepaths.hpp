#pragma once

#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/linespace.hpp"

namespace casimir::paths {

namespace planar = linespace::planar;

// n = 2m (even) or 2m+1 (odd) bounces. For even orbits first_plate is the
// traversal order; branch is the root of the initial-direction quadratic that
// produced the launch.
struct ClosedPathSpec {
  int bounces = 2;
  FirstPlate first_plate = FirstPlate::horizontal;
  Branch branch = Branch::plus;

  bool is_even() const { return bounces % 2 == 0; }
  int order() const { return bounces / 2; }
};

struct BouncePath {
  PolarPoint start;
  ClosedPathSpec spec;
  std::vector<linespace::SpacePoint> points;  // z = a (real), t = b
  std::vector<FirstPlate> plates;
  // l01, l12, ..., l(n-1)n, ln0.
  std::vector<double> segment_lengths;
  double total_length = 0.0;
  // The sign (upper = plus) that makes the closed-form lengths positive.
  Branch length_sign = Branch::plus;
};

struct OddBranches {
  bool horizontal = false;
  bool top = false;

  bool contains(FirstPlate p) const {
    return p == FirstPlate::horizontal ? horizontal : top;
  }
  int count() const { return int(horizontal) + int(top); }
  bool empty() const { return count() == 0; }
};

struct RootPair {
  planar::Direction plus;
  planar::Direction minus;
  bool degenerate = false;
};

struct InitialDirection {
  planar::Direction direction;
  Branch root = Branch::plus;
  bool degenerate = false;
};

bool even_exists(const WedgeGeometry& geom, int m);
double even_length(const PolarPoint& point, const WedgeGeometry& geom, int m);

OddBranches odd_exists(const PolarPoint& point, const WedgeGeometry& geom, int m);
double odd_length(const PolarPoint& point, const WedgeGeometry& geom, int m,
                  FirstPlate first);

// Both roots (sin u +- 1)/cos u, u = psi - m beta. One of them is the
// orientation-reversed copy of the other.
RootPair even_direction_roots(const PolarPoint& point, const WedgeGeometry& geom,
                              int m);
// Both roots (cos m beta +- 1)/sin m beta for 2m+1 bounces; their product is -1.
RootPair odd_direction_roots(const WedgeGeometry& geom, int m);

InitialDirection closed_even_initial_direction(const PolarPoint& point,
                                               const WedgeGeometry& geom, int m,
                                               FirstPlate first);
InitialDirection closed_odd_initial_direction(const PolarPoint& point,
                                              const WedgeGeometry& geom, int m,
                                              FirstPlate first);

struct RaySequence {
  // rays[0] is the launched ray; rays[k] follows the k-th reflection.
  std::vector<planar::Line> rays;
  std::vector<linespace::SpacePoint> bounce_points;
  bool exited = false;
};

// Closed-form reflected rays for a launch that strikes the horizontal plate
// first, with up to k_max reflections. Throws InvalidArgument if the launch
// strikes the top plate first or leaves the wedge immediately.
RaySequence reflected_ray_sequence(const linespace::SpacePoint& start, double xi1,
                                   const WedgeGeometry& geom, int k_max);

BouncePath even_sequence(const PolarPoint& point, const WedgeGeometry& geom, int m,
                         FirstPlate first = FirstPlate::horizontal);
BouncePath odd_sequence(const PolarPoint& point, const WedgeGeometry& geom, int m,
                        FirstPlate first);

BouncePath closed_path(const PolarPoint& point, const WedgeGeometry& geom,
                       const ClosedPathSpec& spec);
std::vector<ClosedPathSpec> enumerate_closed_paths(const PolarPoint& point,
                                                   const WedgeGeometry& geom,
                                                   int max_bounces);

// Residuals of the two length identities, each divided by max(1, largest
// term). Uses the 2m / 2m-1 indexing of the iterated-reflection formulas.
struct IdentityResiduals {
  double even = 0.0;
  double odd = 0.0;
};
IdentityResiduals trig_identity_check(double psi, double beta, int m);

}  // namespace casimir::paths
