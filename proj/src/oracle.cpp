#include "casimir/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "casimir/errors.hpp"

namespace casimir::oracle {

double Vec2::norm() const { return std::hypot(x, y); }

Vec2 to_cartesian(const PolarPoint& p) {
  return {p.r * std::sin(p.psi), p.r * std::cos(p.psi)};
}

Vec2 unit_from_angle(double phi) { return {std::sin(phi), std::cos(phi)}; }

double angle_of(const Vec2& d) { return std::atan2(d.x, d.y); }

Ray2D Ray2D::from_angle(const Vec2& origin, double phi) {
  return {origin, unit_from_angle(phi)};
}

Vec2 plate_normal(FirstPlate plate, double gamma) {
  if (plate == FirstPlate::horizontal) return {0.0, 1.0};
  return {std::sin(gamma), -std::cos(gamma)};
}

TraceResult trace(const Ray2D& ray, const WedgeGeometry& geom, int max_bounces) {
  WedgeGeometry::validate_angle(geom.gamma);
  double g = geom.gamma;
  Vec2 nh = plate_normal(FirstPlate::horizontal, g);
  Vec2 nt = plate_normal(FirstPlate::top, g);
  Vec2 along_top{std::cos(g), std::sin(g)};
  Vec2 pos = ray.origin;
  if (!(pos.dot(nh) > 0.0) || !(pos.dot(nt) > 0.0)) {
    throw InvalidArgument("ray origin is not strictly inside the wedge");
  }
  double dn = ray.direction.norm();
  if (!(dn > 0.0)) throw InvalidArgument("zero ray direction");
  Vec2 d = ray.direction * (1.0 / dn);
  double scale = std::max(1.0, pos.norm());

  TraceResult out;
  for (int bounce = 0; bounce < max_bounces; ++bounce) {
    double best_t = std::numeric_limits<double>::infinity();
    std::optional<FirstPlate> plate;
    double tiny = 1e-14 * scale;
    double dh = d.dot(nh);
    if (dh < 0.0) {
      double t = -pos.dot(nh) / dh;
      Vec2 hit = pos + d * t;
      if (t > tiny && hit.x >= 0.0) {
        best_t = t;
        plate = FirstPlate::horizontal;
      }
    }
    double dt = d.dot(nt);
    if (dt < 0.0) {
      double t = -pos.dot(nt) / dt;
      Vec2 hit = pos + d * t;
      if (t > tiny && hit.dot(along_top) >= 0.0 && t < best_t) {
        best_t = t;
        plate = FirstPlate::top;
      }
    }
    if (!plate) {
      out.exited = true;
      break;
    }
    Vec2 hit = pos + d * best_t;
    out.points.push_back(hit);
    out.plates.push_back(*plate);
    out.segment_lengths.push_back(best_t);
    if (hit.norm() < 1e-12 * scale) {
      out.grazing = true;
      break;
    }
    Vec2 n = *plate == FirstPlate::horizontal ? nh : nt;
    d = d - n * (2.0 * d.dot(n));
    out.directions.push_back(d);
    pos = hit;
  }
  return out;
}

ImageResult image_point(const PolarPoint& point, double gamma, int n, FirstPlate first) {
  WedgeGeometry::validate_angle(gamma);
  if (n < 1) throw InvalidArgument("image needs at least one reflection");
  double alpha0 = pi / 2 - point.psi;
  double alpha = alpha0;
  for (int k = 0; k < n; ++k) {
    double mirror = first == FirstPlate::horizontal ? -k * gamma : (k + 1) * gamma;
    alpha = 2.0 * mirror - alpha;
  }
  ImageResult out;
  out.image = {point.r * std::cos(alpha), point.r * std::sin(alpha)};
  out.sweep = std::abs(alpha - alpha0);
  out.exists = out.sweep > 0.0 && out.sweep < pi;
  return out;
}

double images_chord(const PolarPoint& point, const WedgeGeometry& geom, int n,
                    FirstPlate first) {
  ImageResult img = image_point(point, geom.gamma, n, first);
  if (!img.exists) throw PathNotFound("unfolded chord leaves the wedge images");
  return (img.image - to_cartesian(point)).norm();
}

double images_direction(const PolarPoint& point, const WedgeGeometry& geom, int n,
                        FirstPlate first) {
  ImageResult img = image_point(point, geom.gamma, n, first);
  if (!img.exists) throw PathNotFound("unfolded chord leaves the wedge images");
  return angle_of(img.image - to_cartesian(point));
}

namespace {

struct Closure {
  double miss;
  double along;
  TraceResult path;
};

std::optional<Closure> closure_at(const Vec2& p, double phi, const WedgeGeometry& geom,
                                  int n) {
  TraceResult tr = trace(Ray2D::from_angle(p, phi), geom, n);
  if (tr.exited || tr.grazing || int(tr.points.size()) < n) return std::nullopt;
  Vec2 last = tr.points.back();
  Vec2 d = tr.directions.back();
  return Closure{d.cross(p - last), d.dot(p - last), std::move(tr)};
}

}  // namespace

OrbitSearchResult find_closed_orbits(const PolarPoint& point, const WedgeGeometry& geom,
                                     int n, int angular_resolution) {
  require_inside(point, geom.gamma);
  if (n < 1) throw InvalidArgument("orbit search needs at least one bounce");
  if (angular_resolution < 8) throw InvalidArgument("angular resolution too coarse");
  const double angle_tol = 1e-12;
  OrbitSearchResult out;
  out.resolution = angular_resolution;
  out.refinement_tolerance = angle_tol;
  Vec2 p = to_cartesian(point);
  double accept = 1e-8 * std::max(1.0, point.r);

  int N = angular_resolution;
  auto phi_of = [&](int i) { return -pi + 2.0 * pi * i / N; };
  std::vector<std::optional<Closure>> samples;
  samples.reserve(N + 1);
  for (int i = 0; i < N; ++i) samples.push_back(closure_at(p, phi_of(i), geom, n));
  samples.push_back(samples.front());

  std::vector<double> roots;
  for (int i = 0; i < N; ++i) {
    const auto& lo = samples[i];
    const auto& hi = samples[i + 1];
    if (!lo || !hi) continue;
    if (lo->miss * hi->miss > 0.0) continue;
    double a = phi_of(i);
    double b = a + 2.0 * pi / N;
    double fa = lo->miss;
    bool broken = false;
    while (b - a > angle_tol) {
      double mid = 0.5 * (a + b);
      auto c = closure_at(p, mid, geom, n);
      if (!c) {
        broken = true;
        break;
      }
      if (c->miss == 0.0) {
        a = b = mid;
        break;
      }
      if ((c->miss > 0.0) == (fa > 0.0)) {
        a = mid;
        fa = c->miss;
      } else {
        b = mid;
      }
    }
    if (broken) continue;
    roots.push_back(0.5 * (a + b));
  }

  std::vector<double> kept;
  for (double r : roots) {
    bool dup = false;
    for (double k : kept) {
      if (std::abs(std::remainder(r - k, 2.0 * pi)) < 1e-9) dup = true;
    }
    if (!dup) kept.push_back(r);
  }

  for (double phi : kept) {
    auto c = closure_at(p, phi, geom, n);
    if (!c || std::abs(c->miss) > accept || !(c->along > 0.0)) continue;
    FoundOrbit orbit;
    orbit.launch_angle = std::remainder(phi, 2.0 * pi);
    orbit.closure = c->miss;
    orbit.points = c->path.points;
    orbit.first_plate = c->path.plates.front();
    orbit.total_length = c->along;
    for (double l : c->path.segment_lengths) orbit.total_length += l;
    bool graze = false;
    for (const Vec2& q : orbit.points) {
      if (q.norm() < 1e-9 * point.r) graze = true;
    }
    (graze ? out.grazing : out.found).push_back(std::move(orbit));
  }
  return out;
}

QuadratureResult adaptive_psi_quadrature(const std::function<double(double)>& f,
                                         double a, double b, double rel_tol,
                                         double abs_floor) {
  if (!(a <= b)) throw InvalidArgument("quadrature interval is reversed");
  if (!(rel_tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (a == b) return {0.0, 0.0};
  double error = 0.0;
  double l1 = 0.0;
  double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 20, rel_tol, &error, &l1);
  if (!std::isfinite(value) || error > std::max(rel_tol * std::abs(value), abs_floor)) {
    throw ConvergenceError("adaptive quadrature did not reach the requested tolerance",
                           value, error);
  }
  return {value, error};
}

namespace {

struct TracedOrbit {
  double length;
  double rho_min;
  double rho_max;
  int argmin;
  int argmax;
};

// Closed orbit through the unit-radius base point at angle psi.
std::optional<TracedOrbit> traced_orbit(double psi, const WedgeGeometry& geom, int n,
                                        FirstPlate first) {
  PolarPoint unit{1.0, psi};
  if (!strictly_inside(unit, geom.gamma)) return std::nullopt;
  ImageResult img = image_point(unit, geom.gamma, n, first);
  if (!img.exists) return std::nullopt;
  Vec2 p = to_cartesian(unit);
  TraceResult tr = trace(Ray2D{p, img.image - p}, geom, n);
  if (tr.exited || tr.grazing || int(tr.points.size()) < n) return std::nullopt;
  TracedOrbit out{0.0, std::numeric_limits<double>::infinity(), 0.0, -1, -1};
  for (double l : tr.segment_lengths) out.length += l;
  out.length += (p - tr.points.back()).norm();
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    if (tr.plates[k] != FirstPlate::top) continue;
    double rho = tr.points[k].norm();
    if (rho < out.rho_min) {
      out.rho_min = rho;
      out.argmin = int(k);
    }
    if (rho > out.rho_max) {
      out.rho_max = rho;
      out.argmax = int(k);
    }
  }
  if (out.argmin < 0) return std::nullopt;
  // Retracing orbits visit the same bounce twice; take the first index that
  // attains the extreme.
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    if (tr.plates[k] != FirstPlate::top) continue;
    double rho = tr.points[k].norm();
    if (rho <= out.rho_min * (1.0 + 1e-12)) {
      out.argmin = int(k);
      break;
    }
  }
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    if (tr.plates[k] != FirstPlate::top) continue;
    double rho = tr.points[k].norm();
    if (rho >= out.rho_max * (1.0 - 1e-12)) {
      out.argmax = int(k);
      break;
    }
  }
  return out;
}

// Splits (lo, hi) into maximal pieces on which `signature` is constant and
// nonzero; edges are located by bisection. The integrands below are smooth
// on each piece.
std::vector<std::pair<double, double>> smooth_pieces(const std::function<int(double)>& signature,
                                                     double lo, double hi, int samples) {
  std::vector<std::pair<double, double>> out;
  double h = (hi - lo) / samples;
  auto x_at = [&](int i) {
    if (i == 0) return lo + 1e-6 * h;
    if (i == samples) return hi - 1e-6 * h;
    return lo + i * h;
  };
  auto edge = [&](double a, double b, int sa) {
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
      double mid = 0.5 * (a + b);
      if (signature(mid) == sa) {
        a = mid;
      } else {
        b = mid;
      }
    }
    return 0.5 * (a + b);
  };
  double start = lo;
  int prev = signature(x_at(0));
  double prev_x = x_at(0);
  for (int i = 1; i <= samples; ++i) {
    double x = x_at(i);
    int sig = signature(x);
    if (sig != prev) {
      double e = edge(prev_x, x, prev);
      if (prev != 0) out.emplace_back(start, e);
      start = e;
      prev = sig;
    }
    prev_x = x;
  }
  if (prev != 0) out.emplace_back(start, hi);
  return out;
}

QuadratureResult integrate_pieces(const std::function<double(double)>& f,
                                  const std::vector<std::pair<double, double>>& pieces,
                                  double rel_tol) {
  QuadratureResult total;
  for (auto [a, b] : pieces) {
    if (!(a < b)) continue;
    QuadratureResult part = adaptive_psi_quadrature(f, a, b, rel_tol, 1e-18);
    total.value += part.value;
    total.error += part.error;
  }
  return total;
}

}  // namespace

QuadratureResult traced_even_energy(const WedgeGeometry& geom, int m, double rel_tol) {
  geom.validate();
  if (m < 1) throw InvalidArgument("even order must be positive");
  int n = 2 * m;
  auto radial = [&](const TracedOrbit& o) {
    return std::pair{geom.r0 / o.rho_min, geom.r1 / o.rho_max};
  };
  auto integrand = [&](double psi) {
    auto orbit = traced_orbit(psi, geom, n, FirstPlate::horizontal);
    if (!orbit) return 0.0;
    auto [lo, hi] = radial(*orbit);
    if (!(lo < hi)) return 0.0;
    double l4 = std::pow(orbit->length, 4);
    return -geom.width / (4.0 * pi * pi * l4) * (1.0 / (lo * lo) - 1.0 / (hi * hi));
  };
  auto signature = [&](double psi) {
    auto orbit = traced_orbit(psi, geom, n, FirstPlate::horizontal);
    if (!orbit) return 0;
    auto [lo, hi] = radial(*orbit);
    if (!(lo < hi)) return 0;
    return 1 + orbit->argmin * (n + 1) + orbit->argmax;
  };
  auto pieces = smooth_pieces(signature, pi / 2 - geom.gamma, pi / 2, 128);
  return integrate_pieces(integrand, pieces, rel_tol);
}

QuadratureResult traced_odd_energy(const WedgeGeometry& geom, int m, FirstPlate first,
                                   double rel_tol) {
  geom.validate();
  if (m < 1) throw InvalidArgument("odd order must be positive");
  int n = 2 * m + 1;
  auto integrand = [&](double psi) {
    auto orbit = traced_orbit(psi, geom, n, first);
    if (!orbit) return 0.0;
    double lo = geom.r0 / orbit->rho_min;
    return geom.width / (4.0 * pi * pi * std::pow(orbit->length, 4) * lo * lo);
  };
  auto signature = [&](double psi) {
    auto orbit = traced_orbit(psi, geom, n, first);
    return orbit ? 1 + orbit->argmin : 0;
  };
  auto pieces = smooth_pieces(signature, pi / 2 - geom.gamma, pi / 2, 256);
  return integrate_pieces(integrand, pieces, rel_tol);
}

}  // namespace casimir::oracle
