#include "casimir/wedgepaths.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "casimir/errors.hpp"

namespace casimir::paths {

using linespace::SpacePoint;

namespace {

void require_order(int m, int min_m) {
  if (m < min_m) throw InvalidArgument("bounce order out of range");
}

// Roots of c xi^2 - 2 s xi - c = 0, i.e. (s +- 1)/c, evaluated without
// cancellation. When c vanishes the plus or minus root (whichever has the
// sign of s) is at infinity and the other is zero.
RootPair quadratic_roots(double s, double c) {
  RootPair out{planar::Direction::infinity(), planar::Direction::infinity(), false};
  double sign = s >= 0.0 ? 1.0 : -1.0;
  if (std::abs(c) < 1e-14) {
    out.degenerate = true;
    if (sign > 0) {
      out.minus = planar::Direction::finite(0.0);
    } else {
      out.plus = planar::Direction::finite(0.0);
    }
    return out;
  }
  double big = (s + sign) / c;
  double small = -1.0 / big;
  if (sign > 0) {
    out.plus = planar::Direction::finite(big);
    out.minus = planar::Direction::finite(small);
  } else {
    out.minus = planar::Direction::finite(big);
    out.plus = planar::Direction::finite(small);
  }
  return out;
}

bool heads_down(const planar::Direction& d) {
  return d.is_infinite() || std::abs(d.xi()) > 1.0;
}

InitialDirection pick_downward(const RootPair& roots) {
  if (heads_down(roots.plus)) return {roots.plus, Branch::plus, roots.degenerate};
  if (heads_down(roots.minus)) return {roots.minus, Branch::minus, roots.degenerate};
  throw PathNotFound("no root of the closed-path quadratic heads for the horizontal plate");
}

InitialDirection mirror_through_bisector(const InitialDirection& d, double beta) {
  return {planar::Direction::from_angle(beta - d.direction.angle()), d.root,
          d.degenerate};
}

struct Hit {
  double r;
  double a;
  double b;
  FirstPlate plate;
};

// First plate hit by the line (closest point p0, unit direction d) strictly
// beyond parameter r_from.
std::optional<Hit> first_hit(double p0a, double p0b, double da, double db,
                             double r_from, double gamma) {
  std::optional<Hit> best;
  double scale = std::max({1.0, std::abs(p0a), std::abs(p0b), std::abs(r_from)});
  double eps = 1e-12 * scale;
  if (db < 0.0) {
    double r = -p0b / db;
    double a = p0a + r * da;
    if (r > r_from + eps && a > 0.0) best = Hit{r, a, 0.0, FirstPlate::horizontal};
  }
  double na = std::sin(gamma);
  double nb = -std::cos(gamma);
  double nd = na * da + nb * db;
  if (nd < 0.0) {
    double r = -(na * p0a + nb * p0b) / nd;
    double a = p0a + r * da;
    if (r > r_from + eps && a > 0.0 && (!best || r < best->r)) {
      best = Hit{r, a, a * std::tan(gamma), FirstPlate::top};
    }
  }
  return best;
}

// Lengths l01, l12, ..., ln0 from a single sign choice fixed by l01.
std::vector<double> signed_lengths(double l01_raw, const std::vector<double>& inner_raw,
                                   double last_raw, Branch& sign_out) {
  double sigma = l01_raw >= 0.0 ? 1.0 : -1.0;
  sign_out = sigma > 0 ? Branch::plus : Branch::minus;
  std::vector<double> out;
  out.push_back(sigma * l01_raw);
  for (double l : inner_raw) out.push_back(-sigma * l);
  out.push_back(sigma * last_raw);
  for (double l : out) {
    if (!(l > 0.0)) throw Error("closed-form segment lengths admit no consistent sign");
  }
  return out;
}

void finish(BouncePath& path) {
  path.total_length = 0.0;
  for (double l : path.segment_lengths) path.total_length += l;
}

void reverse_traversal(BouncePath& path) {
  std::reverse(path.points.begin(), path.points.end());
  std::reverse(path.plates.begin(), path.plates.end());
  std::reverse(path.segment_lengths.begin(), path.segment_lengths.end());
}

}  // namespace

bool even_exists(const WedgeGeometry& geom, int m) {
  WedgeGeometry::validate_angle(geom.gamma);
  require_order(m, 1);
  return geom.gamma < pi / (2.0 * m);
}

double even_length(const PolarPoint& point, const WedgeGeometry& geom, int m) {
  require_inside(point, geom.gamma);
  if (!even_exists(geom, m)) throw PathNotFound("no closed even path of this order");
  return 2.0 * point.r * std::abs(std::sin(m * geom.gamma));
}

OddBranches odd_exists(const PolarPoint& point, const WedgeGeometry& geom, int m) {
  WedgeGeometry::validate_angle(geom.gamma);
  require_order(m, 0);
  require_inside(point, geom.gamma);
  OddBranches out;
  if (m > 0 && !(geom.gamma < pi / (2.0 * m))) return out;
  out.horizontal = point.psi > m * geom.gamma;
  out.top = point.psi < pi - (m + 1) * geom.gamma;
  return out;
}

double odd_length(const PolarPoint& point, const WedgeGeometry& geom, int m,
                  FirstPlate first) {
  if (!odd_exists(point, geom, m).contains(first)) {
    throw PathNotFound("no closed odd path with this first plate");
  }
  double g = geom.gamma;
  double angle = first == FirstPlate::horizontal ? point.psi - m * g
                                                 : point.psi + (m + 1) * g;
  return 2.0 * point.r * std::abs(std::cos(angle));
}

RootPair even_direction_roots(const PolarPoint& point, const WedgeGeometry& geom,
                              int m) {
  WedgeGeometry::validate_angle(geom.gamma);
  require_order(m, 1);
  double u = point.psi - m * geom.beta();
  return quadratic_roots(std::sin(u), std::cos(u));
}

RootPair odd_direction_roots(const WedgeGeometry& geom, int m) {
  WedgeGeometry::validate_angle(geom.gamma);
  require_order(m, 0);
  double mb = m * geom.beta();
  return quadratic_roots(std::cos(mb), std::sin(mb));
}

InitialDirection closed_even_initial_direction(const PolarPoint& point,
                                               const WedgeGeometry& geom, int m,
                                               FirstPlate first) {
  require_inside(point, geom.gamma);
  if (!even_exists(geom, m)) throw PathNotFound("no closed even path of this order");
  if (first == FirstPlate::horizontal) {
    return pick_downward(even_direction_roots(point, geom, m));
  }
  double beta = geom.beta();
  PolarPoint mirrored{point.r, beta - point.psi};
  return mirror_through_bisector(
      pick_downward(even_direction_roots(mirrored, geom, m)), beta);
}

InitialDirection closed_odd_initial_direction(const PolarPoint& point,
                                              const WedgeGeometry& geom, int m,
                                              FirstPlate first) {
  if (!odd_exists(point, geom, m).contains(first)) {
    throw PathNotFound("no closed odd path with this first plate");
  }
  InitialDirection h = pick_downward(odd_direction_roots(geom, m));
  if (first == FirstPlate::horizontal) return h;
  return mirror_through_bisector(h, geom.beta());
}

RaySequence reflected_ray_sequence(const SpacePoint& start, double xi1,
                                   const WedgeGeometry& geom, int k_max) {
  WedgeGeometry::validate_angle(geom.gamma);
  if (k_max < 0) throw InvalidArgument("negative reflection count");
  double beta = geom.beta();
  double a0 = start.z.real();
  double b0 = start.t;
  double eta1 = planar::incidence(a0, b0, xi1);

  auto ray = [&](int j) -> planar::Line {
    if (j == 1) return {xi1, eta1};
    if (j % 2 == 0) {
      double w = (j / 2 - 1) * beta;
      double d = xi1 * std::cos(w) + std::sin(w);
      if (d == 0.0) throw PointAtInfinity("reflected ray is vertical");
      return {(std::cos(w) - xi1 * std::sin(w)) / d, -eta1 / (d * d)};
    }
    double w = ((j - 1) / 2) * beta;
    double d = std::cos(w) - xi1 * std::sin(w);
    if (d == 0.0) throw PointAtInfinity("reflected ray is vertical");
    return {(xi1 * std::cos(w) + std::sin(w)) / d, eta1 / (d * d)};
  };

  RaySequence seq;
  seq.rays.push_back(ray(1));
  double pa = a0;
  double pb = b0;
  for (int j = 1; j <= k_max; ++j) {
    const planar::Line& line = seq.rays.back();
    double p0a = line.closest_a();
    double p0b = line.closest_b();
    double da = line.da();
    double db = line.db();
    double r_from = (pa - p0a) * da + (pb - p0b) * db;
    FirstPlate expected = j % 2 == 1 ? FirstPlate::horizontal : FirstPlate::top;
    auto hit = first_hit(p0a, p0b, da, db, r_from, geom.gamma);
    if (!hit || hit->plate != expected) {
      if (j == 1) {
        throw InvalidArgument("launched ray does not strike the horizontal plate first");
      }
      seq.exited = true;
      break;
    }
    seq.bounce_points.push_back({{hit->a, 0.0}, hit->b});
    pa = hit->a;
    pb = hit->b;
    seq.rays.push_back(ray(j + 1));
  }
  return seq;
}

BouncePath even_sequence(const PolarPoint& point, const WedgeGeometry& geom, int m,
                         FirstPlate first) {
  InitialDirection launch = closed_even_initial_direction(point, geom, m, first);
  double beta = geom.beta();
  double R = point.r;
  double psi = point.psi;
  double cm = R * std::cos(m * beta);
  double sb = std::sin(beta);
  double cb = std::cos(beta);

  BouncePath path;
  path.start = point;
  path.spec = {2 * m, first, launch.root};
  for (int k = 1; k <= m; ++k) {
    double a_odd = cm / std::sin(psi - (m - 2 * k + 2) * beta);
    path.points.push_back({{a_odd, 0.0}, 0.0});
    path.plates.push_back(FirstPlate::horizontal);
    double den = std::sin(psi - (m - 2 * k + 1) * beta);
    path.points.push_back({{cm * cb / den, 0.0}, -cm * sb / den});
    path.plates.push_back(FirstPlate::top);
  }
  std::vector<double> inner;
  for (int k = 1; k <= 2 * m - 1; ++k) {
    inner.push_back(cm * sb /
                    (std::sin(psi - (m - k) * beta) * std::sin(psi - (m - k + 1) * beta)));
  }
  double l01 = R * std::cos(psi) / std::sin(psi - m * beta);
  double last = -R * std::cos(psi - beta) / std::sin(psi + (m - 1) * beta);
  path.segment_lengths = signed_lengths(l01, inner, last, path.length_sign);
  if (first == FirstPlate::top) reverse_traversal(path);
  finish(path);
  return path;
}

BouncePath odd_sequence(const PolarPoint& point, const WedgeGeometry& geom, int m,
                        FirstPlate first) {
  InitialDirection launch = closed_odd_initial_direction(point, geom, m, first);
  double beta = geom.beta();
  double R = point.r;
  double psi = point.psi;
  double sb = std::sin(beta);
  double cb = std::cos(beta);

  BouncePath path;
  path.start = point;
  path.spec = {2 * m + 1, first, launch.root};
  bool h = first == FirstPlate::horizontal;
  double S = h ? R * std::sin(psi + m * beta) : R * std::sin(psi - (m + 1) * beta);
  for (int j = 1; j <= 2 * m + 1; ++j) {
    // Odd indices lie on the first plate.
    bool on_first = j % 2 == 1;
    double c = std::cos((m + 1 - j) * beta);
    if (on_first == h) {
      path.points.push_back({{S / c, 0.0}, 0.0});
      path.plates.push_back(FirstPlate::horizontal);
    } else {
      path.points.push_back({{S * cb / c, 0.0}, -S * sb / c});
      path.plates.push_back(FirstPlate::top);
    }
  }
  // Lengths are those of the horizontal-first orbit through the mirrored point.
  double psi_h = h ? psi : beta - psi;
  double Sh = R * std::sin(psi_h + m * beta);
  std::vector<double> inner;
  for (int j = 1; j <= 2 * m; ++j) {
    inner.push_back(Sh * sb / (std::cos((m + 1 - j) * beta) * std::cos((m - j) * beta)));
  }
  double l01 = R * std::cos(psi_h) / std::cos(m * beta);
  path.segment_lengths = signed_lengths(l01, inner, l01, path.length_sign);
  finish(path);
  return path;
}

BouncePath closed_path(const PolarPoint& point, const WedgeGeometry& geom,
                       const ClosedPathSpec& spec) {
  if (spec.bounces < 1) throw InvalidArgument("bounce count must be positive");
  if (spec.is_even()) return even_sequence(point, geom, spec.order(), spec.first_plate);
  return odd_sequence(point, geom, spec.order(), spec.first_plate);
}

std::vector<ClosedPathSpec> enumerate_closed_paths(const PolarPoint& point,
                                                   const WedgeGeometry& geom,
                                                   int max_bounces) {
  require_inside(point, geom.gamma);
  std::vector<ClosedPathSpec> out;
  for (int n = 2; n <= max_bounces; ++n) {
    int m = n / 2;
    for (FirstPlate first : {FirstPlate::horizontal, FirstPlate::top}) {
      InitialDirection d;
      if (n % 2 == 0) {
        if (!even_exists(geom, m)) continue;
        d = closed_even_initial_direction(point, geom, m, first);
      } else {
        if (!odd_exists(point, geom, m).contains(first)) continue;
        d = closed_odd_initial_direction(point, geom, m, first);
      }
      out.push_back({n, first, d.root});
    }
  }
  return out;
}

IdentityResiduals trig_identity_check(double psi, double beta, int m) {
  require_order(m, 1);
  auto checked = [](double den) {
    if (std::abs(den) < 1e-14) throw InvalidArgument("singular identity denominator");
    return den;
  };
  double sb = std::sin(beta);

  double scale = 2.0 * std::abs(std::sin(m * beta));
  double t1 = std::cos(psi - beta) / checked(std::sin(psi + (m - 1) * beta));
  double t2 = std::cos(psi) / checked(std::sin(psi - m * beta));
  double lhs = t1 - t2;
  scale = std::max({scale, std::abs(t1), std::abs(t2)});
  for (int k = 1; k <= 2 * m - 1; ++k) {
    double t = std::cos(m * beta) * sb /
               (checked(std::sin(psi - (m - k) * beta)) *
                checked(std::sin(psi - (m - k + 1) * beta)));
    scale = std::max(scale, std::abs(t));
    lhs += t;
  }
  double even = std::abs(lhs - 2.0 * std::sin(m * beta)) / std::max(1.0, scale);

  double rhs = 2.0 * std::cos(psi + (m - 1) * beta);
  double u = 2.0 * std::cos(psi) / checked(std::cos((m - 1) * beta));
  double lhs2 = u;
  scale = std::max(std::abs(rhs), std::abs(u));
  for (int k = 1; k <= 2 * m - 2; ++k) {
    double t = std::sin(psi + (m - 1) * beta) * sb /
               (checked(std::cos((m - k) * beta)) * checked(std::cos((m - k - 1) * beta)));
    scale = std::max(scale, std::abs(t));
    lhs2 -= t;
  }
  double odd = std::abs(lhs2 - rhs) / std::max(1.0, scale);
  return {even, odd};
}

}  // namespace casimir::paths
