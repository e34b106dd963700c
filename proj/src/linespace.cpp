#include "casimir/linespace.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"

namespace casimir::linespace {

namespace {

double norm2(Complex c) { return std::norm(c); }

void require_positive_lengths(std::span<const double> lengths) {
  for (double l : lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw InvalidArgument("segment lengths must be positive and finite");
    }
  }
}

}  // namespace

double Tolerance::scaled(double magnitude) const {
  return absolute * std::max(1.0, std::abs(magnitude));
}

Vec3 Vec3::cross(const Vec3& o) const {
  return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
}

double Vec3::norm() const { return std::sqrt(dot(*this)); }

Direction Direction::finite(Complex xi) {
  if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag())) {
    return infinity();
  }
  Direction d;
  d.xi_ = xi;
  return d;
}

Direction Direction::infinity() { return Direction{}; }

Direction Direction::from_unit_vector(const Vec3& d) {
  double n = d.norm();
  if (!(n > 0.0)) throw InvalidArgument("zero direction vector");
  Vec3 u = d * (1.0 / n);
  if (1.0 + u.z < 1e-15) return infinity();
  return finite(Complex(u.x, u.y) / (1.0 + u.z));
}

Complex Direction::xi() const {
  if (!xi_) throw PointAtInfinity("direction is the point at infinity");
  return *xi_;
}

Vec3 Direction::unit_vector() const {
  if (!xi_) return {0.0, 0.0, -1.0};
  Complex x = *xi_;
  double q = 1.0 + norm2(x);
  Complex h = 2.0 * x / q;
  return {h.real(), h.imag(), (1.0 - norm2(x)) / q};
}

Vec3 OrientedLine::direction() const {
  return Direction::finite(xi).unit_vector();
}

SpacePoint OrientedLine::closest_point() const {
  double q = 1.0 + norm2(xi);
  double q2 = q * q;
  Complex z = 2.0 * (eta - std::conj(eta) * xi * xi) / q2;
  double t = -2.0 * (eta * std::conj(xi) + std::conj(eta) * xi).real() / q2;
  return {z, t};
}

SpacePoint OrientedLine::point_at(double r) const {
  return SpacePoint::from_cartesian(closest_point().cartesian() +
                                    direction() * r);
}

double OrientedLine::parameter_of(const SpacePoint& p) const {
  return (p.cartesian() - closest_point().cartesian()).dot(direction());
}

double OrientedLine::distance_to(const SpacePoint& p) const {
  Vec3 d = p.cartesian() - closest_point().cartesian();
  return d.cross(direction()).norm();
}

OrientedLine OrientedLine::through(const SpacePoint& p, Complex xi) {
  return {xi, incidence(p, xi)};
}

bool BounceFrame::consistent(const Tolerance& tol) const {
  SpacePoint a = from_incoming();
  SpacePoint b = from_normal();
  double scale = std::max(a.cartesian().norm(), b.cartesian().norm());
  return (a.cartesian() - b.cartesian()).norm() <= tol.scaled(scale);
}

Complex incidence(const SpacePoint& p, Complex xi) {
  return 0.5 * (p.z - 2.0 * p.t * xi - std::conj(p.z) * xi * xi);
}

Complex incidence(const SpacePoint& p, const Direction& d) {
  return incidence(p, d.xi());
}

Direction reflect_direction(Complex xi, Complex nu) {
  double nn = norm2(nu);
  Complex num = 2.0 * nu * std::conj(xi) + (1.0 - nn);
  Complex den = (1.0 - nn) * std::conj(xi) - 2.0 * std::conj(nu);
  if (std::abs(den) <= 1e-15 * std::abs(num)) return Direction::infinity();
  return Direction::finite(num / den);
}

Complex reflect_eta(Complex eta, Complex xi, Complex nu, double s) {
  double nn = norm2(nu);
  Complex den = (1.0 - nn) * std::conj(xi) - 2.0 * std::conj(nu);
  Complex num = -(1.0 + nn) * (1.0 + nn) * std::conj(eta) +
                2.0 * (std::conj(nu) - std::conj(xi)) *
                    (1.0 + nu * std::conj(xi)) * (1.0 + nn) * s;
  if (den == Complex(0.0, 0.0)) {
    throw PointAtInfinity("reflected direction is the point at infinity");
  }
  return num / (den * den);
}

double reflect_r(double r, Complex xi, Complex nu, double s) {
  double nn = norm2(nu);
  double xx = norm2(xi);
  double k = norm2(nu - xi) - norm2(1.0 + nu * std::conj(xi));
  return r + 2.0 * k * s / ((1.0 + nn) * (1.0 + xx));
}

double solve_bounce_parameter(Complex eta, Complex xi, Complex nu, Complex chi,
                              const Tolerance& tol) {
  double nn = norm2(nu);
  Complex den = (nu - xi) * (1.0 + std::conj(nu) * xi) * (1.0 + nn);
  double scale = (1.0 + nn) * (1.0 + norm2(xi));
  if (std::abs(den) <= 1e-14 * scale) {
    throw NoIntersection("line is parallel to the normal line");
  }
  Complex a = 1.0 + std::conj(nu) * xi;
  Complex b = nu - xi;
  Complex num = eta * (1.0 + nn) * (1.0 + nn) - a * a * chi + b * b * std::conj(chi);
  Complex s = num / den;
  if (std::abs(s.imag()) > tol.scaled(std::abs(s.real()))) {
    throw NoIntersection("lines do not meet");
  }
  return s.real();
}

OrientedLine reflect(const OrientedLine& in, const OrientedLine& normal,
                     const Tolerance& tol) {
  double s = solve_bounce_parameter(in.eta, in.xi, normal.xi, normal.eta, tol);
  Direction out = reflect_direction(in.xi, normal.xi);
  return {out.xi(), reflect_eta(in.eta, in.xi, normal.xi, s)};
}

double van_vleck_plane_chain(std::span<const double> segment_lengths) {
  if (segment_lengths.empty()) throw InvalidArgument("empty segment chain");
  require_positive_lengths(segment_lengths);
  double total = 0.0;
  for (double l : segment_lengths) total += l;
  return 1.0 / (total * total);
}

double psi_chain(double l0, std::span<const double> segment_lengths) {
  if (!(l0 > 0.0) || !std::isfinite(l0)) {
    throw InvalidArgument("initial length must be positive");
  }
  require_positive_lengths(segment_lengths);
  double root_psi = l0;
  for (double l : segment_lengths) root_psi += l;
  return 1.0 / (root_psi * root_psi);
}

namespace planar {

Direction Direction::finite(double xi) {
  if (!std::isfinite(xi)) return infinity();
  Direction d;
  d.xi_ = xi;
  return d;
}

Direction Direction::infinity() { return Direction{}; }

Direction Direction::from_angle(double phi) {
  double p = std::remainder(phi, 2.0 * pi);
  if (std::abs(p) == pi) return infinity();
  return finite(std::tan(p / 2.0));
}

double Direction::xi() const {
  if (!xi_) throw PointAtInfinity("direction is the point at infinity");
  return *xi_;
}

double Direction::angle() const { return xi_ ? 2.0 * std::atan(*xi_) : pi; }
double Direction::da() const { return std::sin(angle()); }
double Direction::db() const { return std::cos(angle()); }

double Line::da() const { return 2.0 * xi / (1.0 + xi * xi); }
double Line::db() const { return (1.0 - xi * xi) / (1.0 + xi * xi); }

double Line::closest_a() const {
  double q = 1.0 + xi * xi;
  return 2.0 * eta * (1.0 - xi * xi) / (q * q);
}

double Line::closest_b() const {
  double q = 1.0 + xi * xi;
  return -4.0 * eta * xi / (q * q);
}

double incidence(double a, double b, double xi) {
  return 0.5 * (a - 2.0 * b * xi - a * xi * xi);
}

Direction reflect_direction(double xi, double nu) {
  double num = 2.0 * nu * xi + 1.0 - nu * nu;
  double den = (1.0 - nu * nu) * xi - 2.0 * nu;
  if (std::abs(den) <= 1e-15 * std::abs(num)) return Direction::infinity();
  return Direction::finite(num / den);
}

double reflect_eta(double eta, double xi, double nu, double s) {
  double q = 1.0 + nu * nu;
  double den = (1.0 - nu * nu) * xi - 2.0 * nu;
  if (den == 0.0) {
    throw PointAtInfinity("reflected direction is the point at infinity");
  }
  return (-q * q * eta + 2.0 * (nu - xi) * (1.0 + nu * xi) * q * s) /
         (den * den);
}

double reflect_r(double r, double xi, double nu, double s) {
  double a = nu - xi;
  double b = 1.0 + nu * xi;
  return r + 2.0 * (a * a - b * b) * s / ((1.0 + nu * nu) * (1.0 + xi * xi));
}

double solve_bounce_parameter(double eta, double xi, double nu, double chi) {
  double q = 1.0 + nu * nu;
  double a = 1.0 + nu * xi;
  double b = nu - xi;
  double den = b * a * q;
  if (std::abs(den) <= 1e-14 * q * (1.0 + xi * xi)) {
    throw NoIntersection("line is parallel to the normal line");
  }
  return (eta * q * q - a * a * chi + b * b * chi) / den;
}

}  // namespace planar

}  // namespace casimir::linespace
