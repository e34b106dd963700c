#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "casimir/errors.hpp"
#include "casimir/linespace.hpp"
#include "generators.hpp"

using namespace casimir;
using namespace casimir::linespace;

namespace {

Vec3 mirror(const Vec3& d, const Vec3& n) { return d - n * (2.0 * d.dot(n)); }

double gap(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

Complex random_xi(gen::Source& g) {
  return std::polar(g.log_uniform(0.05, 20.0), g.uniform(-pi, pi));
}

}  // namespace

TEST_CASE("incidence examples") {
  CHECK(std::abs(incidence({{0.0, 0.0}, 5.0}, 0.0)) == 0.0);
  CHECK(incidence({{1.0, 0.0}, 0.0}, 0.0) == Complex(0.5, 0.0));
  CHECK(std::abs(incidence({{1.0, 0.0}, 1.0}, 1.0) - Complex(-1.0, 0.0)) < 1e-15);
  CHECK_THROWS_AS(incidence({{1.0, 0.0}, 1.0}, Direction::infinity()), PointAtInfinity);
}

TEST_CASE("oriented line through a point contains it") {
  gen::Source g(11);
  for (int i = 0; i < 500; ++i) {
    SpacePoint p{{g.uniform(-5, 5), g.uniform(-5, 5)}, g.uniform(-5, 5)};
    OrientedLine line = OrientedLine::through(p, random_xi(g));
    CHECK(line.distance_to(p) < 1e-10 * std::max(1.0, p.cartesian().norm()));
    SpacePoint c = line.closest_point();
    CHECK(std::abs(c.cartesian().dot(line.direction())) < 1e-10);
  }
}

TEST_CASE("reflect_direction examples") {
  CHECK(reflect_direction(0.414214, 0.0).xi().real() == doctest::Approx(2.414214).epsilon(1e-5));
  Complex nu(0.3, -0.7);
  Complex back = reflect_direction(nu, nu).xi();
  CHECK(std::abs(back - (-1.0 / std::conj(nu))) < 1e-14);
  CHECK(reflect_direction(Complex(1.0, 0.0), Complex(1.0, 0.0)).xi() == Complex(-1.0, 0.0));
}

TEST_CASE("reflect_direction is the mirror law and an involution") {
  gen::Source g(12);
  for (int i = 0; i < 1000; ++i) {
    Complex xi = random_xi(g);
    Complex nu = random_xi(g);
    Direction out = reflect_direction(xi, nu);
    if (out.is_infinite()) continue;
    Vec3 d = Direction::finite(xi).unit_vector();
    Vec3 n = Direction::finite(nu).unit_vector();
    CHECK(gap(out.unit_vector(), mirror(d, n)) < 1e-12);
    Direction twice = reflect_direction(out.xi(), nu);
    if (!twice.is_infinite())
      CHECK(std::abs(twice.xi() - xi) < 1e-9 * std::max(1.0, std::abs(xi)));
  }
}

TEST_CASE("reflect_eta and reflect_r examples") {
  CHECK(std::abs(reflect_eta(0.0, 0.5, 0.5, 0.0)) == 0.0);
  CHECK(reflect_eta(0.3, 0.4, -1.2, 0.7).imag() == 0.0);
  CHECK(reflect_r(2.5, Complex(0.2, 0.1), Complex(-0.4, 0.9), 0.0) == doctest::Approx(2.5));
  Complex nu(0.6, -0.2);
  CHECK(reflect_r(3.0, nu, nu, 0.4) == doctest::Approx(3.0 - 0.8));
  CHECK(solve_bounce_parameter(0.0, Complex(0.3, 0.2), Complex(-1.1, 0.4), 0.0) == 0.0);
}

TEST_CASE("reflected line passes through the Euclidean bounce point") {
  gen::Source g(13);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    SpacePoint p{{g.uniform(-3, 3), g.uniform(-3, 3)}, g.uniform(-3, 3)};
    Complex xi = random_xi(g);
    Complex nu = random_xi(g);
    OrientedLine in = OrientedLine::through(p, xi);
    OrientedLine normal = OrientedLine::through(p, nu);
    Vec3 d = in.direction();
    Vec3 n = normal.direction();
    if (std::abs(std::abs(d.dot(n)) - 1.0) < 1e-6) continue;
    if (reflect_direction(xi, nu).is_infinite()) continue;
    double s = solve_bounce_parameter(in.eta, xi, nu, normal.eta);
    CHECK(gap(normal.point_at(s).cartesian(), p.cartesian()) < 1e-9 * std::max(1.0, p.cartesian().norm()));
    OrientedLine out = reflect(in, normal);
    CHECK(out.distance_to(p) < 1e-9 * std::max(1.0, p.cartesian().norm()));
    CHECK(gap(out.direction(), mirror(d, n)) < 1e-12);
    double r_in = in.parameter_of(p);
    CHECK(reflect_r(r_in, xi, nu, s) == doctest::Approx(out.parameter_of(p)).epsilon(1e-9).scale(1.0));
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("parallel incoming line has no bounce") {
  Complex nu(0.4, 0.1);
  CHECK_THROWS_AS(solve_bounce_parameter(Complex(0.2, 0.3), nu, nu, Complex(1.0, -0.5)), NoIntersection);
}

TEST_CASE("planar operations agree with the complex ones on real data") {
  gen::Source g(14);
  for (int i = 0; i < 1000; ++i) {
    double xi = std::tan(g.uniform(-1.5, 1.5));
    double nu = std::tan(g.uniform(-1.5, 1.5));
    double eta = g.uniform(-3, 3);
    double s = g.uniform(-3, 3);
    planar::Direction pd = planar::reflect_direction(xi, nu);
    Direction cd = reflect_direction(xi, nu);
    REQUIRE(pd.is_infinite() == cd.is_infinite());
    if (pd.is_infinite()) continue;
    CHECK(pd.xi() == doctest::Approx(cd.xi().real()).epsilon(1e-12));
    CHECK(std::abs(cd.xi().imag()) == 0.0);
    CHECK(planar::reflect_eta(eta, xi, nu, s) == doctest::Approx(reflect_eta(eta, xi, nu, s).real()).epsilon(1e-12));
    CHECK(planar::reflect_r(eta, xi, nu, s) == doctest::Approx(reflect_r(eta, xi, nu, s)).epsilon(1e-12));
    double a = g.uniform(-3, 3);
    double b = g.uniform(-3, 3);
    CHECK(planar::incidence(a, b, xi) == doctest::Approx(incidence({{a, 0.0}, b}, xi).real()));
  }
}

TEST_CASE("planar direction angle convention") {
  CHECK(planar::Direction::from_angle(pi).is_infinite());
  CHECK(planar::Direction::from_angle(0.0).xi() == 0.0);
  CHECK(planar::Direction::from_angle(pi / 2).xi() == doctest::Approx(1.0));
  CHECK(planar::Direction::infinity().db() == -1.0);
  gen::Source g(15);
  for (int i = 0; i < 200; ++i) {
    double phi = g.uniform(-3.1, 3.1);
    auto d = planar::Direction::from_angle(phi);
    CHECK(d.angle() == doctest::Approx(phi).epsilon(1e-13));
    planar::Line line{d.xi(), 0.0};
    CHECK(line.da() == doctest::Approx(d.da()));
    CHECK(line.db() == doctest::Approx(d.db()));
  }
}

TEST_CASE("Van Vleck chain examples") {
  std::vector<double> one{2.0};
  std::vector<double> two{1.0, 1.0};
  std::vector<double> three{1.0, 1.0, 1.0};
  CHECK(van_vleck_plane_chain(one) == 0.25);
  CHECK(van_vleck_plane_chain(two) == 0.25);
  CHECK(psi_chain(1.0, {}) == 1.0);
  CHECK(psi_chain(1.0, three) == 1.0 / 16.0);
  std::vector<double> empty;
  std::vector<double> bad{1.0, -0.5};
  CHECK_THROWS_AS(van_vleck_plane_chain(empty), InvalidArgument);
  CHECK_THROWS_AS(van_vleck_plane_chain(bad), InvalidArgument);
  CHECK_THROWS_AS(psi_chain(0.0, one), InvalidArgument);
}

TEST_CASE("psi chain equals the plane-chain determinant") {
  gen::Source g(16);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> chain(g.integer(0, 12));
    for (double& l : chain) l = g.log_uniform(1e-3, 1e3);
    double l0 = g.log_uniform(1e-3, 1e3);
    std::vector<double> full{l0};
    full.insert(full.end(), chain.begin(), chain.end());
    CHECK(psi_chain(l0, chain) == doctest::Approx(van_vleck_plane_chain(full)).epsilon(1e-14));
  }
}
