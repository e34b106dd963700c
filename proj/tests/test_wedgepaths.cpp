#include <cmath>
#include <vector>

#include "doctest.h"

#include "casimir/errors.hpp"
#include "casimir/linespace.hpp"
#include "casimir/oracle.hpp"
#include "casimir/wedgepaths.hpp"
#include "generators.hpp"

using namespace casimir;
using namespace casimir::paths;

namespace {

WedgeGeometry wedge(double gamma) { return {gamma, 1.0, 2.0, 1.0}; }

oracle::TraceResult launch(const PolarPoint& p, const WedgeGeometry& g, const InitialDirection& d,
                           int n) {
  return oracle::trace(oracle::Ray2D::from_angle(oracle::to_cartesian(p), d.direction.angle()), g, n);
}

double closure_gap(const PolarPoint& p, const oracle::TraceResult& tr) {
  oracle::Vec2 start = oracle::to_cartesian(p);
  oracle::Vec2 last = tr.points.back();
  oracle::Vec2 dir = tr.directions.back();
  oracle::Vec2 rel = start - last;
  return std::abs(rel.cross(dir)) + (rel.dot(dir) < 0 ? rel.norm() : 0.0);
}

}  // namespace

TEST_CASE("even existence examples") {
  CHECK(even_exists(wedge(pi / 4), 1));
  CHECK_FALSE(even_exists(wedge(pi / 4), 2));
  CHECK(even_exists(wedge(0.3), 5));
  CHECK_FALSE(even_exists(wedge(0.3), 6));
}

TEST_CASE("even length examples") {
  PolarPoint p{1.0, 1.2};
  CHECK(even_length(p, wedge(pi / 6), 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(even_length(p, wedge(pi / 6), 2) == doctest::Approx(1.7320508075688772).epsilon(1e-14));
  CHECK_THROWS_AS(even_length(p, wedge(pi / 6), 3), PathNotFound);
}

TEST_CASE("odd existence and lengths at a generic point") {
  PolarPoint p{1.0, 1.2};
  WedgeGeometry g = wedge(pi / 6);
  OddBranches b = odd_exists(p, g, 1);
  CHECK(b.horizontal);
  CHECK(b.top);
  CHECK(odd_length(p, g, 1, FirstPlate::horizontal) == doctest::Approx(1.559661127237).epsilon(1e-11));
  CHECK(odd_length(p, g, 1, FirstPlate::top) == doctest::Approx(1.251981297059).epsilon(1e-11));
  CHECK(odd_length(p, g, 2, FirstPlate::horizontal) == doctest::Approx(1.976696806012).epsilon(1e-11));
  CHECK(odd_length(p, g, 2, FirstPlate::top) == doctest::Approx(1.864078171934).epsilon(1e-11));
  CHECK(odd_length(p, g, 0, FirstPlate::horizontal) == doctest::Approx(2.0 * std::cos(1.2)));
}

TEST_CASE("odd existence gates") {
  for (double psi : {1.2, 1.3, 1.4, 1.5}) CHECK(odd_exists({1.0, psi}, wedge(0.5), 4).empty());
  WedgeGeometry g = wedge(0.3);
  OddBranches low = odd_exists({1.0, 1.3}, g, 5);
  CHECK(low.top);
  CHECK_FALSE(low.horizontal);
  OddBranches mid = odd_exists({1.0, 1.4}, g, 5);
  CHECK(mid.empty());
  OddBranches high = odd_exists({1.0, 1.55}, g, 5);
  CHECK(high.horizontal);
  CHECK_FALSE(high.top);
  CHECK_THROWS_AS(odd_length({1.0, 1.4}, g, 5, FirstPlate::top), PathNotFound);
}

TEST_CASE("odd gates agree with the shooting oracle") {
  WedgeGeometry g = wedge(0.3);
  for (double psi : {1.3, 1.4, 1.55}) {
    PolarPoint p{1.0, psi};
    auto found = oracle::find_closed_orbits(p, g, 11);
    CHECK(int(found.found.size()) == odd_exists(p, g, 5).count());
  }
}

TEST_CASE("even roots are antipodal") {
  gen::Source s(21);
  for (int i = 0; i < 500; ++i) {
    int m = s.integer(1, 6);
    WedgeGeometry g = wedge(s.gamma_for_order(m));
    RootPair r = even_direction_roots(s.interior(g.gamma), g, m);
    if (r.degenerate || r.plus.is_infinite() || r.minus.is_infinite()) continue;
    CHECK(r.plus.xi() * r.minus.xi() == doctest::Approx(-1.0).epsilon(1e-9));
  }
}

TEST_CASE("closed-form launches close and lengths match the traces") {
  gen::Source s(22);
  for (int i = 0; i < 1000; ++i) {
    int n = s.integer(2, 13);
    int m = n / 2;
    WedgeGeometry g = wedge(s.gamma_for_order(m));
    PolarPoint p = s.interior(g.gamma);
    FirstPlate first = s.coin() ? FirstPlate::top : FirstPlate::horizontal;
    if (n % 2 == 1 && !odd_exists(p, g, m).contains(first)) continue;
    InitialDirection d = n % 2 == 0 ? closed_even_initial_direction(p, g, m, first)
                                    : closed_odd_initial_direction(p, g, m, first);
    oracle::TraceResult tr = launch(p, g, d, n);
    REQUIRE(int(tr.points.size()) == n);
    CHECK(tr.plates.front() == first);
    CHECK(closure_gap(p, tr) < 1e-9 * p.r);
    BouncePath path = closed_path(p, g, {n, first, d.root});
    double traced = 0.0;
    for (double l : tr.segment_lengths) traced += l;
    traced += (oracle::to_cartesian(p) - tr.points.back()).norm();
    CHECK(path.total_length == doctest::Approx(traced).epsilon(1e-9));
    CHECK(path.total_length == doctest::Approx(oracle::images_chord(p, g, n, first)).epsilon(1e-9));
  }
}

TEST_CASE("reflected ray sequence") {
  gen::Source s(23);
  for (int i = 0; i < 300; ++i) {
    WedgeGeometry g = wedge(s.uniform(0.1, 1.4));
    PolarPoint p = s.interior(g.gamma);
    linespace::SpacePoint start{{p.a(), 0.0}, p.b()};
    double phi = s.uniform(pi / 2 + 0.01, 3 * pi / 2 - 0.01);
    if (oracle::trace(oracle::Ray2D::from_angle(oracle::to_cartesian(p), phi), g, 1).plates.front() !=
        FirstPlate::horizontal)
      continue;
    double xi1 = std::tan(phi / 2);
    RaySequence seq = reflected_ray_sequence(start, xi1, g, 6);
    REQUIRE_FALSE(seq.rays.empty());
    CHECK(seq.rays.front().xi == doctest::Approx(xi1));
    CHECK(seq.rays.front().eta == doctest::Approx(linespace::planar::incidence(p.a(), p.b(), xi1)));

    // Each ray is the previous one reflected in the plate it hits.
    for (std::size_t k = 1; k < seq.rays.size(); ++k) {
      double nu = k % 2 == 1 ? 0.0 : std::tan(g.beta() / 2);
      auto dir = linespace::planar::reflect_direction(seq.rays[k - 1].xi, nu);
      if (dir.is_infinite()) continue;
      CHECK(std::atan(seq.rays[k].xi) == doctest::Approx(std::atan(dir.xi())).epsilon(1e-12).scale(1.0));
      double eta = linespace::planar::reflect_eta(seq.rays[k - 1].eta, seq.rays[k - 1].xi, nu, 0.0);
      CHECK(seq.rays[k].eta == doctest::Approx(eta).epsilon(1e-10).scale(1.0));
    }

    // Odd-index directions advance by 2 beta.
    for (std::size_t k = 0; 2 * k < seq.rays.size(); ++k) {
      double x = seq.rays[2 * k].xi;
      CHECK((1 - x * x) / (1 + x * x) == doctest::Approx(std::cos(phi + 2.0 * k * g.beta())).epsilon(1e-9).scale(1.0));
    }

    oracle::TraceResult tr = oracle::trace(oracle::Ray2D::from_angle(oracle::to_cartesian(p), phi), g, 6);
    std::size_t common = std::min(tr.points.size(), seq.bounce_points.size());
    CHECK(seq.exited == tr.exited);
    for (std::size_t k = 0; k < common; ++k) {
      CHECK(seq.bounce_points[k].z.real() == doctest::Approx(tr.points[k].x).epsilon(1e-10).scale(p.r));
      CHECK(seq.bounce_points[k].t == doctest::Approx(tr.points[k].y).epsilon(1e-10).scale(p.r));
    }
  }
}

TEST_CASE("even sequences lie on alternate plates and sum to the closed length") {
  gen::Source s(24);
  for (int i = 0; i < 500; ++i) {
    int m = s.integer(1, 6);
    WedgeGeometry g = wedge(s.gamma_for_order(m));
    PolarPoint p = s.interior(g.gamma);
    BouncePath path = even_sequence(p, g, m);
    REQUIRE(path.points.size() == std::size_t(2 * m));
    for (int k = 0; k < 2 * m; ++k) {
      const auto& q = path.points[k];
      if (k % 2 == 0) {
        CHECK(q.t == 0.0);
      } else {
        CHECK(q.t == doctest::Approx(-q.z.real() * std::tan(g.beta())).epsilon(1e-12).scale(p.r));
      }
    }
    double sum = 0.0;
    for (double l : path.segment_lengths) {
      CHECK(l > 0.0);
      sum += l;
    }
    CHECK(sum == doctest::Approx(2.0 * p.r * std::abs(std::sin(m * g.beta()))).epsilon(1e-10));
    CHECK(sum == doctest::Approx(even_length(p, g, m)).epsilon(1e-10));
  }
}

TEST_CASE("odd sequences retrace and stay in the wedge") {
  gen::Source s(25);
  int tested = 0;
  for (int i = 0; i < 500; ++i) {
    int m = s.integer(1, 6);
    WedgeGeometry g = wedge(s.gamma_for_order(m));
    PolarPoint p = s.interior(g.gamma);
    FirstPlate first = s.coin() ? FirstPlate::top : FirstPlate::horizontal;
    if (!odd_exists(p, g, m).contains(first)) continue;
    ++tested;
    BouncePath path = odd_sequence(p, g, m, first);
    int n = 2 * m + 1;
    REQUIRE(int(path.points.size()) == n);
    for (int k = 0; k < n; ++k) {
      const auto& q = path.points[k];
      const auto& mirror = path.points[n - 1 - k];
      CHECK(q.z.real() == doctest::Approx(mirror.z.real()).epsilon(1e-9).scale(p.r));
      CHECK(q.t == doctest::Approx(mirror.t).epsilon(1e-9).scale(p.r));
      CHECK(q.t >= -1e-12 * p.r);
      CHECK(q.t <= q.z.real() * std::tan(g.gamma) + 1e-9 * p.r);
      CHECK(path.plates[k] == (k % 2 == 0 ? first : (first == FirstPlate::top ? FirstPlate::horizontal
                                                                              : FirstPlate::top)));
    }
    double sum = 0.0;
    for (double l : path.segment_lengths) {
      CHECK(l > 0.0);
      sum += l;
    }
    CHECK(sum == doctest::Approx(odd_length(p, g, m, first)).epsilon(1e-10));
  }
  CHECK(tested > 200);
}

TEST_CASE("trig identities") {
  for (auto [psi, beta, m] : {std::tuple{1.0, 2.8, 2}, std::tuple{0.7, 2.9, 4}}) {
    IdentityResiduals r = trig_identity_check(psi, beta, m);
    CHECK(r.even < 1e-12);
    CHECK(r.odd < 1e-12);
  }
  gen::Source s(26);
  for (int i = 0; i < 500; ++i) {
    IdentityResiduals r = trig_identity_check(s.uniform(0.1, 1.5), s.uniform(1.6, 3.1), s.integer(1, 6));
    if (std::isfinite(r.even)) CHECK(r.even < 1e-9);
    if (std::isfinite(r.odd)) CHECK(r.odd < 1e-9);
  }
}

TEST_CASE("enumeration matches the shooting oracle count") {
  gen::Source s(27);
  for (int i = 0; i < 40; ++i) {
    WedgeGeometry g = wedge(s.uniform(0.15, 1.2));
    PolarPoint p = s.interior(g.gamma);
    auto specs = enumerate_closed_paths(p, g, 7);
    for (int n = 2; n <= 7; ++n) {
      int expected = 0;
      for (const auto& spec : specs) expected += spec.bounces == n;
      auto found = oracle::find_closed_orbits(p, g, n, 4000);
      if (!found.grazing.empty()) continue;
      CHECK(int(found.found.size()) == expected);
    }
  }
}

TEST_CASE("points outside the wedge are rejected") {
  CHECK_THROWS_AS(closed_path({1.0, 0.2}, wedge(0.3), {2, FirstPlate::horizontal, Branch::plus}),
                  InvalidArgument);
}
