#include <cmath>

#include "doctest.h"

#include "casimir/energy.hpp"
#include "casimir/errors.hpp"
#include "casimir/wedgepaths.hpp"
#include "generators.hpp"

using namespace casimir;
using namespace casimir::energy;

namespace {

WedgeGeometry geometry(double gamma, double r0 = 1.0, double r1 = 2.0, double w = 1.0) {
  return {gamma, r0, r1, w};
}

}  // namespace

TEST_CASE("m0 examples") {
  CHECK(m0_of(geometry(pi / 6)) == 2);
  CHECK(m0_of(geometry(0.3)) == 5);
  CHECK(m0_of(geometry(pi / 2 - 1e-9)) == 1);
  CHECK(m0_of(geometry(pi / 4)) == 1);
}

TEST_CASE("m1 examples") {
  CHECK(m1_of(geometry(pi / 4, 1.0, 2.0)) == 2);
  CHECK(m1_of(geometry(pi / 4, 1.0, 1.0001)) == 2);
  CHECK(m1_of(geometry(0.2, 1.0, 1.2)) == 4);
  CHECK(window_threshold(0.3, 0) == 1.0);
  CHECK(window_threshold(0.3, 2) == doctest::Approx(std::cos(0.6)));
  CHECK(window_threshold(0.3, 3) == doctest::Approx(std::cos(0.9) / std::cos(0.3)));
}

TEST_CASE("reference geometry") {
  EnergyBreakdown e = energy_total(geometry(pi / 4));
  CHECK(e.m0 == 1);
  CHECK(e.m1 == 2);
  REQUIRE(e.even_terms.size() == 1);
  CHECK(e.even_terms[0].kind == DomainKind::full);
  CHECK(e.even_terms[0].value == doctest::Approx(-0.00237471524162).epsilon(1e-11));
  CHECK(e.even_total == doctest::Approx(-0.00474943048323).epsilon(1e-11));
  CHECK(e.grand_total == e.even_total);
  CHECK(e.odd_total == doctest::Approx(0.00158314349441).epsilon(1e-11));
  EnergyBreakdown with_odd = energy_total(geometry(pi / 4), true);
  CHECK(with_odd.grand_total == doctest::Approx(e.even_total + e.odd_total));
}

TEST_CASE("terminal partial term below m0") {
  EnergyBreakdown e = energy_total(geometry(0.2, 1.0, 1.2));
  CHECK(e.m0 == 7);
  CHECK(e.m1 == 4);
  REQUIRE(e.even_terms.size() >= 4);
  CHECK(e.even_terms[0].value == doctest::Approx(-0.0604607538055).epsilon(1e-10));
  CHECK(e.even_terms[1].value == doctest::Approx(-0.00291279505719).epsilon(1e-10));
  CHECK(e.even_terms[2].value == doctest::Approx(-0.000225144819145).epsilon(1e-10));
  CHECK(e.even_terms[3].kind == DomainKind::partial);
  CHECK(e.even_terms[3].value == doctest::Approx(-3.71036051123e-07).epsilon(1e-9));
  for (std::size_t k = 4; k < e.even_terms.size(); ++k) CHECK(e.even_terms[k].value == 0.0);
}

TEST_CASE("m = 1 collapses to the single-circle form") {
  gen::Source s(41);
  for (int i = 0; i < 200; ++i) {
    WedgeGeometry g = s.geometry();
    if (classify_even(g, 1) != DomainKind::full) continue;
    double expected = -g.width * std::cos(g.gamma) / (64 * pi * pi * std::pow(std::sin(g.gamma), 3)) *
                      (1 / (g.r0 * g.r0) - 1 / (g.r1 * g.r1));
    CHECK(full_term(g, 1) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("closed forms against quadrature and antiderivative") {
  gen::Source s(42);
  for (int i = 0; i < 60; ++i) {
    WedgeGeometry g = s.geometry();
    for (int m = 1; m <= std::min(m0_of(g), 6); ++m) {
      EvenTerm t = energy_even_term(g, m);
      QuadratureResult q = energy_quadrature_even(g, m, 1e-10);
      if (t.value == 0.0) {
        CHECK(q.value == 0.0);
        continue;
      }
      CHECK(t.value < 0.0);
      CHECK(q.value == doctest::Approx(t.value).epsilon(1e-7));
      CHECK(even_term_antiderivative(g, m) == doctest::Approx(t.value).epsilon(1e-10));
      QuadratureResult loose = energy_quadrature_even(g, m, 1e-6);
      CHECK(std::abs(loose.value - q.value) <= std::max(loose.error, 1e-6 * std::abs(q.value)));
    }
  }
}

TEST_CASE("alternative forms agree in magnitude and the partial sign is negative") {
  gen::Source s(43);
  int partials = 0;
  for (int i = 0; i < 300; ++i) {
    WedgeGeometry g = s.geometry();
    for (int m = 1; m <= m0_of(g); ++m) {
      CHECK(std::abs(full_term(g, m)) == doctest::Approx(std::abs(full_term_beta_form(g, m))).epsilon(1e-12));
      if (classify_even(g, m) != DomainKind::partial) continue;
      ++partials;
      CHECK(partial_term_positive(g, m) > 0.0);
      CHECK(partial_term_positive_beta_form(g, m) == doctest::Approx(partial_term_positive(g, m)).epsilon(1e-12));
      CHECK(partial_term(g, m) == -partial_term_positive(g, m));
      CHECK(energy_quadrature_even(g, m).value < 0.0);
    }
  }
  CHECK(partials > 10);
}

TEST_CASE("domain of the 4-bounce orbits fits the plate") {
  WedgeGeometry g = geometry(pi / 6);
  IntegrationDomain d = domain_even(g, 2);
  REQUIRE_FALSE(d.empty());
  CHECK(d.psi_lower <= d.psi_upper);
  for (int i = 1; i < 20; ++i) {
    double psi = d.psi_lower + (d.psi_upper - d.psi_lower) * i / 20.0;
    double lo = d.r_lower(psi);
    double hi = d.r_upper(psi);
    CHECK(lo <= hi);
    for (double f : {0.01, 0.5, 0.99}) {
      PolarPoint p{lo + (hi - lo) * f, psi};
      if (!strictly_inside(p, g.gamma)) continue;
      auto path = paths::even_sequence(p, g, 2);
      for (std::size_t k = 1; k < path.points.size(); k += 2) {
        double r = std::hypot(path.points[k].z.real(), path.points[k].t);
        CHECK(r >= g.r0 * (1 - 1e-9));
        CHECK(r <= g.r1 * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("orders beyond the cutoff have no orbit on the plate") {
  gen::Source s(44);
  int cut = 0;
  for (int i = 0; i < 100; ++i) {
    WedgeGeometry g = s.geometry();
    g.r1 = g.r0 * s.uniform(1.01, 1.3);
    int m0 = m0_of(g);
    auto m1 = m1_of(g);
    int last = m1 ? std::min(m0, *m1) : m0;
    for (int m = last + 1; m <= m0; ++m) {
      CHECK(classify_even(g, m) == DomainKind::empty);
      ++cut;
      for (int j = 0; j < 50; ++j) {
        PolarPoint p = s.interior(g.gamma);
        p.r = g.r0 * s.uniform(0.1, 10.0);
        auto path = paths::even_sequence(p, g, m);
        double lo = 1e300;
        double hi = 0.0;
        for (std::size_t k = 1; k < path.points.size(); k += 2) {
          double r = std::hypot(path.points[k].z.real(), path.points[k].t);
          lo = std::min(lo, r);
          hi = std::max(hi, r);
        }
        CHECK_FALSE((lo >= g.r0 && hi <= g.r1));
      }
    }
    CHECK(classify_even(g, m0 + 1) == DomainKind::nonexistent);
  }
  CHECK(cut > 20);
}

TEST_CASE("odd total") {
  WedgeGeometry g = geometry(pi / 4);
  CHECK(energy_odd_total(g) == doctest::Approx(0.00158314349441).epsilon(1e-11));
  CHECK(energy_odd_term(g, 1, FirstPlate::horizontal).value == doctest::Approx(5.27714498137e-4).epsilon(1e-10));
  CHECK(energy_odd_term(g, 1, FirstPlate::top).value == doctest::Approx(1.05542899627e-3).epsilon(1e-10));
  gen::Source s(45);
  for (int i = 0; i < 200; ++i) {
    WedgeGeometry a = s.geometry();
    WedgeGeometry b = a;
    b.r1 = a.r1 * s.uniform(1.1, 10.0);
    CHECK(energy_odd_total(a) == energy_odd_total(b));
    CHECK(energy_odd_total(a) > 0.0);
    if (m0_of(a) <= 6) CHECK(energy_odd_sum(a) == doctest::Approx(energy_odd_total(a)).epsilon(1e-11));
  }
}

TEST_CASE("odd quadrature") {
  WedgeGeometry g = geometry(0.4);
  double sum = 0.0;
  for (int m = 1; m <= m0_of(g); ++m)
    for (FirstPlate f : {FirstPlate::horizontal, FirstPlate::top}) {
      double q = energy_quadrature_odd(g, m, f).value;
      CHECK(q == doctest::Approx(energy_odd_term(g, m, f).value).epsilon(1e-7));
      sum += q;
    }
  CHECK(sum == doctest::Approx(energy_odd_total(g)).epsilon(1e-7));
}

TEST_CASE("attractive on a random grid") {
  gen::Source s(46);
  for (int i = 0; i < 1000; ++i) {
    EnergyBreakdown e = energy_total(s.geometry());
    CHECK(e.grand_total < 0.0);
    for (const auto& t : e.even_terms) CHECK(t.value <= 0.0);
  }
}

TEST_CASE("parallel plates") {
  CHECK(parallel_plate_energy(1, 1, 1) == doctest::Approx(-pi * pi / 1440).epsilon(1e-14));
  CHECK(parallel_plate_energy(2, 1, 1) == doctest::Approx(parallel_plate_energy(1, 1, 1) / 8));
  CHECK(parallel_plate_term_limit(1, 1, 1, 1) == doctest::Approx(-1 / (32 * pi * pi)).epsilon(1e-14));
  CHECK(parallel_plate_term_limit(1, 1, 1, 1) == doctest::Approx(-3.1663e-3).epsilon(1e-4));
}

TEST_CASE("limit sweep") {
  auto rows = limit_sweep(1, 1, 1, {0.2, 0.1, 0.05, 0.025});
  REQUIRE(rows.size() == 4);
  double expected[] = {0.7287015483, 0.8503641579, 0.9209056361, 0.9592032698};
  for (int i = 0; i < 4; ++i) {
    CHECK(rows[i].ratio == doctest::Approx(expected[i]).epsilon(1e-9));
    if (i > 0) CHECK(rows[i].ratio > rows[i - 1].ratio);
  }
  CHECK(rows[3].m0 == m0_of(limit_geometry(1, 1, 1, 0.025)));
  CHECK(std::abs(rows[3].m0 - pi / (2 * 0.025)) < 2);
}

TEST_CASE("invalid geometry is rejected") {
  CHECK_THROWS_AS(energy_total(geometry(pi / 2)), InvalidArgument);
  CHECK_THROWS_AS(energy_total(geometry(0.3, 2.0, 1.0)), InvalidArgument);
  CHECK_THROWS_AS(energy_total(geometry(0.3, 1.0, 2.0, 0.0)), InvalidArgument);
}
