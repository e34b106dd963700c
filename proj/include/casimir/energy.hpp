#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/oracle.hpp"

// Optical-approximation Casimir energy of a finite plate hinged above an
// infinite plane, in natural units (hbar = c = 1). Single-direction terms are
// reported; totals carry the factor 2 for the two traversal directions.
namespace casimir::energy {

using oracle::QuadratureResult;

int m0_of(const WedgeGeometry& geom);
// Radius-ratio threshold for order m: 1 for m = 0, cos(m gamma) for even m,
// cos(m gamma)/cos(gamma) for odd m.
double window_threshold(double gamma, int m);
std::optional<int> m1_of(const WedgeGeometry& geom);

enum class DomainKind { full, partial, empty, nonexistent };
std::string_view to_string(DomainKind kind);

DomainKind classify_even(const WedgeGeometry& geom, int m);

// r = scale * sin(psi - delta) (circle through the vertex), r = scale /
// |sin(psi - delta)| (straight line), or no bound.
struct RadialBound {
  enum class Shape { circle, line, unbounded };
  Shape shape = Shape::unbounded;
  double scale = 0.0;
  double delta = 0.0;

  double operator()(double psi) const;
};

struct IntegrationDomain {
  int m = 0;
  int bounces = 0;
  std::optional<FirstPlate> first;  // odd domains only
  DomainKind kind = DomainKind::empty;
  double psi_lower = 0.0;
  double psi_upper = 0.0;
  RadialBound r_lower;
  RadialBound r_upper;

  bool empty() const { return kind == DomainKind::empty || kind == DomainKind::nonexistent; }
};

// Angle at which the two bounding circles of the order-m domain meet.
double psi0_even(const WedgeGeometry& geom, int m);
IntegrationDomain domain_even(const WedgeGeometry& geom, int m);
IntegrationDomain domain_odd(const WedgeGeometry& geom, int m, FirstPlate first);

// Closed forms in the opening-angle convention.
double full_term(const WedgeGeometry& geom, int m);
double partial_term(const WedgeGeometry& geom, int m);
// The same closed forms in the beta = pi - gamma convention, and the
// positive-sign form of the partial term in both conventions. Those partial forms
// carry the opposite sign to the integral they represent.
double full_term_beta_form(const WedgeGeometry& geom, int m);
double partial_term_positive(const WedgeGeometry& geom, int m);
double partial_term_positive_beta_form(const WedgeGeometry& geom, int m);
// Exact psi-integral of the order-m density over domain_even via the cot
// antiderivative.
double even_term_antiderivative(const WedgeGeometry& geom, int m);

struct EvenTerm {
  int m = 0;
  DomainKind kind = DomainKind::empty;
  double value = 0.0;
};
EvenTerm energy_even_term(const WedgeGeometry& geom, int m);

struct OddTerm {
  int m = 0;
  FirstPlate first = FirstPlate::horizontal;
  bool epsilon = false;
  double value = 0.0;
};
OddTerm energy_odd_term(const WedgeGeometry& geom, int m, FirstPlate first);
double energy_odd_total(const WedgeGeometry& geom);
// Sum of the per-order odd terms for m = 1..m0.
double energy_odd_sum(const WedgeGeometry& geom);

struct EnergyBreakdown {
  WedgeGeometry geometry;
  int m0 = 0;
  std::optional<int> m1;
  std::vector<EvenTerm> even_terms;
  double even_total = 0.0;
  double odd_total = 0.0;
  double grand_total = 0.0;
  bool includes_odd = false;
  std::vector<std::string> diagnostics;
};
EnergyBreakdown energy_total(const WedgeGeometry& geom, bool include_odd = false);

// Numerical psi-integral (analytic in R) over the closed-form domains.
QuadratureResult energy_quadrature_even(const WedgeGeometry& geom, int m,
                                        double rel_tol = 1e-8);
QuadratureResult energy_quadrature_odd(const WedgeGeometry& geom, int m,
                                       FirstPlate first, double rel_tol = 1e-8);

double parallel_plate_energy(double L, double b, double W);
double parallel_plate_term_limit(double L, double b, double W, int m);

// Plate of length b at minimum height L: r0 = L / sin(gamma), r1 = r0 + b.
WedgeGeometry limit_geometry(double L, double b, double W, double gamma);

struct LimitRow {
  double gamma = 0.0;
  int m0 = 0;
  std::optional<int> m1;
  double energy = 0.0;
  double parallel_plate = 0.0;
  double ratio = 0.0;
};
std::vector<LimitRow> limit_sweep(double L, double b, double W,
                                  const std::vector<double>& gammas);

}  // namespace casimir::energy
