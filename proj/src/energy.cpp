#include "casimir/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "casimir/errors.hpp"

namespace casimir::energy {

namespace {

constexpr double pi2 = pi * pi;

void require_order(int m) {
  if (m < 1) throw InvalidArgument("bounce order must be positive");
}

double cot(double x) { return std::cos(x) / std::sin(x); }

// Angles of the circles bounding the order-m domain: the bounce closest to
// the vertex fixes the inner circle, the last top-plate bounce the outer one.
struct EvenArcs {
  double inner_delta;
  double outer_delta;
};

EvenArcs even_arcs(double beta, int m) {
  return {m % 2 == 0 ? beta : 0.0, -(m - 1) * beta};
}

double odd_scale(double gamma, int m, FirstPlate first) {
  bool long_branch = (first == FirstPlate::horizontal) == (m % 2 == 0);
  return long_branch ? std::cos(gamma) : 1.0;
}

}  // namespace

std::string_view to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::full:
      return "full";
    case DomainKind::partial:
      return "partial";
    case DomainKind::empty:
      return "empty";
    case DomainKind::nonexistent:
      return "nonexistent";
  }
  return "unknown";
}

int m0_of(const WedgeGeometry& geom) {
  WedgeGeometry::validate_angle(geom.gamma);
  double g = geom.gamma;
  int m = std::max(1, int(std::floor(pi / (2.0 * g))));
  while (m > 1 && !(g < pi / (2.0 * m))) --m;
  while (g < pi / (2.0 * (m + 1))) ++m;
  return m;
}

double window_threshold(double gamma, int m) {
  if (m < 0) throw InvalidArgument("negative window index");
  if (m == 0) return 1.0;
  double c = std::cos(m * gamma);
  return m % 2 == 0 ? c : c / std::cos(gamma);
}

std::optional<int> m1_of(const WedgeGeometry& geom) {
  geom.validate();
  double ratio = geom.radius_ratio();
  int m0 = m0_of(geom);
  for (int m = 1; m <= m0 + 1; ++m) {
    if (ratio >= window_threshold(geom.gamma, m) &&
        ratio <= window_threshold(geom.gamma, m - 1)) {
      return m;
    }
  }
  return std::nullopt;
}

DomainKind classify_even(const WedgeGeometry& geom, int m) {
  geom.validate();
  require_order(m);
  if (!(geom.gamma < pi / (2.0 * m))) return DomainKind::nonexistent;
  double ratio = geom.radius_ratio();
  if (ratio <= window_threshold(geom.gamma, m)) return DomainKind::full;
  if (ratio <= window_threshold(geom.gamma, m - 1)) return DomainKind::partial;
  return DomainKind::empty;
}

double RadialBound::operator()(double psi) const {
  switch (shape) {
    case Shape::circle:
      return scale * std::sin(psi - delta);
    case Shape::line:
      return scale / std::abs(std::sin(psi - delta));
    case Shape::unbounded:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

double psi0_even(const WedgeGeometry& geom, int m) {
  geom.validate();
  require_order(m);
  EvenArcs arcs = even_arcs(geom.beta(), m);
  double num = geom.r0 * std::sin(arcs.inner_delta) - geom.r1 * std::sin(arcs.outer_delta);
  double den = geom.r0 * std::cos(arcs.inner_delta) - geom.r1 * std::cos(arcs.outer_delta);
  double lo = geom.beta() - pi / 2;
  double psi0 = den == 0.0 ? pi / 2 : std::atan(num / den);
  if (psi0 < lo - 1e-15) psi0 += pi;
  if (psi0 > pi / 2 + 1e-15) psi0 -= pi;
  return psi0;
}

IntegrationDomain domain_even(const WedgeGeometry& geom, int m) {
  IntegrationDomain d;
  d.m = m;
  d.bounces = 2 * m;
  d.kind = classify_even(geom, m);
  d.psi_upper = pi / 2;
  double beta = geom.beta();
  double lo = beta - pi / 2;
  if (d.kind == DomainKind::nonexistent) {
    d.psi_lower = d.psi_upper;
    return d;
  }
  double cm = std::cos(m * beta);
  EvenArcs arcs = even_arcs(beta, m);
  d.r_lower = {RadialBound::Shape::circle, -geom.r0 / cm, arcs.inner_delta};
  d.r_upper = {RadialBound::Shape::circle, -geom.r1 / cm, arcs.outer_delta};
  switch (d.kind) {
    case DomainKind::full:
      d.psi_lower = lo;
      break;
    case DomainKind::partial:
      d.psi_lower = std::clamp(psi0_even(geom, m), lo, pi / 2);
      break;
    default:
      d.psi_lower = d.psi_upper;
  }
  return d;
}

IntegrationDomain domain_odd(const WedgeGeometry& geom, int m, FirstPlate first) {
  geom.validate();
  require_order(m);
  IntegrationDomain d;
  d.m = m;
  d.bounces = 2 * m + 1;
  d.first = first;
  double g = geom.gamma;
  double beta = geom.beta();
  double lo = beta - pi / 2;
  if (!(g < pi / (2.0 * m))) {
    d.kind = DomainKind::nonexistent;
    d.psi_lower = d.psi_upper = pi / 2;
    return d;
  }
  double k = odd_scale(g, m, first);
  if (first == FirstPlate::horizontal) {
    d.psi_lower = std::max(m * g, lo);
    d.psi_upper = pi / 2;
    d.r_lower = {RadialBound::Shape::line, geom.r0 * k, -m * beta};
  } else {
    d.psi_lower = lo;
    d.psi_upper = std::min(pi - (m + 1) * g, pi / 2);
    d.r_lower = {RadialBound::Shape::line, geom.r0 * k, (m + 1) * beta};
  }
  d.kind = d.psi_lower < d.psi_upper ? DomainKind::full : DomainKind::empty;
  return d;
}

double full_term(const WedgeGeometry& geom, int m) {
  geom.validate();
  require_order(m);
  double g = geom.gamma;
  double c = std::cos(m * g);
  double s = std::sin(m * g);
  return -geom.width * c * c * std::sin(g) / (64.0 * pi2 * std::pow(s, 4)) *
         (1.0 / (geom.r0 * geom.r0 * std::cos(g)) -
          1.0 / (geom.r1 * geom.r1 * std::cos((m - 1) * g) * c));
}

double full_term_beta_form(const WedgeGeometry& geom, int m) {
  geom.validate();
  require_order(m);
  double b = geom.beta();
  double c = std::cos(m * b);
  double s = std::sin(m * b);
  return geom.width * c * c * std::sin(b) / (64.0 * pi2 * std::pow(s, 4)) *
         (1.0 / (geom.r0 * geom.r0 * std::cos(b)) -
          1.0 / (geom.r1 * geom.r1 * std::cos((m - 1) * b) * c));
}

double partial_term_positive(const WedgeGeometry& geom, int m) {
  geom.validate();
  if (m < 2) throw InvalidArgument("a partial domain needs order at least 2");
  double g = geom.gamma;
  double R0 = geom.r0;
  double R1 = geom.r1;
  double c = std::cos(m * g);
  double s4 = std::pow(std::sin(m * g), 4);
  double cp = std::cos((m - 1) * g);
  double pre = geom.width * c * c / (64.0 * pi2 * s4 * R0 * R0 * R1 * R1);
  if (m % 2 == 0) {
    double u = R0 * std::cos(g) - R1 * cp;
    return pre * u * u / (std::cos(g) * cp * std::sin(m * g));
  }
  double u = R0 - R1 * cp;
  return pre * u * u / (std::sin((m - 1) * g) * cp);
}

double partial_term_positive_beta_form(const WedgeGeometry& geom, int m) {
  geom.validate();
  if (m < 2) throw InvalidArgument("a partial domain needs order at least 2");
  double b = geom.beta();
  double R0 = geom.r0;
  double R1 = geom.r1;
  double c = std::cos(m * b);
  double s4 = std::pow(std::sin(m * b), 4);
  double cp = std::cos((m - 1) * b);
  double pre = -geom.width * c * c / (64.0 * pi2 * s4 * R0 * R0 * R1 * R1);
  if (m % 2 == 0) {
    double u = R0 * std::cos(b) - R1 * cp;
    return pre * u * u / (std::cos(b) * cp * std::sin(m * b));
  }
  double u = R0 - R1 * cp;
  return pre * u * u / (std::sin((m - 1) * b) * cp);
}

double partial_term(const WedgeGeometry& geom, int m) {
  return -partial_term_positive(geom, m);
}

double even_term_antiderivative(const WedgeGeometry& geom, int m) {
  IntegrationDomain d = domain_even(geom, m);
  if (d.empty()) return 0.0;
  double beta = geom.beta();
  EvenArcs arcs = even_arcs(beta, m);
  double R0 = geom.r0;
  double R1 = geom.r1;
  auto F = [&](double psi) {
    return -cot(psi - arcs.inner_delta) / (R0 * R0) + cot(psi - arcs.outer_delta) / (R1 * R1);
  };
  double c = std::cos(m * beta);
  double s4 = std::pow(std::sin(m * beta), 4);
  return -geom.width * c * c / (64.0 * pi2 * s4) * (F(d.psi_upper) - F(d.psi_lower));
}

EvenTerm energy_even_term(const WedgeGeometry& geom, int m) {
  EvenTerm t;
  t.m = m;
  t.kind = classify_even(geom, m);
  if (t.kind == DomainKind::full) t.value = full_term(geom, m);
  if (t.kind == DomainKind::partial) t.value = partial_term(geom, m);
  return t;
}

OddTerm energy_odd_term(const WedgeGeometry& geom, int m, FirstPlate first) {
  geom.validate();
  require_order(m);
  OddTerm t;
  t.m = m;
  t.first = first;
  double g = geom.gamma;
  if (!(g < pi / (2.0 * m))) return t;
  double beta = geom.beta();
  t.epsilon = (m + 1) * g <= pi / 2;
  double k = odd_scale(g, m, first);
  double c1 = cot(m * beta);
  double body = -c1 * c1 * c1;
  if (t.epsilon) {
    double c2 = cot((m + 1) * beta);
    body += c2 * c2 * c2;
  }
  t.value = geom.width / (192.0 * pi2 * geom.r0 * geom.r0 * k * k) * body;
  return t;
}

double energy_odd_total(const WedgeGeometry& geom) {
  geom.validate();
  double b = geom.beta();
  double sb = std::sin(b);
  double cb = std::cos(b);
  return -geom.width * (1.0 + cb * cb) * cb /
         (192.0 * pi2 * geom.r0 * geom.r0 * sb * sb * sb);
}

double energy_odd_sum(const WedgeGeometry& geom) {
  double sum = 0.0;
  int m0 = m0_of(geom);
  for (int m = 1; m <= m0; ++m) {
    sum += energy_odd_term(geom, m, FirstPlate::horizontal).value;
    sum += energy_odd_term(geom, m, FirstPlate::top).value;
  }
  return sum;
}

EnergyBreakdown energy_total(const WedgeGeometry& geom, bool include_odd) {
  geom.validate();
  EnergyBreakdown out;
  out.geometry = geom;
  out.m0 = m0_of(geom);
  out.m1 = m1_of(geom);
  if (!out.m1) {
    out.diagnostics.push_back(
        "radius ratio lies in no order window; every existing order is taken as full");
  }
  double sum = 0.0;
  for (int m = 1; m <= out.m0; ++m) {
    EvenTerm t = out.m1 ? energy_even_term(geom, m) : EvenTerm{m, DomainKind::full, full_term(geom, m)};
    sum += t.value;
    out.even_terms.push_back(t);
  }
  out.even_total = 2.0 * sum;
  out.odd_total = energy_odd_total(geom);
  out.includes_odd = include_odd;
  out.grand_total = out.even_total + (include_odd ? out.odd_total : 0.0);
  return out;
}

QuadratureResult energy_quadrature_even(const WedgeGeometry& geom, int m, double rel_tol) {
  IntegrationDomain d = domain_even(geom, m);
  if (d.empty() || !(d.psi_lower < d.psi_upper)) return {0.0, 0.0};
  double s4 = std::pow(std::sin(m * geom.gamma), 4);
  double pre = -geom.width / (64.0 * pi2 * s4);
  auto f = [&](double psi) {
    double lo = d.r_lower(psi);
    double hi = d.r_upper(psi);
    return pre * (1.0 / (lo * lo) - 1.0 / (hi * hi));
  };
  return oracle::adaptive_psi_quadrature(f, d.psi_lower, d.psi_upper, rel_tol, 1e-18);
}

QuadratureResult energy_quadrature_odd(const WedgeGeometry& geom, int m, FirstPlate first,
                                       double rel_tol) {
  IntegrationDomain d = domain_odd(geom, m, first);
  if (d.empty()) return {0.0, 0.0};
  double g = geom.gamma;
  auto f = [&](double psi) {
    double c = first == FirstPlate::horizontal ? std::cos(psi - m * g)
                                               : std::cos(psi + (m + 1) * g);
    double lo = d.r_lower(psi);
    return geom.width / (64.0 * pi2 * std::pow(c, 4) * lo * lo);
  };
  return oracle::adaptive_psi_quadrature(f, d.psi_lower, d.psi_upper, rel_tol, 1e-18);
}

double parallel_plate_energy(double L, double b, double W) {
  if (!(L > 0.0) || !(b > 0.0) || !(W > 0.0)) {
    throw InvalidArgument("separation, length and width must be positive");
  }
  return -pi2 * b * W / (1440.0 * L * L * L);
}

double parallel_plate_term_limit(double L, double b, double W, int m) {
  require_order(m);
  if (!(L > 0.0) || !(b > 0.0) || !(W > 0.0)) {
    throw InvalidArgument("separation, length and width must be positive");
  }
  return -b * W / (32.0 * pi2 * L * L * L * std::pow(double(m), 4));
}

WedgeGeometry limit_geometry(double L, double b, double W, double gamma) {
  WedgeGeometry::validate_angle(gamma);
  if (!(L > 0.0) || !(b > 0.0) || !(W > 0.0)) {
    throw InvalidArgument("separation, length and width must be positive");
  }
  double r0 = L / std::sin(gamma);
  WedgeGeometry g{gamma, r0, r0 + b, W};
  g.validate();
  return g;
}

std::vector<LimitRow> limit_sweep(double L, double b, double W,
                                  const std::vector<double>& gammas) {
  std::vector<LimitRow> rows;
  double pp = parallel_plate_energy(L, b, W);
  for (double g : gammas) {
    WedgeGeometry geom = limit_geometry(L, b, W, g);
    EnergyBreakdown e = energy_total(geom);
    rows.push_back({g, e.m0, e.m1, e.grand_total, pp, e.grand_total / pp});
  }
  return rows;
}

}  // namespace casimir::energy
