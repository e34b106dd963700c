#include "casimir/report.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "casimir/errors.hpp"

namespace casimir::report {

namespace {

Json number(double x) { return round_sig(x); }

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

std::string csv_optional(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

FirstPlate plate_from(const std::string& s) {
  if (s == "horizontal") return FirstPlate::horizontal;
  if (s == "top") return FirstPlate::top;
  throw InvalidArgument("unknown plate name '" + s + "'");
}

Branch branch_from(const std::string& s) {
  if (s == "plus") return Branch::plus;
  if (s == "minus") return Branch::minus;
  throw InvalidArgument("unknown branch name '" + s + "'");
}

}  // namespace

double round_sig(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  return std::stod(fmt::format("{:.{}g}", x, digits));
}

std::string format_number(double x) { return fmt::format("{:.12g}", x); }

Json energy_json(const energy::EnergyBreakdown& e, double hbar_c) {
  Json j;
  j["gamma"] = number(e.geometry.gamma);
  j["r0"] = number(e.geometry.r0);
  j["r1"] = number(e.geometry.r1);
  j["width"] = number(e.geometry.width);
  j["m0"] = e.m0;
  j["m1"] = optional_int(e.m1);
  Json terms = Json::object();
  for (const auto& t : e.even_terms) terms[std::to_string(t.m)] = number(hbar_c * t.value);
  j["even_terms"] = terms;
  j["even_total"] = number(hbar_c * e.even_total);
  j["odd_total"] = number(hbar_c * e.odd_total);
  j["grand_total"] = number(hbar_c * e.grand_total);
  j["units"] = {{"hbar_c", number(hbar_c)}, {"system", hbar_c == 1.0 ? "natural" : "scaled"}};
  return j;
}

std::string energy_csv(const energy::EnergyBreakdown& e, double hbar_c) {
  std::string out = "gamma,r0,r1,width,m0,m1,even_total,odd_total,grand_total\n";
  out += fmt::format("{},{},{},{},{},{},{},{},{}\n", format_number(e.geometry.gamma),
                     format_number(e.geometry.r0), format_number(e.geometry.r1),
                     format_number(e.geometry.width), e.m0, csv_optional(e.m1),
                     format_number(hbar_c * e.even_total), format_number(hbar_c * e.odd_total),
                     format_number(hbar_c * e.grand_total));
  return out;
}

Json paths_json(const WedgeGeometry& geom, const PolarPoint& point,
                const std::vector<paths::BouncePath>& found) {
  Json j;
  j["gamma"] = number(geom.gamma);
  j["r"] = number(point.r);
  j["psi"] = number(point.psi);
  Json list = Json::array();
  for (const auto& p : found) {
    Json item;
    item["bounces"] = p.spec.bounces;
    item["first_plate"] = std::string(to_string(p.spec.first_plate));
    item["branch"] = std::string(to_string(p.spec.branch));
    item["total_length"] = number(p.total_length);
    Json lengths = Json::array();
    for (double l : p.segment_lengths) lengths.push_back(number(l));
    item["segment_lengths"] = lengths;
    Json pts = Json::array();
    for (const auto& q : p.points) pts.push_back({number(q.z.real()), number(q.t)});
    item["points"] = pts;
    list.push_back(item);
  }
  j["paths"] = list;
  return j;
}

std::string paths_csv(const std::vector<paths::BouncePath>& found) {
  std::string out = "path,bounces,first_plate,branch,total_length,point,a,b\n";
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto& p = found[i];
    for (std::size_t k = 0; k < p.points.size(); ++k) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", i, p.spec.bounces,
                         to_string(p.spec.first_plate), to_string(p.spec.branch),
                         format_number(p.total_length), k + 1,
                         format_number(p.points[k].z.real()), format_number(p.points[k].t));
    }
  }
  return out;
}

Json sweep_json(const std::string& param, const std::vector<SweepRow>& rows, double hbar_c) {
  Json list = Json::array();
  for (const auto& r : rows) {
    Json item;
    item[param] = number(r.value);
    item["m0"] = r.breakdown.m0;
    item["m1"] = optional_int(r.breakdown.m1);
    item["even_total"] = number(hbar_c * r.breakdown.even_total);
    item["odd_total"] = number(hbar_c * r.breakdown.odd_total);
    item["grand_total"] = number(hbar_c * r.breakdown.grand_total);
    list.push_back(item);
  }
  return {{"param", param}, {"rows", list}};
}

std::string sweep_csv(const std::string& param, const std::vector<SweepRow>& rows,
                      double hbar_c) {
  std::string out = param + ",m0,m1,even_total,odd_total,grand_total\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", format_number(r.value), r.breakdown.m0,
                       csv_optional(r.breakdown.m1),
                       format_number(hbar_c * r.breakdown.even_total),
                       format_number(hbar_c * r.breakdown.odd_total),
                       format_number(hbar_c * r.breakdown.grand_total));
  }
  return out;
}

Json limit_json(const std::vector<energy::LimitRow>& rows) {
  Json list = Json::array();
  for (const auto& r : rows) {
    list.push_back({{"gamma", number(r.gamma)},
                    {"energy", number(r.energy)},
                    {"parallel_plate", number(r.parallel_plate)},
                    {"ratio", number(r.ratio)}});
  }
  return {{"rows", list}};
}

std::string limit_csv(const std::vector<energy::LimitRow>& rows) {
  std::string out = "gamma,energy,parallel_plate,ratio\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{}\n", format_number(r.gamma), format_number(r.energy),
                       format_number(r.parallel_plate), format_number(r.ratio));
  }
  return out;
}

std::string validation_text(const validate::Report& rep) {
  std::string out;
  for (const auto& c : rep.checks) {
    out += fmt::format("[{}] {}: cases={} max_error={:.3e} tolerance={:.1e}", c.passed ? "PASS" : "FAIL",
                       c.name, c.cases, c.max_error, c.tolerance);
    if (!c.detail.empty()) out += " (" + c.detail + ")";
    out += "\n";
    for (const auto& f : c.failures) out += "    " + f + "\n";
  }
  out += rep.passed() ? "all checks passed\n" : "validation FAILED\n";
  return out;
}

validate::CheckResult recheck_paths(const Json& doc) {
  validate::CheckResult r;
  r.name = "paths document round trip";
  r.tolerance = 1e-10;
  WedgeGeometry geom{doc.at("gamma").get<double>(), 1.0, 2.0, 1.0};
  PolarPoint point{doc.at("r").get<double>(), doc.at("psi").get<double>()};
  for (const auto& item : doc.at("paths")) {
    paths::ClosedPathSpec spec{item.at("bounces").get<int>(),
                               plate_from(item.at("first_plate").get<std::string>()),
                               branch_from(item.at("branch").get<std::string>())};
    std::string where = fmt::format("bounces={} first={}", spec.bounces,
                                    to_string(spec.first_plate));
    paths::BouncePath rebuilt = paths::closed_path(point, geom, spec);
    double scale = std::max(1.0, rebuilt.total_length);
    double error = std::abs(rebuilt.total_length - item.at("total_length").get<double>()) / scale;
    const auto& pts = item.at("points");
    if (pts.size() != rebuilt.points.size() || rebuilt.spec.branch != spec.branch) {
      error = std::numeric_limits<double>::infinity();
    } else {
      for (std::size_t k = 0; k < pts.size(); ++k) {
        double da = pts[k].at(0).get<double>() - rebuilt.points[k].z.real();
        double db = pts[k].at(1).get<double>() - rebuilt.points[k].t;
        error = std::max(error, std::hypot(da, db) / scale);
      }
    }
    r.record(error, where);
  }
  return r;
}

}  // namespace casimir::report
