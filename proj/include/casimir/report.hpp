#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "casimir/energy.hpp"
#include "casimir/validate.hpp"
#include "casimir/wedgepaths.hpp"

// Machine-readable output. Numbers carry 12 significant digits.
namespace casimir::report {

using Json = nlohmann::ordered_json;

double round_sig(double x, int digits = 12);
std::string format_number(double x);

Json energy_json(const energy::EnergyBreakdown& e, double hbar_c = 1.0);
std::string energy_csv(const energy::EnergyBreakdown& e, double hbar_c = 1.0);

Json paths_json(const WedgeGeometry& geom, const PolarPoint& point,
                const std::vector<paths::BouncePath>& found);
std::string paths_csv(const std::vector<paths::BouncePath>& found);

struct SweepRow {
  double value = 0.0;
  energy::EnergyBreakdown breakdown;
};
Json sweep_json(const std::string& param, const std::vector<SweepRow>& rows, double hbar_c);
std::string sweep_csv(const std::string& param, const std::vector<SweepRow>& rows,
                      double hbar_c);

Json limit_json(const std::vector<energy::LimitRow>& rows);
std::string limit_csv(const std::vector<energy::LimitRow>& rows);

std::string validation_text(const validate::Report& rep);

// Rebuilds every orbit listed in a `paths` document from its inputs and
// compares lengths and points with what was written.
validate::CheckResult recheck_paths(const Json& doc);

}  // namespace casimir::report
