#pragma once

#include <json.hpp>
#include <span>
#include <string>

#include "chm/butson.hpp"
#include "chm/core.hpp"
#include "chm/moments.hpp"
#include "chm/optimize.hpp"
#include "chm/phi.hpp"

namespace chm {

using Json = nlohmann::json;

Json to_json(const PhaseVector& q);
Json to_json(const CirculantMatrix& h);
Json to_json(const PhiReport& r);
Json to_json(const PsiReport& r);
Json to_json(const ButsonRow& r);
Json to_json(const ObstructionReport& r);
Json to_json(const MinResult& r);
Json to_json(const CriticalPoint& cp);
Json to_json(const MomentEstimate& e);
Json to_json(const PnormEstimate& e);
Json to_json(const GapRow& row);

PhaseVector phase_vector_from_json(const Json& j);
CirculantMatrix circulant_from_json(const Json& j);

// Angle syntax: plain radians ("1.57", "-0.3e1") or rational multiples of pi
// ("pi", "-pi", "1/2pi", "-2/3pi", "3pi").
double parse_angle_token(std::string token);
std::vector<double> parse_angle_list(const std::string& csv);

std::string csv_obstruction_table(std::span<const ObstructionReport> table,
                                  const std::string& config_comment);
std::string csv_gap_rows(std::span<const GapRow> rows, const std::string& config_comment);
std::string csv_half_moment_coefficients(int p_max, const std::string& config_comment);

}  // namespace chm
