#include "chm/json_io.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace chm {

namespace {

Json complex_list(std::span<const Complex> v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back({x.real(), x.imag()});
  return arr;
}

double parse_plain_number(const std::string& s) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + s + "'");
  }
}

}  // namespace

Json to_json(const PhaseVector& q) { return {{"n", q.size()}, {"angles", q.angles}}; }

Json to_json(const CirculantMatrix& h) {
  return {{"n", h.n}, {"first_row", complex_list(h.first_row)}};
}

Json to_json(const PhiReport& r) {
  return {{"total", r.total},
          {"parts", complex_list(r.parts)},
          {"gradient", r.gradient},
          {"lower_bound_gap", r.lower_bound_gap}};
}

Json to_json(const PsiReport& r) {
  return {{"total", r.total},
          {"parts", complex_list(r.parts)},
          {"theta", r.theta},
          {"degenerate_indices", r.degenerate_indices}};
}

Json to_json(const ButsonRow& r) { return {{"l", r.l}, {"exponents", r.exponents}}; }

Json to_json(const ObstructionReport& r) {
  Json j = {{"N", r.n},
            {"l", r.l},
            {"status", cell_status_name(r.status)},
            {"lam_leung_blocked", r.lam_leung_blocked},
            {"turyn_blocked", r.turyn_blocked}};
  if (r.exists.has_value()) j["exists"] = *r.exists;
  if (r.witness.has_value()) j["witness"] = to_json(*r.witness);
  return j;
}

Json to_json(const MinResult& r) {
  return {{"best_value", r.best_value},
          {"best_point", to_json(r.best_point)},
          {"gap", r.gap},
          {"n_converged", r.n_converged},
          {"best_start", r.best_start},
          {"per_start", r.per_start}};
}

Json to_json(const CriticalPoint& cp) {
  return {{"q", to_json(cp.q)},
          {"phi", cp.phi_value},
          {"parts", complex_list(cp.parts)},
          {"residual", cp.residual}};
}

Json to_json(const MomentEstimate& e) {
  return {{"N", e.n},
          {"p", e.p},
          {"method", "monte_carlo"},
          {"value", e.mean},
          {"stderr", e.std_error},
          {"samples", e.samples},
          {"seed", e.seed},
          {"ensemble", e.ensemble == Ensemble::complex_torus ? "complex_torus" : "real_symmetric"}};
}

Json to_json(const PnormEstimate& e) {
  Json rows = Json::array();
  for (size_t i = 0; i < e.p_values.size(); ++i)
    rows.push_back({{"p", e.p_values[i]}, {"estimate", e.estimates[i]}});
  return {{"rows", rows},
          {"sup_estimate", e.sup_estimate},
          {"samples", e.samples},
          {"seed", e.seed}};
}

Json to_json(const GapRow& row) {
  return {{"N", row.n},
          {"min_phi", row.min_phi},
          {"gap", row.gap},
          {"converged_starts", row.converged_starts}};
}

PhaseVector phase_vector_from_json(const Json& j) {
  std::vector<double> angles = j.at("angles").get<std::vector<double>>();
  if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(angles.size()))
    throw std::invalid_argument("phase_vector_from_json: size mismatch");
  return PhaseVector(std::move(angles));
}

CirculantMatrix circulant_from_json(const Json& j) {
  CirculantMatrix h;
  for (const auto& pair : j.at("first_row"))
    h.first_row.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  h.n = static_cast<int>(h.first_row.size());
  if (j.contains("n") && j.at("n").get<int>() != h.n)
    throw std::invalid_argument("circulant_from_json: size mismatch");
  return h;
}

double parse_angle_token(std::string token) {
  // trim
  const auto first = token.find_first_not_of(" \t");
  const auto last = token.find_last_not_of(" \t");
  if (first == std::string::npos) throw std::invalid_argument("empty angle token");
  token = token.substr(first, last - first + 1);

  const auto pi_pos = token.rfind("pi");
  if (pi_pos == std::string::npos || pi_pos + 2 != token.size())
    return parse_plain_number(token);

  std::string coef = token.substr(0, pi_pos);
  if (coef.empty() || coef == "+") return std::numbers::pi;
  if (coef == "-") return -std::numbers::pi;
  const auto slash = coef.find('/');
  if (slash == std::string::npos) return parse_plain_number(coef) * std::numbers::pi;
  const double num = parse_plain_number(coef.substr(0, slash));
  const double den = parse_plain_number(coef.substr(slash + 1));
  if (den == 0.0) throw std::invalid_argument("zero denominator in '" + token + "'");
  return num / den * std::numbers::pi;
}

std::vector<double> parse_angle_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(parse_angle_token(token));
  if (out.empty()) throw std::invalid_argument("parse_angle_list: no angles given");
  return out;
}

std::string csv_obstruction_table(std::span<const ObstructionReport> table,
                                  const std::string& config_comment) {
  std::ostringstream os;
  if (!config_comment.empty()) os << "# config: " << config_comment << "\n";
  os << "N,l,status\n";
  for (const auto& r : table) os << r.n << "," << r.l << "," << cell_status_name(r.status) << "\n";
  return os.str();
}

std::string csv_gap_rows(std::span<const GapRow> rows, const std::string& config_comment) {
  std::ostringstream os;
  if (!config_comment.empty()) os << "# config: " << config_comment << "\n";
  os << "N,min_phi,gap,converged_starts\n";
  char buf[64];
  for (const auto& r : rows) {
    os << r.n << ",";
    std::snprintf(buf, sizeof buf, "%.12g", r.min_phi);
    os << buf << ",";
    std::snprintf(buf, sizeof buf, "%.12g", r.gap);
    os << buf << "," << r.converged_starts << "\n";
  }
  return os.str();
}

std::string csv_half_moment_coefficients(int p_max, const std::string& config_comment) {
  std::ostringstream os;
  if (!config_comment.empty()) os << "# config: " << config_comment << "\n";
  os << "p,k,C\n";
  for (int p = 1; p <= p_max; ++p) {
    const auto c = half_moment_coefficients(p);
    for (int k = 1; k <= p; ++k) os << p << "," << k << "," << c[k].str() << "\n";
  }
  return os.str();
}

}  // namespace chm
