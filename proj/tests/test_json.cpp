#include <doctest.h>

#include <cmath>

#include "chm/json_io.hpp"
#include "test_support.hpp"

using namespace chm;
using testsupport::kPi;

TEST_CASE("phase vector and circulant matrix serialize with the agreed fields") {
  const auto q = testsupport::random_phase_vector(5, 1);
  const auto j = to_json(q);
  CHECK(j.at("n").get<int>() == 5);
  CHECK(j.at("angles").size() == 5);
  const auto back = phase_vector_from_json(j);
  CHECK(back.angles == q.angles);

  const auto h = fixture("BF6");
  const auto jm = to_json(h);
  CHECK(jm.at("n").get<int>() == 6);
  CHECK(jm.at("first_row").size() == 6);
  CHECK(jm.at("first_row").at(0).at(0).get<double>() == doctest::Approx(1.0));
  const auto hb = circulant_from_json(jm);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(hb.first_row[i] - h.first_row[i]) < 1e-15);

  Json bad = {{"n", 3}, {"angles", {0.0, 1.0}}};
  CHECK_THROWS_AS(phase_vector_from_json(bad), std::invalid_argument);
}

TEST_CASE("reports carry the documented field names") {
  const auto q = testsupport::random_phase_vector(4, 2);
  const auto jp = to_json(phi_decompose(q));
  CHECK(jp.contains("total"));
  CHECK(jp.contains("parts"));
  CHECK(jp.contains("gradient"));
  CHECK(jp.contains("lower_bound_gap"));

  const auto js = to_json(psi_report(q));
  CHECK(js.contains("total"));
  CHECK(js.contains("parts"));
  CHECK(js.contains("theta"));
  CHECK(js.contains("degenerate_indices"));

  const auto jb = to_json(ButsonRow{4, {0, 1, 2, 3}});
  CHECK(jb.at("l").get<int>() == 4);
  CHECK(jb.at("exponents").get<std::vector<int>>() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("angle parsing accepts radians and pi fractions") {
  CHECK(parse_angle_token("1.5") == doctest::Approx(1.5));
  CHECK(parse_angle_token("-2e-1") == doctest::Approx(-0.2));
  CHECK(parse_angle_token("pi") == doctest::Approx(kPi));
  CHECK(parse_angle_token("-pi") == doctest::Approx(-kPi));
  CHECK(parse_angle_token("2pi") == doctest::Approx(2 * kPi));
  CHECK(parse_angle_token("1/2pi") == doctest::Approx(kPi / 2));
  CHECK(parse_angle_token("-2/3pi") == doctest::Approx(-2 * kPi / 3));
  CHECK(parse_angle_token(" 1/4pi ") == doctest::Approx(kPi / 4));

  const auto list = parse_angle_list("0,1/2pi,-pi,0.25");
  REQUIRE(list.size() == 4);
  CHECK(list[1] == doctest::Approx(kPi / 2));
  CHECK(list[2] == doctest::Approx(-kPi));

  CHECK_THROWS_AS(parse_angle_token("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle_token("1/0pi"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle_list(""), std::invalid_argument);
}

TEST_CASE("csv artifacts use the fixed headers") {
  const auto table = obstruction_table(2, 3, 2, 3);
  const auto csv = csv_obstruction_table(table, "{}");
  CHECK(csv.rfind("# config: {}\nN,l,status\n", 0) == 0);
  CHECK(csv.find("2,2,turyn") != std::string::npos);

  const std::vector<GapRow> rows = {{4, 16.0, 0.0, 10}};
  const auto gaps = csv_gap_rows(rows, "");
  CHECK(gaps.rfind("N,min_phi,gap,converged_starts\n", 0) == 0);
  CHECK(gaps.find("4,16,0,10") != std::string::npos);

  const auto coeffs = csv_half_moment_coefficients(3, "");
  CHECK(coeffs.rfind("p,k,C\n", 0) == 0);
  CHECK(coeffs.find("3,2,9") != std::string::npos);
}
