#include <doctest.h>

#include <cmath>
#include <set>

#include "chm/optimize.hpp"
#include "test_support.hpp"

using namespace chm;
using testsupport::kPi;

TEST_CASE("parametrizations embed correctly") {
  // N=4 real-symmetric at beta = pi/2 is (1, i, 1, -i)
  const auto q4 = embed(std::vector<double>{kPi / 2},
                        make_parametrization(ParamKind::real_symmetric, 4));
  CHECK(std::abs(q4.value(0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(q4.value(1) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(q4.value(2) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(q4.value(3) - Complex(0, -1)) < 1e-15);

  // all-zero parameters give the all-ones point
  const auto q8 = embed(std::vector<double>(3, 0.0),
                        make_parametrization(ParamKind::real_symmetric, 8));
  for (double a : q8.angles) CHECK(a == 0.0);

  // conjugate symmetry holds exactly, as complex values
  CounterRng rng(17);
  std::vector<double> params(5);
  for (int i = 0; i < 5; ++i) params[i] = rng.angle(i);
  const auto q12 = embed(params, make_parametrization(ParamKind::real_symmetric, 12));
  for (int i = 0; i < 12; ++i)
    CHECK(std::conj(q12.value(i)) == q12.value(mod_index(-i, 12)));

  // the a=c slice ties the two blocks
  const auto par_ac = make_parametrization(ParamKind::half_symmetric_ac, 8);
  CHECK(par_ac.n_params == 2);
  const auto qac = embed(std::vector<double>{0.9, 2.2}, par_ac);
  CHECK(qac.angles[1] == doctest::Approx(0.9));
  CHECK(qac.angles[3] == doctest::Approx(0.9));
  CHECK(qac.angles[2] == doctest::Approx(2.2));
  CHECK(is_real_symmetric(qac));

  CHECK_THROWS_AS(embed(std::vector<double>{1.0}, par_ac), std::invalid_argument);
  CHECK_THROWS_AS(make_parametrization(ParamKind::real_symmetric, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_parametrization(ParamKind::half_symmetric_ac, 6), std::invalid_argument);
}

TEST_CASE("pullback gradient is the transpose of the embedding") {
  const auto par = make_parametrization(ParamKind::real_symmetric, 8);
  std::vector<double> params = {0.4, -1.1, 2.7};
  const auto q = embed(params, par);
  const auto g = pullback_gradient(phi_gradient(q), par);
  // compare against finite differences in the parameters
  const double h = 1e-5;
  for (int i = 0; i < 3; ++i) {
    auto plus = params, minus = params;
    plus[i] += h;
    minus[i] -= h;
    const double fd = (phi_naive(embed(plus, par)) - phi_naive(embed(minus, par))) / (2 * h);
    CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("published minima evaluate exactly") {
  CHECK(verify_named_minima("N4") == doctest::Approx(16.0).epsilon(1e-10));
  CHECK(verify_named_minima("N8") == doctest::Approx(256.0 / 3).epsilon(1e-10));
  CHECK(verify_named_minima("N12") == doctest::Approx(162.0).epsilon(1e-10));
  CHECK_THROWS_AS(verify_named_minima("N16"), std::invalid_argument);
}

TEST_CASE("n8 closed form") {
  CHECK(n8_closed_form(0, 0, 0) == doctest::Approx(512.0));
  const double t = -std::acos(1.0 / std::sqrt(3.0));
  CHECK(n8_closed_form(t, kPi, t) == doctest::Approx(256.0 / 3).epsilon(1e-12));
  CounterRng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const double a = rng.angle(3 * trial), b = rng.angle(3 * trial + 1), g = rng.angle(3 * trial + 2);
    const double alphas[] = {a}, gammas[] = {g};
    const auto q = real_symmetric_point(alphas, b, gammas, 8);
    CHECK(std::abs(n8_closed_form(a, b, g) - phi_naive(q)) < 1e-8);
  }
}

TEST_CASE("n8 xy polynomial forms") {
  const auto at_min = n8_xy_form(-2.0 / 3.0, -2.0);
  CHECK(at_min.phi == doctest::Approx(256.0 / 3).epsilon(1e-12));
  CHECK(at_min.square_term == doctest::Approx(0.0));

  const auto corner = n8_xy_form(2.0, 2.0);
  CHECK(corner.phi == doctest::Approx(512.0));

  // both displayed forms agree on a grid (checked inside the call)
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j)
      (void)n8_xy_form(-2.0 + 0.04 * i, -2.0 + 0.04 * j);

  // consistency with the angle form on the a = c slice
  CounterRng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = rng.angle(2 * trial), b = rng.angle(2 * trial + 1);
    const double alphas[] = {a}, gammas[] = {a};
    const double direct = phi_naive(real_symmetric_point(alphas, b, gammas, 8));
    const auto xy = n8_xy_form(2.0 * std::cos(2 * a), 2.0 * std::cos(b));
    CHECK(std::abs(direct - xy.phi) < 1e-8);
  }
}

TEST_CASE("minimize_phi finds the known minima at small sizes") {
  OptimizerConfig cfg;
  cfg.starts = 32;
  cfg.seed = 11;
  const auto r4 = minimize_phi(4, ParamKind::real_symmetric, cfg);
  CHECK(r4.best_value == doctest::Approx(16.0).epsilon(1e-6));
  CHECK(r4.gap == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(r4.best_value >= 16.0 - 1e-8);
  CHECK(is_real_symmetric(r4.best_point));

  const auto r6 = minimize_phi(6, ParamKind::real_symmetric, cfg);
  CHECK(r6.best_value >= 36.0 - 1e-8);

  // full torus reaches the Hadamard floor
  const auto rf = minimize_phi(3, ParamKind::full_torus, cfg);
  CHECK(rf.best_value == doctest::Approx(9.0).epsilon(1e-6));
}

TEST_CASE("minimizer is deterministic for a fixed seed") {
  OptimizerConfig cfg;
  cfg.starts = 12;
  cfg.seed = 77;
  const auto a = minimize_phi(6, ParamKind::real_symmetric, cfg);
  const auto b = minimize_phi(6, ParamKind::real_symmetric, cfg);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_start == b.best_start);
  CHECK(a.per_start == b.per_start);
  CHECK(a.best_point.angles == b.best_point.angles);

  cfg.threads = 3;
  const auto c = minimize_phi(6, ParamKind::real_symmetric, cfg);
  CHECK(c.per_start == a.per_start);
}

TEST_CASE("restriction monotonicity") {
  OptimizerConfig cfg;
  cfg.starts = 24;
  cfg.seed = 5;
  const auto full = minimize_phi(8, ParamKind::full_torus, cfg).best_value;
  const auto sym = minimize_phi(8, ParamKind::real_symmetric, cfg).best_value;
  const auto ac = minimize_phi(8, ParamKind::half_symmetric_ac, cfg).best_value;
  CHECK(ac >= sym - 1e-6);
  CHECK(sym >= full - 1e-6);
  CHECK(full >= 64.0 - 1e-8);
}

TEST_CASE("critical points at N=2 are the fourth roots") {
  OptimizerConfig cfg;
  cfg.starts = 64;
  cfg.seed = 13;
  const auto cps = find_critical_points(2, ParamKind::full_torus, cfg, 1e-10);
  REQUIRE(cps.size() == 4);
  std::set<int> quadrants;
  for (const auto& cp : cps) {
    const double units = cp.q.angles[1] / (kPi / 2);
    CHECK(std::abs(units - std::round(units)) < 1e-7);
    quadrants.insert(static_cast<int>(std::lround(units)) % 4);
    CHECK(cp.residual < 1e-10);
  }
  CHECK(quadrants == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("Hadamard eigenvalue vectors verify as critical points") {
  auto h = fixture("BF6");
  for (auto& x : h.first_row) x /= std::sqrt(6.0);
  const auto q = eigenvalues_of_circulant(h);
  const auto rep = phi_decompose(q);
  CriticalPoint cp{q, rep.total, rep.parts, 0.0};
  for (const auto& p : rep.parts) cp.residual = std::max(cp.residual, std::abs(p.imag()));
  CHECK(cp.residual < 1e-9);
  CHECK(parity_conjecture_check(cp));
}

TEST_CASE("parity check distinguishes spread real parts") {
  CriticalPoint fake{PhaseVector::constant(4), 0.0,
                     {Complex(1, 0), Complex(2, 0), Complex(1, 0), Complex(2, 0)}, 0.0};
  CHECK(parity_conjecture_check(fake));
  fake.parts[2] = Complex(1.5, 0);
  CHECK_FALSE(parity_conjecture_check(fake));
}

TEST_CASE("ac restriction comparison at N=4") {
  OptimizerConfig cfg;
  cfg.starts = 16;
  cfg.seed = 3;
  const auto r = ac_restriction_compare(4, cfg);
  CHECK(r.min_real_symmetric == doctest::Approx(16.0).epsilon(1e-6));
  CHECK(r.min_ac_restricted == doctest::Approx(16.0).epsilon(1e-6));
  CHECK(r.min_ac_restricted >= r.min_real_symmetric - 1e-6);
  CHECK_THROWS_AS(ac_restriction_compare(6, cfg), std::invalid_argument);
}

TEST_CASE("gap scan emits one row per even size") {
  OptimizerConfig cfg;
  cfg.starts = 32;
  cfg.seed = 19;
  const auto rows = gap_scan(8, cfg);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].n == 4);
  CHECK(rows[1].n == 6);
  CHECK(rows[2].n == 8);
  CHECK(rows[0].gap == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(std::abs(rows[2].gap - 64.0 / 3) < 1e-5);
  for (const auto& r : rows) {
    CHECK(r.gap >= -1e-6);
    CHECK(r.min_phi == doctest::Approx(r.gap + r.n * r.n));
  }
}
