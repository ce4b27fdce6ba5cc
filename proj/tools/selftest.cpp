#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "chm/butson.hpp"
#include "chm/core.hpp"
#include "chm/json_io.hpp"
#include "chm/moments.hpp"
#include "chm/optimize.hpp"
#include "chm/phi.hpp"

namespace {

using namespace chm;

constexpr double kPi = std::numbers::pi;

struct Checker {
  int failures = 0;

  void check(bool ok, const char* what) {
    std::printf("  [%s] %s\n", ok ? "ok" : "FAIL", what);
    if (!ok) ++failures;
  }
  void near(double got, double want, double tol, const char* what) {
    const bool ok = std::abs(got - want) <= tol;
    std::printf("  [%s] %s (got %.12g, want %.12g)\n", ok ? "ok" : "FAIL", what, got, want);
    if (!ok) ++failures;
  }
};

void selftest_phi(Checker& c) {
  c.near(phi_naive(PhaseVector::constant(4)), 64.0, 1e-9, "phi at the all-ones point, N=4");
  c.near(phi_naive(PhaseVector({0.0, kPi / 2})), 4.0, 1e-9, "phi(1,i) = 4");
  c.near(phi_naive(PhaseVector({0.0, 2 * kPi / 3, 2 * kPi / 3})), 9.0, 1e-9, "phi(1,w,w) = 9");
  c.near(phi_fast(PhaseVector({0.0, kPi, kPi, kPi})), 16.0, 1e-9, "phi at the K4 eigenvalues");
  const auto rep = phi_decompose(PhaseVector({0.0, kPi / 2}));
  c.near(rep.parts[0].real(), 2.0, 1e-9, "phi_0 at (1,i)");
  c.near(rep.parts[1].real(), 2.0, 1e-9, "phi_1 at (1,i)");
  const auto psi = psi_report(PhaseVector({0.0, 0.0}));
  c.near(psi.total, std::sqrt(2.0), 1e-12, "psi(1,1) = sqrt(2)");
  c.near(p_norm(PhaseVector({0.3, 1.0, 2.0}), 2.0), std::sqrt(3.0), 1e-12, "2-norm is sqrt(N)");
  const auto [lhs, rhs] = spread_identity(PhaseVector({0.0, 0.0}));
  c.near(lhs, rhs, 1e-9, "spread identity at (1,1)");
  c.near(enveloping_report(PhaseVector({0.0, kPi / 2})), 4.0, 1e-9, "enveloping |1+i|^4");
}

void selftest_minimize(Checker& c) {
  const auto q = real_symmetric_point({}, kPi / 2, {}, 4);
  c.check(std::abs(q.value(1) - Complex(0, 1)) < 1e-12 &&
              std::abs(q.value(3) - Complex(0, -1)) < 1e-12,
          "embedding at N=4, beta=pi/2 gives (1,i,1,-i)");
  c.near(verify_named_minima("N4"), 16.0, 1e-8, "published minimum N=4");
  c.near(verify_named_minima("N8"), 256.0 / 3, 1e-8, "published minimum N=8");
  c.near(verify_named_minima("N12"), 162.0, 1e-8, "published minimum N=12");
  OptimizerConfig cfg;
  cfg.starts = 24;
  cfg.seed = 1;
  c.near(minimize_phi(4, ParamKind::real_symmetric, cfg).best_value, 16.0, 1e-6,
         "minimize N=4 symmetric");
  c.near(minimize_phi(8, ParamKind::real_symmetric, cfg).best_value, 256.0 / 3, 1e-6,
         "minimize N=8 symmetric");
}

void selftest_critical(Checker& c) {
  OptimizerConfig cfg;
  cfg.starts = 48;
  cfg.seed = 3;
  const auto cps = find_critical_points(2, ParamKind::full_torus, cfg, 1e-10);
  c.check(cps.size() == 4, "N=2 has exactly four critical points");
  bool z4 = cps.size() == 4;
  for (const auto& cp : cps) {
    const double a = cp.q.angles[1];
    const double nearest = std::round(a / (kPi / 2)) * (kPi / 2);
    if (std::abs(a - nearest) > 1e-7) z4 = false;
  }
  c.check(z4, "N=2 critical points lie in Z_4");
  if (!cps.empty()) c.check(parity_conjecture_check(cps.front()), "parity holds at a critical point");
}

void selftest_gap(Checker& c) {
  OptimizerConfig cfg;
  cfg.starts = 16;
  cfg.seed = 5;
  const auto rows = gap_scan(4, cfg);
  c.check(rows.size() == 1, "gap scan emits one row for N=4");
  c.near(rows[0].gap, 0.0, 1e-6, "gap at N=4 is zero");
}

void selftest_butson(Checker& c) {
  c.check(cyclotomic_is_vanishing({3, {1, 1, 1}}), "1 + w + w^2 vanishes at l=3");
  c.check(!cyclotomic_is_vanishing({4, {1, 0, 0, 0}}), "a single root does not vanish");
  c.check(row_is_butson_hadamard({2, {1, 0, 0, 0}}), "the K4 row is Hadamard");
  c.check(row_is_butson_hadamard({4, {0, 1}}), "the (1,i) row is Hadamard");
  c.check(!row_is_butson_hadamard({2, {0, 0}}), "identical rows are not orthogonal");
  c.check(enumerate_circulant_butson(8, 2).rows.empty(), "no circulant N=8, l=2 matrices");
  c.check(!enumerate_circulant_butson(4, 2).rows.empty(), "the K4 orbit shows up at (4,2)");
  c.check(!enumerate_circulant_butson(3, 3).rows.empty(), "the Fourier orbit shows up at (3,3)");
  c.near(det_modulus_check({2, {1, 0, 0, 0}}), 16.0, 1e-6, "|det K4| = 16");
}

void selftest_table(Checker& c) {
  const auto table = obstruction_table(2, 9, 2, 9, 100'000'000LL);
  auto cell = [&](int n, int l) { return table[(n - 2) * 8 + (l - 2)].status; };
  c.check(cell(5, 6) == CellStatus::turyn, "(5,6) is Turyn-blocked");
  c.check(cell(7, 7) == CellStatus::cross, "(7,7) has a matrix");
  c.check(cell(2, 6) == CellStatus::turyn, "(2,6) is Turyn-blocked");
  c.check(cell(2, 3) == CellStatus::lam_leung, "(2,3) is Lam-Leung-blocked");
  c.check(cell(6, 8) == CellStatus::blank_unknown, "(6,8) is blank");
}

void selftest_moments(Checker& c) {
  long long count = 0;
  set_partitions(4, [&](const SetPartition&) { ++count; });
  c.check(count == 15, "Bell(4) = 15 partitions streamed");
  c.check(enveloping_moment_exact(2, 1) == 6, "enveloping moment (2,1) = 6");
  c.check(enveloping_moment_exact(3, 1) == 15, "enveloping moment (3,1) = 15");
  c.check(half_moment_exact(3, 2) == 15, "half moment (3, p=2) = 15");
  c.check(phi_moment_bruteforce(2, 1) == 6, "brute force (2,1) = 6");
  c.check(phi_moment_bruteforce(3, 1) == 15, "brute force (3,1) = 15");
  c.check(lattice_loop_oracle(2, 1, false) == 6, "plain loop count (2,1) = 6");
  c.check(lattice_loop_oracle(2, 1, true) == 6, "balanced loop count (2,1) = 6");
  const auto mc = phi_moment_montecarlo(2, 1, 20000, 42, Ensemble::complex_torus);
  c.check(std::abs(mc.mean - 6.0) < 3.0 * mc.std_error, "Monte Carlo brackets the exact value");
}

void selftest_fixtures(Checker& c) {
  for (const char* name : {"K4", "F2tilde", "BF6", "Ftilde(3)", "Ftilde(5)", "Ftilde(7)"}) {
    const auto h = fixture(name);
    c.check(is_complex_hadamard(h, 1.0, Tolerance{1e-9}),
            (std::string(name) + " is complex Hadamard").c_str());
  }
  const auto k4 = fixture("K4");
  c.check(k4.first_row == std::vector<Complex>({-1.0, 1.0, 1.0, 1.0}), "K4 first row");
  c.check(std::abs(fixture("F2tilde").first_row[1] - Complex(0, 1)) < 1e-12,
          "F2tilde first row is (1, i)");
}

void selftest_conjectures(Checker& c) {
  OptimizerConfig cfg;
  cfg.starts = 24;
  cfg.seed = 2;
  const auto r = ac_restriction_compare(4, cfg);
  c.near(r.min_real_symmetric, 16.0, 1e-6, "N=4 symmetric minimum");
  c.near(r.min_ac_restricted, 16.0, 1e-6, "N=4 a=c minimum");
}

}  // namespace

int run_selftest(const std::string& subcommand) {
  Checker c;
  std::printf("selftest: %s\n", subcommand.c_str());
  if (subcommand == "phi-eval") selftest_phi(c);
  else if (subcommand == "minimize") selftest_minimize(c);
  else if (subcommand == "critical-points") selftest_critical(c);
  else if (subcommand == "gap-scan") selftest_gap(c);
  else if (subcommand == "butson-enumerate") selftest_butson(c);
  else if (subcommand == "obstruction-table") selftest_table(c);
  else if (subcommand == "moments") selftest_moments(c);
  else if (subcommand == "verify-fixtures") selftest_fixtures(c);
  else if (subcommand == "conjecture-check") selftest_conjectures(c);
  else {
    std::printf("  [FAIL] unknown selftest '%s'\n", subcommand.c_str());
    return 1;
  }
  std::printf("selftest %s: %d failure(s)\n", subcommand.c_str(), c.failures);
  return c.failures;
}
