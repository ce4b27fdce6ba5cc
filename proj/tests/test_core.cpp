#include <doctest.h>

#include <cmath>
#include <complex>

#include "chm/core.hpp"
#include "chm/phi.hpp"
#include "test_support.hpp"

using namespace chm;
using testsupport::kPi;

TEST_CASE("dft maps constants to deltas and back") {
  const std::vector<Complex> ones = {1.0, 1.0};
  const auto f = dft(ones);
  CHECK(std::abs(f[0] - Complex(std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(f[1]) < 1e-12);

  const std::vector<Complex> delta = {1.0, 0.0, 0.0};
  const auto g = dft(delta);
  for (const auto& x : g) CHECK(std::abs(x - Complex(1.0 / std::sqrt(3.0), 0)) < 1e-12);

  CHECK_THROWS_AS(dft(std::vector<Complex>{}), std::invalid_argument);
}

TEST_CASE("dft round trip and unitarity on random vectors") {
  const int n = 16;
  CounterRng rng(7);
  std::vector<Complex> v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(rng.uniform(2 * i) - 0.5, rng.uniform(2 * i + 1) - 0.5);
  const auto fwd = dft(v);
  double norm_in = 0, norm_out = 0;
  for (int i = 0; i < n; ++i) {
    norm_in += std::norm(v[i]);
    norm_out += std::norm(fwd[i]);
  }
  CHECK(norm_in == doctest::Approx(norm_out).epsilon(1e-12));
  const auto back = dft(fwd, /*inverse=*/true);
  for (int i = 0; i < n; ++i) CHECK(std::abs(back[i] - v[i]) < 1e-12);
}

TEST_CASE("circulant from eigenvalues matches the dense product") {
  const PhaseVector q({0.0, kPi, kPi, kPi});
  const auto h = circulant_from_eigenvalues(q);
  // 2H is K4 itself under this convention
  CHECK(std::abs(h.first_row[0] - Complex(-0.5, 0)) < 1e-12);
  for (int j = 1; j < 4; ++j) CHECK(std::abs(h.first_row[j] - Complex(0.5, 0)) < 1e-12);

  for (std::uint64_t seed : {1, 2, 3}) {
    const auto qr = testsupport::random_phase_vector(6, seed);
    const auto hr = circulant_from_eigenvalues(qr);
    const auto dense = testsupport::dense_fqfstar(qr);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) CHECK(std::abs(hr.entry(i, j) - dense[i][j]) < 1e-12);
  }
}

TEST_CASE("identity eigenvalues give the identity matrix") {
  const auto h = circulant_from_eigenvalues(PhaseVector::constant(5));
  CHECK(std::abs(h.first_row[0] - Complex(1, 0)) < 1e-12);
  for (int j = 1; j < 5; ++j) CHECK(std::abs(h.first_row[j]) < 1e-12);
}

TEST_CASE("circulant_from_eigenvalues is unitary") {
  const auto q = testsupport::random_phase_vector(12, 99);
  const auto h = circulant_from_eigenvalues(q);
  for (int s = 0; s < 12; ++s) {
    Complex acc(0, 0);
    for (int r = 0; r < 12; ++r)
      acc += h.first_row[r] * std::conj(h.first_row[mod_index(r + s, 12)]);
    CHECK(std::abs(acc - (s == 0 ? Complex(1, 0) : Complex(0, 0))) < 1e-12);
  }
}

TEST_CASE("eigenvalues_of_circulant inverts the construction") {
  const auto id = circulant_from_eigenvalues(PhaseVector::constant(4));
  const auto q_id = eigenvalues_of_circulant(id);
  for (double a : q_id.angles) CHECK(std::abs(a) < 1e-12);

  const CirculantMatrix k4_half{4, {-0.5, 0.5, 0.5, 0.5}};
  const auto qk = eigenvalues_of_circulant(k4_half);
  CHECK(std::abs(qk.value(0) - Complex(1, 0)) < 1e-10);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(qk.value(i) - Complex(-1, 0)) < 1e-10);

  for (int trial = 0; trial < 100; ++trial) {
    const auto q = testsupport::random_phase_vector(8, 1234, trial);
    const auto round = eigenvalues_of_circulant(circulant_from_eigenvalues(q));
    for (int i = 0; i < 8; ++i) {
      double d = std::fmod(std::abs(round.angles[i] - q.normalized().angles[i]), 2 * kPi);
      d = std::min(d, 2 * kPi - d);
      CHECK(d < 1e-10);
    }
  }

  // every torus dimension up to 32
  for (int n = 1; n <= 32; ++n)
    for (int trial = 0; trial < 3; ++trial) {
      const auto q = testsupport::random_phase_vector(n, 4321, trial * 64 + n);
      const auto round = eigenvalues_of_circulant(circulant_from_eigenvalues(q));
      for (int i = 0; i < n; ++i) {
        double d = std::fmod(std::abs(round.angles[i] - q.normalized().angles[i]), 2 * kPi);
        d = std::min(d, 2 * kPi - d);
        CHECK(d < 1e-10);
      }
    }

  const CirculantMatrix not_unitary{2, {1.0, 1.0}};
  CHECK_THROWS_AS(eigenvalues_of_circulant(not_unitary), std::invalid_argument);
}

TEST_CASE("is_complex_hadamard on the named matrices and a counterexample") {
  CHECK(is_complex_hadamard(fixture("K4")));
  CHECK(is_complex_hadamard(fixture("BF6")));
  const CirculantMatrix all_ones{2, {1.0, 1.0}};
  CHECK_FALSE(is_complex_hadamard(all_ones));
  // the unitary normalization passes with scale sqrt(N)
  const auto u = circulant_from_eigenvalues(PhaseVector({0.0, kPi, kPi, kPi}));
  CHECK(is_complex_hadamard(u, 2.0));
  CHECK_FALSE(is_complex_hadamard(u, 1.0));
}

TEST_CASE("is_real_symmetric examples") {
  CHECK(is_real_symmetric(PhaseVector({0.0, kPi, kPi, kPi})));
  CHECK_FALSE(is_real_symmetric(PhaseVector({0.0, kPi / 2, 0.0, kPi / 2})));
  for (double theta : {0.1, 1.3, 2.9})
    CHECK(is_real_symmetric(PhaseVector({0.0, theta, -theta})));
}

TEST_CASE("real symmetry is equivalent to a real matrix") {
  const PhaseVector sym({0.0, 0.7, kPi, -0.7});
  REQUIRE(is_real_symmetric(sym));
  for (const auto& x : circulant_from_eigenvalues(sym).first_row)
    CHECK(std::abs(x.imag()) < 1e-9);

  const auto rnd = testsupport::random_phase_vector(6, 5);
  REQUIRE_FALSE(is_real_symmetric(rnd));
  double max_imag = 0;
  for (const auto& x : circulant_from_eigenvalues(rnd).first_row)
    max_imag = std::max(max_imag, std::abs(x.imag()));
  CHECK(max_imag > 1e-9);
}

TEST_CASE("cyclic root from a row") {
  const std::vector<Complex> ones = {1.0, 1.0, 1.0};
  const auto z1 = cyclic_root_from_row(ones);
  for (const auto& z : z1.values) CHECK(std::abs(z - Complex(1, 0)) < 1e-12);
  CHECK_FALSE(verify_cyclic_root(z1));  // sums do not vanish

  const auto f3 = fixture("Ftilde(3)");
  const auto z = cyclic_root_from_row(f3.first_row);
  const Complex w = std::polar(1.0, 2 * kPi / 3);
  CHECK(std::abs(z.values[0] - w * w) < 1e-12);
  CHECK(std::abs(z.values[1] - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(z.values[2] - w) < 1e-12);
  CHECK(verify_cyclic_root(z));

  for (int trial = 0; trial < 100; ++trial) {
    const auto q = testsupport::random_phase_vector(5, 77, trial);
    const auto zz = cyclic_root_from_row(q.values());
    for (const auto& x : zz.values) CHECK(std::abs(std::abs(x) - 1.0) < 1e-12);
  }

  CHECK_THROWS_AS(cyclic_root_from_row(std::vector<Complex>{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("verify_cyclic_root on the Fourier roots") {
  // z_i = w^i is a cyclic root for odd N
  const int n = 5;
  CyclicRoot z;
  for (int i = 0; i < n; ++i) z.values.push_back(std::polar(1.0, 2 * kPi * i / n));
  CHECK(verify_cyclic_root(z));

  // even N needs the extra twist e^{i pi / N}
  CyclicRoot z4, z4_plain;
  for (int i = 0; i < 4; ++i) {
    z4.values.push_back(std::polar(1.0, 2 * kPi * i / 4 + kPi / 4));
    z4_plain.values.push_back(std::polar(1.0, 2 * kPi * i / 4));
  }
  CHECK(verify_cyclic_root(z4));
  CHECK_FALSE(verify_cyclic_root(z4_plain));  // full product is -1
}

TEST_CASE("cyclic root equivalence with the Hadamard property, both directions") {
  for (const char* name : {"K4", "F2tilde", "BF6", "Ftilde(3)", "Ftilde(5)"}) {
    const auto h = fixture(name);
    CAPTURE(name);
    CHECK(verify_cyclic_root(cyclic_root_from_row(h.first_row)));
  }
  // a non-Hadamard unimodular row must fail
  const auto q = testsupport::random_phase_vector(5, 3);
  const CirculantMatrix h{5, q.values()};
  REQUIRE_FALSE(is_complex_hadamard(h));
  CHECK_FALSE(verify_cyclic_root(cyclic_root_from_row(h.first_row)));

  // and a verified root rebuilds a Hadamard row
  const auto z = cyclic_root_from_row(fixture("BF6").first_row);
  const auto rebuilt = row_from_cyclic_root(z, fixture("BF6").first_row[0]);
  CHECK(is_complex_hadamard(CirculantMatrix{6, rebuilt}));
}

TEST_CASE("fixtures match their displays") {
  const auto k4 = fixture("K4");
  CHECK(k4.n == 4);
  CHECK(k4.first_row == std::vector<Complex>({-1.0, 1.0, 1.0, 1.0}));

  const auto f2 = fixture("F2tilde");
  CHECK(std::abs(f2.first_row[0] - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(f2.first_row[1] - Complex(0, 1)) < 1e-12);

  const auto bf = fixture("BF6");
  const Complex a = bf.first_row[1] / Complex(0, 1);
  CHECK(a.imag() > 0);
  // a solves a^2 - (1 - sqrt 3) a + 1 = 0
  CHECK(std::abs(a * a - (1.0 - std::sqrt(3.0)) * a + 1.0) < 1e-12);
  CHECK(std::abs(bf.first_row[2] + a) < 1e-12);
  CHECK(std::abs(bf.first_row[3] - Complex(0, -1)) < 1e-12);
  CHECK(std::abs(bf.first_row[4] + std::conj(a)) < 1e-12);
  CHECK(std::abs(bf.first_row[5] - Complex(0, 1) * std::conj(a)) < 1e-12);

  CHECK_THROWS_AS(fixture("nope"), std::invalid_argument);
  CHECK_THROWS_AS(fixture("Ftilde(1)"), std::invalid_argument);
}

TEST_CASE("every fixture certifies as Hadamard with the determinant modulus") {
  for (const char* name : {"K4", "F2tilde", "BF6", "Ftilde(3)", "Ftilde(5)", "Ftilde(7)",
                           "Ftilde(4)", "Ftilde(8)"}) {
    const auto h = fixture(name);
    CAPTURE(name);
    CHECK(is_complex_hadamard(h, 1.0, Tolerance{1e-9}));
    const double target = std::pow(static_cast<double>(h.n), h.n / 2.0);
    CHECK(circulant_abs_det(h) == doctest::Approx(target).epsilon(1e-6));
  }
}

TEST_CASE("turyn_size_admissible") {
  CHECK(turyn_size_admissible(4));
  CHECK(turyn_size_admissible(16));
  CHECK(turyn_size_admissible(36));
  CHECK_FALSE(turyn_size_admissible(8));
  CHECK_FALSE(turyn_size_admissible(12));
  CHECK_FALSE(turyn_size_admissible(2));
  CHECK_THROWS_AS(turyn_size_admissible(0), std::invalid_argument);
}

TEST_CASE("phase vector construction and normalization") {
  CHECK_THROWS_AS(PhaseVector(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(PhaseVector({0.0, std::nan("")}), std::invalid_argument);
  const PhaseVector q({-kPi / 2, 5 * kPi});
  const auto norm = q.normalized();
  CHECK(norm.angles[0] == doctest::Approx(3 * kPi / 2));
  CHECK(norm.angles[1] == doctest::Approx(kPi));
}
