#include "chm/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Complex> root_table(int n) {
  std::vector<Complex> w(n);
  for (int m = 0; m < n; ++m) w[m] = std::polar(1.0, kTwoPi * m / n);
  return w;
}

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

}  // namespace

PhaseVector::PhaseVector(std::vector<double> a) : angles(std::move(a)) {
  if (angles.empty()) throw std::invalid_argument("PhaseVector: empty angle list");
  for (double x : angles)
    if (!std::isfinite(x)) throw std::invalid_argument("PhaseVector: non-finite angle");
}

PhaseVector PhaseVector::constant(int n, double angle) {
  return PhaseVector(std::vector<double>(static_cast<size_t>(n), angle));
}

PhaseVector PhaseVector::from_unit_complex(std::span<const Complex> v, Tolerance tol) {
  std::vector<double> ang(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (std::abs(std::abs(v[i]) - 1.0) > tol.eps)
      throw std::invalid_argument("PhaseVector::from_unit_complex: entry off the unit circle");
    ang[i] = wrap_angle(std::arg(v[i]));
  }
  return PhaseVector(std::move(ang));
}

Complex PhaseVector::value(int i) const { return std::polar(1.0, angles[i]); }

std::vector<Complex> PhaseVector::values() const {
  std::vector<Complex> v(angles.size());
  for (size_t i = 0; i < angles.size(); ++i) v[i] = std::polar(1.0, angles[i]);
  return v;
}

PhaseVector PhaseVector::normalized() const {
  std::vector<double> a(angles.size());
  for (size_t i = 0; i < angles.size(); ++i) a[i] = wrap_angle(angles[i]);
  return PhaseVector(std::move(a));
}

std::vector<Complex> CirculantMatrix::row(int i) const {
  std::vector<Complex> r(n);
  for (int j = 0; j < n; ++j) r[j] = entry(i, j);
  return r;
}

std::vector<Complex> dft(std::span<const Complex> v, bool inverse) {
  const int n = static_cast<int>(v.size());
  if (n == 0) throw std::invalid_argument("dft: empty input");
  const auto w = root_table(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      const int m = static_cast<int>((static_cast<long long>(i) * j) % n);
      acc += (inverse ? std::conj(w[m]) : w[m]) * v[j];
    }
    out[i] = acc * scale;
  }
  return out;
}

std::vector<Complex> unitary_first_row(const PhaseVector& q) {
  auto xi = dft(q.values(), /*inverse=*/true);
  const double s = 1.0 / std::sqrt(static_cast<double>(q.size()));
  for (auto& x : xi) x *= s;
  return xi;
}

CirculantMatrix circulant_from_eigenvalues(const PhaseVector& q) {
  return CirculantMatrix{q.size(), unitary_first_row(q)};
}

PhaseVector eigenvalues_of_circulant(const CirculantMatrix& h, Tolerance tol) {
  if (h.n <= 0 || static_cast<int>(h.first_row.size()) != h.n)
    throw std::invalid_argument("eigenvalues_of_circulant: malformed matrix");
  auto f = dft(h.first_row, /*inverse=*/false);
  const double s = std::sqrt(static_cast<double>(h.n));
  std::vector<double> ang(h.n);
  for (int k = 0; k < h.n; ++k) {
    const Complex qk = f[k] * s;
    if (std::abs(std::abs(qk) - 1.0) > tol.eps)
      throw std::invalid_argument(
          "eigenvalues_of_circulant: eigenvalue off the unit circle (input not unitary)");
    ang[k] = wrap_angle(std::arg(qk));
  }
  return PhaseVector(std::move(ang));
}

bool is_complex_hadamard(const CirculantMatrix& h, double scale, Tolerance tol) {
  if (scale <= 0.0) throw std::invalid_argument("is_complex_hadamard: scale must be positive");
  const int n = h.n;
  std::vector<Complex> g(h.first_row);
  for (auto& x : g) x *= scale;
  double norm2 = 0.0;
  for (const auto& x : g) {
    if (std::abs(std::abs(x) - 1.0) > tol.eps) return false;
    norm2 += std::norm(x);
  }
  // Rows of a circulant are shifts of the first row, so pairwise orthogonality
  // reduces to the autocorrelations at shifts 1..n-1.
  for (int s = 1; s < n; ++s) {
    Complex acc(0.0, 0.0);
    for (int r = 0; r < n; ++r) acc += g[r] * std::conj(g[mod_index(r + s, n)]);
    if (std::abs(acc) > tol.eps * norm2) return false;
  }
  return true;
}

bool is_real_symmetric(const PhaseVector& q, Tolerance tol) {
  const int n = q.size();
  const auto v = q.values();
  for (int i = 0; i < n; ++i)
    if (std::abs(std::conj(v[i]) - v[mod_index(-i, n)]) > tol.eps) return false;
  return true;
}

CyclicRoot cyclic_root_from_row(std::span<const Complex> xi) {
  const int n = static_cast<int>(xi.size());
  if (n == 0) throw std::invalid_argument("cyclic_root_from_row: empty row");
  for (const auto& x : xi)
    if (std::abs(x) == 0.0) throw std::invalid_argument("cyclic_root_from_row: zero entry");
  CyclicRoot z;
  z.values.resize(n);
  for (int i = 0; i < n; ++i) z.values[i] = xi[i] / xi[mod_index(i - 1, n)];
  return z;
}

bool verify_cyclic_root(const CyclicRoot& z, Tolerance tol) {
  const int n = z.size();
  if (n == 0) return false;
  // Sum over i of z_i z_{i+1} ... z_{i+k-1}, for each window length k < n.
  for (int k = 1; k < n; ++k) {
    Complex sum(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
      Complex prod(1.0, 0.0);
      for (int t = 0; t < k; ++t) prod *= z.values[mod_index(i + t, n)];
      sum += prod;
    }
    if (std::abs(sum) > tol.eps) return false;
  }
  Complex full(1.0, 0.0);
  for (const auto& x : z.values) full *= x;
  return std::abs(full - Complex(1.0, 0.0)) <= tol.eps;
}

std::vector<Complex> row_from_cyclic_root(const CyclicRoot& z, Complex xi0) {
  const int n = z.size();
  std::vector<Complex> xi(n);
  xi[0] = xi0;
  for (int j = 1; j < n; ++j) xi[j] = xi[j - 1] * z.values[j];
  return xi;
}

CirculantMatrix fourier_circulant(int n) {
  if (n < 2) throw std::invalid_argument("fourier_circulant: n must be >= 2");
  std::vector<Complex> xi(n);
  for (int j = 0; j < n; ++j) {
    const long long tri = static_cast<long long>(j) * (j - 1) / 2;
    double a = kTwoPi * static_cast<double>(tri % n) / n;
    if (n % 2 == 0) a += std::numbers::pi * j / n;
    xi[j] = std::polar(1.0, a);
  }
  return CirculantMatrix{n, std::move(xi)};
}

CirculantMatrix fixture(const std::string& name) {
  if (name == "K4") return CirculantMatrix{4, {-1.0, 1.0, 1.0, 1.0}};
  if (name == "F2tilde") return fourier_circulant(2);
  if (name == "BF6") {
    // a is the root of a^2 - (1 - sqrt 3) a + 1 = 0 with positive imaginary
    // part; the conjugate root gives an equivalent matrix.
    const double s3 = std::sqrt(3.0);
    const Complex a((1.0 - s3) / 2.0, std::sqrt(2.0 * s3) / 2.0);
    const Complex i(0.0, 1.0);
    return CirculantMatrix{6, {1.0, i * a, -a, -i, -std::conj(a), i * std::conj(a)}};
  }
  if (name.rfind("Ftilde(", 0) == 0 && name.back() == ')') {
    const std::string inner = name.substr(7, name.size() - 8);
    size_t pos = 0;
    int n = 0;
    try {
      n = std::stoi(inner, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("fixture: bad Ftilde size in '" + name + "'");
    }
    if (pos != inner.size() || n < 2)
      throw std::invalid_argument("fixture: bad Ftilde size in '" + name + "'");
    return fourier_circulant(n);
  }
  throw std::invalid_argument("fixture: unknown name '" + name + "'");
}

bool turyn_size_admissible(long long n) {
  if (n < 1) throw std::invalid_argument("turyn_size_admissible: n must be positive");
  if (n % 4 != 0) return false;
  const long long m = n / 4;
  const long long r = std::llround(std::sqrt(static_cast<double>(m)));
  for (long long k = std::max(1LL, r - 2); k <= r + 2; ++k)
    if (k * k == m) return true;
  return false;
}

double circulant_abs_det(const CirculantMatrix& h) {
  const auto f = dft(h.first_row, /*inverse=*/false);
  const double s = std::sqrt(static_cast<double>(h.n));
  double det = 1.0;
  for (const auto& lam : f) det *= std::abs(lam) * s;
  return det;
}

}  // namespace chm
