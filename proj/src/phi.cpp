#include "chm/phi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sign of d(phi)/d(alpha_i) relative to Im(phi_i), pinned against central
// finite differences (see the gradient tests).
constexpr double kGradientScale = -4.0;

// Below this modulus a Fourier coefficient is treated as exactly zero and its
// argument is conventional.
constexpr double kZeroCoefficient = 1e-12;

double real_form_sum(const std::vector<Complex>& v) {
  const int n = static_cast<int>(v.size());
  Complex acc(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex vij = v[i] * v[j];
      for (int k = 0; k < n; ++k) acc += vij * v[k] * v[mod_index(-(i + j + k), n)];
    }
  return acc.real();
}

}  // namespace

double phi_naive(const PhaseVector& q) {
  const int n = q.size();
  const auto v = q.values();
  Complex acc(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex num = v[i] * v[k];
      for (int j = 0; j < n; ++j) acc += num * std::conj(v[j] * v[mod_index(i + k - j, n)]);
    }
  if (std::abs(acc.imag()) > 1e-9 * std::max(1.0, std::abs(acc.real())))
    throw std::logic_error("phi_naive: nonreal accumulation");
  return acc.real();
}

double phi_fast(const PhaseVector& q) {
  const auto xi = unitary_first_row(q);
  const double n = static_cast<double>(q.size());
  double s = 0.0;
  for (const auto& x : xi) {
    const double m2 = std::norm(x);
    s += m2 * m2;
  }
  return n * n * n * s;
}

PhiReport phi_decompose(const PhaseVector& q) {
  const int n = q.size();
  const auto v = q.values();
  const auto xi = unitary_first_row(q);
  // phi_i = N^2 q_i conj(sum_t w^{ti} |xi_t|^2 xi_t), recovered by running the
  // Fourier contraction with the index i held fixed.
  std::vector<Complex> c(n);
  for (int t = 0; t < n; ++t) c[t] = std::norm(xi[t]) * xi[t];
  const auto fc = dft(c, /*inverse=*/false);
  const double n2 = static_cast<double>(n) * n;
  const double sq = std::sqrt(static_cast<double>(n));

  PhiReport rep;
  rep.parts.resize(n);
  rep.gradient.resize(n);
  Complex sum(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    rep.parts[i] = n2 * v[i] * std::conj(sq * fc[i]);
    rep.gradient[i] = kGradientScale * rep.parts[i].imag();
    sum += rep.parts[i];
  }
  rep.total = sum.real();
  rep.lower_bound_gap = rep.total - n2;
  return rep;
}

std::vector<double> phi_gradient(const PhaseVector& q) { return phi_decompose(q).gradient; }

double critical_residual(const PhaseVector& q) {
  const auto rep = phi_decompose(q);
  double r = 0.0;
  for (const auto& p : rep.parts) r = std::max(r, std::abs(p.imag()));
  return r;
}

std::pair<double, double> spread_identity(const PhaseVector& q) {
  const int n = q.size();
  const auto nu = dft(q.values(), /*inverse=*/false);
  std::vector<double> m2(n);
  for (int i = 0; i < n; ++i) m2[i] = std::norm(nu[i]);
  double spread = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        const double d = m2[i] - m2[j];
        spread += d * d;
      }
  return {phi_fast(q), static_cast<double>(n) * n + 0.5 * spread};
}

double phi_real_form(const PhaseVector& q) {
  if (!is_real_symmetric(q))
    throw std::invalid_argument("phi_real_form: input is not real-symmetric");
  const int n = q.size();
  const auto v = q.values();
  const double base = real_form_sum(v);

  // Invariance under q -> -q and q -> (w^i q_i); violation would mean a
  // broken evaluation, not a property of the input.
  const double tol = 1e-8 * std::max(1.0, std::abs(base));
  for (double sign : {1.0, -1.0})
    for (bool twist : {false, true}) {
      if (sign > 0.0 && !twist) continue;
      std::vector<Complex> t(v);
      for (int i = 0; i < n; ++i) {
        if (twist) t[i] *= std::polar(1.0, kTwoPi * i / n);
        t[i] *= sign;
      }
      if (std::abs(real_form_sum(t) - base) > tol)
        throw std::logic_error("phi_real_form: symmetry cross-check failed");
    }
  return base;
}

PsiReport psi_report(const PhaseVector& q) {
  const int n = q.size();
  const auto v = q.values();
  const auto xi = unitary_first_row(q);
  PsiReport rep;
  rep.theta.resize(n);
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    const double m = std::abs(xi[s]);
    total += m;
    if (m < kZeroCoefficient) {
      rep.theta[s] = 0.0;
      rep.degenerate_indices.push_back(s);
    } else {
      rep.theta[s] = std::arg(xi[s]);
    }
  }
  const double sq = std::sqrt(static_cast<double>(n));
  rep.total = sq * total;

  // psi_k = (1/sqrt N) q_k sum_s w^{-sk} e^{-i theta_s}
  rep.parts.resize(n);
  for (int k = 0; k < n; ++k) {
    Complex acc(0.0, 0.0);
    for (int s = 0; s < n; ++s) {
      const double ang = -kTwoPi * mod_index(s * k, n) / n - rep.theta[s];
      acc += std::polar(1.0, ang);
    }
    rep.parts[k] = v[k] * acc / sq;
  }
  return rep;
}

double p_norm(const PhaseVector& q, double p) {
  if (p < 1.0) throw std::invalid_argument("p_norm: p must be >= 1");
  const auto xi = unitary_first_row(q);
  const double n = static_cast<double>(q.size());
  double s = 0.0;
  for (const auto& x : xi) s += std::pow(std::abs(x), p);
  return std::pow(n * s, 1.0 / p);
}

double enveloping_report(const PhaseVector& q, bool real_case) {
  const int n = q.size();
  const auto v = q.values();
  Complex sum(0.0, 0.0);
  for (const auto& x : v) sum += x;
  const double m = std::abs(sum);
  const double value = m * m * m * m;

  if (real_case) {
    if (n % 2 != 0) throw std::invalid_argument("enveloping_report: real case needs even N");
    const int half = n / 2;
    const Tolerance tol{1e-9};
    if (std::abs(v[0] - Complex(1.0, 0.0)) > tol.eps ||
        std::abs(v[half] - Complex(1.0, 0.0)) > tol.eps)
      throw std::invalid_argument("enveloping_report: layout must have ones at 0 and N/2");
    for (int i = 1; i < half; ++i)
      if (std::abs(std::conj(v[i]) - v[n - i]) > tol.eps)
        throw std::invalid_argument("enveloping_report: layout is not conjugate-symmetric");
    Complex x(0.0, 0.0);
    for (int i = 1; i < half; ++i) x += v[i];
    const double m2 = std::abs(Complex(2.0, 0.0) + x + std::conj(x));
    const double check = m2 * m2 * m2 * m2;
    if (std::abs(check - value) > 1e-10 * std::max(1.0, value))
      throw std::logic_error("enveloping_report: half-sum identity violated");
  }
  return value;
}

}  // namespace chm
