#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "chm/butson.hpp"
#include "chm/core.hpp"
#include "chm/moments.hpp"
#include "chm/phi.hpp"
#include "chm/rng.hpp"

namespace testsupport {

using chm::Complex;
constexpr double kPi = std::numbers::pi;

inline chm::PhaseVector random_phase_vector(int n, std::uint64_t seed, std::uint64_t stream = 0) {
  chm::CounterRng rng(seed, stream);
  std::vector<double> ang(n);
  for (int i = 0; i < n; ++i) ang[i] = rng.angle(i);
  return chm::PhaseVector(std::move(ang));
}

// Dense F diag(q) F^* by explicit matrix products, independent of the
// library's transform path.
inline std::vector<std::vector<Complex>> dense_fqfstar(const chm::PhaseVector& q) {
  const int n = q.size();
  std::vector<std::vector<Complex>> f(n, std::vector<Complex>(n));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f[i][j] = std::polar(scale, 2.0 * kPi * ((static_cast<long long>(i) * j) % n) / n);
  const auto qv = q.values();
  std::vector<std::vector<Complex>> h(n, std::vector<Complex>(n, Complex(0, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex acc(0, 0);
      for (int k = 0; k < n; ++k) acc += f[i][k] * qv[k] * std::conj(f[j][k]);
      h[i][j] = acc;
    }
  return h;
}

// Central finite differences of phi_naive in the angle coordinates.
inline std::vector<double> fd_gradient(const chm::PhaseVector& q, double h = 1e-5) {
  std::vector<double> g(q.size());
  for (int i = 0; i < q.size(); ++i) {
    auto plus = q.angles, minus = q.angles;
    plus[i] += h;
    minus[i] -= h;
    g[i] = (chm::phi_naive(chm::PhaseVector(plus)) - chm::phi_naive(chm::PhaseVector(minus))) /
           (2.0 * h);
  }
  return g;
}

// Definition-level per-index parts: phi_i = sum over j,k of
// q_i q_k conj(q_j q_{i+k-j}).
inline std::vector<Complex> parts_direct(const chm::PhaseVector& q) {
  const int n = q.size();
  const auto v = q.values();
  std::vector<Complex> parts(n, Complex(0, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        parts[i] += v[i] * v[k] * std::conj(v[j] * v[chm::mod_index(i + k - j, n)]);
  return parts;
}

// Bell numbers through the binomial recurrence B(n+1) = sum C(n,k) B(k);
// independent of the triangle used by the library.
inline long long bell_recurrence(int n) {
  std::vector<std::vector<long long>> choose(n + 1, std::vector<long long>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    choose[i][0] = 1;
    for (int j = 1; j <= i; ++j)
      choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : 0);
  }
  std::vector<long long> bell(n + 1, 0);
  bell[0] = 1;
  for (int m = 0; m < n; ++m) {
    long long next = 0;
    for (int k = 0; k <= m; ++k) next += choose[m][k] * bell[k];
    bell[m + 1] = next;
  }
  return bell[n];
}

// Multiset-pair count behind the enveloping moment, via a sorted-tuple
// census instead of the partition formula.
inline chm::BigInt enveloping_bruteforce(int n, int p) {
  const int slots = 2 * p;
  std::vector<int> tuple(slots, 0);
  std::map<std::vector<int>, long long> census;
  while (true) {
    auto key = tuple;
    std::sort(key.begin(), key.end());
    ++census[key];
    int pos = slots - 1;
    while (pos >= 0 && tuple[pos] == n - 1) tuple[pos--] = 0;
    if (pos < 0) break;
    ++tuple[pos];
  }
  chm::BigInt total = 0;
  for (const auto& [key, count] : census) total += chm::BigInt(count) * count;
  return total;
}

// Does a vanishing multiset of exactly `size` l-th roots of unity exist?
// Composite l: breadth-first reachability over the reduced coordinates of
// partial sums in Z[w]. Prime l: the vanishing sums are exactly the
// repetitions of the full cycle, so the size must be a multiple of l.
inline bool vanishing_multiset_exists(int size, int l) {
  bool is_prime = l >= 2;
  for (int d = 2; d * d <= l; ++d)
    if (l % d == 0) is_prime = false;
  if (is_prime) return size % l == 0;

  const auto phi = chm::cyclotomic_polynomial(l);
  const int deg = static_cast<int>(phi.size()) - 1;
  // reduced coordinates of x^e mod phi
  std::vector<std::vector<long long>> red(l, std::vector<long long>(deg, 0));
  {
    std::vector<long long> cur(deg + 1, 0);
    cur[0] = 1;
    for (int e = 0; e < l; ++e) {
      for (int m = 0; m < deg; ++m) red[e][m] = cur[m];
      for (int m = deg; m > 0; --m) cur[m] = cur[m - 1];
      cur[0] = 0;
      if (cur[deg] != 0) {
        for (int m = 0; m < deg; ++m) cur[m] -= cur[deg] * phi[m];
        cur[deg] = 0;
      }
    }
  }
  // Meet in the middle: sums of `size` roots vanish iff some sum of the
  // first half is the negation of a sum of the second half.
  const int half_a = size / 2, half_b = size - half_a;
  std::vector<std::set<std::vector<long long>>> levels(std::max(half_a, half_b) + 1);
  levels[0].insert(std::vector<long long>(deg, 0));
  for (int step = 1; step <= std::max(half_a, half_b); ++step)
    for (const auto& sum : levels[step - 1])
      for (int e = 0; e < l; ++e) {
        auto cand = sum;
        for (int m = 0; m < deg; ++m) cand[m] += red[e][m];
        levels[step].insert(std::move(cand));
      }
  for (const auto& sum : levels[half_a]) {
    auto negated = sum;
    for (auto& x : negated) x = -x;
    if (levels[half_b].count(negated) > 0) return true;
  }
  return false;
}

}  // namespace testsupport
