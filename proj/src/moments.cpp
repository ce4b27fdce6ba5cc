#include "chm/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "chm/optimize.hpp"
#include "chm/phi.hpp"
#include "chm/rng.hpp"

namespace chm {

namespace {

// Iterates restricted growth strings; fn receives the string and the running
// maxima. Returns the number of strings visited.
template <typename Fn>
long long for_each_rgs(int n, Fn&& fn) {
  std::vector<int> rgs(n, 0), maxv(n, 0);
  long long count = 0;
  while (true) {
    fn(rgs, maxv);
    ++count;
    int i = n - 1;
    while (i > 0 && rgs[i] > maxv[i - 1]) --i;
    if (i == 0) break;
    ++rgs[i];
    maxv[i] = std::max(maxv[i - 1], rgs[i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      maxv[j] = maxv[j - 1];
    }
  }
  return count;
}

void check_partition_cap(int n, const char* who) {
  if (n < 1) throw std::invalid_argument(std::string(who) + ": ground set must be nonempty");
  if (n > kPartitionCap)
    throw std::invalid_argument(std::string(who) + ": ground set " + std::to_string(n) +
                                " exceeds cap " + std::to_string(kPartitionCap) + " (Bell = " +
                                std::to_string(bell_number(std::min(n, 25))) + ")");
}

BigInt falling_factorial(long long n, int k) {
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

// Multinomial (sum sizes)! / prod sizes!; fits u64 comfortably for n <= 14.
unsigned long long multinomial(const std::vector<int>& sizes) {
  static const auto factorial = [] {
    std::array<unsigned long long, kPartitionCap + 1> f{};
    f[0] = 1;
    for (int i = 1; i <= kPartitionCap; ++i) f[i] = f[i - 1] * i;
    return f;
  }();
  int total = 0;
  for (int b : sizes) total += b;
  unsigned long long r = factorial[total];
  for (int b : sizes) r /= factorial[b];
  return r;
}

double sample_phi(int n, const CounterRng& rng, std::uint64_t sample, Ensemble ensemble,
                  const Parametrization* par) {
  if (ensemble == Ensemble::complex_torus) {
    std::vector<double> ang(n);
    for (int i = 0; i < n; ++i) ang[i] = rng.angle(sample * n + i);
    return phi_fast(PhaseVector(std::move(ang)));
  }
  const int d = par->n_params;
  std::vector<double> p(d);
  for (int i = 0; i < d; ++i) p[i] = rng.angle(sample * d + i);
  return phi_fast(embed(p, *par));
}

}  // namespace

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> s(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i) s[i] = static_cast<int>(blocks[i].size());
  return s;
}

long long bell_number(int n) {
  // Bell triangle; exact in long long through n = 25.
  if (n < 0 || n > 25) throw std::invalid_argument("bell_number: supported range is 0..25");
  std::vector<long long> row = {1};
  for (int i = 1; i <= n; ++i) {
    std::vector<long long> next(i + 1);
    next[0] = row.back();
    for (int j = 1; j <= i; ++j) next[j] = next[j - 1] + row[j - 1];
    row = std::move(next);
  }
  return row[0];
}

void set_partitions(int n, const std::function<void(const SetPartition&)>& fn) {
  check_partition_cap(n, "set_partitions");
  for_each_rgs(n, [&](const std::vector<int>& rgs, const std::vector<int>& maxv) {
    SetPartition part;
    part.n = n;
    part.blocks.assign(maxv[n - 1] + 1, {});
    for (int i = 0; i < n; ++i) part.blocks[rgs[i]].push_back(i);
    fn(part);
  });
}

BigInt enveloping_moment_exact(long long n, int p) {
  if (n < 1 || p < 1) throw std::invalid_argument("enveloping_moment_exact: need n, p >= 1");
  check_partition_cap(2 * p, "enveloping_moment_exact");
  const int slots = 2 * p;
  BigInt total = 0;
  std::vector<int> sizes;
  for_each_rgs(slots, [&](const std::vector<int>& rgs, const std::vector<int>& maxv) {
    const int k = maxv[slots - 1] + 1;
    if (k > n) return;
    sizes.assign(k, 0);
    for (int i = 0; i < slots; ++i) ++sizes[rgs[i]];
    total += BigInt(multinomial(sizes)) * falling_factorial(n, k);
  });
  return total;
}

std::vector<BigInt> half_moment_coefficients(int p) {
  if (p < 1) throw std::invalid_argument("half_moment_coefficients: p must be >= 1");
  check_partition_cap(p, "half_moment_coefficients");
  std::vector<BigInt> c(p + 1, 0);
  std::vector<int> sizes;
  for_each_rgs(p, [&](const std::vector<int>& rgs, const std::vector<int>& maxv) {
    const int k = maxv[p - 1] + 1;
    sizes.assign(k, 0);
    for (int i = 0; i < p; ++i) ++sizes[rgs[i]];
    c[k] += multinomial(sizes);
  });
  return c;
}

BigInt half_moment_exact(long long n, int p) {
  if (n < 1) throw std::invalid_argument("half_moment_exact: n must be >= 1");
  const auto c = half_moment_coefficients(p);
  BigInt total = 0;
  for (int k = 1; k <= p; ++k) {
    if (k > n) break;
    total += c[k] * falling_factorial(n, k);
  }
  return total;
}

BigInt phi_moment_bruteforce(int n, int p, long long budget) {
  if (n < 1 || p < 1) throw std::invalid_argument("phi_moment_bruteforce: need n, p >= 1");
  if (n > 16 || 2 * p > 12)
    throw std::invalid_argument("phi_moment_bruteforce: packing supports n <= 16, p <= 6");
  const int slots = 2 * p;
  double work = 1.0;
  for (int i = 0; i < slots; ++i) work *= n;
  work *= (slots + p);
  if (work > static_cast<double>(budget))
    throw BudgetExceeded("phi_moment_bruteforce: budget exceeded",
                         static_cast<long long>(work));

  // Key: sorted slot values (4 bits each) plus the per-block sums mod n.
  using Key = unsigned __int128;
  std::map<Key, long long> census;
  std::vector<int> tuple(slots, 0), sorted(slots);
  while (true) {
    sorted.assign(tuple.begin(), tuple.end());
    std::sort(sorted.begin(), sorted.end());
    Key key = 0;
    for (int v : sorted) key = (key << 4) | static_cast<Key>(v);
    for (int b = 0; b < p; ++b)
      key = (key << 4) | static_cast<Key>((tuple[2 * b] + tuple[2 * b + 1]) % n);
    ++census[key];
    int pos = slots - 1;
    while (pos >= 0 && tuple[pos] == n - 1) tuple[pos--] = 0;
    if (pos < 0) break;
    ++tuple[pos];
  }
  BigInt total = 0;
  for (const auto& [key, count] : census) total += BigInt(count) * count;
  return total;
}

BigInt lattice_loop_oracle(int n, int p, bool balanced, long long budget) {
  if (n < 1 || p < 1) throw std::invalid_argument("lattice_loop_oracle: need n, p >= 1");
  const int steps = 4 * p;
  double work = 1.0;
  for (int i = 0; i < steps; ++i) work *= n;
  if (work > static_cast<double>(budget))
    throw BudgetExceeded("lattice_loop_oracle: budget exceeded", static_cast<long long>(work));

  std::vector<int> position(n, 0);
  long long loops = 0;
  // Walks axis by axis; step t moves +1 along the chosen axis when t mod 4 is
  // 0 or 1, else -1. Block balance tracks i + k - j - l mod n.
  std::function<void(int, int)> walk = [&](int t, int block_balance) {
    if (t % 4 == 0 && t > 0) {
      if (balanced && block_balance % n != 0) return;
      block_balance = 0;
    }
    if (t == steps) {
      for (int axis = 0; axis < n; ++axis)
        if (position[axis] != 0) return;
      ++loops;
      return;
    }
    const int sign = (t % 4 < 2) ? 1 : -1;
    for (int axis = 0; axis < n; ++axis) {
      position[axis] += sign;
      walk(t + 1, block_balance + sign * axis);
      position[axis] -= sign;
    }
  };
  walk(0, 0);
  return BigInt(loops);
}

MomentEstimate phi_moment_montecarlo(int n, int p, long long samples, std::uint64_t seed,
                                     Ensemble ensemble) {
  if (samples < 1000) throw std::invalid_argument("phi_moment_montecarlo: need >= 1000 samples");
  if (p < 1 || n < 1) throw std::invalid_argument("phi_moment_montecarlo: need n, p >= 1");
  Parametrization par;
  if (ensemble == Ensemble::real_symmetric) {
    if (n % 2 != 0)
      throw std::invalid_argument("phi_moment_montecarlo: real_symmetric ensemble needs even N");
    par = make_parametrization(ParamKind::real_symmetric, n);
  }
  const CounterRng rng(seed, 0x6d6f6d31);
  long double sum = 0.0L, sum2 = 0.0L;
  for (long long s = 0; s < samples; ++s) {
    const double phi = sample_phi(n, rng, static_cast<std::uint64_t>(s), ensemble,
                                  ensemble == Ensemble::real_symmetric ? &par : nullptr);
    long double x = phi;
    for (int e = 1; e < p; ++e) x *= phi;
    sum += x;
    sum2 += x * x;
  }
  const long double mean = sum / samples;
  const long double var = std::max(0.0L, sum2 / samples - mean * mean);
  MomentEstimate est;
  est.n = n;
  est.p = p;
  est.mean = static_cast<double>(mean);
  est.std_error = static_cast<double>(std::sqrt(var / samples));
  est.samples = samples;
  est.seed = seed;
  est.ensemble = ensemble;
  return est;
}

PnormEstimate pnorm_min_estimate(int n, std::span<const int> p_list, long long samples,
                                 std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("pnorm_min_estimate: need samples >= 1");
  for (size_t i = 1; i < p_list.size(); ++i)
    if (p_list[i] <= p_list[i - 1])
      throw std::invalid_argument("pnorm_min_estimate: p_list must be strictly ascending");

  const double n3 = static_cast<double>(n) * n * n;
  const CounterRng rng(seed, 0x706e6f72);
  std::vector<double> logx;
  logx.reserve(samples);
  double max_log = -std::numeric_limits<double>::infinity();
  double min_phi = std::numeric_limits<double>::infinity();
  for (long long s = 0; s < samples; ++s) {
    std::vector<double> ang(n);
    for (int i = 0; i < n; ++i) ang[i] = rng.angle(static_cast<std::uint64_t>(s) * n + i);
    const double phi = phi_fast(PhaseVector(std::move(ang)));
    min_phi = std::min(min_phi, phi);
    const double x = std::max(n3 - phi, 0.0);
    const double lx = x > 0.0 ? std::log(x) : -745.0;
    logx.push_back(lx);
    max_log = std::max(max_log, lx);
  }

  PnormEstimate out;
  out.samples = samples;
  out.seed = seed;
  out.sup_estimate = min_phi;
  for (int p : p_list) {
    // log-domain p-mean keeps (N^3 - phi)^p finite for large p
    long double acc = 0.0L;
    for (double lx : logx) acc += std::exp(static_cast<long double>(p) * (lx - max_log));
    const double pmean =
        std::exp(max_log + std::log(static_cast<double>(acc / samples)) / p);
    out.p_values.push_back(p);
    out.estimates.push_back(n3 - pmean);
  }
  return out;
}

}  // namespace chm
