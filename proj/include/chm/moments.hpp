#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "chm/core.hpp"

namespace chm {

using BigInt = boost::multiprecision::cpp_int;

struct BudgetExceeded : std::runtime_error {
  long long required;
  BudgetExceeded(const std::string& what, long long req)
      : std::runtime_error(what), required(req) {}
};

struct SetPartition {
  int n = 0;
  std::vector<std::vector<int>> blocks;  // disjoint, cover {0..n-1}

  std::vector<int> block_sizes() const;
};

// Ground sets above this make Bell(n) impractical to stream.
constexpr int kPartitionCap = 14;

long long bell_number(int n);

// Emits every partition of {0..n-1} exactly once, in restricted-growth-string
// order.
void set_partitions(int n, const std::function<void(const SetPartition&)>& fn);

// Exact moment of the enveloping sum: integral of |sum q_i|^{4p} over the
// torus, as a sum over partitions of 2p slots.
BigInt enveloping_moment_exact(long long n, int p);

// Exact integral of |sum q_i|^{2p}; the coefficient C_{pk} groups partitions
// of p slots by block count.
BigInt half_moment_exact(long long n, int p);
std::vector<BigInt> half_moment_coefficients(int p);  // C_{p,k} for k = 0..p

// Exact integral of phi^p: counts index pairs with blockwise equal sums mod N
// and globally equal multisets. Meet-in-the-middle over the two sides.
BigInt phi_moment_bruteforce(int n, int p, long long budget = 1'000'000'000);

// Loop count on the Z^N lattice: 4p steps with the fixed sign pattern
// (+,+,-,-) per block, returning to the origin. The balanced variant also
// requires each block's axis labels to satisfy i + k = j + l mod N, matching
// the phi expansion; the plain count matches the enveloping moment.
BigInt lattice_loop_oracle(int n, int p, bool balanced, long long budget = 1'000'000'000);

enum class Ensemble { complex_torus, real_symmetric };

struct MomentEstimate {
  int n = 0;
  int p = 1;
  double mean = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  Ensemble ensemble = Ensemble::complex_torus;
};

MomentEstimate phi_moment_montecarlo(int n, int p, long long samples, std::uint64_t seed,
                                     Ensemble ensemble);

struct PnormEstimate {
  std::vector<int> p_values;
  std::vector<double> estimates;  // N^3 - (empirical p-mean of N^3 - phi)
  double sup_estimate = 0.0;      // min phi over the sample set
  long long samples = 0;
  std::uint64_t seed = 0;
};

// Fixed-sample estimates of min phi via the p-norm limit; nonincreasing in p
// by the power-mean inequality on the empirical measure.
PnormEstimate pnorm_min_estimate(int n, std::span<const int> p_list, long long samples,
                                 std::uint64_t seed);

}  // namespace chm
