#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "chm/core.hpp"

namespace chm {

// First row of a candidate circulant Butson matrix, stored as exponents:
// entry j is w^{exponents[j]} with w = exp(2*pi*i/l).
struct ButsonRow {
  int l = 2;
  std::vector<int> exponents;

  int size() const { return static_cast<int>(exponents.size()); }
};

// Multiset of l-th roots of unity: counts[e] copies of w^e.
struct CyclotomicCounts {
  int l = 2;
  std::vector<long long> counts;
};

// Coefficients of the l-th cyclotomic polynomial, ascending degree.
std::vector<long long> cyclotomic_polynomial(int l);

// Exact test of sum_e coeffs[e] * w^e == 0 by reduction modulo the l-th
// cyclotomic polynomial; integer arithmetic only.
bool vanishes_at_root_of_unity(std::span<const long long> coeffs, int l);

bool cyclotomic_is_vanishing(const CyclotomicCounts& c);

// Lexicographically smallest representative over cyclic rotations combined
// with the exponent shift that re-bases the first entry to zero.
ButsonRow canonical_butson_row(const ButsonRow& r);
bool is_canonical_butson_row(const ButsonRow& r);

// Exact circulant Hadamard test: every nonzero cyclic shift of the row must
// give a vanishing sum of root-of-unity differences.
bool row_is_butson_hadamard(const ButsonRow& r);

// Floating-point matrix with entries w^{exponents[j]}.
CirculantMatrix circulant_from_butson_row(const ButsonRow& r);

// N is a nonnegative integer combination of the distinct primes dividing l.
bool lam_leung_admissible(long long n, int l);

enum class SearchStatus { found, exhausted_none, inconclusive };

struct TurynSearch {
  SearchStatus status = SearchStatus::inconclusive;
  std::optional<std::vector<long long>> witness;  // entry counts a_0..a_{l-1}

  bool admissible() const { return status == SearchStatus::found; }
};

// Searches the compositions a of N into l parts for one satisfying
// sum_{ik} w^k a_i a_{i+k} = N; prime l uses the equivalent form
// sum_i (a_i - a_{i+k})^2 = 2N for every k != 0.
TurynSearch turyn_admissible(long long n, int l, long long budget = 100'000'000);

struct SquareDecomposition {
  std::vector<int> squares;  // nine square summands of 2N, descending
  bool groupable;            // splits into three zero-sum difference triples
};

// Worked obstruction analysis at l = 9: the vanishing condition becomes
// A_0 - N = A_3 = A_6, A_1 = A_4 = A_7, A_2 = A_5 = A_8 on the
// autocorrelations of the entry counts.
struct TurynL9Report {
  int n = 0;
  std::vector<SquareDecomposition> decompositions;  // 2N as at most 9 squares
  bool first_equation_satisfiable = false;
  // Sorted multisets {a_i, a_{i+3}, a_{i+6}} per residue class, for counts
  // passing the first equation; deduplicated patterns.
  std::vector<std::array<std::array<int, 3>, 3>> class_patterns;
  bool full_system_satisfiable = false;
  std::optional<std::vector<long long>> witness;
};

TurynL9Report turyn_l9_analysis(int n);

struct ButsonEnumeration {
  bool completed = false;       // false means the budget refused the search
  long long required_budget = 0;  // l^(N-1)
  std::vector<ButsonRow> rows;  // canonical solutions, lexicographic order
};

// All canonical circulant Butson rows for (N, l); exponent 0 is pinned to
// zero by the scalar symmetry, so the search space is l^(N-1).
ButsonEnumeration enumerate_circulant_butson(int n, int l, long long budget = 100'000'000);

enum class CellStatus { cross, lam_leung, turyn, blank_unknown };

struct ObstructionReport {
  int n = 0;
  int l = 2;
  bool lam_leung_blocked = false;
  bool turyn_blocked = false;
  std::optional<bool> exists;
  std::optional<ButsonRow> witness;
  CellStatus status = CellStatus::blank_unknown;
};

const char* cell_status_name(CellStatus s);

// Obstruction ladder per cell: Lam-Leung, then Turyn, then enumeration when
// it fits the budget.
std::vector<ObstructionReport> obstruction_table(int n_min, int n_max, int l_min, int l_max,
                                                 long long budget = 100'000'000);

struct UnitProductSearch {
  SearchStatus status = SearchStatus::inconclusive;
  std::optional<std::vector<int>> witness;  // exponent multiset, ascending
};

// Vanishing multiset of N l-th roots whose product is 1.
UnitProductSearch unit_product_vanishing_search(int n, int l, long long budget = 100'000'000);

// |det H| of the circulant built from the row; Hadamard rows give N^(N/2).
double det_modulus_check(const ButsonRow& r);

}  // namespace chm
