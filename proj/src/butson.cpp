#include "chm/butson.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace chm {

namespace {

// Ascending-degree integer polynomial helpers. All divisions used here are
// exact, so the arithmetic stays in long long.

std::vector<long long> poly_divide_exact(std::vector<long long> num,
                                         const std::vector<long long>& den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  if (dd < 0 || den[dd] != 1) throw std::logic_error("poly_divide_exact: denominator not monic");
  std::vector<long long> quot(dn - dd + 1, 0);
  for (int d = dn; d >= dd; --d) {
    const long long c = num[d];
    if (c == 0) continue;
    quot[d - dd] = c;
    for (int m = 0; m <= dd; ++m) num[d - dd + m] -= c * den[m];
  }
  for (long long c : num)
    if (c != 0) throw std::logic_error("poly_divide_exact: nonzero remainder");
  return quot;
}

std::vector<long long> compute_cyclotomic(int l) {
  // x^l - 1 divided by the cyclotomic polynomials of the proper divisors.
  std::vector<long long> poly(l + 1, 0);
  poly[0] = -1;
  poly[l] = 1;
  for (int d = 1; d < l; ++d)
    if (l % d == 0) poly = poly_divide_exact(std::move(poly), cyclotomic_polynomial(d));
  return poly;
}

struct ReductionTable {
  int l = 0;
  int deg = 0;
  std::vector<long long> phi;  // cyclotomic polynomial, ascending
  std::vector<int> red;        // l rows of deg entries: x^e mod phi
};

const ReductionTable& reduction_table(int l) {
  static std::map<int, ReductionTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(l);
  if (it != cache.end()) return it->second;

  ReductionTable t;
  t.l = l;
  t.phi = cyclotomic_polynomial(l);
  t.deg = static_cast<int>(t.phi.size()) - 1;
  t.red.assign(static_cast<size_t>(l) * t.deg, 0);
  std::vector<long long> cur(t.deg + 1, 0);
  cur[0] = 1;
  for (int e = 0; e < l; ++e) {
    for (int m = 0; m < t.deg; ++m) t.red[static_cast<size_t>(e) * t.deg + m] = static_cast<int>(cur[m]);
    // multiply by x, then reduce the top coefficient
    for (int m = t.deg; m > 0; --m) cur[m] = cur[m - 1];
    cur[0] = 0;
    const long long top = cur[t.deg];
    if (top != 0) {
      for (int m = 0; m < t.deg; ++m) cur[m] -= top * t.phi[m];
      cur[t.deg] = 0;
    }
  }
  return cache.emplace(l, std::move(t)).first->second;
}

bool hadamard_row_with_table(const std::vector<int>& e, int l, const ReductionTable& tab,
                             std::vector<long long>& acc) {
  const int n = static_cast<int>(e.size());
  const int deg = tab.deg;
  for (int s = 1; s < n; ++s) {
    std::fill(acc.begin(), acc.end(), 0LL);
    for (int j = 0; j < n; ++j) {
      int prev = j - s;
      if (prev < 0) prev += n;
      int d = e[j] - e[prev];
      if (d < 0) d += l;
      const int* row = &tab.red[static_cast<size_t>(d) * deg];
      for (int m = 0; m < deg; ++m) acc[m] += row[m];
    }
    bool zero = true;
    for (int m = 0; m < deg; ++m)
      if (acc[m] != 0) {
        zero = false;
        break;
      }
    if (!zero) return false;
  }
  return true;
}

std::vector<int> distinct_primes(int l) {
  std::vector<int> ps;
  int x = l;
  for (int p = 2; static_cast<long long>(p) * p <= x; ++p)
    if (x % p == 0) {
      ps.push_back(p);
      while (x % p == 0) x /= p;
    }
  if (x > 1) ps.push_back(x);
  return ps;
}

long long binomial_capped(long long n, long long k, long long cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) {
    if (r > cap) return cap + 1;
    r = r * (n - k + i) / i;
  }
  return std::min(r, cap + 1);
}

// Enumerates a_0..a_{l-1} >= 0 with sum n, lexicographically; fn returns
// false to stop early.
template <typename Fn>
bool enumerate_compositions(long long n, int l, std::vector<long long>& a, int pos, Fn&& fn) {
  if (pos == l - 1) {
    a[pos] = n;
    return fn(a);
  }
  for (long long v = 0; v <= n; ++v) {
    a[pos] = v;
    if (!enumerate_compositions(n - v, l, a, pos + 1, fn)) return false;
  }
  return true;
}

bool turyn_condition_holds(const std::vector<long long>& a, long long n, int l, bool prime_l,
                           std::vector<long long>& scratch) {
  if (prime_l) {
    for (int k = 1; k < l; ++k) {
      long long s = 0;
      for (int i = 0; i < l; ++i) {
        const long long d = a[i] - a[(i + k) % l];
        s += d * d;
      }
      if (s != 2 * n) return false;
    }
    return true;
  }
  // coefficient vector (A_0 - N, A_1, ..., A_{l-1}) must vanish at w
  for (int k = 0; k < l; ++k) {
    long long s = 0;
    for (int i = 0; i < l; ++i) s += a[i] * a[(i + k) % l];
    scratch[k] = s;
  }
  scratch[0] -= n;
  return vanishes_at_root_of_unity(scratch, l);
}

// Signed difference triples (d1, d2, d3) with d1 + d2 + d3 = 0 realize the
// square multiset {s1, s2, s3}.
bool zero_sum_triple(int s1, int s2, int s3) {
  const int d1 = static_cast<int>(std::lround(std::sqrt(static_cast<double>(s1))));
  const int d2 = static_cast<int>(std::lround(std::sqrt(static_cast<double>(s2))));
  const int d3 = static_cast<int>(std::lround(std::sqrt(static_cast<double>(s3))));
  for (int e1 : {-1, 1})
    for (int e2 : {-1, 1})
      for (int e3 : {-1, 1})
        if (e1 * d1 + e2 * d2 + e3 * d3 == 0) return true;
  return false;
}

bool groupable_into_triples(std::vector<int> squares) {
  // squares has exactly 9 entries; try to split into 3 zero-sum triples.
  if (squares.empty()) return true;
  std::sort(squares.begin(), squares.end(), std::greater<int>());
  const int m = static_cast<int>(squares.size());
  std::vector<bool> used(m, false);

  std::function<bool(int)> solve = [&](int placed) {
    if (placed == m) return true;
    int first = 0;
    while (used[first]) ++first;
    used[first] = true;
    for (int i = first + 1; i < m; ++i) {
      if (used[i]) continue;
      used[i] = true;
      for (int j = i + 1; j < m; ++j) {
        if (used[j]) continue;
        if (zero_sum_triple(squares[first], squares[i], squares[j])) {
          used[j] = true;
          if (solve(placed + 3)) return true;
          used[j] = false;
        }
      }
      used[i] = false;
    }
    used[first] = false;
    return false;
  };
  return solve(0);
}

}  // namespace

std::vector<long long> cyclotomic_polynomial(int l) {
  if (l < 1) throw std::invalid_argument("cyclotomic_polynomial: l must be positive");
  static std::map<int, std::vector<long long>> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
  }
  std::vector<long long> poly;
  if (l == 1) {
    poly = {-1, 1};
  } else {
    poly = compute_cyclotomic(l);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(l, std::move(poly)).first->second;
}

bool vanishes_at_root_of_unity(std::span<const long long> coeffs, int l) {
  if (l < 2) throw std::invalid_argument("vanishes_at_root_of_unity: l must be >= 2");
  const auto phi = cyclotomic_polynomial(l);
  const int deg = static_cast<int>(phi.size()) - 1;
  std::vector<long long> v(coeffs.begin(), coeffs.end());
  if (static_cast<int>(v.size()) < deg) v.resize(deg, 0);
  for (int d = static_cast<int>(v.size()) - 1; d >= deg; --d) {
    const long long c = v[d];
    if (c == 0) continue;
    v[d] = 0;
    for (int m = 0; m < deg; ++m) v[d - deg + m] -= c * phi[m];
  }
  for (int m = 0; m < deg; ++m)
    if (v[m] != 0) return false;
  return true;
}

bool cyclotomic_is_vanishing(const CyclotomicCounts& c) {
  if (static_cast<int>(c.counts.size()) != c.l)
    throw std::invalid_argument("cyclotomic_is_vanishing: counts size must equal l");
  for (long long x : c.counts)
    if (x < 0) throw std::invalid_argument("cyclotomic_is_vanishing: negative multiplicity");
  return vanishes_at_root_of_unity(c.counts, c.l);
}

ButsonRow canonical_butson_row(const ButsonRow& r) {
  const int n = r.size(), l = r.l;
  std::vector<int> best;
  for (int t = 0; t < n; ++t) {
    std::vector<int> cand(n);
    const int base = r.exponents[t];
    for (int j = 0; j < n; ++j) {
      int v = r.exponents[(j + t) % n] - base;
      if (v < 0) v += l;
      cand[j] = v;
    }
    if (best.empty() || cand < best) best = std::move(cand);
  }
  return ButsonRow{l, std::move(best)};
}

bool is_canonical_butson_row(const ButsonRow& r) {
  if (r.exponents.empty() || r.exponents[0] != 0) return false;
  const int n = r.size(), l = r.l;
  for (int t = 1; t < n; ++t) {
    const int base = r.exponents[t];
    for (int j = 0; j < n; ++j) {
      int v = r.exponents[(j + t) % n] - base;
      if (v < 0) v += l;
      if (v < r.exponents[j]) return false;
      if (v > r.exponents[j]) break;
    }
  }
  return true;
}

bool row_is_butson_hadamard(const ButsonRow& r) {
  if (r.l < 2) throw std::invalid_argument("row_is_butson_hadamard: l must be >= 2");
  for (int e : r.exponents)
    if (e < 0 || e >= r.l)
      throw std::invalid_argument("row_is_butson_hadamard: exponent out of range");
  const auto& tab = reduction_table(r.l);
  std::vector<long long> acc(tab.deg);
  return hadamard_row_with_table(r.exponents, r.l, tab, acc);
}

CirculantMatrix circulant_from_butson_row(const ButsonRow& r) {
  std::vector<Complex> row(r.size());
  for (int j = 0; j < r.size(); ++j)
    row[j] = std::polar(1.0, 2.0 * std::numbers::pi * r.exponents[j] / r.l);
  return CirculantMatrix{r.size(), std::move(row)};
}

bool lam_leung_admissible(long long n, int l) {
  if (n < 1 || l < 2) throw std::invalid_argument("lam_leung_admissible: need n >= 1, l >= 2");
  if (n > 1000000) throw std::invalid_argument("lam_leung_admissible: n too large");
  const auto primes = distinct_primes(l);
  std::vector<char> reach(n + 1, 0);
  reach[0] = 1;
  for (long long v = 0; v <= n; ++v) {
    if (!reach[v]) continue;
    for (int p : primes)
      if (v + p <= n) reach[v + p] = 1;
  }
  return reach[n] != 0;
}

TurynSearch turyn_admissible(long long n, int l, long long budget) {
  if (n < 1 || l < 2) throw std::invalid_argument("turyn_admissible: need n >= 1, l >= 2");
  const long long count = binomial_capped(n + l - 1, l - 1, budget);
  if (count > budget) return {SearchStatus::inconclusive, std::nullopt};

  const bool prime_l = distinct_primes(l).size() == 1 && distinct_primes(l)[0] == l;
  std::vector<long long> a(l, 0), scratch(l, 0);
  TurynSearch result{SearchStatus::exhausted_none, std::nullopt};
  enumerate_compositions(n, l, a, 0, [&](const std::vector<long long>& comp) {
    if (turyn_condition_holds(comp, n, l, prime_l, scratch)) {
      result = {SearchStatus::found, comp};
      return false;
    }
    return true;
  });
  return result;
}

TurynL9Report turyn_l9_analysis(int n) {
  if (n < 1) throw std::invalid_argument("turyn_l9_analysis: n must be positive");
  TurynL9Report rep;
  rep.n = n;

  // Partitions of 2N into at most nine square parts, descending.
  {
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
      if (remaining == 0) {
        std::vector<int> padded(parts);
        padded.resize(9, 0);
        rep.decompositions.push_back({padded, groupable_into_triples(padded)});
        return;
      }
      if (static_cast<int>(parts.size()) == 9) return;
      for (int d = static_cast<int>(std::sqrt(static_cast<double>(std::min(remaining, max_part))));
           d >= 1; --d) {
        const int sq = d * d;
        if (sq > remaining || sq > max_part) continue;
        parts.push_back(sq);
        rec(remaining - sq, sq);
        parts.pop_back();
      }
    };
    rec(2 * n, 2 * n);
  }

  // Exhaustive pass over the entry-count compositions.
  std::vector<long long> a(9, 0);
  auto cls = [&](const std::vector<long long>& comp, int c) {
    std::array<int, 3> t = {static_cast<int>(comp[c]), static_cast<int>(comp[c + 3]),
                            static_cast<int>(comp[c + 6])};
    std::sort(t.begin(), t.end());
    return t;
  };
  enumerate_compositions(n, 9, a, 0, [&](const std::vector<long long>& comp) {
    long long a0 = 0, a3 = 0;
    for (int i = 0; i < 9; ++i) {
      a0 += comp[i] * comp[i];
      a3 += comp[i] * comp[(i + 3) % 9];
    }
    if (a0 - n != a3) return true;
    rep.first_equation_satisfiable = true;
    std::array<std::array<int, 3>, 3> pattern = {cls(comp, 0), cls(comp, 1), cls(comp, 2)};
    std::sort(pattern.begin(), pattern.end());
    if (std::find(rep.class_patterns.begin(), rep.class_patterns.end(), pattern) ==
        rep.class_patterns.end())
      rep.class_patterns.push_back(pattern);

    long long a1 = 0, a4 = 0, a2 = 0, a5 = 0;
    for (int i = 0; i < 9; ++i) {
      a1 += comp[i] * comp[(i + 1) % 9];
      a4 += comp[i] * comp[(i + 4) % 9];
      a2 += comp[i] * comp[(i + 2) % 9];
      a5 += comp[i] * comp[(i + 5) % 9];
    }
    if (a1 == a4 && a2 == a5) {
      // A_7 = A_2 and A_8 = A_1 by the k <-> l-k symmetry, so the two
      // remaining chains reduce to these equalities.
      if (!rep.full_system_satisfiable) rep.witness = comp;
      rep.full_system_satisfiable = true;
    }
    return true;
  });
  std::sort(rep.class_patterns.begin(), rep.class_patterns.end());
  return rep;
}

ButsonEnumeration enumerate_circulant_butson(int n, int l, long long budget) {
  if (n < 1 || l < 2) throw std::invalid_argument("enumerate_circulant_butson: bad (n, l)");
  constexpr long long kSaturate = std::numeric_limits<long long>::max();
  long long required = 1;
  for (int i = 0; i < n - 1; ++i) {
    if (required > kSaturate / l) {
      required = kSaturate;
      break;
    }
    required *= l;
  }
  ButsonEnumeration out;
  out.required_budget = required;
  if (required > budget) return out;

  const auto& tab = reduction_table(l);
  std::vector<long long> acc(tab.deg);
  ButsonRow r{l, std::vector<int>(n, 0)};
  while (true) {
    if (hadamard_row_with_table(r.exponents, l, tab, acc) && is_canonical_butson_row(r))
      out.rows.push_back(r);
    int pos = n - 1;
    while (pos >= 1 && r.exponents[pos] == l - 1) r.exponents[pos--] = 0;
    if (pos < 1) break;
    ++r.exponents[pos];
  }
  out.completed = true;
  return out;
}

const char* cell_status_name(CellStatus s) {
  switch (s) {
    case CellStatus::cross: return "cross";
    case CellStatus::lam_leung: return "lam_leung";
    case CellStatus::turyn: return "turyn";
    case CellStatus::blank_unknown: return "blank_unknown";
  }
  return "unknown";
}

std::vector<ObstructionReport> obstruction_table(int n_min, int n_max, int l_min, int l_max,
                                                 long long budget) {
  if (n_min < 1 || l_min < 2 || n_max < n_min || l_max < l_min)
    throw std::invalid_argument("obstruction_table: bad ranges");
  std::vector<ObstructionReport> table;
  for (int n = n_min; n <= n_max; ++n)
    for (int l = l_min; l <= l_max; ++l) {
      ObstructionReport rep;
      rep.n = n;
      rep.l = l;
      rep.lam_leung_blocked = !lam_leung_admissible(n, l);
      if (rep.lam_leung_blocked) {
        rep.status = CellStatus::lam_leung;
        table.push_back(std::move(rep));
        continue;
      }
      const auto turyn = turyn_admissible(n, l, budget);
      rep.turyn_blocked = turyn.status == SearchStatus::exhausted_none;
      if (rep.turyn_blocked) {
        rep.status = CellStatus::turyn;
        table.push_back(std::move(rep));
        continue;
      }
      const auto found = enumerate_circulant_butson(n, l, budget);
      if (!found.completed) {
        rep.status = CellStatus::blank_unknown;  // search refused by budget
      } else if (!found.rows.empty()) {
        rep.exists = true;
        rep.witness = found.rows.front();
        rep.status = CellStatus::cross;
      } else {
        rep.exists = false;
        rep.status = CellStatus::blank_unknown;
      }
      table.push_back(std::move(rep));
    }
  return table;
}

UnitProductSearch unit_product_vanishing_search(int n, int l, long long budget) {
  if (n < 1 || l < 2) throw std::invalid_argument("unit_product_vanishing_search: bad (n, l)");
  const long long count = binomial_capped(n + l - 1, n, budget);
  if (count > budget) return {SearchStatus::inconclusive, std::nullopt};

  std::vector<int> e(n, 0);
  std::vector<long long> counts(l, 0);
  UnitProductSearch out{SearchStatus::exhausted_none, std::nullopt};

  std::function<bool(int, int, long long)> rec = [&](int pos, int low, long long expsum) {
    if (pos == n) {
      if (expsum % l != 0) return true;
      std::fill(counts.begin(), counts.end(), 0LL);
      for (int x : e) ++counts[x];
      if (vanishes_at_root_of_unity(counts, l)) {
        out = {SearchStatus::found, e};
        return false;
      }
      return true;
    }
    for (int v = low; v < l; ++v) {
      e[pos] = v;
      if (!rec(pos + 1, v, expsum + v)) return false;
    }
    return true;
  };
  rec(0, 0, 0);
  return out;
}

double det_modulus_check(const ButsonRow& r) {
  return circulant_abs_det(circulant_from_butson_row(r));
}

}  // namespace chm
