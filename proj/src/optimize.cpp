#include "chm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "chm/rng.hpp"

namespace chm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kArmijoSlope = 1e-4;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

struct TorusObjective {
  Parametrization par;

  double value(std::span<const double> p) const { return phi_fast(embed(p, par)); }
  std::vector<double> gradient(std::span<const double> p) const {
    return pullback_gradient(phi_gradient(embed(p, par)), par);
  }
};

// Gauss elimination with partial pivoting; dimensions here are tiny.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const int d = static_cast<int>(b.size());
  for (int col = 0; col < d; ++col) {
    int piv = col;
    for (int r = col + 1; r < d; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < d; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < d; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(d, 0.0);
  for (int r = d - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < d; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return true;
}

std::vector<std::vector<double>> fd_jacobian(const TorusObjective& ob, std::vector<double>& p,
                                             double h = 1e-6) {
  const int d = static_cast<int>(p.size());
  std::vector<std::vector<double>> j(d, std::vector<double>(d));
  for (int c = 0; c < d; ++c) {
    const double keep = p[c];
    p[c] = keep + h;
    const auto gp = ob.gradient(p);
    p[c] = keep - h;
    const auto gm = ob.gradient(p);
    p[c] = keep;
    for (int r = 0; r < d; ++r) j[r][c] = (gp[r] - gm[r]) / (2.0 * h);
  }
  return j;
}

// Damped Newton iteration on the gradient; returns true when the gradient
// norm drops below tol. A Levenberg shift on the diagonal keeps the step
// defined where the Jacobian is singular (flat critical directions).
bool newton_on_gradient(const TorusObjective& ob, std::vector<double>& p, double tol,
                        int max_iters) {
  const int d = static_cast<int>(p.size());
  if (d == 0) return true;
  auto g = ob.gradient(p);
  double gn = norm2(g);
  for (int it = 0; it < max_iters; ++it) {
    if (gn < tol) return true;
    const auto j = fd_jacobian(ob, p);
    double scale = 1.0;
    for (int r = 0; r < d; ++r) scale = std::max(scale, std::abs(j[r][r]));
    bool improved = false;
    std::vector<double> cand(d);
    for (double shift : {0.0, 1e-12, 1e-8, 1e-4, 1e-2}) {
      auto js = j;
      for (int r = 0; r < d; ++r) js[r][r] += shift * scale;
      std::vector<double> rhs(d), step;
      for (int r = 0; r < d; ++r) rhs[r] = -g[r];
      if (!solve_linear(std::move(js), std::move(rhs), step)) continue;
      const double sn = norm2(step);
      if (sn > 2.0)
        for (auto& x : step) x *= 2.0 / sn;
      double damping = 1.0;
      for (int half = 0; half < 20 && !improved; ++half) {
        for (int i = 0; i < d; ++i) cand[i] = p[i] + damping * step[i];
        const auto gc = ob.gradient(cand);
        const double gcn = norm2(gc);
        if (gcn < gn) {
          p = cand;
          g = gc;
          gn = gcn;
          improved = true;
        }
        damping *= 0.5;
      }
      if (improved) break;
    }
    if (!improved) return gn < tol;
  }
  return gn < tol;
}

// Compass search: per-coordinate probes with a shrinking step. Handles the
// very flat basins where the gradient gives no usable direction.
void pattern_polish(const TorusObjective& ob, std::vector<double>& p, double& f) {
  const int d = static_cast<int>(p.size());
  double scale = 0.05;
  long long evals = 0;
  while (scale > 1e-10 && evals < 40000) {
    bool improved = false;
    for (int i = 0; i < d; ++i) {
      for (double dir : {1.0, -1.0}) {
        const double keep = p[i];
        p[i] = keep + dir * scale;
        const double fc = ob.value(p);
        ++evals;
        if (fc < f) {
          f = fc;
          improved = true;
          break;
        }
        p[i] = keep;
      }
    }
    if (!improved) scale *= 0.5;
  }
}

struct StartOutcome {
  std::vector<double> p;
  double f = 0.0;
  bool converged = false;
};

StartOutcome minimize_from(const TorusObjective& ob, std::vector<double> p,
                           const OptimizerConfig& cfg) {
  const int d = static_cast<int>(p.size());
  double f = ob.value(p);
  if (d == 0) return {std::move(p), f, true};

  double warm = cfg.step;
  std::vector<double> cand(d);
  for (int it = 0; it < cfg.max_iters; ++it) {
    const auto g = ob.gradient(p);
    const double g2 = dot(g, g);
    if (std::sqrt(g2) < cfg.grad_tol) break;
    double step = warm;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (int i = 0; i < d; ++i) cand[i] = p[i] - step * g[i];
      const double fc = ob.value(cand);
      if (fc <= f - kArmijoSlope * step * g2) {
        p = cand;
        f = fc;
        moved = true;
        break;
      }
      step *= cfg.backtrack;
    }
    if (!moved) break;  // flat to machine precision along -g
    warm = std::min(step * 2.0, 1.0);
  }

  // Terminal refinement: a derivative-free compass polish to cross the very
  // flat basins, then Newton on the gradient to drive it to zero. Newton
  // steps that raise the value are rejected.
  pattern_polish(ob, p, f);
  std::vector<double> refined = p;
  if (newton_on_gradient(ob, refined, cfg.grad_tol * 0.1, 40)) {
    const double fr = ob.value(refined);
    if (fr <= f + 1e-9 * std::max(1.0, std::abs(f))) {
      p = std::move(refined);
      f = fr;
    }
  }
  const bool converged = norm2(ob.gradient(p)) < cfg.grad_tol;
  return {std::move(p), f, converged};
}

std::vector<double> random_start(const CounterRng& rng, int d) {
  std::vector<double> p(d);
  for (int i = 0; i < d; ++i) p[i] = rng.angle(i);
  return p;
}

}  // namespace

Parametrization make_parametrization(ParamKind kind, int n) {
  if (n < 1) throw std::invalid_argument("make_parametrization: n must be positive");
  Parametrization par;
  par.kind = kind;
  par.n = n;
  switch (kind) {
    case ParamKind::full_torus:
      par.n_params = n;
      for (int i = 0; i < n; ++i) par.links.push_back({i, i, 1.0});
      break;
    case ParamKind::phase_slice:
      par.n_params = n - 1;
      for (int i = 1; i < n; ++i) par.links.push_back({i, i - 1, 1.0});
      break;
    case ParamKind::real_symmetric: {
      if (n % 2 != 0 || n < 2)
        throw std::invalid_argument("make_parametrization: real_symmetric needs even N >= 2");
      const int m = n / 2;
      par.n_params = m - 1;
      for (int i = 1; i < m; ++i) {
        par.links.push_back({i, i - 1, 1.0});
        par.links.push_back({n - i, i - 1, -1.0});
      }
      break;
    }
    case ParamKind::half_symmetric_ac: {
      if (n % 4 != 0 || n < 4)
        throw std::invalid_argument("make_parametrization: half_symmetric_ac needs N = 4k");
      const int k = n / 4;
      par.n_params = k;  // shared a-block angles plus beta
      for (int i = 1; i < k; ++i) {
        par.links.push_back({i, i - 1, 1.0});
        par.links.push_back({n - i, i - 1, -1.0});
        // c_j = a_j sits at angle k + (k - j), i.e. the c block is reversed
        par.links.push_back({k + (k - i), i - 1, 1.0});
        par.links.push_back({n - (k + (k - i)), i - 1, -1.0});
      }
      par.links.push_back({k, k - 1, 1.0});
      par.links.push_back({n - k, k - 1, -1.0});
      break;
    }
  }
  return par;
}

PhaseVector embed(std::span<const double> params, const Parametrization& par) {
  if (static_cast<int>(params.size()) != par.n_params)
    throw std::invalid_argument("embed: parameter count mismatch");
  std::vector<double> ang(par.n, 0.0);
  for (const auto& l : par.links) ang[l.angle_index] += l.sign * params[l.param_index];
  return PhaseVector(std::move(ang));
}

std::vector<double> pullback_gradient(std::span<const double> angle_gradient,
                                      const Parametrization& par) {
  std::vector<double> g(par.n_params, 0.0);
  for (const auto& l : par.links) g[l.param_index] += l.sign * angle_gradient[l.angle_index];
  return g;
}

MinResult minimize_phi(int n, ParamKind kind, const OptimizerConfig& cfg) {
  if (n < 2) throw std::invalid_argument("minimize_phi: n must be >= 2");
  if (cfg.starts < 1) throw std::invalid_argument("minimize_phi: need at least one start");
  const TorusObjective ob{make_parametrization(kind, n)};
  const int d = ob.par.n_params;

  std::vector<StartOutcome> outcomes(cfg.starts);
  auto run_range = [&](int lo, int hi) {
    for (int s = lo; s < hi; ++s)
      outcomes[s] = minimize_from(ob, random_start(CounterRng(cfg.seed, s), d), cfg);
  };
  const int workers = std::max(1, std::min(cfg.threads, cfg.starts));
  if (workers == 1) {
    run_range(0, cfg.starts);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (cfg.starts + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int lo = w * chunk, hi = std::min(cfg.starts, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  MinResult res;
  res.per_start.resize(cfg.starts);
  res.best_value = std::numeric_limits<double>::infinity();
  for (int s = 0; s < cfg.starts; ++s) {
    res.per_start[s] = outcomes[s].f;
    res.n_converged += outcomes[s].converged ? 1 : 0;
    if (outcomes[s].f < res.best_value) {
      res.best_value = outcomes[s].f;
      res.best_start = s;
    }
  }
  res.best_point = embed(outcomes[res.best_start].p, ob.par).normalized();
  res.gap = res.best_value - static_cast<double>(n) * n;
  return res;
}

PhaseVector real_symmetric_point(std::span<const double> alphas, double beta,
                                 std::span<const double> gammas, int n) {
  if (n % 4 != 0 || n < 4)
    throw std::invalid_argument("real_symmetric_point: n must be a multiple of 4");
  const int k = n / 4;
  if (static_cast<int>(alphas.size()) != k - 1 || static_cast<int>(gammas.size()) != k - 1)
    throw std::invalid_argument("real_symmetric_point: block size mismatch");
  // Free angles of the real_symmetric layout: (a_1..a_{k-1}, b, c_{k-1}..c_1).
  std::vector<double> params(2 * k - 1, 0.0);
  for (int i = 1; i < k; ++i) params[i - 1] = alphas[i - 1];
  params[k - 1] = beta;
  for (int j = 1; j < k; ++j) params[k + j - 1] = gammas[k - j - 1];
  return embed(params, make_parametrization(ParamKind::real_symmetric, n));
}

double verify_named_minima(const std::string& which) {
  const double pi = std::numbers::pi;
  if (which == "N4") return phi_naive(real_symmetric_point({}, pi / 2.0, {}, 4));
  if (which == "N8") {
    const double t = -std::acos(1.0 / std::sqrt(3.0));
    const double a[] = {t}, c[] = {t};
    return phi_naive(real_symmetric_point(a, pi, c, 8));
  }
  if (which == "N12") {
    const double a[] = {pi / 4.0, -2.0 * pi / 3.0};
    const double c[] = {pi / 4.0, -2.0 * pi / 3.0};
    return phi_naive(real_symmetric_point(a, -pi / 4.0, c, 12));
  }
  throw std::invalid_argument("verify_named_minima: expected N4, N8 or N12");
}

double n8_closed_form(double a, double b, double g) {
  using std::cos;
  return 170.0 + 2.0 * cos(4.0 * b) + 12.0 * cos(2.0 * a + 2.0 * g) + 8.0 * cos(a - 3.0 * g) +
         8.0 * cos(3.0 * a - g) + 48.0 * cos(a + g) + 48.0 * cos(a - b - g) +
         48.0 * cos(a + b - g) + 24.0 * cos(2.0 * b) + 24.0 * cos(a - 2.0 * b + g) +
         24.0 * cos(a + 2.0 * b + g) + 24.0 * cos(2.0 * a - b) + 24.0 * cos(2.0 * a + b) +
         24.0 * cos(b - 2.0 * g) + 24.0 * cos(b + 2.0 * g);
}

N8XyResult n8_xy_form(double x, double y) {
  const double direct =
      6.0 * x * x + 4.0 * x * (3.0 * y * y + 6.0 * y + 2.0) +
      (y * y * y * y + 8.0 * y * y + 48.0 * y + 136.0);
  const double square = 3.0 * x + 3.0 * y * y + 6.0 * y + 2.0;
  const double via_square =
      (2.0 * square * square +
       (-15.0 * y * y * y * y - 72.0 * y * y * y - 72.0 * y * y + 96.0 * y + 400.0)) /
      3.0;
  if (std::abs(direct - via_square) > 1e-10 * std::max(1.0, std::abs(direct)))
    throw std::logic_error("n8_xy_form: the two displayed forms disagree");
  return {direct, square};
}

std::vector<CriticalPoint> find_critical_points(int n, ParamKind kind,
                                                const OptimizerConfig& cfg,
                                                double residual_tol) {
  if (n < 2) throw std::invalid_argument("find_critical_points: n must be >= 2");
  const Parametrization par = make_parametrization(
      kind == ParamKind::full_torus ? ParamKind::phase_slice : kind, n);
  const TorusObjective ob{par};
  const int d = par.n_params;

  std::vector<CriticalPoint> found;
  auto try_insert = [&](std::vector<double> p) {
    const PhaseVector q = embed(p, par).normalized();
    const auto rep = phi_decompose(q);
    double res = 0.0;
    for (const auto& part : rep.parts) res = std::max(res, std::abs(part.imag()));
    if (res >= residual_tol) return;
    for (const auto& cp : found) {
      double dist = 0.0;
      for (int i = 0; i < n; ++i)
        dist = std::max(dist, circular_distance(q.angles[i], cp.q.angles[i]));
      if (dist < 1e-6) return;
    }
    found.push_back({q, rep.total, rep.parts, res});
  };

  for (int s = 0; s < cfg.starts; ++s) {
    std::vector<double> p = random_start(CounterRng(cfg.seed, s), d);
    if (newton_on_gradient(ob, p, 1e-12, 80)) {
      try_insert(std::move(p));
      continue;
    }
    // Fallback: pull |grad|^2 down by steepest descent, then retry Newton.
    auto h_grad = [&](const std::vector<double>& x) {
      std::vector<double> work = x;
      const auto g = ob.gradient(work);
      const auto j = fd_jacobian(ob, work);
      std::vector<double> out(d, 0.0);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) out[c] += 2.0 * j[r][c] * g[r];
      return out;
    };
    double h = dot(ob.gradient(p), ob.gradient(p));
    for (int it = 0; it < 200; ++it) {
      const auto hg = h_grad(p);
      double step = 1e-2;
      bool moved = false;
      std::vector<double> cand(d);
      for (int ls = 0; ls < 40; ++ls) {
        for (int i = 0; i < d; ++i) cand[i] = p[i] - step * hg[i];
        const auto gc = ob.gradient(cand);
        const double hc = dot(gc, gc);
        if (hc < h) {
          p = cand;
          h = hc;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (newton_on_gradient(ob, p, 1e-12, 80)) try_insert(std::move(p));
  }

  std::sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.q.angles < b.q.angles;
  });
  return found;
}

bool parity_conjecture_check(const CriticalPoint& cp, double tol) {
  double lo[2] = {std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  double hi[2] = {-std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  for (size_t i = 0; i < cp.parts.size(); ++i) {
    const double re = cp.parts[i].real();
    lo[i % 2] = std::min(lo[i % 2], re);
    hi[i % 2] = std::max(hi[i % 2], re);
  }
  for (int par = 0; par < 2; ++par)
    if (hi[par] > lo[par] + tol) return false;
  return true;
}

AcCompareResult ac_restriction_compare(int n, const OptimizerConfig& cfg) {
  if (n % 4 != 0) throw std::invalid_argument("ac_restriction_compare: n must be a multiple of 4");
  return {minimize_phi(n, ParamKind::real_symmetric, cfg).best_value,
          minimize_phi(n, ParamKind::half_symmetric_ac, cfg).best_value};
}

std::vector<GapRow> gap_scan(int n_max, const OptimizerConfig& cfg) {
  if (n_max < 4) throw std::invalid_argument("gap_scan: n_max must be >= 4");
  std::vector<GapRow> rows;
  for (int n = 4; n <= n_max; n += 2) {
    const auto r = minimize_phi(n, ParamKind::real_symmetric, cfg);
    rows.push_back({n, r.best_value, r.gap, r.n_converged});
  }
  return rows;
}

}  // namespace chm
