#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chm/phi.hpp"

namespace chm {

enum class ParamKind {
  full_torus,         // all N angles free
  real_symmetric,     // even N: q = (1, q_1..q_{m-1}, 1, conj reversed)
  half_symmetric_ac,  // N = 4k: real_symmetric with the a and c blocks equal
  phase_slice,        // angle 0 pinned to zero, the rest free (global phase gauge)
};

// Linear embedding of free parameters into torus angles.
struct Parametrization {
  ParamKind kind;
  int n = 0;
  int n_params = 0;
  struct Link {
    int angle_index;
    int param_index;
    double sign;
  };
  std::vector<Link> links;
};

Parametrization make_parametrization(ParamKind kind, int n);
PhaseVector embed(std::span<const double> params, const Parametrization& par);
std::vector<double> pullback_gradient(std::span<const double> angle_gradient,
                                      const Parametrization& par);

struct OptimizerConfig {
  int starts = 256;
  std::uint64_t seed = 0;
  int max_iters = 10000;
  double step = 0.1;        // initial line-search step
  double grad_tol = 1e-10;  // convergence threshold on the gradient norm
  double backtrack = 0.5;   // line-search shrink factor
  int threads = 1;
};

struct MinResult {
  double best_value = 0.0;
  PhaseVector best_point = PhaseVector::constant(1);
  double gap = 0.0;  // best_value - N^2
  int n_converged = 0;
  int best_start = -1;
  std::vector<double> per_start;
};

MinResult minimize_phi(int n, ParamKind kind, const OptimizerConfig& cfg);

// Builds the real-symmetric point of size N = 4k from the block angles
// (alpha_1..alpha_{k-1}, beta, gamma_1..gamma_{k-1}).
PhaseVector real_symmetric_point(std::span<const double> alphas, double beta,
                                 std::span<const double> gammas, int n);

// Evaluates phi at the published minimizer for "N4", "N8" or "N12".
double verify_named_minima(const std::string& which);

// 15-term trigonometric expansion of phi on the N=8 real-symmetric slice.
double n8_closed_form(double alpha, double beta, double gamma);

struct N8XyResult {
  double phi;
  double square_term;  // 3x + 3y^2 + 6y + 2; vanishes at the minimum
};
// phi on the N=8 slice with a = c, as a polynomial in x = a^2 + conj(a)^2 and
// y = b + conj(b); both printed forms are evaluated and must agree.
N8XyResult n8_xy_form(double x, double y);

struct CriticalPoint {
  PhaseVector q;
  double phi_value = 0.0;
  std::vector<Complex> parts;
  double residual = 0.0;  // max_i |Im phi_i|
};

// Multistart Newton on the angle gradient; returns points with residual below
// residual_tol, deduplicated by angle distance after fixing q_0 = 1.
std::vector<CriticalPoint> find_critical_points(int n, ParamKind kind,
                                                const OptimizerConfig& cfg,
                                                double residual_tol);

// Re(phi_i) agrees within tol across even i and across odd i.
bool parity_conjecture_check(const CriticalPoint& cp, double tol = 1e-6);

struct AcCompareResult {
  double min_real_symmetric;
  double min_ac_restricted;
};
AcCompareResult ac_restriction_compare(int n, const OptimizerConfig& cfg);

struct GapRow {
  int n;
  double min_phi;
  double gap;
  int converged_starts;
};
std::vector<GapRow> gap_scan(int n_max, const OptimizerConfig& cfg);

}  // namespace chm
