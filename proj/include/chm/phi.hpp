#pragma once

#include <utility>
#include <vector>

#include "chm/core.hpp"

namespace chm {

struct PhiReport {
  double total = 0.0;
  std::vector<Complex> parts;    // per-index decomposition; sums to total
  std::vector<double> gradient;  // d(phi)/d(angle_i)
  double lower_bound_gap = 0.0;  // total - N^2
};

struct PsiReport {
  double total = 0.0;
  std::vector<Complex> parts;           // per-index decomposition; sums to total
  std::vector<double> theta;            // arguments of the unitary's first row
  std::vector<int> degenerate_indices;  // where |xi_s| = 0 and theta_s = 0 by convention
};

// Direct O(N^3) evaluation of phi = sum over i+k=j+l of q_i q_k / (q_j q_l).
double phi_naive(const PhaseVector& q);

// phi = N^3 * sum_s |xi_s|^4 with xi the first row of F diag(q) F^*.
double phi_fast(const PhaseVector& q);

// Per-index parts phi_i (index i of the numerator held fixed), the angle
// gradient and the gap above the N^2 lower bound.
PhiReport phi_decompose(const PhaseVector& q);

std::vector<double> phi_gradient(const PhaseVector& q);

// max_i |Im phi_i|; zero exactly at critical points.
double critical_residual(const PhaseVector& q);

// (phi, N^2 + spread) with spread = (1/2) sum_{i != j} (|nu_i|^2 - |nu_j|^2)^2
// over nu = Fq; the two coincide identically.
std::pair<double, double> spread_identity(const PhaseVector& q);

// For real-symmetric q: phi = sum over i+j+k+l = 0 of q_i q_j q_k q_l.
// Also cross-checks the invariance under q -> -q and q -> (w^i q_i).
double phi_real_form(const PhaseVector& q);

// psi = (1/sqrt N) * entrywise 1-norm of F diag(q) F^*, with its per-index
// decomposition; psi <= N with equality exactly in the Hadamard case.
PsiReport psi_report(const PhaseVector& q);

// Entrywise p-norm of F diag(q) F^*, p >= 1.
double p_norm(const PhaseVector& q, double p);

// Enveloping sum |sum_i q_i|^4. With real_case set, the input must be the
// normalized layout (1, q_1..q_{m-1}, 1, conj reversed) and the value is
// cross-checked against |2 + X + conj(X)|^4, X = q_1 + ... + q_{m-1}.
double enveloping_report(const PhaseVector& q, bool real_case = false);

}  // namespace chm
