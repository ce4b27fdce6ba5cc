#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace chm {

using Complex = std::complex<double>;

inline int mod_index(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

struct Tolerance {
  double eps = 1e-9;
};

// Point on the N-torus stored as angles, so unit modulus is exact and
// derivatives are taken directly in the angle coordinates.
struct PhaseVector {
  std::vector<double> angles;

  explicit PhaseVector(std::vector<double> a);
  static PhaseVector constant(int n, double angle = 0.0);
  static PhaseVector from_unit_complex(std::span<const Complex> v, Tolerance tol = {});

  int size() const { return static_cast<int>(angles.size()); }
  Complex value(int i) const;
  std::vector<Complex> values() const;
  PhaseVector normalized() const;  // angles wrapped into [0, 2*pi)
};

// N x N circulant matrix stored as its first row: entry(i,j) = first_row[(j-i) mod n].
struct CirculantMatrix {
  int n = 0;
  std::vector<Complex> first_row;

  Complex entry(int i, int j) const { return first_row[mod_index(j - i, n)]; }
  std::vector<Complex> row(int i) const;
};

struct CyclicRoot {
  std::vector<Complex> values;
  int size() const { return static_cast<int>(values.size()); }
};

// Unitary DFT with kernel w^{ij}, w = exp(2*pi*i/N); `inverse` conjugates the
// kernel. Both directions preserve the 2-norm.
std::vector<Complex> dft(std::span<const Complex> v, bool inverse = false);

// H = F diag(q) F^*; the first row is the literal row 0 of that product,
// which fixes the index-sign convention used throughout.
CirculantMatrix circulant_from_eigenvalues(const PhaseVector& q);

// Inverse of circulant_from_eigenvalues. Rejects input whose eigenvalues are
// not unimodular (i.e. a non-unitary circulant).
PhaseVector eigenvalues_of_circulant(const CirculantMatrix& h, Tolerance tol = {});

// First row of the unitary F diag(q) F^*, without wrapping it in a matrix.
std::vector<Complex> unitary_first_row(const PhaseVector& q);

// True iff scale*H has unimodular entries and pairwise orthogonal rows.
// Pass scale=1 for a matrix already written with unit-circle entries and
// scale=sqrt(N) for the unitary normalization.
bool is_complex_hadamard(const CirculantMatrix& h, double scale = 1.0, Tolerance tol = {});

// conj(q_i) == q_{-i} for all i; the eigenvalue symmetry of real circulants.
bool is_real_symmetric(const PhaseVector& q, Tolerance tol = {});

// z_i = xi_i / xi_{i-1}, indices mod N. Requires nonzero entries.
CyclicRoot cyclic_root_from_row(std::span<const Complex> xi);

// All cyclic partial-product sums of lengths 1..N-1 vanish and the full
// product is 1.
bool verify_cyclic_root(const CyclicRoot& z, Tolerance tol = {});

// Rebuild a first row from a cyclic root via cumulative products.
std::vector<Complex> row_from_cyclic_root(const CyclicRoot& z, Complex xi0 = Complex(1.0, 0.0));

// Circulant form of the Fourier matrix of order n ("Ftilde"). Odd n uses the
// triangular-exponent row; even n carries the extra exp(i*pi*j/n) twist that
// makes the cyclic product equal one.
CirculantMatrix fourier_circulant(int n);

// Named matrices: "K4", "F2tilde", "BF6", "Ftilde(N)".
CirculantMatrix fixture(const std::string& name);

// N == 4*n^2 for some integer n >= 1.
bool turyn_size_admissible(long long n);

// |det H| via the eigenvalue product of the circulant.
double circulant_abs_det(const CirculantMatrix& h);

}  // namespace chm
