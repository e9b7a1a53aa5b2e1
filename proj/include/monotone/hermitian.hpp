#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "monotone/errors.hpp"
#include "monotone/interval.hpp"
#include "monotone/rng.hpp"

namespace monotone {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major. General (not necessarily
// Hermitian); carries eigenvector bases, matrix units and intermediate
// products. Equality is exact bitwise equality of entries.
struct ComplexMatrix {
  std::size_t dim = 0;
  std::vector<cplx> a;

  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : dim(n), a(n * n, cplx(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  cplx& operator()(std::size_t i, std::size_t j) { return a[i * dim + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * dim + j]; }

  bool operator==(const ComplexMatrix& o) const { return dim == o.dim && a == o.a; }
};

ComplexMatrix mul(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix adjoint(const ComplexMatrix& x);
ComplexMatrix add(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix sub(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix scale(const ComplexMatrix& x, cplx c);
double frobenius(const ComplexMatrix& x);

// Hermitian matrix: construction enforces entries[i][j] == conj(entries[j][i])
// exactly by averaging (M + M*)/2, so downstream code never sees round-off
// asymmetry. Mutation goes through set_sym, which writes both triangles.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  // Hermitizes: stores (m + m*)/2.
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix zero(std::size_t n) { return HermitianMatrix(ComplexMatrix(n)); }
  static HermitianMatrix identity(std::size_t n) {
    return HermitianMatrix(ComplexMatrix::identity(n));
  }
  static HermitianMatrix diagonal(const std::vector<double>& d);
  // Real symmetric input, row-major; upper triangle is mirrored exactly.
  static HermitianMatrix from_real(std::size_t n, const std::vector<double>& row_major);

  std::size_t dim() const { return m_.dim; }
  const cplx& at(std::size_t i, std::size_t j) const { return m_(i, j); }
  const ComplexMatrix& raw() const { return m_; }

  // Sets (i, j) = v and (j, i) = conj(v); the diagonal keeps only Re(v).
  void set_sym(std::size_t i, std::size_t j, cplx v);

  bool operator==(const HermitianMatrix& o) const { return m_ == o.m_; }

 private:
  ComplexMatrix m_;
};

HermitianMatrix hadd(const HermitianMatrix& x, const HermitianMatrix& y);
HermitianMatrix hsub(const HermitianMatrix& x, const HermitianMatrix& y);
HermitianMatrix hscale(const HermitianMatrix& x, double c);
double frobenius(const HermitianMatrix& x);

// Eigensystem of a Hermitian matrix. Invariants (checked by tests, not at
// construction): ||U U* - I||_F <= 1e-10 * dim and
// ||U diag(lambda) U* - A||_F <= 1e-10 * (1 + ||A||_F).
struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix vectors;            // columns are eigenvectors
};

// Cyclic complex Jacobi. Each (p, q) rotation factors the pivot's phase into
// the unitary and applies a real 2x2 rotation. Stops when the off-diagonal
// Frobenius norm falls to 1e-13 * ||A||_F; throws NumericError carrying the
// residual after 50 sweeps. Self-contained by design: the toolkit's matrices
// stay small (dim <= ~64) and the accuracy target is fixed.
SpectralDecomposition eigh(const HermitianMatrix& A);

// PSD certificate at a given tolerance: verdict == (min_eigenvalue >= -tol).
struct PsdCertificate {
  double min_eigenvalue = 0.0;
  bool verdict = false;
  double tolerance = 0.0;
};

// Scale-aware default: 1e-9 * (1 + ||A||_F), well above eigensolver error.
double psd_tolerance(const HermitianMatrix& A);

PsdCertificate psd_check(const HermitianMatrix& A, double tol);

// Loewner-order predicate A <= B, i.e. psd_check(B - A, tol).
PsdCertificate loewner_leq(const HermitianMatrix& A, const HermitianMatrix& B, double tol);

struct ScalarFunction;

// Spectral functional calculus: U diag(f(lambda_i)) U*. Every eigenvalue must
// lie in domain(f); the error names the offending eigenvalue.
HermitianMatrix apply_fn(const ScalarFunction& f, const HermitianMatrix& A);

// Random pair A <= B with both spectra strictly inside I, exact Loewner order
// certified at tolerance 0 before returning (rejection loop). A is a
// GUE-style draw shifted and scaled into the lower part of I; B adds a scaled
// random Gram matrix, so B - A is positive semidefinite by construction.
// Unbounded I is sampled through I.sampling_window(window_width).
std::pair<HermitianMatrix, HermitianMatrix> random_ordered_pair(std::size_t dim,
                                                                const Interval& I, Rng& rng,
                                                                double window_width = 100.0,
                                                                int budget = 64);

std::pair<HermitianMatrix, HermitianMatrix> random_ordered_pair(std::size_t dim,
                                                                const Interval& I,
                                                                std::uint64_t seed,
                                                                double window_width = 100.0);

// GUE-style draw: independent standard complex Gaussian entries, hermitized.
HermitianMatrix random_hermitian(std::size_t dim, Rng& rng);

}
