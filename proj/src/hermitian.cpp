#include "monotone/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "monotone/scalar_function.hpp"

namespace monotone {

ComplexMatrix mul(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim != y.dim) throw DomainError("matrix product: dimension mismatch");
  const std::size_t n = x.dim;
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx xik = x(i, k);
      if (xik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

ComplexMatrix adjoint(const ComplexMatrix& x) {
  ComplexMatrix r(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j) r(j, i) = std::conj(x(i, j));
  return r;
}

ComplexMatrix add(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim != y.dim) throw DomainError("matrix sum: dimension mismatch");
  ComplexMatrix r(x.dim);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

ComplexMatrix sub(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim != y.dim) throw DomainError("matrix difference: dimension mismatch");
  ComplexMatrix r(x.dim);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

ComplexMatrix scale(const ComplexMatrix& x, cplx c) {
  ComplexMatrix r(x.dim);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = c * x.a[i];
  return r;
}

double frobenius(const ComplexMatrix& x) {
  double s = 0.0;
  for (const cplx& v : x.a) s += std::norm(v);
  return std::sqrt(s);
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.dim == 0) throw DomainError("Hermitian matrix requires dim >= 1");
  m_ = ComplexMatrix(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i) {
    m_(i, i) = cplx(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < m.dim; ++j) {
      cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = v;
      m_(j, i) = std::conj(v);
    }
  }
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::from_real(std::size_t n, const std::vector<double>& row_major) {
  if (row_major.size() != n * n) throw DomainError("from_real: entry count != dim^2");
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n * n; ++i) m.a[i] = row_major[i];
  return HermitianMatrix(m);
}

void HermitianMatrix::set_sym(std::size_t i, std::size_t j, cplx v) {
  if (i == j) {
    m_(i, i) = cplx(v.real(), 0.0);
  } else {
    m_(i, j) = v;
    m_(j, i) = std::conj(v);
  }
}

HermitianMatrix hadd(const HermitianMatrix& x, const HermitianMatrix& y) {
  return HermitianMatrix(add(x.raw(), y.raw()));
}

HermitianMatrix hsub(const HermitianMatrix& x, const HermitianMatrix& y) {
  return HermitianMatrix(sub(x.raw(), y.raw()));
}

HermitianMatrix hscale(const HermitianMatrix& x, double c) {
  return HermitianMatrix(scale(x.raw(), c));
}

double frobenius(const HermitianMatrix& x) { return frobenius(x.raw()); }

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

SpectralDecomposition eigh(const HermitianMatrix& A) {
  const std::size_t n = A.dim();
  if (n == 0) throw DomainError("eigh: empty matrix");
  ComplexMatrix a = A.raw();
  ComplexMatrix u = ComplexMatrix::identity(n);

  const double norm_a = frobenius(a);
  const double stop = 1e-13 * norm_a;
  const int max_sweeps = 50;

  if (n > 1 && norm_a > 0.0) {
    int sweep = 0;
    while (off_diagonal_norm(a) > stop) {
      if (++sweep > max_sweeps) {
        throw NumericError("eigh: Jacobi did not converge in 50 sweeps", off_diagonal_norm(a));
      }
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const cplx apq = a(p, q);
          const double r = std::abs(apq);
          if (r == 0.0) continue;
          // Pivot phase u_ph = apq / r makes the 2x2 block real; tau then
          // picks the smaller-angle real rotation that annihilates it.
          const cplx u_ph = apq / r;
          const double app = a(p, p).real();
          const double aqq = a(q, q).real();
          const double tau = (aqq - app) / (2.0 * r);
          const double t =
              (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          // Column transform V = [[c, s], [-s*conj(u_ph), c*conj(u_ph)]]
          // acting on columns (p, q); A <- V* A V, U <- U V.
          const cplx v21 = -s * std::conj(u_ph);
          const cplx v22 = c * std::conj(u_ph);
          for (std::size_t i = 0; i < n; ++i) {
            const cplx aip = a(i, p);
            const cplx aiq = a(i, q);
            a(i, p) = aip * c + aiq * v21;
            a(i, q) = aip * s + aiq * v22;
          }
          for (std::size_t j = 0; j < n; ++j) {
            const cplx apj = a(p, j);
            const cplx aqj = a(q, j);
            a(p, j) = c * apj + std::conj(v21) * aqj;
            a(q, j) = s * apj + std::conj(v22) * aqj;
          }
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          a(p, p) = cplx(a(p, p).real(), 0.0);
          a(q, q) = cplx(a(q, q).real(), 0.0);
          for (std::size_t i = 0; i < n; ++i) {
            const cplx uip = u(i, p);
            const cplx uiq = u(i, q);
            u(i, p) = uip * c + uiq * v21;
            u(i, q) = uip * s + uiq * v22;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomposition d;
  d.eigenvalues.resize(n);
  d.vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    d.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) d.vectors(i, k) = u(i, order[k]);
  }
  return d;
}

double psd_tolerance(const HermitianMatrix& A) { return 1e-9 * (1.0 + frobenius(A)); }

PsdCertificate psd_check(const HermitianMatrix& A, double tol) {
  if (tol < 0.0) throw DomainError("psd_check: tolerance must be >= 0");
  SpectralDecomposition d = eigh(A);
  PsdCertificate c;
  c.min_eigenvalue = d.eigenvalues.front();
  c.tolerance = tol;
  c.verdict = c.min_eigenvalue >= -tol;
  return c;
}

PsdCertificate loewner_leq(const HermitianMatrix& A, const HermitianMatrix& B, double tol) {
  if (A.dim() != B.dim()) throw DomainError("loewner_leq: dimension mismatch");
  return psd_check(hsub(B, A), tol);
}

HermitianMatrix apply_fn(const ScalarFunction& f, const HermitianMatrix& A) {
  SpectralDecomposition d = eigh(A);
  for (double ev : d.eigenvalues) {
    if (!f.domain.contains(ev)) {
      std::ostringstream os;
      os << "apply_fn: eigenvalue " << ev << " outside domain " << f.domain.str() << " of "
         << f.spec_string();
      throw DomainError(os.str());
    }
  }
  const std::size_t n = A.dim();
  ComplexMatrix scaled(n);  // U diag(f(lambda))
  for (std::size_t j = 0; j < n; ++j) {
    const double fj = f.eval(d.eigenvalues[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) = d.vectors(i, j) * fj;
  }
  return HermitianMatrix(mul(scaled, adjoint(d.vectors)));
}

HermitianMatrix random_hermitian(std::size_t dim, Rng& rng) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return HermitianMatrix(m);
}

std::pair<HermitianMatrix, HermitianMatrix> random_ordered_pair(std::size_t dim,
                                                                const Interval& I, Rng& rng,
                                                                double window_width,
                                                                int budget) {
  if (dim == 0) throw DomainError("random_ordered_pair: dim must be >= 1");
  const Interval W = I.sampling_window(window_width);
  const double lo = W.lower, w = W.width();

  for (int attempt = 0; attempt < budget; ++attempt) {
    HermitianMatrix A0 = random_hermitian(dim, rng);
    SpectralDecomposition dA = eigh(A0);
    double span = dA.eigenvalues.back() - dA.eigenvalues.front();
    if (span < 1e-12) span = 1.0;
    // A occupies [lo + base w, lo + (base + eta * 0.97) w]; base is randomized
    // so the smallest eigenvalue moves too (matters at dim 1, where the
    // spectrum collapses to a point).
    const double base = rng.uniform(0.01, 0.31);
    const double eta = rng.uniform(0.3, 0.6);
    const double sc = eta * 0.97 * w / span;
    HermitianMatrix A = hadd(hscale(A0, sc),
                             hscale(HermitianMatrix::identity(dim),
                                    lo + base * w - sc * dA.eigenvalues.front()));

    ComplexMatrix G(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) G(i, j) = cplx(rng.normal(), rng.normal());
    HermitianMatrix P(mul(G, adjoint(G)));  // PSD Gram matrix

    SpectralDecomposition dA2 = eigh(A);
    SpectralDecomposition dP = eigh(P);
    const double headroom = (lo + 0.999 * w) - dA2.eigenvalues.back();
    if (headroom <= 0.0 || dP.eigenvalues.back() <= 0.0) continue;
    const double s = rng.uniform(0.1, 1.0) * headroom / dP.eigenvalues.back();
    HermitianMatrix B = hadd(A, hscale(P, s));

    // Self-validation: spectra strictly in I and exact order at tolerance 0.
    SpectralDecomposition dB = eigh(B);
    bool ok = true;
    for (double ev : dA2.eigenvalues) ok = ok && I.contains(ev);
    for (double ev : dB.eigenvalues) ok = ok && I.contains(ev);
    if (!ok) continue;
    if (!loewner_leq(A, B, 0.0).verdict) continue;
    return {A, B};
  }
  throw BudgetError("random_ordered_pair: rejection budget exhausted");
}

std::pair<HermitianMatrix, HermitianMatrix> random_ordered_pair(std::size_t dim,
                                                                const Interval& I,
                                                                std::uint64_t seed,
                                                                double window_width) {
  Rng rng(seed);
  return random_ordered_pair(dim, I, rng, window_width);
}

}
