#pragma once

// Closed-form cross-checks used by the tests. Everything here runs on plain
// polynomial coefficient arithmetic, Sylvester minors and the 2x2 eigenvalue
// formula -- none of it touches the library's eigensolver, divided
// differences or sweeps, so agreement between the two sides is evidence, not
// tautology.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

// Coefficients (index = power) of t + t^3/3 + ... + t^(2n-1)/(2n-1).
inline std::vector<double> odd_poly_coeffs(int n) {
  std::vector<double> c(2 * n, 0.0);
  for (int k = 1; k <= n; ++k) c[2 * k - 1] = 1.0 / (2 * k - 1);
  return c;
}

// m-fold derivative of a coefficient vector.
inline std::vector<double> differentiate(std::vector<double> c, int m) {
  for (int pass = 0; pass < m; ++pass) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t p = 1; p < c.size(); ++p) d[p - 1] = c[p] * static_cast<double>(p);
    c = std::move(d);
  }
  return c;
}

inline double eval_poly(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t p = c.size(); p-- > 0;) v = v * t + c[p];
  return v;
}

// Local monotonicity matrix of the degree-n odd polynomial above:
// H[i][j] = f^(i+j-1)(t) / (i+j-1)!, 1-based i, j up to n, row-major.
// Positive semidefiniteness of H on [0, beta) is the local differential
// criterion for order-n monotonicity of a smooth function, so the first t
// where H leaves the cone is the exact breakdown threshold.
inline std::vector<double> local_hankel(int n, double t) {
  std::vector<double> h(static_cast<std::size_t>(n) * n);
  const std::vector<double> base = odd_poly_coeffs(n);
  double fact = 1.0;
  std::vector<double> by_order(2 * n);  // f^(m)(t)/m! for m = 1..2n-1
  for (int m = 1; m <= 2 * n - 1; ++m) {
    fact *= m;
    by_order[m] = eval_poly(differentiate(base, m), t) / fact;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      h[static_cast<std::size_t>(i - 1) * n + (j - 1)] = by_order[i + j - 1];
  return h;
}

// Sylvester: positive definite iff every leading principal minor is > 0.
// Determinants are expanded by hand; only n <= 3 is needed.
inline bool positive_definite_by_minors(const std::vector<double>& h, int n) {
  auto at = [&](int i, int j) { return h[static_cast<std::size_t>(i) * n + j]; };
  if (n >= 1 && !(at(0, 0) > 0.0)) return false;
  if (n >= 2 && !(at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0) > 0.0)) return false;
  if (n >= 3) {
    double det = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
                 at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
                 at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    if (!(det > 0.0)) return false;
  }
  if (n > 3) throw std::logic_error("minor oracle only expands n <= 3");
  return true;
}

// Smallest t > 0 where the local matrix leaves the positive cone: coarse
// scan for the first failing bracket, then bisection to ~1e-14.
inline double local_breakdown(int n) {
  auto ok = [&](double t) { return positive_definite_by_minors(local_hankel(n, t), n); };
  double lo = 0.0, hi = 0.0;
  for (double t = 1e-3; t <= 4.0; t += 1e-3) {
    if (!ok(t)) {
      hi = t;
      lo = t - 1e-3;
      break;
    }
  }
  if (hi == 0.0) throw std::logic_error("no breakdown below 4");
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Eigenvalues of [[a, c], [conj(c), b]], ascending.
inline std::pair<double, double> eig2(double a, double b, std::complex<double> c) {
  double mean = 0.5 * (a + b);
  double r = std::hypot(0.5 * (a - b), std::abs(c));
  return {mean - r, mean + r};
}

}  // namespace oracle
