#pragma once

#include <memory>
#include <optional>
#include <string>

#include "monotone/interval.hpp"

namespace monotone {

// Expected monotonicity order of a catalog entry: the largest n for which the
// entry belongs to the order-n class on its natural interval, when that value
// is part of the toolkit's ground truth. Infinite means monotone at every
// order; Unknown means the toolkit asserts nothing (composites, restricted
// parameter ranges, interval-dependent entries).
struct ExpectedOrder {
  enum Kind { Exact, Infinite, Unknown } kind = Unknown;
  int order = 0;  // meaningful only when kind == Exact

  static ExpectedOrder exact(int n) { return {Exact, n}; }
  static ExpectedOrder infinite() { return {Infinite, 0}; }
  static ExpectedOrder unknown() { return {Unknown, 0}; }
};

// Scalar function catalog entry: evaluation, closed-form derivative, domain.
// Derivatives are exact (never finite differences) because divided-difference
// code needs f' at coincident nodes with full accuracy.
//
// Catalog: id, power(beta >= 0), exp, log1p, sqrt, moebius(alpha > 0),
// gap_poly(n), gap_fn(n, alpha), affine(a, b), composite(f, g).
//   gap_poly(n): t + t^3/3 + ... + t^(2n-1)/(2n-1), odd powers only.
//   moebius(alpha): alpha*t / (1+t), strictly increasing, bounded by alpha.
//   gap_fn(n, alpha): gap_poly(n) composed with moebius(alpha) on [0, inf).
struct ScalarFunction {
  enum class Tag { Identity, Power, Exp, Log1p, Sqrt, Moebius, GapPoly, GapFn, Affine, Composite };

  Tag tag = Tag::Identity;
  double p1 = 0.0;  // power beta | moebius alpha | gap_fn alpha | affine a
  double p2 = 0.0;  // affine b
  int n = 0;        // gap_poly / gap_fn order
  Interval domain;
  // composite(f, g) evaluates f(g(t)); unused otherwise
  std::shared_ptr<const ScalarFunction> outer;
  std::shared_ptr<const ScalarFunction> inner;

  double eval(double t) const;   // throws DomainError outside domain
  double deriv(double t) const;  // closed form; may be +inf at a boundary

  // CLI grammar string: "pow:2", "gap:3", "moebius:1.5", "gapfn:3:0.8",
  // "affine:2:1", "compose(a,b)", "id", "exp", "log1p", "sqrt".
  std::string spec_string() const;

  ExpectedOrder expected_order() const;
};

ScalarFunction identity_fn();
ScalarFunction power_fn(double beta);  // beta >= 0, domain [0, inf)
ScalarFunction exp_fn();
ScalarFunction log1p_fn();   // domain (-1, inf)
ScalarFunction sqrt_fn();    // domain [0, inf)
ScalarFunction moebius_fn(double alpha);  // alpha > 0, domain (-1, inf)
ScalarFunction gap_poly_fn(int n);        // n >= 1, domain (-inf, inf)
ScalarFunction gap_fn(int n, double alpha);  // domain [0, inf)
ScalarFunction affine_fn(double a, double b);

// Validates range(g) inside domain(f) by dense sampling (1000 points over a
// bounded probe window of g's domain, plus near-endpoint probes). Sampling is
// sound in practice for the monotone/polynomial catalog; it is not a proof.
ScalarFunction compose(const ScalarFunction& f, const ScalarFunction& g);

// Same function on a narrower domain. narrower must be a subset.
ScalarFunction restrict_to(const ScalarFunction& f, const Interval& narrower);

// Inverse of moebius(alpha) on [0, alpha): t / (alpha - t), built as a
// composite of affine and moebius pieces.
ScalarFunction moebius_inverse_fn(double alpha);

// Parses the CLI grammar (see ScalarFunction::spec_string).
ScalarFunction parse_function(const std::string& spec);

}
