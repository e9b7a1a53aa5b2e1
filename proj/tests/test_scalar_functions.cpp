#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "monotone/errors.hpp"
#include "monotone/scalar_function.hpp"
#include "oracles.hpp"

using namespace monotone;

TEST_CASE("grammar round-trips through spec_string") {
  for (const char* spec : {"id", "pow:2", "exp", "log1p", "sqrt", "moebius:1.5", "gap:3",
                           "gapfn:3:0.8", "affine:2:1", "compose(exp,affine:1:0)"}) {
    CAPTURE(spec);
    CHECK(parse_function(spec).spec_string() == spec);
  }
  CHECK(parse_function("identity").spec_string() == "id");
  CHECK(parse_function("  sqrt\t").spec_string() == "sqrt");
  CHECK(parse_function("compose(log1p, compose(pow:2, sqrt))").spec_string() ==
        "compose(log1p,compose(pow:2,sqrt))");
}

TEST_CASE("malformed and out-of-range specs are rejected") {
  CHECK_THROWS_AS(parse_function(""), ParseError);
  CHECK_THROWS_AS(parse_function("   "), ParseError);
  CHECK_THROWS_AS(parse_function("frob"), ParseError);
  CHECK_THROWS_AS(parse_function("pow"), ParseError);
  CHECK_THROWS_AS(parse_function("pow:two"), ParseError);
  CHECK_THROWS_AS(parse_function("gapfn:2"), ParseError);
  CHECK_THROWS_AS(parse_function("compose(exp"), ParseError);
  CHECK_THROWS_AS(parse_function("compose(exp)"), ParseError);
  CHECK_THROWS_AS(parse_function("sqrt:2"), ParseError);

  CHECK_THROWS_AS(parse_function("pow:-1"), DomainError);
  CHECK_THROWS_AS(parse_function("gap:0"), DomainError);
  CHECK_THROWS_AS(parse_function("moebius:0"), DomainError);
  CHECK_THROWS_AS(parse_function("gapfn:0:0.5"), DomainError);
  CHECK_THROWS_AS(parse_function("gapfn:2:-0.5"), DomainError);
}

TEST_CASE("catalog values at hand-computed points") {
  CHECK(parse_function("gap:2").eval(0.5) == doctest::Approx(0.5 + 0.125 / 3.0).epsilon(1e-15));
  CHECK(parse_function("moebius:2").eval(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  // gapfn first maps through t -> alpha t / (1 + t)
  const double h = 0.8 * 1.0 / 2.0;
  CHECK(parse_function("gapfn:2:0.8").eval(1.0) ==
        doctest::Approx(h + h * h * h / 3.0).epsilon(1e-15));
  CHECK(parse_function("sqrt").eval(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(parse_function("affine:2:1").eval(3.0) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(parse_function("compose(log1p,pow:2)").eval(3.0) ==
        doctest::Approx(std::log1p(9.0)).epsilon(1e-15));
}

TEST_CASE("gap polynomial agrees with the coefficient oracle") {
  for (int n : {1, 2, 3, 4}) {
    const ScalarFunction g = gap_poly_fn(n);
    const auto coeffs = oracle::odd_poly_coeffs(n);
    const auto dcoeffs = oracle::differentiate(coeffs, 1);
    for (double t : {-1.2, -0.3, 0.4, 1.7}) {
      CAPTURE(n);
      CAPTURE(t);
      CHECK(g.eval(t) == doctest::Approx(oracle::eval_poly(coeffs, t)).epsilon(1e-14));
      CHECK(g.deriv(t) == doctest::Approx(oracle::eval_poly(dcoeffs, t)).epsilon(1e-14));
    }
  }
}

TEST_CASE("closed-form derivatives match central differences") {
  struct Probe {
    const char* spec;
    double t;
  };
  for (const Probe& p : {Probe{"pow:2.5", 2.0}, Probe{"exp", 0.3}, Probe{"log1p", 1.7},
                         Probe{"sqrt", 2.2}, Probe{"moebius:1.5", 0.9}, Probe{"gap:3", 0.6},
                         Probe{"gapfn:2:0.7", 1.1}, Probe{"compose(log1p,pow:2)", 1.3}}) {
    CAPTURE(p.spec);
    const ScalarFunction f = parse_function(p.spec);
    const double h = 1e-6;
    const double fd = (f.eval(p.t + h) - f.eval(p.t - h)) / (2.0 * h);
    CHECK(std::abs(f.deriv(p.t) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
  }
}

TEST_CASE("derivatives stay closed-form at awkward points") {
  CHECK(power_fn(0.0).deriv(0.0) == 0.0);              // constant, not 0 * 0^-1
  CHECK(std::isinf(sqrt_fn().deriv(0.0)));             // boundary blow-up is reported as inf
  CHECK(sqrt_fn().deriv(1e-12) == doctest::Approx(0.5e6).epsilon(1e-12));
}

TEST_CASE("domains guard evaluation") {
  CHECK_THROWS_AS(power_fn(2.0).eval(-1.0), DomainError);
  CHECK_THROWS_AS(log1p_fn().eval(-1.0), DomainError);
  CHECK_THROWS_AS(moebius_fn(1.0).eval(-1.0), DomainError);
  CHECK_NOTHROW(moebius_fn(1.5).eval(-0.5));
  CHECK_NOTHROW(gap_poly_fn(2).eval(-3.0));
}

TEST_CASE("moebius maps the ray into [0, alpha) and is increasing") {
  const ScalarFunction h = moebius_fn(0.8);
  CHECK(h.eval(0.0) == 0.0);
  CHECK(h.eval(1e12) < 0.8);
  CHECK(h.eval(2.0) > h.eval(1.0));
}

TEST_CASE("moebius inverse undoes moebius") {
  const ScalarFunction m = moebius_fn(1.5);
  const ScalarFunction mi = moebius_inverse_fn(1.5);
  for (double t : {0.0, 0.3, 2.0, 7.0}) {
    CAPTURE(t);
    CHECK(mi.eval(m.eval(t)) == doctest::Approx(t).epsilon(1e-12));
  }
  CHECK_THROWS_AS(mi.eval(1.5), DomainError);  // alpha itself is never attained
}

TEST_CASE("compose validates the inner range against the outer domain") {
  CHECK_THROWS_AS(compose(sqrt_fn(), affine_fn(1.0, -5.0)), DomainError);
  const ScalarFunction ok = compose(log1p_fn(), power_fn(2.0));
  CHECK(ok.eval(2.0) == doctest::Approx(std::log1p(4.0)).epsilon(1e-15));
  CHECK(ok.deriv(2.0) == doctest::Approx(4.0 / 5.0).epsilon(1e-13));
}

TEST_CASE("restrict_to narrows the domain and nothing else") {
  const ScalarFunction r = restrict_to(exp_fn(), Interval::closed(0.0, 1.0));
  CHECK(r.eval(0.5) == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(r.eval(2.0), DomainError);
  CHECK_THROWS_AS(restrict_to(sqrt_fn(), Interval::closed(-1.0, 1.0)), DomainError);
}

TEST_CASE("expected orders of the catalog") {
  CHECK(identity_fn().expected_order().kind == ExpectedOrder::Infinite);
  CHECK(sqrt_fn().expected_order().kind == ExpectedOrder::Infinite);
  CHECK(log1p_fn().expected_order().kind == ExpectedOrder::Infinite);
  CHECK(moebius_fn(2.0).expected_order().kind == ExpectedOrder::Infinite);
  CHECK(power_fn(1.0).expected_order().kind == ExpectedOrder::Infinite);

  CHECK(exp_fn().expected_order().kind == ExpectedOrder::Exact);
  CHECK(exp_fn().expected_order().order == 1);
  CHECK(power_fn(2.0).expected_order().order == 1);

  const ExpectedOrder gap3 = gap_fn(3, 0.5).expected_order();
  CHECK(gap3.kind == ExpectedOrder::Exact);
  CHECK(gap3.order == 3);

  CHECK(gap_poly_fn(2).expected_order().kind == ExpectedOrder::Unknown);
  CHECK(compose(log1p_fn(), power_fn(2.0)).expected_order().kind == ExpectedOrder::Unknown);
}
