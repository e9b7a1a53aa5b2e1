#include "monotone/scalar_function.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "monotone/errors.hpp"

namespace monotone {

namespace {

// Shortest round-trip decimal form; keeps spec strings and JSON echoes stable.
std::string fmt_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& s, const char* what) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(std::string("bad ") + what + " '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(std::string("bad ") + what + " '" + s + "'");
  return v;
}

double gap_poly_eval(int n, double t) {
  double acc = 0.0, p = t;
  const double t2 = t * t;
  for (int k = 1; k <= n; ++k) {
    acc += p / (2 * k - 1);
    p *= t2;
  }
  return acc;
}

double gap_poly_deriv(int n, double t) {
  double acc = 0.0, p = 1.0;
  const double t2 = t * t;
  for (int k = 1; k <= n; ++k) {
    acc += p;
    p *= t2;
  }
  return acc;
}

[[noreturn]] void outside(const ScalarFunction& f, double t) {
  std::ostringstream os;
  os << "eval: t = " << t << " outside domain " << f.domain.str() << " of " << f.spec_string();
  throw DomainError(os.str());
}

}  // namespace

double ScalarFunction::eval(double t) const {
  if (!domain.contains(t)) outside(*this, t);
  switch (tag) {
    case Tag::Identity: return t;
    case Tag::Power: return std::pow(t, p1);
    case Tag::Exp: return std::exp(t);
    case Tag::Log1p: return std::log1p(t);
    case Tag::Sqrt: return std::sqrt(t);
    case Tag::Moebius: return p1 * t / (1.0 + t);
    case Tag::GapPoly: return gap_poly_eval(n, t);
    case Tag::GapFn: return gap_poly_eval(n, p1 * t / (1.0 + t));
    case Tag::Affine: return p1 * t + p2;
    case Tag::Composite: return outer->eval(inner->eval(t));
  }
  throw NumericError("eval: unreachable tag");
}

double ScalarFunction::deriv(double t) const {
  if (!domain.contains(t)) outside(*this, t);
  switch (tag) {
    case Tag::Identity: return 1.0;
    case Tag::Power:
      if (p1 == 0.0) return 0.0;
      return p1 * std::pow(t, p1 - 1.0);
    case Tag::Exp: return std::exp(t);
    case Tag::Log1p: return 1.0 / (1.0 + t);
    case Tag::Sqrt: return 0.5 / std::sqrt(t);
    case Tag::Moebius: {
      const double d = 1.0 + t;
      return p1 / (d * d);
    }
    case Tag::GapPoly: return gap_poly_deriv(n, t);
    case Tag::GapFn: {
      const double d = 1.0 + t;
      return gap_poly_deriv(n, p1 * t / d) * p1 / (d * d);
    }
    case Tag::Affine: return p1;
    case Tag::Composite: return outer->deriv(inner->eval(t)) * inner->deriv(t);
  }
  throw NumericError("deriv: unreachable tag");
}

std::string ScalarFunction::spec_string() const {
  switch (tag) {
    case Tag::Identity: return "id";
    case Tag::Power: return "pow:" + fmt_double(p1);
    case Tag::Exp: return "exp";
    case Tag::Log1p: return "log1p";
    case Tag::Sqrt: return "sqrt";
    case Tag::Moebius: return "moebius:" + fmt_double(p1);
    case Tag::GapPoly: return "gap:" + std::to_string(n);
    case Tag::GapFn: return "gapfn:" + std::to_string(n) + ":" + fmt_double(p1);
    case Tag::Affine: return "affine:" + fmt_double(p1) + ":" + fmt_double(p2);
    case Tag::Composite:
      return "compose(" + outer->spec_string() + "," + inner->spec_string() + ")";
  }
  return "?";
}

ExpectedOrder ScalarFunction::expected_order() const {
  switch (tag) {
    case Tag::Identity:
    case Tag::Sqrt:
    case Tag::Log1p:
    case Tag::Moebius:
      return ExpectedOrder::infinite();
    case Tag::Exp:
      return ExpectedOrder::exact(1);
    case Tag::Power:
      if (p1 > 1.0) return ExpectedOrder::exact(1);
      if (p1 == 1.0 || p1 == 0.0) return ExpectedOrder::infinite();
      return ExpectedOrder::unknown();  // 0 < beta < 1: not asserted here
    case Tag::Affine:
      return p1 >= 0.0 ? ExpectedOrder::infinite() : ExpectedOrder::unknown();
    case Tag::GapFn:
      return ExpectedOrder::exact(n);
    case Tag::GapPoly:     // order depends on the interval
    case Tag::Composite:
      return ExpectedOrder::unknown();
  }
  return ExpectedOrder::unknown();
}

ScalarFunction identity_fn() {
  ScalarFunction f;
  f.tag = ScalarFunction::Tag::Identity;
  f.domain = Interval::real_line();
  return f;
}

ScalarFunction power_fn(double beta) {
  if (beta < 0.0) throw DomainError("power: beta must be >= 0 in this catalog");
  ScalarFunction f;
  f.tag = ScalarFunction::Tag::Power;
  f.p1 = beta;
  f.domain = Interval::make(0.0, std::numeric_limits<double>::infinity(), true, false);
  return f;
}

ScalarFunction exp_fn() {
  ScalarFunction f;
  f.tag = ScalarFunction::Tag::Exp;
  f.domain = Interval::real_line();
  return f;
}

ScalarFunction log1p_fn() {
  ScalarFunction f;
  f.tag = ScalarFunction::Tag::Log1p;
  f.domain = Interval::make(-1.0, std::numeric_limits<double>::infinity(), false, false);
  return f;
}

ScalarFunction sqrt_fn() {
  ScalarFunction f;
  f.tag = ScalarFunction::Tag::Sqrt;
  f.domain = Interval::make(0.0, std::numeric_limits<double>::infinity(), true, false);
  return f;
}

ScalarFunction moebius_fn(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("moebius: alpha must be > 0");
  ScalarFunction f;
  f.tag = ScalarFunction::Tag::Moebius;
  f.p1 = alpha;
  // Defined up to the pole at -1; the useful range is [0, inf).
  f.domain = Interval::make(-1.0, std::numeric_limits<double>::infinity(), false, false);
  return f;
}

ScalarFunction gap_poly_fn(int n) {
  if (n < 1) throw DomainError("gap_poly: n must be >= 1");
  ScalarFunction f;
  f.tag = ScalarFunction::Tag::GapPoly;
  f.n = n;
  f.domain = Interval::real_line();
  return f;
}

ScalarFunction gap_fn(int n, double alpha) {
  if (n < 1) throw DomainError("gap_fn: n must be >= 1");
  if (!(alpha > 0.0)) throw DomainError("gap_fn: alpha must be > 0");
  ScalarFunction f;
  f.tag = ScalarFunction::Tag::GapFn;
  f.n = n;
  f.p1 = alpha;
  f.domain = Interval::make(0.0, std::numeric_limits<double>::infinity(), true, false);
  return f;
}

ScalarFunction affine_fn(double a, double b) {
  ScalarFunction f;
  f.tag = ScalarFunction::Tag::Affine;
  f.p1 = a;
  f.p2 = b;
  f.domain = Interval::real_line();
  return f;
}

namespace {

// Range check for compose: every probed value of g must land in domain(f).
void validate_range(const ScalarFunction& f, const ScalarFunction& g) {
  // The probe window is bounded so that catalog entries with fast growth
  // (exp, high-degree polynomials) stay finite during validation.
  const Interval W = g.domain.sampling_window(100.0);
  const int kSamples = 1000;
  auto check = [&](double t) {
    const double v = g.eval(t);
    if (!f.domain.contains(v)) {
      std::ostringstream os;
      os << "compose: " << g.spec_string() << "(" << t << ") = " << v << " outside domain "
         << f.domain.str() << " of " << f.spec_string();
      throw DomainError(os.str());
    }
  };
  for (int i = 0; i < kSamples; ++i) check(W.lower + (i + 0.5) / kSamples * W.width());
  // Endpoint probes: exactly at closed finite endpoints, just inside open ones.
  if (std::isfinite(g.domain.lower)) {
    const double eps = 1e-9 * (1.0 + std::abs(g.domain.lower));
    check(g.domain.closed_lower ? g.domain.lower : g.domain.lower + eps);
  }
  if (std::isfinite(g.domain.upper)) {
    const double eps = 1e-9 * (1.0 + std::abs(g.domain.upper));
    check(g.domain.closed_upper ? g.domain.upper : g.domain.upper - eps);
  }
}

}  // namespace

ScalarFunction compose(const ScalarFunction& f, const ScalarFunction& g) {
  validate_range(f, g);
  ScalarFunction c;
  c.tag = ScalarFunction::Tag::Composite;
  c.domain = g.domain;
  c.outer = std::make_shared<ScalarFunction>(f);
  c.inner = std::make_shared<ScalarFunction>(g);
  return c;
}

ScalarFunction restrict_to(const ScalarFunction& f, const Interval& narrower) {
  if (!f.domain.contains_interval(narrower))
    throw DomainError("restrict_to: " + narrower.str() + " is not inside " + f.domain.str());
  ScalarFunction r = f;
  r.domain = narrower;
  return r;
}

ScalarFunction moebius_inverse_fn(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("moebius inverse: alpha must be > 0");
  // t / (alpha - t) = (-1/alpha) * moebius(alpha)(-t/alpha), defined for t < alpha.
  ScalarFunction pre = restrict_to(
      affine_fn(-1.0 / alpha, 0.0),
      Interval::make(-std::numeric_limits<double>::infinity(), alpha, false, false));
  return compose(affine_fn(-1.0 / alpha, 0.0), compose(moebius_fn(alpha), pre));
}

namespace {

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto colon = s.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, colon - start));
    start = colon + 1;
  }
}

}  // namespace

ScalarFunction parse_function(const std::string& spec_raw) {
  std::string spec = spec_raw;
  // trim
  const auto l = spec.find_first_not_of(" \t");
  const auto r = spec.find_last_not_of(" \t");
  if (l == std::string::npos) throw ParseError("empty function spec");
  spec = spec.substr(l, r - l + 1);

  if (spec.rfind("compose(", 0) == 0) {
    if (spec.back() != ')') throw ParseError("compose: missing ')' in '" + spec + "'");
    const std::string body = spec.substr(8, spec.size() - 9);
    int depth = 0;
    std::size_t comma = std::string::npos;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      else if (body[i] == ')') --depth;
      else if (body[i] == ',' && depth == 0) {
        comma = i;
        break;
      }
    }
    if (comma == std::string::npos) throw ParseError("compose: expected 'compose(f,g)'");
    return compose(parse_function(body.substr(0, comma)), parse_function(body.substr(comma + 1)));
  }

  const std::vector<std::string> parts = split_colon(spec);
  const std::string& head = parts[0];
  auto want = [&](std::size_t count) {
    if (parts.size() != count)
      throw ParseError("'" + head + "' takes " + std::to_string(count - 1) +
                       " parameter(s), got '" + spec + "'");
  };
  if (head == "id" || head == "identity") {
    want(1);
    return identity_fn();
  }
  if (head == "pow") {
    want(2);
    return power_fn(parse_number(parts[1], "power exponent"));
  }
  if (head == "exp") {
    want(1);
    return exp_fn();
  }
  if (head == "log1p") {
    want(1);
    return log1p_fn();
  }
  if (head == "sqrt") {
    want(1);
    return sqrt_fn();
  }
  if (head == "moebius") {
    want(2);
    return moebius_fn(parse_number(parts[1], "moebius alpha"));
  }
  if (head == "gap") {
    want(2);
    return gap_poly_fn(parse_int(parts[1], "gap order"));
  }
  if (head == "gapfn") {
    want(3);
    return gap_fn(parse_int(parts[1], "gapfn order"), parse_number(parts[2], "gapfn alpha"));
  }
  if (head == "affine") {
    want(3);
    return affine_fn(parse_number(parts[1], "affine slope"),
                     parse_number(parts[2], "affine offset"));
  }
  throw ParseError("unknown function '" + head +
                   "'; grammar: id | pow:B | exp | log1p | sqrt | moebius:A | gap:N | "
                   "gapfn:N:A | affine:A:B | compose(f,g)");
}

}
