#include "monotone/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "monotone/errors.hpp"

namespace monotone {

std::string shortest_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "0";
  return std::string(buf, ptr);
}

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(what + ": malformed JSON");
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

namespace {

const json& field(const json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(what + ": missing field '" + key + "'");
  return *it;
}

double number_field(const json& j, const char* key, const std::string& what) {
  const json& v = field(j, key, what);
  if (!v.is_number()) throw ParseError(what + ": field '" + key + "' must be a number");
  return v.get<double>();
}

// Endpoints may be infinite, which JSON cannot hold as a number.
json endpoint_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

double endpoint_from_json(const json& v, const std::string& what) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParseError(what + ": bad interval endpoint '" + s + "'");
  }
  if (!v.is_number()) throw ParseError(what + ": interval endpoint must be number or inf string");
  return v.get<double>();
}

}  // namespace

json json_of(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      re.push_back(m.at(i, j).real());
      im.push_back(m.at(i, j).imag());
    }
  return json{{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

HermitianMatrix hermitian_from_json(const json& j) {
  const std::string what = "matrix";
  const auto n = static_cast<std::size_t>(number_field(j, "dim", what));
  const json& re = field(j, "re", what);
  const json& im = field(j, "im", what);
  if (!re.is_array() || !im.is_array() || re.size() != n * n || im.size() != n * n)
    throw ParseError(what + ": re/im must be dim*dim arrays");
  ComplexMatrix m(n);
  for (std::size_t k = 0; k < n * n; ++k)
    m.a[k] = cplx(re[k].get<double>(), im[k].get<double>());
  return HermitianMatrix(m);
}

json json_of(const Interval& I) {
  return json{{"lower", endpoint_to_json(I.lower)},
              {"upper", endpoint_to_json(I.upper)},
              {"closed_lower", I.closed_lower},
              {"closed_upper", I.closed_upper}};
}

Interval interval_from_json(const json& j) {
  const std::string what = "interval";
  const double lo = endpoint_from_json(field(j, "lower", what), what);
  const double hi = endpoint_from_json(field(j, "upper", what), what);
  const bool cl = field(j, "closed_lower", what).get<bool>();
  const bool cu = field(j, "closed_upper", what).get<bool>();
  try {
    return Interval::make(lo, hi, cl, cu);
  } catch (const DomainError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

json json_of(const PsdCertificate& c) {
  return json{{"min_eigenvalue", c.min_eigenvalue},
              {"verdict", c.verdict},
              {"tolerance", c.tolerance}};
}

PsdCertificate certificate_from_json(const json& j) {
  const std::string what = "certificate";
  PsdCertificate c;
  c.min_eigenvalue = number_field(j, "min_eigenvalue", what);
  c.verdict = field(j, "verdict", what).get<bool>();
  c.tolerance = number_field(j, "tolerance", what);
  return c;
}

json json_of(const MonotonicityVerdict& v) {
  json evidence{{"worst_min_eigenvalue", v.evidence.worst_min_eigenvalue},
                {"tolerance", v.evidence.tolerance},
                {"nodes", v.evidence.nodes},
                {"note", v.evidence.note}};
  if (v.evidence.pair_a) evidence["pair_a"] = json_of(*v.evidence.pair_a);
  if (v.evidence.pair_b) evidence["pair_b"] = json_of(*v.evidence.pair_b);
  return json{{"kind", kind_name(v.kind)},
              {"order", v.order},
              {"evidence", std::move(evidence)},
              {"budget", json{{"evaluated", v.budget_used.evaluated},
                              {"discarded", v.budget_used.discarded}}},
              {"diagnostics", v.diagnostics}};
}

json json_of(const GapSearchResult& r) {
  return json{{"n", r.n},
              {"alpha_estimate", r.alpha_estimate},
              {"bracket_lo", r.bracket_lo},
              {"bracket_hi", r.bracket_hi},
              {"order_n", json_of(r.n_certificate)},
              {"order_n_plus_1", json_of(r.n_plus_1_witness)},
              {"incomplete", r.incomplete}};
}

json json_of(const WitnessPair& w) {
  return json{{"a", json_of(w.a)},
              {"b", json_of(w.b)},
              {"order_cert", json_of(w.order_cert)},
              {"image_cert", json_of(w.image_cert)},
              {"fn", w.fn_spec},
              {"interval", json_of(w.interval)},
              {"dim", w.dim},
              {"seed", w.seed},
              {"proposals_used", w.proposals_used},
              {"descent_steps", w.descent_steps}};
}

WitnessPair witness_from_json(const json& j) {
  const std::string what = "witness";
  WitnessPair w;
  w.a = hermitian_from_json(field(j, "a", what));
  w.b = hermitian_from_json(field(j, "b", what));
  w.order_cert = certificate_from_json(field(j, "order_cert", what));
  w.image_cert = certificate_from_json(field(j, "image_cert", what));
  w.fn_spec = field(j, "fn", what).get<std::string>();
  w.interval = interval_from_json(field(j, "interval", what));
  w.dim = static_cast<std::size_t>(number_field(j, "dim", what));
  w.seed = field(j, "seed", what).get<std::uint64_t>();
  w.proposals_used = static_cast<int>(number_field(j, "proposals_used", what));
  w.descent_steps = static_cast<int>(number_field(j, "descent_steps", what));
  if (w.a.dim() != w.dim || w.b.dim() != w.dim)
    throw ParseError(what + ": matrix dims disagree with 'dim'");
  return w;
}

json json_of(const WitnessCheck& c) {
  return json{{"order", json_of(c.order)},
              {"image", json_of(c.image)},
              {"spectra_in_interval", c.spectra_in_interval},
              {"valid", c.valid}};
}

json json_of(const FiberedAlgebra& A) {
  json fibers = json::array();
  for (const auto& f : A.fibers) fibers.push_back(json{{"dim", f.matrix_dim},
                                                       {"points", f.point_count}});
  return json{{"fibers", std::move(fibers)}, {"unital", A.unital}};
}

FiberedAlgebra algebra_from_json(const json& j) {
  const std::string what = "algebra";
  const json& fibers = field(j, "fibers", what);
  if (!fibers.is_array() || fibers.empty())
    throw ParseError(what + ": 'fibers' must be a non-empty array");
  std::vector<FiberSpec> specs;
  for (const json& f : fibers) {
    FiberSpec s;
    s.matrix_dim = static_cast<std::size_t>(number_field(f, "dim", what));
    s.point_count = static_cast<std::size_t>(number_field(f, "points", what));
    specs.push_back(s);
  }
  try {
    return FiberedAlgebra::make(std::move(specs));
  } catch (const DomainError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

json json_of(const AmonotoneResult& r) {
  return json{{"verdict", json_of(r.verdict)},
              {"structural", json_of(r.structural)},
              {"empirical_refuted", r.empirical_refuted},
              {"pairs_tested", r.pairs_tested},
              {"pairs_refuted", r.pairs_refuted},
              {"anomaly", r.anomaly}};
}

json json_of(const MclassReport& r) {
  constexpr std::size_t kMaxListed = 16;
  json violations = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < kMaxListed; ++i) {
    const RationalPremise& p = r.violations[i];
    violations.push_back(json{{"n", p.n}, {"a", p.a}, {"lambda", p.lambda}});
  }
  return json{{"tested", r.tested},
              {"premise_hits", r.premise_hits},
              {"boundary_discarded", r.boundary_discarded},
              {"violation_count", r.violations.size()},
              {"violations", std::move(violations)},
              {"low_power", r.low_power}};
}

json json_of(const RelationReport& r) {
  return json{{"max_norm", r.max_norm},
              {"max_product_norm", r.max_product_norm},
              {"max_unit_deviation", r.max_unit_deviation},
              {"tolerance", r.tolerance},
              {"ok", r.ok}};
}

}
