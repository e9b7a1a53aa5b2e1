#include "monotone/report.hpp"

#include <limits>
#include <sstream>

#include "monotone/errors.hpp"
#include "monotone/version.hpp"

namespace monotone {

SweepConfig RunConfig::sweep() const {
  SweepConfig cfg;
  cfg.seed = seed;
  cfg.node_sets = node_sets;
  cfg.tol_scale = tol_scale;
  cfg.window_width = window;
  cfg.threads = threads;
  return cfg;
}

json json_of(const RunConfig& cfg) {
  json j{{"command", cfg.command},
         {"fn", cfg.fn},
         {"interval", cfg.interval},
         {"order", cfg.order},
         {"n", cfg.n},
         {"max_n", cfg.max_n},
         {"seed", cfg.seed},
         {"node_sets", cfg.node_sets},
         {"tol_scale", cfg.tol_scale},
         {"budget", cfg.budget},
         {"samples", cfg.samples},
         {"resolution", cfg.resolution},
         {"normalize", cfg.normalize},
         {"window", cfg.window},
         {"threads", cfg.threads},
         {"format", cfg.format}};
  if (cfg.algebra) j["algebra"] = json_of(*cfg.algebra);
  if (cfg.fixture) j["fixture"] = json_of(*cfg.fixture);
  return j;
}

RunConfig config_from_json(const json& j) {
  const std::string what = "config";
  if (!j.is_object()) throw ParseError(what + ": expected an object");
  RunConfig cfg;
  auto it = j.find("command");
  if (it == j.end() || !it->is_string()) throw ParseError(what + ": missing 'command'");
  cfg.command = it->get<std::string>();

  auto str = [&](const char* key, std::string& dst) {
    if (auto f = j.find(key); f != j.end()) dst = f->get<std::string>();
  };
  auto num = [&](const char* key, auto& dst) {
    if (auto f = j.find(key); f != j.end()) dst = f->get<std::decay_t<decltype(dst)>>();
  };
  str("fn", cfg.fn);
  str("interval", cfg.interval);
  str("format", cfg.format);
  num("order", cfg.order);
  num("n", cfg.n);
  num("max_n", cfg.max_n);
  num("seed", cfg.seed);
  num("node_sets", cfg.node_sets);
  num("tol_scale", cfg.tol_scale);
  num("budget", cfg.budget);
  num("samples", cfg.samples);
  num("resolution", cfg.resolution);
  num("normalize", cfg.normalize);
  num("window", cfg.window);
  num("threads", cfg.threads);
  if (auto f = j.find("algebra"); f != j.end()) cfg.algebra = algebra_from_json(*f);
  if (auto f = j.find("fixture"); f != j.end()) cfg.fixture = witness_from_json(*f);
  return cfg;
}

json json_of(const Report& r) {
  return json{{"config", json_of(r.config)},
              {"result", r.result},
              {"tool_version", r.tool_version}};
}

json json_of(const GapTableRow& row) {
  return json{{"n", row.n},
              {"search", json_of(row.search)},
              {"f_accept", json_of(row.f_accept)},
              {"f_witness", json_of(row.f_witness)},
              {"incomplete", row.incomplete}};
}

std::vector<GapTableRow> gap_table(int max_n, double resolution, const SweepConfig& cfg) {
  if (max_n < 1) throw DomainError("gap_table: max_n must be >= 1");
  const Interval ray =
      Interval::make(0.0, std::numeric_limits<double>::infinity(), true, false);
  std::vector<GapTableRow> rows;
  for (int n = 1; n <= max_n; ++n) {
    GapTableRow row;
    row.n = n;
    row.search = alpha_search(n, resolution, cfg);
    const ScalarFunction f = gap_fn(n, row.search.alpha_estimate);
    row.f_accept = order_n_certificate(f, ray, n, cfg);
    row.f_witness = order_n_certificate(f, ray, n + 1, cfg);
    row.incomplete =
        row.search.incomplete || !row.f_accept.monotone() || !row.f_witness.refuted();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string gap_table_csv(const std::vector<GapTableRow>& rows) {
  std::ostringstream os;
  os << "schema_version,n,alpha_estimate,bracket_lo,bracket_hi,"
        "g_accept_min_eig,g_accept_kind,g_witness_min_eig,g_witness_kind,"
        "f_accept_min_eig,f_accept_kind,f_witness_min_eig,f_witness_kind,incomplete\n";
  for (const GapTableRow& row : rows) {
    os << 1 << ',' << row.n << ',' << shortest_double(row.search.alpha_estimate) << ','
       << shortest_double(row.search.bracket_lo) << ','
       << shortest_double(row.search.bracket_hi) << ','
       << shortest_double(row.search.n_certificate.evidence.worst_min_eigenvalue) << ','
       << kind_name(row.search.n_certificate.kind) << ','
       << shortest_double(row.search.n_plus_1_witness.evidence.worst_min_eigenvalue) << ','
       << kind_name(row.search.n_plus_1_witness.kind) << ','
       << shortest_double(row.f_accept.evidence.worst_min_eigenvalue) << ','
       << kind_name(row.f_accept.kind) << ','
       << shortest_double(row.f_witness.evidence.worst_min_eigenvalue) << ','
       << kind_name(row.f_witness.kind) << ','
       << (row.incomplete ? "true" : "false") << '\n';
  }
  return os.str();
}

namespace {

void require_fn(const RunConfig& cfg) {
  if (cfg.fn.empty()) throw ParseError("command '" + cfg.command + "' requires a function spec");
}

void require_positive_tol(const RunConfig& cfg) {
  if (!(cfg.tol_scale > 0.0)) throw DomainError("tol_scale must be positive");
}

Report base_report(const RunConfig& cfg) {
  Report r;
  r.config = cfg;
  r.tool_version = kToolVersion;
  return r;
}

}  // namespace

Report run(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv")
    throw ParseError("format must be json or csv");
  if (cfg.format == "csv" && cfg.command != "gap-table")
    throw ParseError("csv output is only available for gap-table");

  Report rep = base_report(cfg);

  if (cfg.command == "certify") {
    require_fn(cfg);
    require_positive_tol(cfg);
    const ScalarFunction f = parse_function(cfg.fn);
    const Interval I = Interval::parse(cfg.interval);
    rep.result = json{{"certificate", json_of(order_n_certificate(f, I, cfg.order, cfg.sweep()))}};
    return rep;
  }

  if (cfg.command == "witness") {
    require_fn(cfg);
    const ScalarFunction f = parse_function(cfg.fn);
    const Interval I = Interval::parse(cfg.interval);
    WitnessSearchConfig wcfg;
    wcfg.seed = cfg.seed;
    wcfg.budget = cfg.budget;
    wcfg.window_width = cfg.window;
    wcfg.normalize = cfg.normalize;
    const auto w = find_violation(f, I, static_cast<std::size_t>(cfg.order), wcfg);
    if (w) {
      rep.result = json{{"found", true},
                        {"witness", json_of(*w)},
                        {"check", json_of(verify_witness(f, *w))}};
    } else {
      rep.result = json{{"found", false}};
    }
    return rep;
  }

  if (cfg.command == "alpha") {
    require_positive_tol(cfg);
    rep.result = json{{"search", json_of(alpha_search(cfg.n, cfg.resolution, cfg.sweep()))}};
    return rep;
  }

  if (cfg.command == "mclass") {
    require_fn(cfg);
    const ScalarFunction f = parse_function(cfg.fn);
    rep.result = json{{"report", json_of(mclass_test(f, cfg.n, cfg.samples, cfg.seed))}};
    return rep;
  }

  if (cfg.command == "algebra") {
    require_fn(cfg);
    require_positive_tol(cfg);
    if (!cfg.algebra) throw ParseError("algebra test requires an algebra spec");
    const ScalarFunction f = parse_function(cfg.fn);
    const Interval I = Interval::parse(cfg.interval);
    rep.result =
        json{{"amonotone", json_of(amonotone_test(f, *cfg.algebra, I, cfg.budget, cfg.sweep()))}};
    return rep;
  }

  if (cfg.command == "verify-fixture") {
    if (!cfg.fixture) throw ParseError("verify-fixture requires a fixture");
    const ScalarFunction f = parse_function(cfg.fixture->fn_spec);
    rep.result = json{{"check", json_of(verify_witness(f, *cfg.fixture))}};
    return rep;
  }

  if (cfg.command == "gap-table") {
    require_positive_tol(cfg);
    const auto rows = gap_table(cfg.max_n, cfg.resolution, cfg.sweep());
    json jrows = json::array();
    for (const auto& row : rows) jrows.push_back(json_of(row));
    rep.result = json{{"rows", std::move(jrows)}};
    if (cfg.format == "csv") rep.csv = gap_table_csv(rows);
    return rep;
  }

  throw ParseError("unknown command '" + cfg.command + "'");
}

}
