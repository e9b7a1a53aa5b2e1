#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monotone/fibered.hpp"
#include "monotone/loewner.hpp"
#include "monotone/serialize.hpp"
#include "monotone/witness.hpp"

namespace monotone {

// Everything a command needs, echoed verbatim into its report so a run can be
// reproduced from the artifact alone. File inputs (algebra specs, fixtures)
// are embedded after loading, never referenced by path; the output location
// is deliberately absent because it routes bytes without shaping them.
struct RunConfig {
  std::string command;  // certify | witness | alpha | mclass | algebra |
                        // verify-fixture | gap-table
  std::string fn;
  std::string interval = "0:10";
  int order = 2;   // certify: sweep order; witness: pair dimension
  int n = 2;       // alpha / mclass order
  int max_n = 3;   // gap-table
  std::uint64_t seed = 0;
  int node_sets = 2000;
  double tol_scale = 1e-9;
  int budget = 100000;  // witness evaluations / algebra pair draws
  int samples = 10000;  // mclass draws
  double resolution = 1e-3;
  bool normalize = true;
  double window = 100.0;
  int threads = 0;
  std::string format = "json";
  std::optional<FiberedAlgebra> algebra;
  std::optional<WitnessPair> fixture;

  SweepConfig sweep() const;
};

json json_of(const RunConfig& cfg);
RunConfig config_from_json(const json& j);

// Wall time is reported on stderr by the CLI, not stored here: the report is
// a value determined by its config, byte for byte.
struct Report {
  RunConfig config;
  json result;
  std::string tool_version;
  std::string csv;  // filled only for csv-formatted gap tables
};

json json_of(const Report& r);

// Validates the config and dispatches to the operation named by cfg.command.
// Verdicts land inside the report; only malformed input, domain violations,
// exhausted budgets, and numerical failures escape as exceptions.
Report run(const RunConfig& cfg);

// Gap-family table: per n, the threshold search for the odd polynomial plus
// acceptance/refutation of the composed function on [0, inf). Rows that miss
// their higher-order refutation are flagged incomplete, never fatal.
struct GapTableRow {
  int n = 0;
  GapSearchResult search;
  MonotonicityVerdict f_accept;   // composed function at order n
  MonotonicityVerdict f_witness;  // composed function at order n + 1
  bool incomplete = false;
};

std::vector<GapTableRow> gap_table(int max_n, double resolution, const SweepConfig& cfg);

json json_of(const GapTableRow& row);

// Fixed, versioned column set (schema_version 1). The CSV is the plotting
// interface; JSON stays authoritative.
std::string gap_table_csv(const std::vector<GapTableRow>& rows);

}
