// Command-line front end. Verdicts are part of the report, never the exit
// status: 0 means the run completed, 2/3/4/5 map to parse, domain, budget,
// and numeric failures. Reports are deterministic functions of their config;
// wall time goes to stderr so artifacts stay byte-comparable.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "monotone/errors.hpp"
#include "monotone/report.hpp"
#include "monotone/serialize.hpp"
#include "monotone/version.hpp"

namespace {

void emit(const monotone::Report& rep, const std::string& out_path) {
  const std::string payload =
      rep.csv.empty() ? monotone::json_of(rep).dump(2) + "\n" : rep.csv;
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw monotone::ParseError("cannot write '" + out_path + "'");
  out << payload;
}

int dispatch(const monotone::RunConfig& cfg, const std::string& out_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const monotone::Report rep = monotone::run(cfg);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  emit(rep, out_path);
  std::cerr << cfg.command << " completed in " << ms.count() << " ms\n";
  return 0;
}

// The fixture file may be a bare witness object or a full report that
// contains one (as emitted by `witness`).
monotone::WitnessPair load_fixture(const std::string& path) {
  const monotone::json j = monotone::load_json_file(path);
  if (j.contains("a") && j.contains("b")) return monotone::witness_from_json(j);
  if (j.contains("result") && j["result"].contains("witness"))
    return monotone::witness_from_json(j["result"]["witness"]);
  if (j.contains("witness")) return monotone::witness_from_json(j["witness"]);
  throw monotone::ParseError(path + ": no witness fixture found");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotonicity certification toolkit"};
  app.set_version_flag("--version", monotone::kToolVersion);
  app.require_subcommand(1);

  monotone::RunConfig cfg;
  std::string out_path;
  std::string spec_path;
  std::string fixture_path;
  std::string config_path;
  int algebra_budget = 1000;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "write the report to this path instead of stdout");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "master seed (required: runs must be reproducible)")
        ->required();
  };
  auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--node-sets", cfg.node_sets, "node sets per certification sweep");
    sub->add_option("--tol-scale", cfg.tol_scale, "verdict tolerance scale");
    sub->add_option("--window", cfg.window, "sampling window width for unbounded intervals");
    sub->add_option("--threads", cfg.threads, "worker threads (0: MONOTONE_THREADS or 1)");
  };

  CLI::App* certify = app.add_subcommand("certify", "sweep Loewner matrices at one order");
  certify->add_option("--fn", cfg.fn, "function spec, e.g. pow:2 or gapfn:3:0.2")->required();
  certify->add_option("--order", cfg.order, "matrix order to certify");
  certify->add_option("--interval", cfg.interval, "certification interval lo:hi");
  add_seed(certify);
  add_sweep(certify);
  add_out(certify);

  CLI::App* witness = app.add_subcommand("witness", "search for a concrete violating pair");
  witness->add_option("--fn", cfg.fn, "function spec")->required();
  witness->add_option("--order", cfg.order, "pair dimension (order being refuted)");
  witness->add_option("--interval", cfg.interval, "spectra interval lo:hi");
  add_seed(witness);
  witness->add_option("--budget", cfg.budget, "candidate evaluations");
  witness->add_flag("--normalize,!--no-normalize", cfg.normalize,
                    "shrink the witness along its segment after success");
  witness->add_option("--window", cfg.window, "sampling window width for unbounded intervals");
  add_out(witness);

  CLI::App* alpha = app.add_subcommand("alpha", "bisect the gap-polynomial threshold");
  alpha->add_option("--n", cfg.n, "polynomial order")->required();
  alpha->add_option("--resolution", cfg.resolution, "bracket width target");
  add_seed(alpha);
  add_sweep(alpha);
  add_out(alpha);

  CLI::App* mclass = app.add_subcommand("mclass", "rational-implication sampling");
  mclass->add_option("--fn", cfg.fn, "function spec")->required();
  mclass->add_option("--n", cfg.n, "number of rational terms");
  mclass->add_option("--samples", cfg.samples, "draws");
  add_seed(mclass);
  add_out(mclass);

  CLI::App* algebra = app.add_subcommand("algebra", "fibered-algebra operations");
  algebra->require_subcommand(1);
  CLI::App* algebra_test = algebra->add_subcommand("test", "two-track monotonicity test");
  algebra_test->add_option("--spec", spec_path, "algebra spec JSON file")->required();
  algebra_test->add_option("--fn", cfg.fn, "function spec")->required();
  algebra_test->add_option("--interval", cfg.interval, "spectra interval lo:hi");
  add_seed(algebra_test);
  algebra_test->add_option("--budget", algebra_budget, "empirical pair draws");
  add_sweep(algebra_test);
  add_out(algebra_test);

  CLI::App* verify = app.add_subcommand("verify-fixture", "re-check a stored witness");
  verify->add_option("--fixture", fixture_path, "fixture or report JSON file")->required();
  add_out(verify);

  CLI::App* table = app.add_subcommand("gap-table", "threshold table for the gap family");
  table->add_option("--max-n", cfg.max_n, "last row");
  table->add_option("--resolution", cfg.resolution, "bracket width target");
  add_seed(table);
  add_sweep(table);
  table->add_option("--format", cfg.format, "json or csv");
  add_out(table);

  CLI::App* replay = app.add_subcommand("replay", "re-run the config echoed in a report");
  replay->add_option("--config", config_path, "report or config JSON file")->required();
  add_out(replay);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (certify->parsed()) cfg.command = "certify";
    if (witness->parsed()) cfg.command = "witness";
    if (alpha->parsed()) cfg.command = "alpha";
    if (mclass->parsed()) cfg.command = "mclass";
    if (algebra->parsed()) {
      cfg.command = "algebra";
      cfg.budget = algebra_budget;
      cfg.algebra = monotone::algebra_from_json(monotone::load_json_file(spec_path));
    }
    if (verify->parsed()) {
      cfg.command = "verify-fixture";
      cfg.fixture = load_fixture(fixture_path);
    }
    if (table->parsed()) cfg.command = "gap-table";
    if (replay->parsed()) {
      const monotone::json j = monotone::load_json_file(config_path);
      cfg = monotone::config_from_json(j.contains("config") ? j["config"] : j);
    }
    return dispatch(cfg, out_path);
  } catch (const monotone::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const monotone::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const monotone::BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 4;
  } catch (const monotone::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << " (residual " << e.residual << ")\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
