#include "monotone/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "monotone/errors.hpp"
#include "monotone/rng.hpp"

namespace monotone {

double divided_difference(const ScalarFunction& f, double s, double t) {
  if (std::abs(t - s) <= node_epsilon(s, t)) return f.deriv(0.5 * (s + t));
  return (f.eval(t) - f.eval(s)) / (t - s);
}

LoewnerMatrix loewner_matrix(const ScalarFunction& f, const std::vector<double>& nodes) {
  if (nodes.empty()) throw DomainError("loewner_matrix: empty node set");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!f.domain.contains(nodes[i])) {
      std::ostringstream os;
      os << "loewner_matrix: node " << nodes[i] << " outside domain " << f.domain.str() << " of "
         << f.spec_string();
      throw DomainError(os.str());
    }
    if (i > 0 && !(nodes[i] - nodes[i - 1] > node_epsilon(nodes[i - 1], nodes[i])))
      throw DomainError("loewner_matrix: nodes must be ascending with separation beyond the "
                        "coincidence threshold");
  }
  const std::size_t n = nodes.size();
  HermitianMatrix L = HermitianMatrix::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double v = divided_difference(f, nodes[i], nodes[j]);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "loewner_matrix: non-finite entry at nodes (" << nodes[i] << ", " << nodes[j]
           << ") for " << f.spec_string();
        throw NumericError(os.str(), v);
      }
      L.set_sym(i, j, cplx(v, 0.0));
    }
  }
  return {nodes, L};
}

std::string kind_name(MonotonicityVerdict::Kind k) {
  switch (k) {
    case MonotonicityVerdict::Kind::Monotone: return "monotone";
    case MonotonicityVerdict::Kind::NotMonotone: return "not_monotone";
    case MonotonicityVerdict::Kind::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

int resolve_threads(int cfg_threads) {
  if (cfg_threads > 0) return cfg_threads;
  if (const char* env = std::getenv("MONOTONE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

bool separated(const std::vector<double>& nodes) {
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] - nodes[i - 1] > node_epsilon(nodes[i - 1], nodes[i]))) return false;
  return true;
}

// One proposal from the sampling mix. The first draw picks the category so a
// replayed stream reproduces the proposal exactly.
std::vector<double> propose_nodes(const Interval& win, int n, const SweepConfig& cfg, Rng& rng) {
  const double lo = win.lower;
  const double hi = win.upper;
  const double W = hi - lo;
  std::vector<double> nodes(static_cast<std::size_t>(n));
  const double u = rng.uniform01();
  if (u < cfg.uniform_frac) {
    for (auto& x : nodes) x = rng.uniform(lo, hi);
  } else if (u < cfg.uniform_frac + cfg.chebyshev_frac) {
    // Chebyshev points of a random sub-interval; narrow widths probe the
    // locally-dense regime where higher-order failures concentrate.
    double w = W * std::pow(10.0, rng.uniform(cfg.cheb_width_log10_lo, cfg.cheb_width_log10_hi));
    double c = rng.uniform(lo + 0.5 * w, hi - 0.5 * w);
    for (int i = 0; i < n; ++i)
      nodes[static_cast<std::size_t>(i)] =
          c + 0.5 * w * std::cos(std::numbers::pi * (2 * i + 1) / (2 * n));
  } else {
    // Anchors with a tight companion each: near-coincident pairs stress the
    // divided differences hardest.
    for (int i = 0; i < n;) {
      double gap =
          W * std::pow(10.0, rng.uniform(cfg.cluster_gap_log10_lo, cfg.cluster_gap_log10_hi));
      double base = rng.uniform(lo, hi - gap);
      nodes[static_cast<std::size_t>(i++)] = base;
      if (i < n) nodes[static_cast<std::size_t>(i++)] = base + gap;
    }
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

struct SetOutcome {
  bool evaluated = false;
  double min_eig = 0.0;
  double tol = 0.0;
};

constexpr int kProposalRetries = 64;

// Evaluates node-set k of the sweep. Replayable: the derived stream plus the
// retry loop fully determine the outcome.
SetOutcome evaluate_set(const ScalarFunction& f, const Interval& I, const Interval& win, int n,
                        const SweepConfig& cfg, std::uint64_t k,
                        std::vector<double>* nodes_out = nullptr) {
  Rng rng = Rng(cfg.seed).derive(k);
  SetOutcome out;
  for (int attempt = 0; attempt < kProposalRetries; ++attempt) {
    std::vector<double> nodes = propose_nodes(win, n, cfg, rng);
    if (!separated(nodes)) continue;
    bool inside = true;
    for (double x : nodes)
      if (!I.contains(x)) inside = false;
    if (!inside) continue;
    try {
      LoewnerMatrix L = loewner_matrix(f, nodes);
      SpectralDecomposition dec = eigh(L.entries);
      out.evaluated = true;
      out.min_eig = dec.eigenvalues.front();
      out.tol = cfg.tol_scale * (1.0 + frobenius(L.entries));
      if (nodes_out) *nodes_out = std::move(nodes);
      return out;
    } catch (const NumericError&) {
      return out;  // non-finite entry or eigensolver failure: discard set k
    } catch (const DomainError&) {
      continue;  // boundary graze; retry within the same stream
    }
  }
  return out;
}

void validate_sweep_config(const SweepConfig& cfg) {
  if (cfg.node_sets < 1) throw DomainError("sweep: node_sets must be >= 1");
  if (!(cfg.tol_scale >= 0.0)) throw DomainError("sweep: tol_scale must be >= 0");
  if (cfg.uniform_frac < 0.0 || cfg.chebyshev_frac < 0.0 ||
      cfg.uniform_frac + cfg.chebyshev_frac > 1.0)
    throw DomainError("sweep: sampling fractions must be nonnegative with sum <= 1");
  if (!(cfg.window_width > 0.0)) throw DomainError("sweep: window_width must be positive");
}

}  // namespace

MonotonicityVerdict order_n_certificate(const ScalarFunction& f, const Interval& I, int n,
                                        const SweepConfig& cfg) {
  if (n < 1) throw DomainError("order_n_certificate: order must be >= 1");
  validate_sweep_config(cfg);
  if (!f.domain.contains_interval(I))
    throw DomainError("order_n_certificate: interval " + I.str() + " not contained in domain " +
                      f.domain.str() + " of " + f.spec_string());

  const Interval win = I.sampling_window(cfg.window_width);
  const std::size_t N = static_cast<std::size_t>(cfg.node_sets);
  std::vector<SetOutcome> outcomes(N);

  const int threads = resolve_threads(cfg.threads);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) outcomes[k] = evaluate_set(f, I, win, n, cfg, k);
  };
  if (threads <= 1 || N < 2) {
    run_range(0, N);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (N + static_cast<std::size_t>(threads) - 1) / threads;
    for (std::size_t begin = 0; begin < N; begin += chunk)
      pool.emplace_back(run_range, begin, std::min(N, begin + chunk));
    for (auto& t : pool) t.join();
  }

  MonotonicityVerdict v;
  v.order = n;
  std::size_t worst_all = N, worst_refuting = N;
  for (std::size_t k = 0; k < N; ++k) {
    const SetOutcome& o = outcomes[k];
    if (!o.evaluated) {
      ++v.budget_used.discarded;
      continue;
    }
    ++v.budget_used.evaluated;
    if (worst_all == N || o.min_eig < outcomes[worst_all].min_eig) worst_all = k;
    if (o.min_eig < -o.tol && (worst_refuting == N || o.min_eig < outcomes[worst_refuting].min_eig))
      worst_refuting = k;
  }

  if (!I.bounded()) v.diagnostics.push_back("sampling window " + win.str() + " stands in for " +
                                            I.str());
  if (v.budget_used.discarded > 0) {
    std::ostringstream os;
    os << "discarded " << v.budget_used.discarded << " of " << N
       << " node sets (collisions, boundary grazes, or non-finite entries)";
    v.diagnostics.push_back(os.str());
  }

  if (v.budget_used.evaluated == 0) {
    v.kind = MonotonicityVerdict::Kind::Inconclusive;
    v.evidence.note = "no valid node set could be sampled";
    return v;
  }

  const std::size_t pick = (worst_refuting != N) ? worst_refuting : worst_all;
  std::vector<double> nodes;
  evaluate_set(f, I, win, n, cfg, pick, &nodes);  // replay to recover the node set
  v.evidence.worst_min_eigenvalue = outcomes[pick].min_eig;
  v.evidence.tolerance = outcomes[pick].tol;
  v.evidence.nodes = std::move(nodes);
  std::ostringstream note;
  if (worst_refuting != N) {
    v.kind = MonotonicityVerdict::Kind::NotMonotone;
    note << "refuting node set " << pick << " of " << N;
  } else {
    v.kind = MonotonicityVerdict::Kind::Monotone;
    note << "worst surviving node set " << pick << " of " << N;
  }
  v.evidence.note = note.str();
  return v;
}

GapSearchResult alpha_search(int n, double resolution, const SweepConfig& cfg) {
  if (n < 1) throw DomainError("alpha_search: order must be >= 1");
  if (!(resolution > 0.0)) throw DomainError("alpha_search: resolution must be positive");
  validate_sweep_config(cfg);

  constexpr double kFloor = 1e-6;
  constexpr double kCeiling = 64.0;
  const ScalarFunction g = gap_poly_fn(n);
  auto passes = [&](double beta) {
    return order_n_certificate(g, Interval::half_open(0.0, beta), n, cfg).monotone();
  };

  // Bracket the acceptance threshold: find a passing lower end and a failing
  // upper end by doubling/halving from 1.
  double lo = 0.0, hi = 0.0;
  if (passes(1.0)) {
    lo = 1.0;
    for (double probe = 2.0; probe <= kCeiling; probe *= 2.0) {
      if (passes(probe)) {
        lo = probe;
      } else {
        hi = probe;
        break;
      }
    }
    if (hi == 0.0) hi = lo;  // still passing at the ceiling: degenerate bracket
  } else {
    hi = 1.0;
    for (double probe = 0.5; probe >= kFloor; probe /= 2.0) {
      if (passes(probe)) {
        lo = probe;
        break;
      }
      hi = probe;
    }
    if (lo == 0.0)
      throw BudgetError("alpha_search: acceptance at order " + std::to_string(n) +
                        " never holds, down to interval width 1e-6");
  }

  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (passes(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  GapSearchResult r;
  r.n = n;
  r.bracket_lo = lo;
  r.bracket_hi = hi;
  r.alpha_estimate = lo;  // the passing end: accepted at order n by construction
  const Interval accepted = Interval::half_open(0.0, lo);
  r.n_certificate = order_n_certificate(g, accepted, n, cfg);
  r.n_plus_1_witness = order_n_certificate(g, accepted, n + 1, cfg);
  r.incomplete = !r.n_plus_1_witness.refuted();
  return r;
}

double mclass_premise_value(const RationalPremise& p, double t) {
  double s = 0.0;
  for (std::size_t j = 0; j < p.a.size(); ++j)
    s += p.a[j] * (t * p.lambda[j] - 1.0) / (t + p.lambda[j]);
  return s;
}

double mclass_conclusion(const ScalarFunction& h, const RationalPremise& p) {
  double s = 0.0;
  for (std::size_t j = 0; j < p.a.size(); ++j) s += p.a[j] * h.eval(p.lambda[j]);
  return s;
}

MclassReport mclass_test(const ScalarFunction& h, int n, int samples, std::uint64_t seed) {
  if (n < 1) throw DomainError("mclass_test: n must be >= 1");
  if (samples < 1) throw DomainError("mclass_test: samples must be >= 1");
  const Interval positives = Interval::open(0.0, std::numeric_limits<double>::infinity());
  if (!h.domain.contains_interval(positives))
    throw DomainError("mclass_test: " + h.spec_string() + " must be defined on all of (0, inf)");

  constexpr int kGridPoints = 2000;
  constexpr double kPremiseFloor = -1e-10;  // below: premise clearly fails
  constexpr double kPremiseClear = 1e-6;    // above: premise clearly holds
  constexpr double kViolation = -1e-8;
  std::vector<double> grid(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i)
    grid[static_cast<std::size_t>(i)] = std::pow(10.0, -4.0 + 8.0 * i / (kGridPoints - 1));

  MclassReport rep;
  const Rng master(seed);
  for (int s = 0; s < samples; ++s) {
    Rng rng = master.derive(static_cast<std::uint64_t>(s));
    RationalPremise p;
    p.n = n;
    p.a.resize(static_cast<std::size_t>(n));
    p.lambda.resize(static_cast<std::size_t>(n));
    double mean = 0.0;
    for (auto& a : p.a) {
      a = rng.normal();
      mean += a;
    }
    mean /= n;
    for (auto& a : p.a) a -= mean;  // sum-zero constraint
    for (auto& l : p.lambda) l = std::exp(rng.normal());
    ++rep.tested;

    // Minimum of the premise over the grid and at both asymptotic limits.
    double m = std::numeric_limits<double>::infinity();
    double at_zero = 0.0, at_inf = 0.0;
    for (std::size_t j = 0; j < p.a.size(); ++j) {
      at_zero -= p.a[j] / p.lambda[j];
      at_inf += p.a[j] * p.lambda[j];
    }
    m = std::min(at_zero, at_inf);
    for (double t : grid) m = std::min(m, mclass_premise_value(p, t));

    if (m < kPremiseFloor) continue;  // premise fails: draw carries no information
    if (m <= kPremiseClear) {
      ++rep.boundary_discarded;  // too close to the boundary to trust the grid
      continue;
    }
    ++rep.premise_hits;
    p.premise_checked = true;
    if (mclass_conclusion(h, p) < kViolation) rep.violations.push_back(std::move(p));
  }
  rep.low_power = rep.premise_hits < 10;
  return rep;
}

}
