#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monotone/hermitian.hpp"
#include "monotone/interval.hpp"
#include "monotone/scalar_function.hpp"

namespace monotone {

// Divided difference f[s,t] = (f(t) - f(s)) / (t - s), switching to the
// analytic derivative f'((s+t)/2) when |t - s| <= eps_node with
// eps_node = 1e-7 * (1 + |s| + |t|). Finite differences are never used at
// near-coincident nodes; they would destroy PSD margins there.
double divided_difference(const ScalarFunction& f, double s, double t);

inline double node_epsilon(double s, double t) {
  return 1e-7 * (1.0 + std::abs(s) + std::abs(t));
}

// Matrix of divided differences at an ascending node set; diagonal entries
// are f'(node_i). Symmetric exactly by construction.
struct LoewnerMatrix {
  std::vector<double> nodes;
  HermitianMatrix entries;  // real symmetric, stored as Hermitian
};

// Nodes must be ascending, pairwise separated beyond node_epsilon, and inside
// domain(f). Throws DomainError on collision or domain violation, and
// NumericError if an entry is non-finite (e.g. f' blowing up at a boundary
// node); sweeps count the latter as a discarded node set.
LoewnerMatrix loewner_matrix(const ScalarFunction& f, const std::vector<double>& nodes);

// Node-sweep configuration. The mix stresses divided differences where
// monotonicity failures concentrate: clustered and locally dense node sets.
struct SweepConfig {
  std::uint64_t seed = 0;
  int node_sets = 2000;
  double tol_scale = 1e-9;  // verdict tolerance = tol_scale * (1 + ||L||_F)
  // sampling mix: uniform | Chebyshev points of a random sub-interval |
  // clustered pairs; fractions of the remaining mass
  double uniform_frac = 0.4;
  double chebyshev_frac = 0.3;
  // Chebyshev sub-interval width: |I| * 10^U(lo, hi)
  double cheb_width_log10_lo = -3.0;
  double cheb_width_log10_hi = 0.0;
  // clustered pair gap: |I| * 10^U(lo, hi), centered near 1e-3 * |I|
  double cluster_gap_log10_lo = -4.0;
  double cluster_gap_log10_hi = -2.0;
  // bounded stand-in when the interval is unbounded
  double window_width = 100.0;
  // 0 = read MONOTONE_THREADS (default 1); results are thread-count invariant
  int threads = 0;
};

struct MonotonicityVerdict {
  enum class Kind { Monotone, NotMonotone, Inconclusive };

  struct Evidence {
    double worst_min_eigenvalue = 0.0;
    double tolerance = 0.0;
    std::vector<double> nodes;  // node set achieving it, when node-based
    // pair-based evidence (block or witness refutations)
    std::optional<HermitianMatrix> pair_a;
    std::optional<HermitianMatrix> pair_b;
    std::string note;
  };

  struct Budget {
    int evaluated = 0;
    int discarded = 0;
  };

  Kind kind = Kind::Inconclusive;
  int order = 0;
  Evidence evidence;
  Budget budget_used;
  std::vector<std::string> diagnostics;

  bool monotone() const { return kind == Kind::Monotone; }
  bool refuted() const { return kind == Kind::NotMonotone; }
};

std::string kind_name(MonotonicityVerdict::Kind k);

// Samples cfg.node_sets n-node sets over I and checks every Loewner matrix
// for positive semidefiniteness at tolerance tol_scale * (1 + ||L||_F).
// NotMonotone carries the most negative refuting node set as reproducible
// evidence; Monotone carries the worst (still passing) min-eigenvalue seen.
// The verdict is a sampled certificate, not a proof of membership.
// Inconclusive only when no valid node set could be sampled. Pure given
// (f, I, n, cfg); parallel and serial runs agree because the RNG stream is
// derived per node-set index.
MonotonicityVerdict order_n_certificate(const ScalarFunction& f, const Interval& I, int n,
                                        const SweepConfig& cfg);

// Bisection output for the gap-polynomial threshold at order n.
struct GapSearchResult {
  int n = 0;
  double alpha_estimate = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  MonotonicityVerdict n_certificate;      // Monotone at order n on [0, alpha)
  MonotonicityVerdict n_plus_1_witness;   // NotMonotone at order n+1 on [0, alpha)
  bool incomplete = false;                // n+1 refutation not found in budget
};

// Bisects beta over "order_n_certificate(gap_poly(n), [0, beta), n) is
// Monotone". Probes start at 1, halving down to 1e-6 to find a passing lower
// bracket (failure below that signals sweep misconfiguration) and doubling up
// to the ceiling 64 to find a failing upper one; alpha_estimate is the
// passing end of the final bracket. The same cfg.seed drives every probe, so
// the result is deterministic. Estimates depend on sweep power and sit at or
// above the true threshold; they are regression anchors, not ground truth.
GapSearchResult alpha_search(int n, double resolution, const SweepConfig& cfg);

// One sampled rational premise for the implication test: lambda > 0
// entrywise, sum(a) = 0, and premise_checked records that
// r(t) = sum_j a_j (t lambda_j - 1)/(t + lambda_j) stayed >= -1e-10 on the
// verification grid and at both asymptotic limits.
struct RationalPremise {
  int n = 0;
  std::vector<double> a;
  std::vector<double> lambda;
  bool premise_checked = false;
};

struct MclassReport {
  int tested = 0;
  int premise_hits = 0;
  int boundary_discarded = 0;  // grid minimum in [-1e-10, 1e-6]: too close to call
  std::vector<RationalPremise> violations;
  bool low_power = false;  // fewer than 10 premise hits
};

double mclass_premise_value(const RationalPremise& p, double t);
double mclass_conclusion(const ScalarFunction& h, const RationalPremise& p);

// Samples (a, lambda) pairs (Gaussian a projected to sum zero, log-normal
// lambda), keeps draws whose premise passes a 2000-point log grid on
// [1e-4, 1e4] plus the t -> 0+ and t -> inf limits, and records every kept
// draw with sum_j a_j h(lambda_j) < -1e-8 as a violation. Absence of
// violations is sampled evidence only, never a class separation claim.
MclassReport mclass_test(const ScalarFunction& h, int n, int samples, std::uint64_t seed);

}
