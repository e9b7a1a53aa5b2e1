#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "monotone/hermitian.hpp"
#include "monotone/interval.hpp"
#include "monotone/loewner.hpp"
#include "monotone/scalar_function.hpp"

namespace monotone {

// Finite direct sum of matrix fibers: fiber i contributes point_count
// independent blocks of size matrix_dim. A continuous field over a compact
// space is represented by finitely many of its points; order questions are
// decided blockwise, so nothing is lost for testing purposes.
struct FiberSpec {
  std::size_t matrix_dim = 1;
  std::size_t point_count = 1;

  bool operator==(const FiberSpec&) const = default;
};

struct FiberedAlgebra {
  std::vector<FiberSpec> fibers;
  bool unital = true;  // always true in v1

  static FiberedAlgebra make(std::vector<FiberSpec> fibers);

  std::size_t block_count() const;

  bool operator==(const FiberedAlgebra&) const = default;
};

struct SubhomogeneityDegree {
  std::size_t n1 = 1;
};

// Largest fiber dimension: the order at which monotonicity over the algebra
// is decided.
SubhomogeneityDegree degree(const FiberedAlgebra& A);

// Self-adjoint element: one Hermitian block per (fiber, point).
struct FiberedElement {
  FiberedAlgebra algebra;
  std::vector<std::vector<HermitianMatrix>> blocks;  // [fiber][point]

  static FiberedElement zero(const FiberedAlgebra& A);
  static FiberedElement scalar(const FiberedAlgebra& A, double mu);
};

// Blockwise Loewner order x <= y. verdict is the conjunction over blocks;
// worst carries the smallest block min-eigenvalue with its (fiber, point)
// address, which on failure names a concrete refuting representation.
struct FiberOrderCertificate {
  bool verdict = false;
  PsdCertificate worst;
  std::size_t fiber = 0;
  std::size_t point = 0;
};

FiberOrderCertificate fiber_order_leq(const FiberedElement& x, const FiberedElement& y,
                                      double tol);

// Blockwise functional calculus; domain errors name the offending block.
FiberedElement fiber_apply(const ScalarFunction& f, const FiberedElement& x);

// Ordered pair x <= y with every block pair drawn by random_ordered_pair, so
// the order is exact per block.
std::pair<FiberedElement, FiberedElement> random_fibered_pair(const FiberedAlgebra& A,
                                                              const Interval& I, Rng& rng,
                                                              double window_width = 100.0);

// Diagonal-block embedding: source fiber i lands in target fiber
// placement[i].target_fiber at diagonal offset placement[i].offset, pointwise.
// The unused diagonal is padded with mu * identity (mu = 0 models the
// non-unital inclusion; any common mu keeps order relations intact).
struct EmbeddingPlacement {
  std::size_t target_fiber = 0;
  std::size_t offset = 0;
};

struct EmbeddingMap {
  FiberedAlgebra source;
  FiberedAlgebra target;
  std::vector<EmbeddingPlacement> placement;  // one entry per source fiber
  double mu = 0.0;

  // Validates: one placement per source fiber, matching point counts, blocks
  // inside target dims, no diagonal overlap.
  static EmbeddingMap make(FiberedAlgebra source, FiberedAlgebra target,
                           std::vector<EmbeddingPlacement> placement, double mu = 0.0);
};

FiberedElement embed(const FiberedElement& x, const EmbeddingMap& m);

// Two-track monotonicity test over the algebra. The structural track reduces
// to a flat order-n1 certificate (n1 = degree(A)); the empirical track draws
// ordered element pairs and checks f(y) - f(x) blockwise. They must agree on
// anything the empirical track can refute: an empirical refutation while the
// structural track accepts is flagged as an anomaly (defect indicator, since
// the reduction to order n1 is exact). The reverse situation is expected --
// random pairs routinely miss thin violations that node sweeps find.
struct AmonotoneResult {
  MonotonicityVerdict verdict;     // combined: NotMonotone if either track refutes
  MonotonicityVerdict structural;  // order-n1 certificate on I
  bool empirical_refuted = false;
  int pairs_tested = 0;
  int pairs_refuted = 0;
  bool anomaly = false;
};

AmonotoneResult amonotone_test(const ScalarFunction& f, const FiberedAlgebra& A, const Interval& I,
                               int budget, const SweepConfig& cfg);

// Convenience: default sweep configuration with the given seed driving both
// tracks.
AmonotoneResult amonotone_test(const ScalarFunction& f, const FiberedAlgebra& A, const Interval& I,
                               int budget, std::uint64_t seed);

// Generators a_j = e_{j,1}, j = 2..m, inside M_n. Their relations pin down
// the dimension a representation needs to accommodate them: ||a_j|| <= 1,
// a_j a_k = 0, and a_j* a_k = delta_{jk} a_2* a_2.
std::vector<ComplexMatrix> matrix_unit_generators(std::size_t n, std::size_t m);

struct RelationReport {
  double max_norm = 0.0;            // largest generator operator norm (expect 1)
  double max_product_norm = 0.0;    // max ||a_j a_k||_F (expect 0)
  double max_unit_deviation = 0.0;  // max ||a_j* a_k - delta_jk a_2* a_2||_F (expect 0)
  double tolerance = 1e-12;
  bool ok = false;
};

RelationReport verify_matrix_unit_relations(const std::vector<ComplexMatrix>& gens);

}
