#include "monotone/fibered.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "monotone/errors.hpp"
#include "monotone/rng.hpp"

namespace monotone {

FiberedAlgebra FiberedAlgebra::make(std::vector<FiberSpec> fibers) {
  if (fibers.empty()) throw DomainError("fibered algebra needs at least one fiber");
  for (const auto& f : fibers)
    if (f.matrix_dim < 1 || f.point_count < 1)
      throw DomainError("fiber dimensions and point counts must be >= 1");
  FiberedAlgebra A;
  A.fibers = std::move(fibers);
  return A;
}

std::size_t FiberedAlgebra::block_count() const {
  std::size_t n = 0;
  for (const auto& f : fibers) n += f.point_count;
  return n;
}

SubhomogeneityDegree degree(const FiberedAlgebra& A) {
  std::size_t n1 = 1;
  for (const auto& f : A.fibers) n1 = std::max(n1, f.matrix_dim);
  return {n1};
}

FiberedElement FiberedElement::zero(const FiberedAlgebra& A) {
  FiberedElement x;
  x.algebra = A;
  x.blocks.reserve(A.fibers.size());
  for (const auto& f : A.fibers)
    x.blocks.emplace_back(f.point_count, HermitianMatrix::zero(f.matrix_dim));
  return x;
}

FiberedElement FiberedElement::scalar(const FiberedAlgebra& A, double mu) {
  FiberedElement x = zero(A);
  for (std::size_t i = 0; i < A.fibers.size(); ++i)
    for (auto& b : x.blocks[i])
      b = hscale(HermitianMatrix::identity(A.fibers[i].matrix_dim), mu);
  return x;
}

namespace {

void require_same_algebra(const FiberedElement& x, const FiberedElement& y, const char* op) {
  if (!(x.algebra == y.algebra))
    throw DomainError(std::string(op) + ": elements live in different algebras");
}

std::string block_name(std::size_t fiber, std::size_t point) {
  std::ostringstream os;
  os << "(fiber " << fiber << ", point " << point << ")";
  return os.str();
}

}  // namespace

FiberOrderCertificate fiber_order_leq(const FiberedElement& x, const FiberedElement& y,
                                      double tol) {
  require_same_algebra(x, y, "fiber_order_leq");
  FiberOrderCertificate out;
  out.verdict = true;
  bool first = true;
  for (std::size_t i = 0; i < x.blocks.size(); ++i) {
    for (std::size_t p = 0; p < x.blocks[i].size(); ++p) {
      PsdCertificate c = loewner_leq(x.blocks[i][p], y.blocks[i][p], tol);
      out.verdict = out.verdict && c.verdict;
      if (first || c.min_eigenvalue < out.worst.min_eigenvalue) {
        out.worst = c;
        out.fiber = i;
        out.point = p;
        first = false;
      }
    }
  }
  return out;
}

FiberedElement fiber_apply(const ScalarFunction& f, const FiberedElement& x) {
  FiberedElement y = x;
  for (std::size_t i = 0; i < x.blocks.size(); ++i)
    for (std::size_t p = 0; p < x.blocks[i].size(); ++p) {
      try {
        y.blocks[i][p] = apply_fn(f, x.blocks[i][p]);
      } catch (const DomainError& e) {
        throw DomainError("fiber_apply at " + block_name(i, p) + ": " + e.what());
      }
    }
  return y;
}

std::pair<FiberedElement, FiberedElement> random_fibered_pair(const FiberedAlgebra& A,
                                                              const Interval& I, Rng& rng,
                                                              double window_width) {
  FiberedElement x = FiberedElement::zero(A);
  FiberedElement y = FiberedElement::zero(A);
  for (std::size_t i = 0; i < A.fibers.size(); ++i)
    for (std::size_t p = 0; p < A.fibers[i].point_count; ++p) {
      auto [a, b] = random_ordered_pair(A.fibers[i].matrix_dim, I, rng, window_width);
      x.blocks[i][p] = std::move(a);
      y.blocks[i][p] = std::move(b);
    }
  return {std::move(x), std::move(y)};
}

EmbeddingMap EmbeddingMap::make(FiberedAlgebra source, FiberedAlgebra target,
                                std::vector<EmbeddingPlacement> placement, double mu) {
  if (placement.size() != source.fibers.size())
    throw DomainError("embedding: need exactly one placement per source fiber");
  // occupied diagonal ranges per target fiber, for the overlap check
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> used(target.fibers.size());
  for (std::size_t i = 0; i < placement.size(); ++i) {
    const auto& pl = placement[i];
    if (pl.target_fiber >= target.fibers.size())
      throw DomainError("embedding: placement refers to a missing target fiber");
    const FiberSpec& src = source.fibers[i];
    const FiberSpec& tgt = target.fibers[pl.target_fiber];
    if (src.point_count != tgt.point_count)
      throw DomainError("embedding: source and target fibers must have equal point counts");
    if (pl.offset + src.matrix_dim > tgt.matrix_dim)
      throw DomainError("embedding: placed block exceeds target dimension");
    for (const auto& [lo, hi] : used[pl.target_fiber])
      if (pl.offset < hi && lo < pl.offset + src.matrix_dim)
        throw DomainError("embedding: placed blocks overlap on the target diagonal");
    used[pl.target_fiber].emplace_back(pl.offset, pl.offset + src.matrix_dim);
  }
  EmbeddingMap m;
  m.source = std::move(source);
  m.target = std::move(target);
  m.placement = std::move(placement);
  m.mu = mu;
  return m;
}

FiberedElement embed(const FiberedElement& x, const EmbeddingMap& m) {
  if (!(x.algebra == m.source)) throw DomainError("embed: element not in the map's source algebra");
  FiberedElement y = FiberedElement::scalar(m.target, m.mu);
  for (std::size_t i = 0; i < m.placement.size(); ++i) {
    const auto& pl = m.placement[i];
    const std::size_t d = m.source.fibers[i].matrix_dim;
    for (std::size_t p = 0; p < m.source.fibers[i].point_count; ++p) {
      const HermitianMatrix& src = x.blocks[i][p];
      HermitianMatrix& dst = y.blocks[pl.target_fiber][p];
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = r; c < d; ++c)
          dst.set_sym(pl.offset + r, pl.offset + c, src.at(r, c));
    }
  }
  return y;
}

AmonotoneResult amonotone_test(const ScalarFunction& f, const FiberedAlgebra& A, const Interval& I,
                               int budget, const SweepConfig& cfg) {
  if (A.fibers.empty()) throw DomainError("amonotone_test: empty algebra");
  if (budget < 0) throw DomainError("amonotone_test: budget must be >= 0");
  if (!f.domain.contains_interval(I))
    throw DomainError("amonotone_test: interval " + I.str() + " not contained in domain " +
                      f.domain.str() + " of " + f.spec_string());

  const std::size_t n1 = degree(A).n1;
  AmonotoneResult r;
  r.structural = order_n_certificate(f, I, static_cast<int>(n1), cfg);

  // Empirical track. Pair streams are offset away from the sweep's node-set
  // streams, which derive from the same master seed.
  constexpr std::uint64_t kPairStream = std::uint64_t{1} << 32;
  const Rng master(cfg.seed);
  double worst_block_eig = 0.0;
  HermitianMatrix worst_a, worst_b;
  std::string worst_note;
  for (int k = 0; k < budget; ++k) {
    Rng rng = master.derive(kPairStream + static_cast<std::uint64_t>(k));
    FiberedElement x, y;
    try {
      std::tie(x, y) = random_fibered_pair(A, I, rng, cfg.window_width);
    } catch (const BudgetError&) {
      continue;  // pair construction starved; skip this draw
    }
    const FiberedElement fx = fiber_apply(f, x);
    const FiberedElement fy = fiber_apply(f, y);
    ++r.pairs_tested;
    bool refuted = false;
    for (std::size_t i = 0; i < A.fibers.size(); ++i)
      for (std::size_t p = 0; p < A.fibers[i].point_count; ++p) {
        const HermitianMatrix d = hsub(fy.blocks[i][p], fx.blocks[i][p]);
        const PsdCertificate c = psd_check(d, psd_tolerance(d));
        if (!c.verdict) {
          refuted = true;
          if (c.min_eigenvalue < worst_block_eig) {
            worst_block_eig = c.min_eigenvalue;
            worst_a = x.blocks[i][p];
            worst_b = y.blocks[i][p];
            std::ostringstream os;
            os << "empirical pair " << k << " violates at " << block_name(i, p);
            worst_note = os.str();
          }
        }
      }
    if (refuted) ++r.pairs_refuted;
  }
  r.empirical_refuted = r.pairs_refuted > 0;
  r.anomaly = r.empirical_refuted && r.structural.monotone();

  // Combined verdict: refutation from either track wins; otherwise the
  // structural certificate speaks. Empirical non-refutation alone certifies
  // nothing.
  if (r.structural.refuted()) {
    r.verdict = r.structural;
  } else if (r.empirical_refuted) {
    r.verdict.kind = MonotonicityVerdict::Kind::NotMonotone;
    r.verdict.order = static_cast<int>(n1);
    r.verdict.evidence.worst_min_eigenvalue = worst_block_eig;
    r.verdict.evidence.pair_a = worst_a;
    r.verdict.evidence.pair_b = worst_b;
    r.verdict.evidence.note = worst_note;
    r.verdict.budget_used.evaluated = r.pairs_tested;
  } else if (r.structural.monotone() && r.pairs_tested > 0) {
    r.verdict = r.structural;
  } else {
    r.verdict.kind = MonotonicityVerdict::Kind::Inconclusive;
    r.verdict.order = static_cast<int>(n1);
    r.verdict.evidence.note = "both tracks exhausted without a usable sample";
  }
  if (r.anomaly)
    r.verdict.diagnostics.push_back(
        "anomaly: empirical refutation while the structural track accepts at the algebra degree");
  return r;
}

AmonotoneResult amonotone_test(const ScalarFunction& f, const FiberedAlgebra& A, const Interval& I,
                               int budget, std::uint64_t seed) {
  SweepConfig cfg;
  cfg.seed = seed;
  return amonotone_test(f, A, I, budget, cfg);
}

std::vector<ComplexMatrix> matrix_unit_generators(std::size_t n, std::size_t m) {
  if (m < 2 || m > n) throw DomainError("matrix_unit_generators: need 2 <= m <= n");
  std::vector<ComplexMatrix> gens;
  gens.reserve(m - 1);
  for (std::size_t j = 2; j <= m; ++j) {
    ComplexMatrix a(n);
    a(j - 1, 0) = cplx(1.0, 0.0);
    gens.push_back(std::move(a));
  }
  return gens;
}

namespace {

double operator_norm(const ComplexMatrix& a) {
  const HermitianMatrix gram{mul(adjoint(a), a)};
  return std::sqrt(std::max(0.0, eigh(gram).eigenvalues.back()));
}

}  // namespace

RelationReport verify_matrix_unit_relations(const std::vector<ComplexMatrix>& gens) {
  if (gens.empty()) throw DomainError("verify_matrix_unit_relations: no generators");
  RelationReport rep;
  const ComplexMatrix common = mul(adjoint(gens[0]), gens[0]);  // a_2* a_2
  for (std::size_t j = 0; j < gens.size(); ++j) {
    rep.max_norm = std::max(rep.max_norm, operator_norm(gens[j]));
    for (std::size_t k = 0; k < gens.size(); ++k) {
      rep.max_product_norm = std::max(rep.max_product_norm, frobenius(mul(gens[j], gens[k])));
      ComplexMatrix u = mul(adjoint(gens[j]), gens[k]);
      if (j == k) u = sub(u, common);
      rep.max_unit_deviation = std::max(rep.max_unit_deviation, frobenius(u));
    }
  }
  rep.ok = rep.max_norm <= 1.0 + rep.tolerance && rep.max_product_norm <= rep.tolerance &&
           rep.max_unit_deviation <= rep.tolerance;
  return rep;
}

}
