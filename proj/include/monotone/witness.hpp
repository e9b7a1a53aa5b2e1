#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "monotone/hermitian.hpp"
#include "monotone/interval.hpp"
#include "monotone/scalar_function.hpp"

namespace monotone {

// Concrete refutation of order-dim monotonicity: a <= b (exact, tolerance 0),
// both spectra strictly inside the interval, yet f(b) - f(a) has an
// eigenvalue below -margin_factor * tolerance. Everything needed to re-check
// the claim from scratch is stored.
struct WitnessPair {
  HermitianMatrix a;
  HermitianMatrix b;
  PsdCertificate order_cert;  // b - a at tolerance 0 (verdict true)
  PsdCertificate image_cert;  // f(b) - f(a) at scale-aware tolerance (verdict false)
  std::string fn_spec;
  Interval interval;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  int proposals_used = 0;
  int descent_steps = 0;
};

struct WitnessSearchConfig {
  std::uint64_t seed = 0;
  // total candidate evaluations across the proposal and descent phases
  int budget = 100000;
  double window_width = 100.0;
  // shrink b toward a afterwards, keeping the smallest violating segment point
  bool normalize = true;
  // a violation only counts below -margin_factor * tolerance, so re-checking
  // it later at factor 1 has headroom
  double margin_factor = 10.0;
};

// Two-phase search. Phase 1 scores random ordered pairs; phase 2 runs a
// coordinate-perturbation descent from the best proposal, repairing each
// candidate back into the feasible set (order restored by clipping the
// difference's spectrum into the PSD cone, spectra clipped into the sampling
// window). Returns nothing when the budget ends without a robust violation --
// the expected outcome for functions monotone at this order.
std::optional<WitnessPair> find_violation(const ScalarFunction& f, const Interval& I,
                                          std::size_t dim, const WitnessSearchConfig& cfg);

struct WitnessCheck {
  PsdCertificate order;  // recomputed b - a at tolerance 0
  PsdCertificate image;  // recomputed f(b) - f(a) at scale-aware tolerance
  bool spectra_in_interval = false;
  bool valid = false;  // order holds, spectra inside, image refuted
};

// Independent re-evaluation of a stored witness; shares no state with the
// search. The image check uses margin factor 1, half-open against the
// factor-10 construction margin.
WitnessCheck verify_witness(const ScalarFunction& f, const WitnessPair& w);

}
