#pragma once

// Two independent sources, S1 -> (A1, B1) and S2 -> (A2, B2). Alice measures
// A1A2 and Bob measures B1B2; every operator on the composite system uses the
// ordering A1 A2 B1 B2.

#include <vector>

#include "swapsteer/witnesses.hpp"

namespace swapsteer {

struct Scenario {
  DensityMatrix rho1;
  DensityMatrix rho2;
  std::vector<Povm> alice;  // on A1A2
  Povm bob;                 // on B1B2

  /// Throws kDimension when POVM sizes disagree with the source dimensions.
  void validate() const;
};

/// Reorders an operator on A1 B1 A2 B2 to A1 A2 B1 B2.
CMatrix permute_to_scenario(const CMatrix& product, Dims source1, Dims source2);
/// Inverse of permute_to_scenario.
CMatrix permute_from_scenario(const CMatrix& scenario_op, Dims source1, Dims source2);

/// Unnormalised Alice state Tr_{B1B2}[(1 (x) N) (rho1 (x) rho2)] on A1A2,
/// contracted without forming the four-party operator.
CMatrix alice_conditional(const DensityMatrix& rho1, const DensityMatrix& rho2, const CMatrix& bob_element);

/// Born-rule table p(a, b | x) with Bob's marginal. Entries of magnitude
/// below 1e-14 are set to zero.
CorrelationTable correlations(const Scenario& s);

struct PostSelection {
  DensityMatrix alice_state;
  double probability = 0.0;
};

/// Alice's normalised A1A2 state after Bob obtains `bob_element`. A
/// probability below 1e-12 is a kPrecondition error.
PostSelection swap_postselect(const DensityMatrix& rho1, const DensityMatrix& rho2, const CMatrix& bob_element);

/// Bob's measurement in the ideal quantum strategy of a witness.
Povm ideal_bob(const WitnessSpec& spec);

struct IdealStrategy {
  Scenario scenario;
  double predicted_value = 0.0;
};

/// S1 = rho, S2 = |phi+_d>, Bob from the spec provenance, and the closed-form
/// witness value of that strategy.
IdealStrategy ideal_strategy(const WitnessSpec& spec, const DensityMatrix& rho);

enum class SourceSlot { kFirst = 1, kSecond = 2 };

/// Full simulation with `sep_state` in the chosen slot and `other_state` in the other.
double separable_source_check(const WitnessSpec& spec, const DensityMatrix& sep_state, SourceSlot which,
                              const DensityMatrix& other_state, const Povm& bob);

/// eval_witness(spec, correlations(s)).
double simulate_value(const WitnessSpec& spec, const Scenario& s);

}  // namespace swapsteer
