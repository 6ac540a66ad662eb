#pragma once

// Bounds attainable by separable outcome-independent hidden-state models.
//
// The witness functional is linear in the hidden states and in Bob's response,
// so pure product hidden states with a deterministic Bob outcome suffice.

#include <cstdint>
#include <vector>

#include "swapsteer/witnesses.hpp"

namespace swapsteer {

struct ProductStrategy {
  CVector psi1;  // hidden state on A1
  CVector psi2;  // hidden state on A2
  int bob_response = 0;
};

struct BoundResult {
  double value = 0.0;
  ProductStrategy strategy;
  int restarts_used = 0;
  int iterations = 0;  // of the winning restart
  bool converged = false;
  std::vector<double> history;     // winning restart, nondecreasing
  std::vector<double> per_outcome;  // final hidden states evaluated at every b
  std::string method;
};

struct SeesawOptions {
  int restarts = 32;
  double tol = 1e-10;
  int max_iter = 500;
  std::uint64_t seed = 0;
};

/// c00 [b* = 0] + sum_{x,a} c(x, a, b*) <psi1 psi2| M^a_x |psi1 psi2>.
double sohs_value(const WitnessSpec& spec, const ProductStrategy& strategy);

/// Alternating top-eigenvector maximisation over (psi1, psi2, b*) with seeded
/// Haar restarts; the best restart wins.
BoundResult seesaw_bound(const WitnessSpec& spec, const SeesawOptions& options = {});

/// Exhaustive scan over a grid of pure product states and every b*.
/// d = 2 uses Bloch angles, d = 3 nested hypersphere angles with two phases.
/// Throws kResource for d > 3, resolution < 8 or an oversized grid.
double grid_bound(const WitnessSpec& spec, int resolution);

/// Number of (psi1, psi2, b) evaluations grid_bound would perform.
double grid_cost(int d, int resolution, int bob_outcomes);

/// Classically correlated sources sum_k |kk><kk| / d (the first rotated by
/// U'^dagger on A1) with Bob measuring the product basis and announcing
/// (0, k - l mod d). Returns the simulated CCN witness value, which is 1/d.
double ccn_saturating_value(const WitnessSpec& spec);

}  // namespace swapsteer
