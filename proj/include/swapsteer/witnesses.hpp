#pragma once

// Swap-steering witnesses as explicit coefficient tables over measurement
// outcomes, together with the bound attainable by separable outcome-independent
// hidden-state (SOHS) models.
//
// All three families are evaluated on correlations p(a, b | x), where Alice
// (trusted) measures on A1A2 = C^d (x) C^d and Bob on B1B2.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swapsteer/states.hpp"

namespace swapsteer {

enum class WitnessFamily { kNpt, kCcn, kUniversal };

std::string to_string(WitnessFamily family);
WitnessFamily family_from_string(const std::string& name);

struct Coefficient {
  int x = 0;  // Alice setting
  int a = 0;  // Alice outcome
  int b = 0;  // Bob outcome
  double c = 0.0;
};

/// Everything needed to rebuild the ideal quantum strategy from a spec alone.
struct WitnessProvenance {
  // NPT: Schmidt data of the negative eigenvector eta of rho^{T_A}.
  CMatrix u;              // U |e_i> = |i>
  CMatrix v;              // V |f_i> = |i>
  RVector alpha;          // Schmidt coefficients of eta
  CVector eta;
  double min_pt_eigenvalue = 0.0;
  // CCN: aligning local unitaries.
  CMatrix uprime;
  CMatrix vprime;
  // UNIVERSAL: the entanglement witness and its Heisenberg-Weyl table.
  CMatrix w;
  CMatrix hw_lambda;
  std::vector<std::pair<int, int>> setting_labels;  // HW label generating each setting
  double gamma_residual = 0.0;
  // Common: unitary applied to A1 inside Alice's measurement, and the largest
  // imaginary residue discarded when making the coefficients real.
  CMatrix alice_unitary;
  double max_imag_residue = 0.0;
};

struct WitnessSpec {
  WitnessFamily family = WitnessFamily::kNpt;
  int d = 0;
  std::vector<Povm> alice;  // measurements on C^{d^2}
  int bob_outcomes = 0;
  std::vector<Coefficient> coefficients;  // sparse, b-major order irrelevant
  double c00 = 0.0;                       // weight of Bob's marginal p_B(0)
  double sohs_bound = 0.0;
  WitnessProvenance provenance;

  int settings() const { return static_cast<int>(alice.size()); }
  int alice_outcomes() const { return alice.empty() ? 0 : static_cast<int>(alice.front().size()); }
};

/// p(a, b | x), stored densely with b fastest, plus Bob's marginal.
struct CorrelationTable {
  int settings = 0;
  int alice_outcomes = 0;
  int bob_outcomes = 0;
  std::vector<double> probabilities;
  std::vector<double> bob_marginal;  // empty when unknown

  CorrelationTable() = default;
  CorrelationTable(int settings, int alice_outcomes, int bob_outcomes);

  double& at(int x, int a, int b) { return probabilities[index(x, a, b)]; }
  double at(int x, int a, int b) const { return probabilities[index(x, a, b)]; }

  /// Throws kValidation on negative entries, per-setting normalisation or
  /// marginal inconsistency beyond tol.
  void validate(double tol = 1e-9) const;

 private:
  std::size_t index(int x, int a, int b) const {
    return (static_cast<std::size_t>(x) * alice_outcomes + a) * bob_outcomes + b;
  }
};

/// Outcome order of the NPT measurement: m, then (+, m, n), then (-, m, n).
std::vector<CVector> npt_measurement_basis(int d);
std::vector<std::string> npt_outcome_labels(int d);

WitnessSpec build_npt_witness(const DensityMatrix& rho);

/// U', V' default to the identity when empty.
WitnessSpec build_ccn_witness(int d, const CMatrix& uprime = {}, const CMatrix& vprime = {});

/// `w` must be a Hermitian entanglement witness on C^d (x) C^d.
WitnessSpec build_universal_witness(const CMatrix& w, int d);

/// Generating HW labels for the universal measurement set on C^dim.
std::vector<std::pair<int, int>> hw_generating_labels(int dim);

/// Outcome of the coefficient map printed alongside the d^2 + 1 observable set
/// {Z, XZ^k}: how far it is from reproducing -Tr(W sigma).
struct PrintedMapReport {
  int settings = 0;
  double gamma_residual = 0.0;
  double max_imag_residue = 0.0;
  int unreachable_labels = 0;  // HW labels outside the span of the observable powers
};
PrintedMapReport printed_map_report(const CMatrix& w, int d);

/// c00 p_B(0) + sum c(x, a, b) p(a, b | x).
double eval_witness(const WitnessSpec& spec, const CorrelationTable& table);

/// Bob-outcome-resolved Alice operator C_b = [b = 0] c00 I + sum_{x,a} c(x,a,b) M^a_x.
std::vector<CMatrix> outcome_operators(const WitnessSpec& spec);

}  // namespace swapsteer
