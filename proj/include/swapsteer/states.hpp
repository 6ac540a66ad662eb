#pragma once

// Quantum states, POVMs and the fixed operator families used by the witnesses.

#include <string>
#include <vector>

#include "swapsteer/qlinalg.hpp"
#include "swapsteer/rng.hpp"

namespace swapsteer {

/// Unit-norm ket on C^dA (x) C^dB.
class Ket {
 public:
  /// Validates the norm (tolerance 1e-9) and the length against dims.
  Ket(CVector amplitudes, Dims dims, double tol = 1e-9);

  const CVector& amplitudes() const { return amplitudes_; }
  Dims dims() const { return dims_; }
  CMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  CVector amplitudes_;
  Dims dims_;
};

/// Hermitian, positive semidefinite, unit-trace operator on C^dA (x) C^dB.
class DensityMatrix {
 public:
  /// Validates hermiticity, positivity and trace, all at absolute tolerance
  /// `tol`. The error message names the failing check and its magnitude.
  DensityMatrix(CMatrix matrix, Dims dims, double tol = 1e-9);

  const CMatrix& matrix() const { return matrix_; }
  Dims dims() const { return dims_; }
  int dim() const { return dims_.total(); }

 private:
  CMatrix matrix_;
  Dims dims_;
};

DensityMatrix to_density(const Ket& ket);

/// Measurement: PSD elements that sum to the identity.
class Povm {
 public:
  Povm(std::vector<CMatrix> elements, std::vector<std::string> labels = {}, double tol = 1e-9);

  const std::vector<CMatrix>& elements() const { return elements_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const CMatrix& operator[](std::size_t k) const { return elements_[k]; }
  std::size_t size() const { return elements_.size(); }
  int dim() const { return elements_.empty() ? 0 : static_cast<int>(elements_.front().rows()); }

  /// Returns u^dagger E u for every element E.
  Povm conjugated(const CMatrix& u) const;

 private:
  std::vector<CMatrix> elements_;
  std::vector<std::string> labels_;
};

/// Projective measurement onto the columns of a unitary (or onto a list of orthonormal kets).
Povm projective(const CMatrix& basis_columns, std::vector<std::string> labels = {});

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& m);

// ---------------------------------------------------------------------------
// Fixed states and operator families.

/// (1/sqrt d) sum_i |ii>.
Ket max_entangled(int d);

/// |phi^+_{d,l1 l2}> = (X^{l2} Z^{l1} (x) 1) |phi^+_d>.
Ket bell_state(int d, int l1, int l2);

/// All d^2 Bell states, index l1 * d + l2.
std::vector<Ket> bell_basis(int d);

/// Projective measurement onto bell_basis(d), labels "l1l2".
Povm bell_measurement(int d);

/// v |phi^+_d><phi^+_d| + (1 - v) I / d^2.
DensityMatrix isotropic(int d, double v);

/// p |psi^-><psi^-| + (1 - p) I / 4.
DensityMatrix werner_qubit(double p);

DensityMatrix maximally_mixed(Dims dims);

/// sum_{mn} m_{mn} |mm><nn| for a real, entrywise nonnegative, PSD, unit-trace m.
/// These are the states already in the aligned operator-Schmidt form.
DensityMatrix maximally_correlated(const RMatrix& m);

// ---------------------------------------------------------------------------
// Seeded random generation.

/// Normalised complex Gaussian vector (Haar-distributed pure state).
CVector random_ket_vector(int dim, Rng& rng);
Ket random_pure(Dims dims, Rng& rng);
/// Normalised Ginibre G G^dagger.
DensityMatrix random_density(Dims dims, Rng& rng);
/// Dirichlet(1, ..., 1) mixture of random product pure states; k_terms <= 0
/// selects the default 2 * dA * dB.
DensityMatrix random_separable(Dims dims, Rng& rng, int k_terms = 0);
/// Haar unitary via QR of a Ginibre matrix with the R diagonal made positive.
CMatrix random_unitary(int dim, Rng& rng);
/// Random POVM with `outcomes` full-rank elements, S^{-1/2} G_b S^{-1/2}.
Povm random_povm(int dim, int outcomes, Rng& rng);

// Seeded convenience overloads.
inline Ket random_pure(Dims dims, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(dims, rng);
}
inline DensityMatrix random_density(Dims dims, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dims, rng);
}
inline DensityMatrix random_separable(Dims dims, std::uint64_t seed, int k_terms = 0) {
  Rng rng(seed);
  return random_separable(dims, rng, k_terms);
}

}  // namespace swapsteer
