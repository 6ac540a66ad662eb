#pragma once

// Separability criteria: PPT with negative-eigenvector extraction, the
// partial-transpose entanglement witness, the realignment (CCN) test and the
// check for the aligned operator-Schmidt form.

#include <string>
#include <vector>

#include "swapsteer/states.hpp"

namespace swapsteer {

inline constexpr double kNptThreshold = 1e-9;
inline constexpr double kCcnThreshold = 1e-9;

struct PptReport {
  double min_eigenvalue = 0.0;
  CVector eta;  // eigenvector of rho^{T_A} at min_eigenvalue
  bool is_npt = false;
};

struct CcnReport {
  double coefficient_sum = 0.0;
  RVector coefficients;  // descending
  bool violates = false;
};

/// Minimal eigenpair of PT_A(rho). When several eigenvalues are negative the
/// most negative one is reported.
PptReport ppt_test(const DensityMatrix& rho);

/// W = PT_A(|eta><eta|), so that Tr(W rho) is the minimal PT eigenvalue.
/// Throws kPrecondition for PPT states.
CMatrix npt_entanglement_witness(const DensityMatrix& rho);

/// Trace norm of the realigned matrix.
CcnReport ccn_test(const DensityMatrix& rho);

/// The d^2 Hermitian, trace-orthonormal operators J_m, J+_{mn}, J-_{mn}.
/// Order: J_m (m ascending), then J+_{mn}, then J-_{mn}, both lexicographic in (m, n), m < n.
std::vector<CMatrix> j_basis(int d);
std::vector<std::string> j_basis_labels(int d);

struct AlignedForm {
  RVector lambdas;                  // one per j_basis element, same order
  double max_off_form = 0.0;        // largest |coefficient| off the aligned pattern
  double coefficient_sum = 0.0;
};

/// Conjugates rho by (U (x) V) and checks that the result equals
/// sum_k lambda_k J_k (x) J_k^T with all lambda_k >= 0. Off-form coefficients
/// above `tol` and lambdas below -tol are reported as kPrecondition errors.
AlignedForm verify_ccn_aligned(const DensityMatrix& rho, const CMatrix& u, const CMatrix& v, double tol = 1e-9);

}  // namespace swapsteer
