#include "swapsteer/criteria.hpp"

#include <cmath>
#include <sstream>

namespace swapsteer {

PptReport ppt_test(const DensityMatrix& rho) {
  const CMatrix pt = partial_transpose(rho.matrix(), rho.dims(), Subsystem::A);
  const HermEig eig = hermitian_eig(pt);
  PptReport report;
  report.min_eigenvalue = eig.eigenvalues(0);
  report.eta = eig.eigenvectors.col(0);
  report.is_npt = report.min_eigenvalue < -kNptThreshold;
  return report;
}

CMatrix npt_entanglement_witness(const DensityMatrix& rho) {
  const PptReport report = ppt_test(rho);
  if (!report.is_npt) {
    std::ostringstream os;
    os << "npt_entanglement_witness: state is PPT (min PT eigenvalue " << report.min_eigenvalue
       << "), no witness of this family exists";
    fail(ErrorKind::kPrecondition, os.str());
  }
  const CMatrix w = partial_transpose(CMatrix(report.eta * report.eta.adjoint()), rho.dims(), Subsystem::A);
  return (w + w.adjoint()) / 2.0;
}

CcnReport ccn_test(const DensityMatrix& rho) {
  const OperatorSchmidt os = operator_schmidt(rho.matrix(), rho.dims());
  CcnReport report;
  report.coefficients = os.coefficients;
  report.coefficient_sum = os.coefficients.sum();
  report.violates = report.coefficient_sum > 1.0 + kCcnThreshold;
  return report;
}

std::vector<CMatrix> j_basis(int d) {
  std::vector<CMatrix> out;
  for (int m = 0; m < d; ++m) {
    CMatrix j = CMatrix::Zero(d, d);
    j(m, m) = 1.0;
    out.push_back(std::move(j));
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int m = 0; m < d; ++m)
    for (int n = m + 1; n < d; ++n) {
      CMatrix j = CMatrix::Zero(d, d);
      j(m, n) = j(n, m) = r;
      out.push_back(std::move(j));
    }
  // (|m><n| - |n><m|) / (i sqrt 2)
  for (int m = 0; m < d; ++m)
    for (int n = m + 1; n < d; ++n) {
      CMatrix j = CMatrix::Zero(d, d);
      j(m, n) = Complex(0.0, -r);
      j(n, m) = Complex(0.0, r);
      out.push_back(std::move(j));
    }
  return out;
}

std::vector<std::string> j_basis_labels(int d) {
  std::vector<std::string> out;
  for (int m = 0; m < d; ++m) out.push_back("J" + std::to_string(m));
  for (const char* sign : {"+", "-"})
    for (int m = 0; m < d; ++m)
      for (int n = m + 1; n < d; ++n) out.push_back(std::string("J") + sign + std::to_string(m) + std::to_string(n));
  return out;
}

AlignedForm verify_ccn_aligned(const DensityMatrix& rho, const CMatrix& u, const CMatrix& v, double tol) {
  const Dims dims = rho.dims();
  if (dims.a != dims.b) fail(ErrorKind::kDimension, "verify_ccn_aligned: requires equal local dimensions");
  const int d = dims.a;
  if (u.rows() != d || v.rows() != d) fail(ErrorKind::kDimension, "verify_ccn_aligned: unitaries must be d x d");
  if (!is_unitary(u) || !is_unitary(v)) fail(ErrorKind::kPrecondition, "verify_ccn_aligned: U and V must be unitary");

  const CMatrix uv = kron(u, v);
  const CMatrix aligned = uv * rho.matrix() * uv.adjoint();
  const auto basis = j_basis(d);
  const auto labels = j_basis_labels(d);
  const auto count = static_cast<int>(basis.size());

  AlignedForm out;
  out.lambdas = RVector::Zero(count);
  std::string worst;
  for (int k = 0; k < count; ++k) {
    for (int l = 0; l < count; ++l) {
      // Both J_k and J_l^T are Hermitian, so the product basis is orthonormal.
      const CMatrix element = kron(basis[static_cast<std::size_t>(k)], CMatrix(basis[static_cast<std::size_t>(l)].transpose()));
      const Complex t = (element * aligned).trace();
      if (k == l) {
        out.lambdas(k) = t.real();
        if (std::abs(t.imag()) > out.max_off_form) {
          out.max_off_form = std::abs(t.imag());
          worst = "imaginary part of " + labels[static_cast<std::size_t>(k)];
        }
      } else if (std::abs(t) > out.max_off_form) {
        out.max_off_form = std::abs(t);
        worst = labels[static_cast<std::size_t>(k)] + " (x) " + labels[static_cast<std::size_t>(l)] + "^T";
      }
    }
  }
  if (out.max_off_form > tol) {
    std::ostringstream os;
    os << "verify_ccn_aligned: off-form coefficient " << worst << " has magnitude " << out.max_off_form;
    fail(ErrorKind::kPrecondition, os.str());
  }
  for (int k = 0; k < count; ++k) {
    if (out.lambdas(k) < -tol) {
      std::ostringstream os;
      os << "verify_ccn_aligned: negative coefficient " << out.lambdas(k) << " on " << labels[static_cast<std::size_t>(k)];
      fail(ErrorKind::kPrecondition, os.str());
    }
  }
  out.coefficient_sum = out.lambdas.sum();
  return out;
}

}  // namespace swapsteer
