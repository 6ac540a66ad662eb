#pragma once

// Dense complex linear algebra for bipartite operators.
//
// Every routine is a free function templated on the Eigen expression (or on
// the real scalar type) so that the same code serves double and long double.
// Composite indices follow the Kronecker convention: for a bipartite operator
// on C^dA (x) C^dB the row (i, j) lives at i * dB + j.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "swapsteer/error.hpp"

namespace swapsteer {

template <typename Real>
using CMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CMatrix = CMatrixT<double>;
using CVector = CVectorT<double>;
using RVector = RVectorT<double>;
using RMatrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

/// Local dimensions of a bipartite system.
struct Dims {
  int a = 0;
  int b = 0;

  int total() const { return a * b; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { A, B };

namespace detail {

inline std::string dims_str(Dims dims) {
  return "(" + std::to_string(dims.a) + ", " + std::to_string(dims.b) + ")";
}

template <typename Derived>
void require_bipartite_square(const Eigen::MatrixBase<Derived>& m, Dims dims, const char* op) {
  if (dims.a < 1 || dims.b < 1 || m.rows() != m.cols() || m.rows() != dims.total()) {
    fail(ErrorKind::kDimension, std::string(op) + ": expected a square matrix of size " +
                                    std::to_string(dims.total()) + " for dims " + dims_str(dims) +
                                    ", got " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()));
  }
}

// Phase-fix a vector so that its first component with magnitude above 1e-8 is real positive.
template <typename Real>
void fix_phase(Eigen::Ref<CVectorT<Real>> v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > Real(1e-8)) {
      v *= std::conj(v(k)) / std::abs(v(k));
      v(k) = std::complex<Real>(std::real(v(k)), Real(0));
      return;
    }
  }
}

}  // namespace detail

/// Largest entrywise modulus, the norm used by every tolerance check here.
template <typename Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? typename Eigen::NumTraits<typename Derived::Scalar>::Real(0)
                       : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-9) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = 1e-9) {
  using Plain = typename Derived::PlainObject;
  return m.rows() == m.cols() &&
         max_abs(m.adjoint() * m - Plain::Identity(m.rows(), m.cols())) <= tol;
}

/// m^k for k >= 0 by repeated squaring.
template <typename Derived>
typename Derived::PlainObject matrix_power(const Eigen::MatrixBase<Derived>& m, int k) {
  typename Derived::PlainObject result = Derived::PlainObject::Identity(m.rows(), m.cols());
  typename Derived::PlainObject base = m;
  for (; k > 0; k >>= 1) {
    if (k & 1) result = result * base;
    base = base * base;
  }
  return result;
}

/// Kronecker product; the first factor owns the slow index.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                                a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Transposes the indices of one subsystem. An involution.
template <typename Derived>
typename Derived::PlainObject partial_transpose(const Eigen::MatrixBase<Derived>& m, Dims dims,
                                                Subsystem sys) {
  detail::require_bipartite_square(m, dims, "partial_transpose");
  typename Derived::PlainObject out(m.rows(), m.cols());
  const int da = dims.a, db = dims.b;
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) {
          const auto value = m(i * db + j, k * db + l);
          if (sys == Subsystem::A)
            out(k * db + j, i * db + l) = value;
          else
            out(i * db + l, k * db + j) = value;
        }
  return out;
}

/// Traces out `sys`, returning the reduced operator on the other subsystem.
template <typename Derived>
typename Derived::PlainObject partial_trace(const Eigen::MatrixBase<Derived>& m, Dims dims,
                                            Subsystem sys) {
  detail::require_bipartite_square(m, dims, "partial_trace");
  const int da = dims.a, db = dims.b;
  if (sys == Subsystem::B) {
    typename Derived::PlainObject out = Derived::PlainObject::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int k = 0; k < da; ++k)
        for (int j = 0; j < db; ++j) out(i, k) += m(i * db + j, k * db + j);
    return out;
  }
  typename Derived::PlainObject out = Derived::PlainObject::Zero(db, db);
  for (int j = 0; j < db; ++j)
    for (int l = 0; l < db; ++l)
      for (int i = 0; i < da; ++i) out(j, l) += m(i * db + j, i * db + l);
  return out;
}

/// Spectral decomposition of a Hermitian matrix, eigenvalues ascending,
/// eigenvectors as columns.
template <typename Real>
struct HermEigT {
  RVectorT<Real> eigenvalues;
  CMatrixT<Real> eigenvectors;
};
using HermEig = HermEigT<double>;

struct JacobiOptions {
  double hermitian_tol = 1e-9;
  double offdiag_tol = 1e-13;  // relative to max(1, ||A||_F)
  int max_sweeps = 100;
  double degeneracy_gap = 1e-10;
};

/// Cyclic complex Jacobi eigensolver.
///
/// Output is canonical: within a cluster of eigenvalues closer than
/// `degeneracy_gap` the eigenvectors are rebuilt by Gram-Schmidt of the
/// cluster projector applied to e_0, e_1, ..., and every eigenvector is
/// phase-fixed so that its first component of modulus > 1e-8 is real positive.
template <typename Derived>
HermEigT<typename Eigen::NumTraits<typename Derived::Scalar>::Real> hermitian_eig(
    const Eigen::MatrixBase<Derived>& m, const JacobiOptions& opt = {}) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using C = std::complex<Real>;
  using Mat = CMatrixT<Real>;
  using Vec = CVectorT<Real>;

  if (m.rows() != m.cols()) fail(ErrorKind::kDimension, "hermitian_eig: matrix is not square");
  const Real herm_err = max_abs(m - m.adjoint());
  if (!(herm_err <= Real(opt.hermitian_tol))) {
    fail(ErrorKind::kPrecondition,
         "hermitian_eig: input is not Hermitian (max |m - m^dagger| = " + std::to_string(double(herm_err)) + ")");
  }
  const Eigen::Index n = m.rows();
  Mat a = (m + m.adjoint()) / Real(2);
  Mat v = Mat::Identity(n, n);

  const Real scale = std::max(Real(1), a.norm());
  auto off_mass = [&] {
    Real s = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  bool converged = n <= 1;
  for (int sweep = 0; sweep < opt.max_sweeps && !converged; ++sweep) {
    if (off_mass() < Real(opt.offdiag_tol) * scale) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Real mag = std::abs(a(p, q));
        if (mag == Real(0)) continue;
        const C phase = a(p, q) / mag;  // e^{i phi}
        const Real app = std::real(a(p, p)), aqq = std::real(a(q, q));
        const Real tau = (aqq - app) / (Real(2) * mag);
        const Real t = (tau >= 0 ? Real(1) : Real(-1)) / (std::abs(tau) + std::sqrt(Real(1) + tau * tau));
        const Real c = Real(1) / std::sqrt(Real(1) + t * t);
        const Real s = t * c;
        const C e_minus = std::conj(phase);

        // A <- A G with G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
        for (Eigen::Index k = 0; k < n; ++k) {
          const C akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * e_minus * akq;
          a(k, q) = s * akp + c * e_minus * akq;
          const C vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * e_minus * vkq;
          v(k, q) = s * vkp + c * e_minus * vkq;
        }
        // A <- G^dagger A.
        for (Eigen::Index k = 0; k < n; ++k) {
          const C apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = a(q, p) = C(0);
        a(p, p) = C(std::real(a(p, p)), 0);
        a(q, q) = C(std::real(a(q, q)), 0);
      }
    }
  }
  if (!converged && off_mass() >= Real(opt.offdiag_tol) * scale) {
    fail(ErrorKind::kNumerical, "hermitian_eig: no convergence after " +
                                    std::to_string(opt.max_sweeps) + " sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return std::real(a(x, x)) < std::real(a(y, y));
  });

  HermEigT<Real> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = std::real(a(order[k], order[k]));
    out.eigenvectors.col(k) = v.col(order[k]);
  }

  // Canonicalise degenerate clusters, then fix phases.
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && out.eigenvalues(stop) - out.eigenvalues(stop - 1) < Real(opt.degeneracy_gap)) ++stop;
    const Eigen::Index size = stop - start;
    if (size > 1) {
      const Mat block = out.eigenvectors.middleCols(start, size);
      const Mat projector = block * block.adjoint();
      Mat basis(n, size);
      Eigen::Index found = 0;
      for (Eigen::Index j = 0; j < n && found < size; ++j) {
        Vec w = projector.col(j);
        for (Eigen::Index r = 0; r < found; ++r) w -= basis.col(r) * basis.col(r).dot(w);
        for (Eigen::Index r = 0; r < found; ++r) w -= basis.col(r) * basis.col(r).dot(w);
        const Real norm = w.norm();
        if (norm > Real(1e-6)) basis.col(found++) = w / norm;
      }
      if (found == size) out.eigenvectors.middleCols(start, size) = basis;
    }
    start = stop;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    Vec col = out.eigenvectors.col(k);
    detail::fix_phase<Real>(col);
    out.eigenvectors.col(k) = col;
  }
  return out;
}

/// Vector Schmidt decomposition |psi> = sum_k alpha_k |e_k>|f_k>.
/// Coefficients descending, left vectors phase-fixed, right vectors absorb phases.
template <typename Real>
struct SchmidtResultT {
  RVectorT<Real> coefficients;
  CMatrixT<Real> left;   // columns |e_k>
  CMatrixT<Real> right;  // columns |f_k>
};
using SchmidtResult = SchmidtResultT<double>;

template <typename Derived>
SchmidtResultT<typename Eigen::NumTraits<typename Derived::Scalar>::Real> schmidt(
    const Eigen::MatrixBase<Derived>& psi, Dims dims, double norm_tol = 1e-8) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Mat = CMatrixT<Real>;
  if (psi.cols() != 1 || psi.rows() != dims.total()) {
    fail(ErrorKind::kDimension, "schmidt: ket length " + std::to_string(psi.rows()) +
                                    " does not match dims " + detail::dims_str(dims));
  }
  const Real norm = psi.norm();
  if (std::abs(norm - Real(1)) > Real(norm_tol)) {
    fail(ErrorKind::kPrecondition, "schmidt: ket norm deviates from 1 by " + std::to_string(double(std::abs(norm - 1))));
  }
  Mat coeffs(dims.a, dims.b);
  for (int i = 0; i < dims.a; ++i)
    for (int j = 0; j < dims.b; ++j) coeffs(i, j) = psi(i * dims.b + j, 0);

  Eigen::JacobiSVD<Mat> svd(coeffs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtResultT<Real> out;
  out.coefficients = svd.singularValues();
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();
  for (Eigen::Index k = 0; k < out.left.cols(); ++k) {
    CVectorT<Real> e = out.left.col(k);
    const CVectorT<Real> before = e;
    detail::fix_phase<Real>(e);
    // e = before * z with |z| = 1; compensate on the right vector.
    std::complex<Real> z(1);
    for (Eigen::Index i = 0; i < e.size(); ++i)
      if (std::abs(before(i)) > Real(1e-8)) {
        z = e(i) / before(i);
        break;
      }
    out.left.col(k) = e;
    out.right.col(k) /= z;
  }
  return out;
}

/// rho = sum_k lambda_k F_k (x) G_k with Hilbert-Schmidt orthonormal F_k, G_k.
template <typename Real>
struct OperatorSchmidtT {
  RVectorT<Real> coefficients;
  std::vector<CMatrixT<Real>> left_ops;
  std::vector<CMatrixT<Real>> right_ops;

  Real coefficient_sum() const { return coefficients.sum(); }
};
using OperatorSchmidt = OperatorSchmidtT<double>;

/// Realignment R(m)_{(i,k),(j,l)} = m_{(i,j),(k,l)}, a dA^2 x dB^2 matrix.
template <typename Derived>
typename Derived::PlainObject realign(const Eigen::MatrixBase<Derived>& m, Dims dims) {
  detail::require_bipartite_square(m, dims, "realign");
  const int da = dims.a, db = dims.b;
  typename Derived::PlainObject out(da * da, db * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) out(i * da + k, j * db + l) = m(i * db + j, k * db + l);
  return out;
}

template <typename Derived>
OperatorSchmidtT<typename Eigen::NumTraits<typename Derived::Scalar>::Real> operator_schmidt(
    const Eigen::MatrixBase<Derived>& rho, Dims dims) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Mat = CMatrixT<Real>;
  const Mat r = realign(rho, dims);
  Eigen::JacobiSVD<Mat> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  OperatorSchmidtT<Real> out;
  out.coefficients = svd.singularValues();
  const Mat u = svd.matrixU();
  const Mat v = svd.matrixV();
  for (Eigen::Index k = 0; k < out.coefficients.size(); ++k) {
    Mat f(dims.a, dims.a), g(dims.b, dims.b);
    for (int i = 0; i < dims.a; ++i)
      for (int j = 0; j < dims.a; ++j) f(i, j) = u(i * dims.a + j, k);
    for (int i = 0; i < dims.b; ++i)
      for (int j = 0; j < dims.b; ++j) g(i, j) = std::conj(v(i * dims.b + j, k));
    out.left_ops.push_back(std::move(f));
    out.right_ops.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clock and shift operators, Heisenberg-Weyl basis.

/// Shift X_d |i> = |i + 1 mod d>.
template <typename Real = double>
CMatrixT<Real> gen_pauli_x(int d) {
  CMatrixT<Real> x = CMatrixT<Real>::Zero(d, d);
  for (int i = 0; i < d; ++i) x((i + 1) % d, i) = Real(1);
  return x;
}

/// Clock Z_d |i> = omega_d^i |i>.
template <typename Real = double>
CMatrixT<Real> gen_pauli_z(int d) {
  CMatrixT<Real> z = CMatrixT<Real>::Zero(d, d);
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  for (int i = 0; i < d; ++i) z(i, i) = std::polar(Real(1), two_pi * Real(i) / Real(d));
  return z;
}

/// omega_D^{ij(D-1)/2}, reduced modulo 2D in the exponent before evaluating.
template <typename Real = double>
std::complex<Real> hw_phase(int dim, int i, int j) {
  const long long e = (static_cast<long long>(i) * j * (dim - 1)) % (2LL * dim);
  return std::polar(Real(1), std::numbers::pi_v<Real> * Real(e) / Real(dim));
}

/// B_{ij} = omega_D^{ij(D-1)/2} X_D^i Z_D^j for 0 <= i, j < D.
template <typename Real = double>
CMatrixT<Real> hw_element(int dim, int i, int j) {
  CMatrixT<Real> out = CMatrixT<Real>::Zero(dim, dim);
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  const auto phase = hw_phase<Real>(dim, i, j);
  // X^i Z^j |k> = omega^{jk} |k + i>.
  for (int k = 0; k < dim; ++k) {
    const long long e = (static_cast<long long>(j) * k) % dim;
    out((k + i) % dim, k) = phase * std::polar(Real(1), two_pi * Real(e) / Real(dim));
  }
  return out;
}

/// All D^2 elements, index i * D + j.
template <typename Real = double>
std::vector<CMatrixT<Real>> hw_basis(int dim) {
  if (dim < 2) fail(ErrorKind::kPrecondition, "hw_basis: dimension must be >= 2");
  std::vector<CMatrixT<Real>> out;
  out.reserve(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out.push_back(hw_element<Real>(dim, i, j));
  return out;
}

/// lambda_{ij} = Tr(B_{ij}^dagger w) / D, as a D x D table.
template <typename Derived>
typename Derived::PlainObject hw_expand(const Eigen::MatrixBase<Derived>& w) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (w.rows() != w.cols()) fail(ErrorKind::kDimension, "hw_expand: matrix is not square");
  const int dim = static_cast<int>(w.rows());
  typename Derived::PlainObject lambda(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      lambda(i, j) = (hw_element<Real>(dim, i, j).adjoint() * w).trace() / Real(dim);
  return lambda;
}

template <typename Derived>
typename Derived::PlainObject hw_reconstruct(const Eigen::MatrixBase<Derived>& lambda) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (lambda.rows() != lambda.cols()) fail(ErrorKind::kDimension, "hw_reconstruct: table is not square");
  const int dim = static_cast<int>(lambda.rows());
  typename Derived::PlainObject w = Derived::PlainObject::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) w += lambda(i, j) * hw_element<Real>(dim, i, j);
  return w;
}

/// kappa with B_{ij}^dagger = kappa * B_{-i,-j}. For Hermitian w this gives
/// lambda_{-i,-j} = kappa_{ij} * conj(lambda_{ij}).
template <typename Real = double>
std::complex<Real> hw_adjoint_phase(int dim, int i, int j) {
  const int mi = (dim - i) % dim, mj = (dim - j) % dim;
  return (hw_element<Real>(dim, mi, mj).adjoint() * hw_element<Real>(dim, i, j).adjoint()).trace() /
         Real(dim);
}

}  // namespace swapsteer
