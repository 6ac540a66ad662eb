#include "swapsteer/states.hpp"

#include <cmath>
#include <sstream>

namespace swapsteer {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

void require_dim(int d, const char* what) {
  if (d < 2) fail(ErrorKind::kPrecondition, std::string(what) + ": d must be >= 2");
}

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) fail(ErrorKind::kPrecondition, std::string(what) + ": parameter out of [0, 1]");
}

}  // namespace

double min_eigenvalue(const CMatrix& m) { return hermitian_eig(m).eigenvalues(0); }

Ket::Ket(CVector amplitudes, Dims dims, double tol) : amplitudes_(std::move(amplitudes)), dims_(dims) {
  if (dims.a < 1 || dims.b < 1 || amplitudes_.size() != dims.total()) {
    fail(ErrorKind::kDimension, "ket: length " + std::to_string(amplitudes_.size()) +
                                    " does not match dims " + detail::dims_str(dims));
  }
  if (!amplitudes_.allFinite()) fail(ErrorKind::kValidation, "ket: non-finite amplitude");
  const double dev = std::abs(amplitudes_.norm() - 1.0);
  if (dev > tol) fail(ErrorKind::kValidation, "ket: norm check failed, |norm - 1| = " + fmt(dev));
}

DensityMatrix::DensityMatrix(CMatrix matrix, Dims dims, double tol) : matrix_(std::move(matrix)), dims_(dims) {
  if (dims.a < 1 || dims.b < 1 || matrix_.rows() != dims.total() || matrix_.cols() != dims.total()) {
    fail(ErrorKind::kDimension, "density matrix: shape " + std::to_string(matrix_.rows()) + "x" +
                                    std::to_string(matrix_.cols()) + " does not match dims " +
                                    detail::dims_str(dims));
  }
  if (!matrix_.allFinite()) fail(ErrorKind::kValidation, "density matrix: non-finite entry");
  const double herm = max_abs(matrix_ - matrix_.adjoint());
  if (herm > tol) fail(ErrorKind::kValidation, "density matrix: hermiticity check failed, max |m - m^dagger| = " + fmt(herm));
  const double trace_dev = std::abs(matrix_.trace() - Complex(1.0));
  if (trace_dev > tol) {
    fail(ErrorKind::kValidation, "density matrix: trace check failed, |Tr - 1| = " + fmt(trace_dev) +
                                     " (trace " + std::to_string(matrix_.trace().real()) + ")");
  }
  const double lowest = min_eigenvalue(matrix_);
  if (lowest < -tol) fail(ErrorKind::kValidation, "density matrix: positivity check failed, min eigenvalue = " + fmt(lowest));
}

DensityMatrix to_density(const Ket& ket) { return DensityMatrix(ket.projector(), ket.dims()); }

Povm::Povm(std::vector<CMatrix> elements, std::vector<std::string> labels, double tol)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
  if (elements_.empty()) fail(ErrorKind::kValidation, "povm: no elements");
  const auto n = elements_.front().rows();
  CMatrix sum = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    const auto& e = elements_[k];
    if (e.rows() != n || e.cols() != n) fail(ErrorKind::kDimension, "povm: elements have inconsistent shapes");
    if (max_abs(e - e.adjoint()) > tol) fail(ErrorKind::kValidation, "povm: element " + std::to_string(k) + " is not Hermitian");
    const double lowest = min_eigenvalue(e);
    if (lowest < -tol) fail(ErrorKind::kValidation, "povm: element " + std::to_string(k) + " is not PSD, min eigenvalue = " + fmt(lowest));
    sum += e;
  }
  const double completeness = max_abs(sum - CMatrix::Identity(n, n));
  if (completeness > tol) fail(ErrorKind::kValidation, "povm: elements do not sum to identity, deviation " + fmt(completeness));
  if (labels_.empty()) {
    for (std::size_t k = 0; k < elements_.size(); ++k) labels_.push_back(std::to_string(k));
  }
  if (labels_.size() != elements_.size()) fail(ErrorKind::kValidation, "povm: label count mismatch");
}

Povm Povm::conjugated(const CMatrix& u) const {
  std::vector<CMatrix> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(u.adjoint() * e * u);
  return Povm(std::move(out), labels_);
}

Povm projective(const CMatrix& basis_columns, std::vector<std::string> labels) {
  std::vector<CMatrix> out;
  for (Eigen::Index k = 0; k < basis_columns.cols(); ++k) {
    const CVector v = basis_columns.col(k);
    out.push_back(v * v.adjoint());
  }
  return Povm(std::move(out), std::move(labels));
}

Ket max_entangled(int d) {
  require_dim(d, "max_entangled");
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return Ket(std::move(v), {d, d});
}

Ket bell_state(int d, int l1, int l2) {
  require_dim(d, "bell_state");
  const CMatrix x = gen_pauli_x(d), z = gen_pauli_z(d);
  const CMatrix local = matrix_power(x, l2) * matrix_power(z, l1);
  CVector v = kron(local, CMatrix::Identity(d, d)) * max_entangled(d).amplitudes();
  return Ket(std::move(v), {d, d});
}

std::vector<Ket> bell_basis(int d) {
  std::vector<Ket> out;
  for (int l1 = 0; l1 < d; ++l1)
    for (int l2 = 0; l2 < d; ++l2) out.push_back(bell_state(d, l1, l2));
  return out;
}

Povm bell_measurement(int d) {
  const auto basis = bell_basis(d);
  CMatrix cols(d * d, d * d);
  std::vector<std::string> labels;
  for (int k = 0; k < d * d; ++k) {
    cols.col(k) = basis[static_cast<std::size_t>(k)].amplitudes();
    labels.push_back(std::to_string(k / d) + std::to_string(k % d));
  }
  return projective(cols, std::move(labels));
}

DensityMatrix isotropic(int d, double v) {
  require_dim(d, "isotropic");
  require_unit_interval(v, "isotropic");
  const int n = d * d;
  CMatrix m = v * max_entangled(d).projector() + (1.0 - v) / n * CMatrix::Identity(n, n);
  return DensityMatrix(std::move(m), {d, d});
}

DensityMatrix werner_qubit(double p) {
  require_unit_interval(p, "werner_qubit");
  CVector singlet = CVector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  CMatrix m = p * singlet * singlet.adjoint() + (1.0 - p) / 4.0 * CMatrix::Identity(4, 4);
  return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix maximally_mixed(Dims dims) {
  const int n = dims.total();
  return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(n), dims);
}

DensityMatrix maximally_correlated(const RMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 2) fail(ErrorKind::kDimension, "maximally_correlated: need a square table with d >= 2");
  if (m.minCoeff() < 0.0) fail(ErrorKind::kPrecondition, "maximally_correlated: entries must be nonnegative");
  const int d = static_cast<int>(m.rows());
  CMatrix rho = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i * d + i, j * d + j) = m(i, j);
  return DensityMatrix(std::move(rho), {d, d});
}

CVector random_ket_vector(int dim, Rng& rng) {
  CVector v(dim);
  for (int k = 0; k < dim; ++k) v(k) = rng.complex_normal();
  return v / v.norm();
}

Ket random_pure(Dims dims, Rng& rng) { return Ket(random_ket_vector(dims.total(), rng), dims); }

DensityMatrix random_density(Dims dims, Rng& rng) {
  const int n = dims.total();
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  m = (m + m.adjoint()).eval() / 2.0;
  return DensityMatrix(std::move(m), dims);
}

DensityMatrix random_separable(Dims dims, Rng& rng, int k_terms) {
  const int terms = k_terms > 0 ? k_terms : 2 * dims.total();
  std::vector<double> weights(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (auto& w : weights) total += (w = rng.exponential());
  const int n = dims.total();
  CMatrix m = CMatrix::Zero(n, n);
  for (int k = 0; k < terms; ++k) {
    const CVector u = random_ket_vector(dims.a, rng);
    const CVector v = random_ket_vector(dims.b, rng);
    const CVector uv = kron(u, v);
    m += (weights[static_cast<std::size_t>(k)] / total) * uv * uv.adjoint();
  }
  m = (m + m.adjoint()).eval() / 2.0;
  return DensityMatrix(std::move(m), dims);
}

CMatrix random_unitary(int dim, Rng& rng) {
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const Complex diag = r(k, k);
    if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
  }
  return q;
}

Povm random_povm(int dim, int outcomes, Rng& rng) {
  if (outcomes < 1) fail(ErrorKind::kPrecondition, "random_povm: need at least one outcome");
  std::vector<CMatrix> raw;
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (int b = 0; b < outcomes; ++b) {
    CMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
    raw.push_back(g * g.adjoint());
    sum += raw.back();
  }
  const HermEig eig = hermitian_eig(sum);
  const RVector inv_sqrt = eig.eigenvalues.cwiseSqrt().cwiseInverse();
  const CMatrix s = eig.eigenvectors * inv_sqrt.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  std::vector<CMatrix> elements;
  for (auto& g : raw) {
    CMatrix e = s * g * s;
    elements.push_back((e + e.adjoint()) / 2.0);
  }
  return Povm(std::move(elements));
}

}  // namespace swapsteer
