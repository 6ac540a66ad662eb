#include "doctest.h"
#include "support.hpp"
#include "swapsteer/states.hpp"

using namespace swapsteer;

namespace {

CMatrix random_hermitian(int n, Rng& rng) {
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return (g + g.adjoint()) / 2.0;
}

CMatrix random_matrix(int r, int c, Rng& rng) {
  CMatrix g(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) g(i, j) = rng.complex_normal();
  return g;
}

}  // namespace

TEST_CASE("kron: identities and block layout") {
  CHECK(max_abs(kron(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)) - CMatrix::Identity(4, 4)) == 0.0);

  Rng rng(1);
  const CMatrix a = random_matrix(2, 2, rng), b = random_matrix(2, 2, rng), c = random_matrix(2, 2, rng),
                d = random_matrix(2, 2, rng);
  CHECK(max_abs(kron(a, b) * kron(c, d) - kron(CMatrix(a * c), CMatrix(b * d))) < 1e-12);

  const CMatrix zx = kron(gen_pauli_z(2), gen_pauli_x(2));
  const CMatrix x = gen_pauli_x(2);
  CHECK(max_abs(zx.block(0, 0, 2, 2) - x) < 1e-15);
  CHECK(max_abs(zx.block(2, 2, 2, 2) + x) < 1e-15);
  CHECK(max_abs(zx.block(0, 2, 2, 2)) == 0.0);
}

TEST_CASE("partial transpose") {
  Rng rng(2);
  const CMatrix s = random_hermitian(2, rng), t = random_hermitian(2, rng);
  CHECK(max_abs(partial_transpose(kron(s, t), {2, 2}, Subsystem::A) - kron(CMatrix(s.transpose()), t)) < 1e-14);
  CHECK(max_abs(partial_transpose(kron(s, t), {2, 2}, Subsystem::B) - kron(s, CMatrix(t.transpose()))) < 1e-14);

  const RVector ev = oracle::eigenvalues(partial_transpose(oracle::phi_plus(2), {2, 2}, Subsystem::A));
  CHECK(ev(0) == doctest::Approx(-0.5).epsilon(1e-12));
  for (int k = 1; k < 4; ++k) CHECK(ev(k) == doctest::Approx(0.5).epsilon(1e-12));

  const CMatrix m = random_matrix(9, 9, rng);
  CHECK(max_abs(partial_transpose(partial_transpose(m, {3, 3}, Subsystem::A), {3, 3}, Subsystem::A) - m) < 1e-12);

  const CMatrix r = random_matrix(6, 6, rng);
  CHECK(max_abs(partial_transpose(r, {2, 3}, Subsystem::A) - oracle::partial_transpose_a(r, 2, 3)) == 0.0);
  CHECK_THROWS_AS(partial_transpose(r, {2, 2}, Subsystem::A), Error);
}

TEST_CASE("partial trace") {
  const CMatrix rb = partial_trace(oracle::phi_plus(2), {2, 2}, Subsystem::B);
  CHECK(max_abs(rb - CMatrix::Identity(2, 2) / 2.0) < 1e-15);

  Rng rng(3);
  const CMatrix s = random_matrix(2, 2, rng), t = random_matrix(3, 3, rng);
  CHECK(max_abs(partial_trace(kron(s, t), {2, 3}, Subsystem::A) - s.trace() * t) < 1e-12);
  CHECK(max_abs(partial_trace(kron(s, t), {2, 3}, Subsystem::B) - t.trace() * s) < 1e-12);
  const CMatrix m = random_matrix(6, 6, rng);
  CHECK(std::abs(partial_trace(m, {2, 3}, Subsystem::A).trace() - m.trace()) < 1e-12);
  CHECK_THROWS_AS(partial_trace(m, {3, 3}, Subsystem::B), Error);
}

TEST_CASE("hermitian_eig against Eigen's solver") {
  RVector diag(2);
  diag << 3.0, 1.0;
  const HermEig e0 = hermitian_eig(CMatrix(diag.cast<Complex>().asDiagonal()));
  CHECK(e0.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(e0.eigenvalues(1) == doctest::Approx(3.0));

  Rng rng(4);
  for (int n : {1, 2, 3, 5, 9, 16}) {
    const CMatrix h = random_hermitian(n, rng);
    const HermEig e = hermitian_eig(h);
    CHECK((e.eigenvalues - oracle::eigenvalues(h)).cwiseAbs().maxCoeff() < 1e-10);
    const CMatrix rec = e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
    CHECK(max_abs(rec - h) < 1e-10);
    CHECK(max_abs(e.eigenvectors.adjoint() * e.eigenvectors - CMatrix::Identity(n, n)) < 1e-10);
  }

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(bad), Error);
}

TEST_CASE("hermitian_eig is deterministic on degenerate spectra") {
  const CMatrix pt = partial_transpose(oracle::phi_plus(2), {2, 2}, Subsystem::A);
  const HermEig a = hermitian_eig(pt);
  const HermEig b = hermitian_eig(CMatrix(pt));
  CHECK(max_abs(a.eigenvectors - b.eigenvectors) == 0.0);
  // Negative eigenvector is the singlet with a real positive leading entry.
  CHECK(a.eigenvectors(1, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(a.eigenvectors(2, 0).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
  // Identity: eigenvectors come back as the standard basis.
  CHECK(max_abs(hermitian_eig(CMatrix(CMatrix::Identity(4, 4))).eigenvectors - CMatrix::Identity(4, 4)) < 1e-14);
}

TEST_CASE("hermitian_eig in long double") {
  using CM = CMatrixT<long double>;
  CM h(2, 2);
  h << 2.0L, std::complex<long double>(0, 1), std::complex<long double>(0, -1), 2.0L;
  const auto e = hermitian_eig(h);
  CHECK(static_cast<double>(e.eigenvalues(0)) == doctest::Approx(1.0));
  CHECK(static_cast<double>(e.eigenvalues(1)) == doctest::Approx(3.0));
}

TEST_CASE("Schmidt decomposition") {
  Rng rng(5);
  for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 2}, Dims{4, 4}}) {
    const CVector psi = random_ket_vector(dims.total(), rng);
    const SchmidtResult s = schmidt(psi, dims);
    CHECK(s.coefficients.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
    for (Eigen::Index k = 1; k < s.coefficients.size(); ++k) CHECK(s.coefficients(k - 1) >= s.coefficients(k));
    CVector rec = CVector::Zero(dims.total());
    for (Eigen::Index k = 0; k < s.coefficients.size(); ++k)
      rec += s.coefficients(k) * kron(CMatrix(s.left.col(k)), CMatrix(s.right.col(k)));
    CHECK(max_abs(rec - psi) < 1e-10);
  }
  CHECK_THROWS_AS(schmidt(CVector(CVector::Ones(4)), {2, 2}), Error);
}

TEST_CASE("operator Schmidt decomposition and realignment") {
  Rng rng(6);
  for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    const CMatrix rho = random_density(dims, rng).matrix();
    const OperatorSchmidt os = operator_schmidt(rho, dims);
    CMatrix rec = CMatrix::Zero(rho.rows(), rho.cols());
    for (std::size_t k = 0; k < os.left_ops.size(); ++k) rec += os.coefficients(Eigen::Index(k)) * kron(os.left_ops[k], os.right_ops[k]);
    CHECK(max_abs(rec - rho) < 1e-9);
    for (std::size_t i = 0; i < os.left_ops.size(); ++i)
      for (std::size_t j = 0; j < os.left_ops.size(); ++j) {
        const double delta = i == j ? 1.0 : 0.0;
        CHECK(std::abs((os.left_ops[i].adjoint() * os.left_ops[j]).trace() - delta) < 1e-9);
        CHECK(std::abs((os.right_ops[i].adjoint() * os.right_ops[j]).trace() - delta) < 1e-9);
      }
    CHECK(os.coefficient_sum() == doctest::Approx(oracle::realignment_trace_norm(rho, dims.a, dims.b)).epsilon(1e-10));
  }
}

TEST_CASE("Heisenberg-Weyl basis") {
  for (int dim : {2, 3, 4, 6}) {
    const auto basis = hw_basis(dim);
    for (int p = 0; p < dim * dim; ++p) {
      CHECK(is_unitary(basis[std::size_t(p)]));
      for (int q = 0; q < dim * dim; ++q) {
        const double expect = p == q ? dim : 0.0;
        CHECK(std::abs((basis[std::size_t(p)].adjoint() * basis[std::size_t(q)]).trace() - expect) < 1e-10);
      }
    }
    // X Z = omega^{-1} Z X
    const CMatrix x = gen_pauli_x(dim), z = gen_pauli_z(dim);
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / dim);
    CHECK(max_abs(z * x - omega * x * z) < 1e-12);
  }

  Rng rng(7);
  for (int dim : {2, 3, 4}) {
    const CMatrix w = random_hermitian(dim, rng);
    const CMatrix lambda = hw_expand(w);
    CHECK(max_abs(hw_reconstruct(lambda) - w) < 1e-12);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const Complex mirrored = lambda((dim - i) % dim, (dim - j) % dim);
        CHECK(std::abs(mirrored - hw_adjoint_phase(dim, i, j) * std::conj(lambda(i, j))) < 1e-12);
      }
  }
  CHECK_THROWS_AS(hw_basis(1), Error);
}
