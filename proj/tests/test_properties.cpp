// Seeded corpora, at least 100 instances per property.

#include "doctest.h"
#include "support.hpp"
#include "swapsteer/criteria.hpp"
#include "swapsteer/sohs.hpp"

using namespace swapsteer;

namespace {

constexpr int kCorpus = 100;

Dims pick_dims(Rng& rng) {
  static const Dims options[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
  return options[rng.next_u64() % 4];
}

CMatrix random_hermitian(int n, Rng& rng) {
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return (g + g.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("eigendecomposition round-trips") {
  Rng rng(100);
  for (int k = 0; k < kCorpus; ++k) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 12);
    const CMatrix h = random_hermitian(n, rng);
    const HermEig e = hermitian_eig(h);
    CHECK(max_abs(e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint() - h) < 1e-10);
    CHECK(max_abs(e.eigenvectors.adjoint() * e.eigenvectors - CMatrix::Identity(n, n)) < 1e-10);
    CHECK((e.eigenvalues - oracle::eigenvalues(h)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("Schmidt and operator-Schmidt round-trips") {
  Rng rng(101);
  for (int k = 0; k < kCorpus; ++k) {
    const Dims dims = pick_dims(rng);
    const CVector psi = random_ket_vector(dims.total(), rng);
    const SchmidtResult s = schmidt(psi, dims);
    CVector rec = CVector::Zero(dims.total());
    for (Eigen::Index i = 0; i < s.coefficients.size(); ++i)
      rec += s.coefficients(i) * kron(CMatrix(s.left.col(i)), CMatrix(s.right.col(i)));
    CHECK(max_abs(rec - psi) < 1e-10);

    const DensityMatrix rho = random_density(dims, rng);
    const OperatorSchmidt os = operator_schmidt(rho.matrix(), dims);
    CMatrix r = CMatrix::Zero(dims.total(), dims.total());
    for (std::size_t i = 0; i < os.left_ops.size(); ++i) r += os.coefficients(Eigen::Index(i)) * kron(os.left_ops[i], os.right_ops[i]);
    CHECK(max_abs(r - rho.matrix()) < 1e-9);
    CHECK(os.coefficient_sum() == doctest::Approx(oracle::realignment_trace_norm(rho.matrix(), dims.a, dims.b)).epsilon(1e-10));
  }
}

TEST_CASE("partial transpose involution and partial trace preservation") {
  Rng rng(102);
  for (int k = 0; k < kCorpus; ++k) {
    const Dims dims = pick_dims(rng);
    const CMatrix m = random_hermitian(dims.total(), rng);
    CHECK(max_abs(partial_transpose(partial_transpose(m, dims, Subsystem::B), dims, Subsystem::B) - m) == 0.0);
    CHECK(max_abs(partial_transpose(m, dims, Subsystem::A) - oracle::partial_transpose_a(m, dims.a, dims.b)) == 0.0);
    CHECK(std::abs(partial_trace(m, dims, Subsystem::B).trace() - m.trace()) < 1e-12);
  }
}

TEST_CASE("POVM completeness") {
  Rng rng(103);
  for (int k = 0; k < kCorpus; ++k) {
    const int dim = 2 + static_cast<int>(rng.next_u64() % 8);
    const int outcomes = 2 + static_cast<int>(rng.next_u64() % 6);
    const Povm p = random_povm(dim, outcomes, rng);
    CMatrix total = CMatrix::Zero(dim, dim);
    for (const auto& e : p.elements()) {
      total += e;
      CHECK(oracle::min_eigenvalue(e) >= -1e-12);
    }
    CHECK(max_abs(total - CMatrix::Identity(dim, dim)) < 1e-10);
  }
  for (int d = 2; d <= 6; ++d) {
    for (const Povm& p : {bell_measurement(d), projective(random_unitary(d * d, rng))}) {
      CMatrix total = CMatrix::Zero(d * d, d * d);
      for (const auto& e : p.elements()) total += e;
      CHECK(max_abs(total - CMatrix::Identity(d * d, d * d)) < 1e-10);
    }
  }
}

TEST_CASE("correlation tables are normalised and match the Born-rule oracle") {
  Rng rng(104);
  for (int k = 0; k < kCorpus; ++k) {
    const Dims s1 = pick_dims(rng), s2 = pick_dims(rng);
    const int da = s1.a * s2.a, db = s1.b * s2.b;
    const Scenario sc{random_density(s1, rng), random_density(s2, rng),
                      {random_povm(da, 3, rng), random_povm(da, 3, rng)}, random_povm(db, 2 + int(rng.next_u64() % 3), rng)};
    const CorrelationTable t = correlations(sc);
    for (int x = 0; x < t.settings; ++x) {
      double total = 0.0;
      for (int a = 0; a < t.alice_outcomes; ++a)
        for (int b = 0; b < t.bob_outcomes; ++b) total += t.at(x, a, b);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_NOTHROW(t.validate(1e-10));
    if (k < 20) {
      const CorrelationTable o = oracle::correlations(sc);
      for (std::size_t i = 0; i < t.probabilities.size(); ++i) CHECK(std::abs(t.probabilities[i] - o.probabilities[i]) < 1e-13);
    }
  }
}

TEST_CASE("see-saw histories are nondecreasing") {
  Rng rng(105);
  int runs = 0;
  while (runs < kCorpus) {
    const int d = 2 + runs % 2;
    WitnessSpec spec;
    switch (runs % 3) {
      case 0: {
        const DensityMatrix rho = random_density({d, d}, rng);
        if (!ppt_test(rho).is_npt) continue;
        spec = build_npt_witness(rho);
        break;
      }
      case 1:
        spec = build_ccn_witness(d, random_unitary(d, rng), random_unitary(d, rng));
        break;
      default:
        spec = build_universal_witness(random_hermitian(d * d, rng), d);
        break;
    }
    const BoundResult r = seesaw_bound(spec, {2, 1e-12, 200, rng.next_u64()});
    for (std::size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] >= r.history[k - 1] - 1e-12);
    CHECK(r.value == doctest::Approx(sohs_value(spec, r.strategy)).epsilon(1e-12));
    CHECK(r.value <= *std::max_element(r.per_outcome.begin(), r.per_outcome.end()) + 1e-15);
    ++runs;
  }
}

TEST_CASE("eval_witness is linear in the table") {
  Rng rng(106);
  const WitnessSpec specs[] = {build_ccn_witness(2), build_npt_witness(to_density(max_entangled(3))),
                               build_universal_witness(random_hermitian(4, rng), 2)};
  for (int k = 0; k < kCorpus; ++k) {
    const WitnessSpec& spec = specs[k % 3];
    auto random_table = [&] {
      CorrelationTable t(spec.settings(), spec.alice_outcomes(), spec.bob_outcomes);
      for (auto& p : t.probabilities) p = rng.uniform();
      t.bob_marginal.resize(std::size_t(spec.bob_outcomes));
      for (auto& p : t.bob_marginal) p = rng.uniform();
      return t;
    };
    const CorrelationTable p = random_table(), q = random_table();
    const double t = rng.uniform();
    CorrelationTable mix = p;
    for (std::size_t i = 0; i < mix.probabilities.size(); ++i) mix.probabilities[i] = t * p.probabilities[i] + (1 - t) * q.probabilities[i];
    for (std::size_t i = 0; i < mix.bob_marginal.size(); ++i) mix.bob_marginal[i] = t * p.bob_marginal[i] + (1 - t) * q.bob_marginal[i];
    CHECK(eval_witness(spec, mix) == doctest::Approx(t * eval_witness(spec, p) + (1 - t) * eval_witness(spec, q)).epsilon(1e-12));
  }
}

TEST_CASE("universal witnesses satisfy the product-state identity") {
  Rng rng(107);
  for (int k = 0; k < kCorpus; ++k) {
    const int d = 2 + k % 2;
    const CMatrix w = random_hermitian(d * d, rng);
    const WitnessSpec spec = build_universal_witness(w, d);
    CHECK(spec.provenance.max_imag_residue < 1e-9);
    const CVector a = random_ket_vector(d, rng), b = random_ket_vector(d, rng);
    const CVector psi = kron(CMatrix(a), CMatrix(b));
    const double expect = -(psi.adjoint() * w * psi)(0, 0).real();
    CHECK(sohs_value(spec, {a, b, 0}) == doctest::Approx(expect).epsilon(1e-8));
  }
}
