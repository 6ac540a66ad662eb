#include "doctest.h"
#include "support.hpp"
#include "swapsteer/criteria.hpp"
#include "swapsteer/sohs.hpp"

using namespace swapsteer;

namespace {

bool nondecreasing(const std::vector<double>& h) {
  for (std::size_t k = 1; k < h.size(); ++k)
    if (h[k] < h[k - 1] - 1e-12) return false;
  return true;
}

// Largest Schmidt coefficient squared of the Bell state behind each CCN
// outcome is 1/d, so sup over product states of one outcome is 1/d.
double best_overlap_oracle(const CMatrix& projector, int d) {
  const HermEig e = hermitian_eig(projector);
  const CVector top = e.eigenvectors.col(e.eigenvectors.cols() - 1);
  Eigen::JacobiSVD<CMatrix> svd(top.reshaped(d, d));
  return svd.singularValues()(0) * svd.singularValues()(0);
}

}  // namespace

TEST_CASE("sohs_value") {
  const WitnessSpec ccn = build_ccn_witness(2);
  Rng rng(1);
  for (int k = 0; k < 10; ++k) {
    ProductStrategy s{random_ket_vector(2, rng), random_ket_vector(2, rng), int(rng.next_u64() % 4)};
    const CVector psi = kron(CMatrix(s.psi1), CMatrix(s.psi2));
    const double expect = (psi.adjoint() * ccn.alice[0][std::size_t(s.bob_response)] * psi)(0, 0).real();
    CHECK(sohs_value(ccn, s) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(sohs_value(ccn, s) <= 0.5 + 1e-12);
  }

  const WitnessSpec npt = build_npt_witness(to_density(max_entangled(2)));
  for (int k = 0; k < 10; ++k) {
    const ProductStrategy s{random_ket_vector(2, rng), random_ket_vector(2, rng), 0};
    CHECK(sohs_value(npt, s) <= 1e-12);
  }

  WitnessSpec zero = ccn;
  zero.coefficients.clear();
  CHECK(sohs_value(zero, {random_ket_vector(2, rng), random_ket_vector(2, rng), 1}) == 0.0);
  CHECK_THROWS_AS(sohs_value(ccn, {random_ket_vector(3, rng), random_ket_vector(2, rng), 0}), Error);
  CHECK_THROWS_AS(sohs_value(ccn, {random_ket_vector(2, rng), random_ket_vector(2, rng), 4}), Error);
}

TEST_CASE("see-saw reaches the analytic bounds") {
  const BoundResult ccn = seesaw_bound(build_ccn_witness(2));
  CHECK(ccn.value == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(ccn.converged);
  CHECK(nondecreasing(ccn.history));
  CHECK(ccn.value == doctest::Approx(sohs_value(build_ccn_witness(2), ccn.strategy)).epsilon(1e-14));
  CHECK(best_overlap_oracle(build_ccn_witness(2).alice[0][0], 2) == doctest::Approx(0.5).epsilon(1e-12));

  const BoundResult npt = seesaw_bound(build_npt_witness(to_density(max_entangled(2))));
  CHECK(std::abs(npt.value) < 1e-7);

  const CMatrix w = npt_entanglement_witness(to_density(max_entangled(2)));
  const BoundResult uni = seesaw_bound(build_universal_witness(w, 2));
  CHECK(uni.value <= 1e-6);
  CHECK(uni.value >= -1e-6);
}

TEST_CASE("see-saw is reproducible and restart-stable") {
  const WitnessSpec spec = build_ccn_witness(3);
  const BoundResult a = seesaw_bound(spec, {8, 1e-10, 500, 99});
  const BoundResult b = seesaw_bound(spec, {8, 1e-10, 500, 99});
  CHECK(a.value == b.value);
  CHECK(max_abs(a.strategy.psi1 - b.strategy.psi1) == 0.0);

  const WitnessSpec s2 = build_ccn_witness(2);
  std::vector<double> finals;
  for (std::uint64_t seed = 0; seed < 20; ++seed) finals.push_back(seesaw_bound(s2, {1, 1e-12, 500, seed}).value);
  for (double v : finals) CHECK(v == doctest::Approx(finals.front()).epsilon(1e-5));
  CHECK_THROWS_AS(seesaw_bound(s2, {0, 1e-10, 500, 0}), Error);
}

TEST_CASE("grid oracle") {
  CHECK(grid_bound(build_ccn_witness(2), 48) == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(grid_bound(build_npt_witness(to_density(max_entangled(2))), 48) <= 1e-9);
  CHECK(grid_bound(build_ccn_witness(3), 8) <= 1.0 / 3.0 + 1e-9);

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const DensityMatrix rho = random_density({2, 2}, seed);
    if (!ppt_test(rho).is_npt) continue;
    const WitnessSpec spec = build_universal_witness(npt_entanglement_witness(rho), 2);
    const double grid = grid_bound(spec, 24);
    const double see = seesaw_bound(spec, {4, 1e-10, 500, seed}).value;
    CHECK(std::abs(grid - see) < 5e-3);
  }

  for (int bad_d : {4, 5}) {
    try {
      grid_bound(build_ccn_witness(bad_d), 48);
      FAIL("grid accepted a large dimension");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kResource);
    }
  }
  CHECK_THROWS_AS(grid_bound(build_ccn_witness(2), 4), Error);
  CHECK_THROWS_AS(grid_bound(build_ccn_witness(3), 48), Error);  // cost budget
}

TEST_CASE("saturating model for the CCN family") {
  for (int d = 2; d <= 5; ++d) CHECK(ccn_saturating_value(build_ccn_witness(d)) == doctest::Approx(1.0 / d).epsilon(1e-10));
  Rng rng(3);
  const CMatrix u = random_unitary(3, rng), v = random_unitary(3, rng);
  CHECK(ccn_saturating_value(build_ccn_witness(3, u, v)) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK_THROWS_AS(ccn_saturating_value(build_npt_witness(to_density(max_entangled(2)))), Error);
}
