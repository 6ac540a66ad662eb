#include "swapsteer/sohs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <numbers>
#include <sstream>

#include "swapsteer/network.hpp"

namespace swapsteer {
namespace {

constexpr double kGridBudget = 2e9;

void require_shape(const WitnessSpec& spec, const ProductStrategy& s) {
  if (s.psi1.size() != spec.d || s.psi2.size() != spec.d) {
    fail(ErrorKind::kDimension, "sohs_value: hidden states must live on C^" + std::to_string(spec.d));
  }
  if (s.bob_response < 0 || s.bob_response >= spec.bob_outcomes) {
    fail(ErrorKind::kDimension, "sohs_value: Bob response " + std::to_string(s.bob_response) + " out of range");
  }
}

double expectation(const CMatrix& c, const CVector& psi1, const CVector& psi2) {
  const CVector psi = kron(CMatrix(psi1), CMatrix(psi2));
  return (psi.adjoint() * c * psi)(0, 0).real();
}

// Operator on A1 left after contracting A2 with psi2, and vice versa.
CMatrix contract_second(const CMatrix& c, const CVector& psi2, int d) {
  CMatrix e = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Complex t(0.0);
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) t += std::conj(psi2(k)) * c(i * d + k, j * d + l) * psi2(l);
      e(i, j) = t;
    }
  return (e + e.adjoint()) / 2.0;
}

CMatrix contract_first(const CMatrix& c, const CVector& psi1, int d) {
  CMatrix e = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      Complex t(0.0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) t += std::conj(psi1(i)) * c(i * d + k, j * d + l) * psi1(j);
      e(k, l) = t;
    }
  return (e + e.adjoint()) / 2.0;
}

CVector top_eigenvector(const CMatrix& m) {
  const HermEig eig = hermitian_eig(m);
  return eig.eigenvectors.col(eig.eigenvectors.cols() - 1);
}

// Best outcome for fixed hidden states; ties go to the lowest index.
std::pair<int, double> best_outcome(const std::vector<CMatrix>& ops, const CVector& psi1, const CVector& psi2) {
  int best = 0;
  double value = expectation(ops[0], psi1, psi2);
  for (std::size_t b = 1; b < ops.size(); ++b) {
    const double v = expectation(ops[b], psi1, psi2);
    if (v > value) {
      value = v;
      best = static_cast<int>(b);
    }
  }
  return {best, value};
}

struct RestartResult {
  ProductStrategy strategy;
  double value = 0.0;
  std::vector<double> history;
  bool converged = false;
};

RestartResult run_restart(const std::vector<CMatrix>& ops, int d, const SeesawOptions& opt, Rng rng) {
  RestartResult r;
  r.strategy.psi1 = random_ket_vector(d, rng);
  r.strategy.psi2 = random_ket_vector(d, rng);
  auto [b, value] = best_outcome(ops, r.strategy.psi1, r.strategy.psi2);
  r.strategy.bob_response = b;
  r.history.push_back(value);
  for (int it = 0; it < opt.max_iter; ++it) {
    const CMatrix& c = ops[static_cast<std::size_t>(r.strategy.bob_response)];
    r.strategy.psi1 = top_eigenvector(contract_second(c, r.strategy.psi2, d));
    r.strategy.psi2 = top_eigenvector(contract_first(c, r.strategy.psi1, d));
    std::tie(b, value) = best_outcome(ops, r.strategy.psi1, r.strategy.psi2);
    r.strategy.bob_response = b;
    const double improvement = value - r.history.back();
    r.history.push_back(value);
    if (improvement < opt.tol) {
      r.converged = true;
      break;
    }
  }
  r.value = r.history.back();
  return r;
}

// Grid of pure states on C^2 or C^3, global phase removed.
std::vector<CVector> grid_states(int d, int res) {
  std::vector<CVector> out;
  const double pi = std::numbers::pi;
  if (d == 2) {
    for (int k = 0; k < res; ++k)
      for (int m = 0; m < res; ++m) {
        const double theta = pi * k / (res - 1), phi = 2.0 * pi * m / res;
        CVector v(2);
        v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
        out.push_back(std::move(v));
      }
    return out;
  }
  for (int ka = 0; ka < res; ++ka)
    for (int kb = 0; kb < res; ++kb)
      for (int m1 = 0; m1 < res; ++m1)
        for (int m2 = 0; m2 < res; ++m2) {
          const double a = 0.5 * pi * ka / (res - 1), b = 0.5 * pi * kb / (res - 1);
          CVector v(3);
          v << std::cos(a), std::polar(std::sin(a) * std::cos(b), 2.0 * pi * m1 / res),
              std::polar(std::sin(a) * std::sin(b), 2.0 * pi * m2 / res);
          out.push_back(std::move(v));
        }
  return out;
}

std::size_t grid_size(int d, int res) {
  return d == 2 ? static_cast<std::size_t>(res) * res : static_cast<std::size_t>(res) * res * res * res;
}

}  // namespace

double sohs_value(const WitnessSpec& spec, const ProductStrategy& strategy) {
  require_shape(spec, strategy);
  const auto ops = outcome_operators(spec);
  return expectation(ops[static_cast<std::size_t>(strategy.bob_response)], strategy.psi1, strategy.psi2);
}

BoundResult seesaw_bound(const WitnessSpec& spec, const SeesawOptions& opt) {
  if (opt.restarts < 1) fail(ErrorKind::kValidation, "seesaw_bound: restarts must be at least 1");
  const auto ops = outcome_operators(spec);
  const Rng root(opt.seed);
  BoundResult out;
  out.method = "seesaw";
  bool have = false;
  for (int r = 0; r < opt.restarts; ++r) {
    RestartResult rr = run_restart(ops, spec.d, opt, root.fork(static_cast<std::uint64_t>(r)));
    if (!have || rr.value > out.value) {
      have = true;
      out.value = rr.value;
      out.strategy = std::move(rr.strategy);
      out.converged = rr.converged;
      out.iterations = static_cast<int>(rr.history.size()) - 1;
      out.history = std::move(rr.history);
    }
  }
  out.restarts_used = opt.restarts;
  for (const auto& c : ops) out.per_outcome.push_back(expectation(c, out.strategy.psi1, out.strategy.psi2));
  // Report the value of the returned strategy exactly.
  out.value = out.per_outcome[static_cast<std::size_t>(out.strategy.bob_response)];
  return out;
}

double grid_cost(int d, int resolution, int bob_outcomes) {
  const double n = static_cast<double>(grid_size(d, resolution));
  return n * n * bob_outcomes;
}

double grid_bound(const WitnessSpec& spec, int res) {
  const int d = spec.d;
  if (d > 3 || d < 2) {
    fail(ErrorKind::kResource, "grid_bound: exhaustive grid is limited to d = 2 or 3 (got d = " + std::to_string(d) +
                                   "); the state grid grows as resolution^(2d-2) per subsystem");
  }
  if (res < 8) fail(ErrorKind::kResource, "grid_bound: resolution must be at least 8");
  const double cost = grid_cost(d, res, spec.bob_outcomes);
  if (cost > kGridBudget) {
    std::ostringstream os;
    os << "grid_bound: " << cost << " product-state evaluations exceed the budget of " << kGridBudget;
    fail(ErrorKind::kResource, os.str());
  }
  const auto ops = outcome_operators(spec);
  const auto states = grid_states(d, res);
  const int d2 = d * d;
  // Outer products conj(psi_k) psi_l, flattened, so each evaluation is a dot product.
  std::vector<CVector> outers;
  outers.reserve(states.size());
  for (const auto& s : states) {
    CVector o(d2);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) o(k * d + l) = std::conj(s(k)) * s(l);
    outers.push_back(std::move(o));
  }
  double best = -std::numeric_limits<double>::infinity();
  std::vector<CVector> reduced(ops.size(), CVector(d2));
  for (const auto& psi1 : states) {
    for (std::size_t b = 0; b < ops.size(); ++b) {
      const CMatrix e = contract_first(ops[b], psi1, d);
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) reduced[b](k * d + l) = e(k, l);
    }
    for (const auto& o : outers)
      for (const auto& r : reduced) best = std::max(best, (r.transpose() * o)(0, 0).real());
  }
  return best;
}

double ccn_saturating_value(const WitnessSpec& spec) {
  if (spec.family != WitnessFamily::kCcn) fail(ErrorKind::kPrecondition, "ccn_saturating_value: requires a CCN witness");
  const int d = spec.d;
  CMatrix classical = CMatrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k) classical(k * d + k, k * d + k) = 1.0 / d;
  const CMatrix ua = kron(CMatrix(spec.provenance.uprime.adjoint()), CMatrix::Identity(d, d));
  const DensityMatrix rho1(ua * classical * ua.adjoint(), {d, d});
  const DensityMatrix rho2(classical, {d, d});

  std::vector<CMatrix> bob(static_cast<std::size_t>(d * d), CMatrix::Zero(d * d, d * d));
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      const int announced = (k - l + d) % d;  // (l1, l2) = (0, k - l)
      bob[static_cast<std::size_t>(announced)](k * d + l, k * d + l) = 1.0;
    }
  const Scenario s{rho1, rho2, spec.alice, Povm(std::move(bob))};
  return simulate_value(spec, s);
}

}  // namespace swapsteer
