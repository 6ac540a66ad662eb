#include "swapsteer/network.hpp"

#include <cmath>
#include <sstream>

#include "swapsteer/criteria.hpp"

namespace swapsteer {
namespace {

constexpr double kDust = 1e-14;
constexpr double kNullEvent = 1e-12;

// Index of (a1, a2, b1, b2) in either layout.
struct Layout {
  int da1, db1, da2, db2;

  int source_order(int a1, int b1, int a2, int b2) const { return ((a1 * db1 + b1) * da2 + a2) * db2 + b2; }
  int scenario_order(int a1, int b1, int a2, int b2) const { return ((a1 * da2 + a2) * db1 + b1) * db2 + b2; }
};

void require_dims(const CMatrix& m, Dims s1, Dims s2, const char* what) {
  const int n = s1.total() * s2.total();
  if (m.rows() != n || m.cols() != n) {
    fail(ErrorKind::kDimension, std::string(what) + ": operator size does not match source dims");
  }
}

template <typename From, typename To>
CMatrix permute(const CMatrix& m, const Layout& l, From from, To to) {
  CMatrix out(m.rows(), m.cols());
  for (int a1 = 0; a1 < l.da1; ++a1)
    for (int b1 = 0; b1 < l.db1; ++b1)
      for (int a2 = 0; a2 < l.da2; ++a2)
        for (int b2 = 0; b2 < l.db2; ++b2) {
          const int r_from = from(a1, b1, a2, b2), r_to = to(a1, b1, a2, b2);
          for (int c1 = 0; c1 < l.da1; ++c1)
            for (int e1 = 0; e1 < l.db1; ++e1)
              for (int c2 = 0; c2 < l.da2; ++c2)
                for (int e2 = 0; e2 < l.db2; ++e2) out(r_to, to(c1, e1, c2, e2)) = m(r_from, from(c1, e1, c2, e2));
        }
  return out;
}

void require_square(const WitnessSpec& spec, const DensityMatrix& rho, const char* what) {
  if (rho.dims().a != spec.d || rho.dims().b != spec.d) {
    std::ostringstream os;
    os << what << ": state dims " << detail::dims_str(rho.dims()) << " do not match witness dimension d = " << spec.d;
    fail(ErrorKind::kDimension, os.str());
  }
}

}  // namespace

void Scenario::validate() const {
  const int alice_dim = rho1.dims().a * rho2.dims().a;
  const int bob_dim = rho1.dims().b * rho2.dims().b;
  for (const auto& m : alice)
    if (m.dim() != alice_dim) fail(ErrorKind::kDimension, "scenario: Alice POVM size does not match dA1 * dA2 = " + std::to_string(alice_dim));
  if (bob.dim() != bob_dim) fail(ErrorKind::kDimension, "scenario: Bob POVM size does not match dB1 * dB2 = " + std::to_string(bob_dim));
}

CMatrix permute_to_scenario(const CMatrix& product, Dims s1, Dims s2) {
  require_dims(product, s1, s2, "permute_to_scenario");
  const Layout l{s1.a, s1.b, s2.a, s2.b};
  return permute(
      product, l, [&](int a1, int b1, int a2, int b2) { return l.source_order(a1, b1, a2, b2); },
      [&](int a1, int b1, int a2, int b2) { return l.scenario_order(a1, b1, a2, b2); });
}

CMatrix permute_from_scenario(const CMatrix& scenario_op, Dims s1, Dims s2) {
  require_dims(scenario_op, s1, s2, "permute_from_scenario");
  const Layout l{s1.a, s1.b, s2.a, s2.b};
  return permute(
      scenario_op, l, [&](int a1, int b1, int a2, int b2) { return l.scenario_order(a1, b1, a2, b2); },
      [&](int a1, int b1, int a2, int b2) { return l.source_order(a1, b1, a2, b2); });
}

CMatrix alice_conditional(const DensityMatrix& rho1, const DensityMatrix& rho2, const CMatrix& bob_element) {
  const int da1 = rho1.dims().a, db1 = rho1.dims().b, da2 = rho2.dims().a, db2 = rho2.dims().b;
  if (bob_element.rows() != db1 * db2 || bob_element.cols() != db1 * db2) {
    fail(ErrorKind::kDimension, "alice_conditional: Bob element size does not match dB1 * dB2");
  }
  const CMatrix& r1 = rho1.matrix();
  const CMatrix& r2 = rho2.matrix();
  // sigma[(a1 a2), (a1' a2')] = sum N[(c1 c2), (e1 e2)] r1[(a1 e1), (a1' c1)] r2[(a2 e2), (a2' c2)]
  // Stage 1: y[a1, a1', c2, e2] = sum_{c1, e1} N[(c1 c2), (e1 e2)] r1[(a1 e1), (a1' c1)].
  std::vector<Complex> y(static_cast<std::size_t>(da1) * da1 * db2 * db2, Complex(0.0));
  auto yi = [&](int a, int ap, int c2, int e2) {
    return ((static_cast<std::size_t>(a) * da1 + ap) * db2 + c2) * db2 + e2;
  };
  for (int a = 0; a < da1; ++a)
    for (int ap = 0; ap < da1; ++ap)
      for (int c1 = 0; c1 < db1; ++c1)
        for (int e1 = 0; e1 < db1; ++e1) {
          const Complex r = r1(a * db1 + e1, ap * db1 + c1);
          if (r == Complex(0.0)) continue;
          for (int c2 = 0; c2 < db2; ++c2)
            for (int e2 = 0; e2 < db2; ++e2) y[yi(a, ap, c2, e2)] += r * bob_element(c1 * db2 + c2, e1 * db2 + e2);
        }
  // Stage 2: contract with r2 over (c2, e2).
  const int da = da1 * da2;
  CMatrix sigma = CMatrix::Zero(da, da);
  for (int a = 0; a < da1; ++a)
    for (int ap = 0; ap < da1; ++ap)
      for (int c2 = 0; c2 < db2; ++c2)
        for (int e2 = 0; e2 < db2; ++e2) {
          const Complex t = y[yi(a, ap, c2, e2)];
          if (t == Complex(0.0)) continue;
          for (int a2 = 0; a2 < da2; ++a2)
            for (int ap2 = 0; ap2 < da2; ++ap2) sigma(a * da2 + a2, ap * da2 + ap2) += t * r2(a2 * db2 + e2, ap2 * db2 + c2);
        }
  return sigma;
}

CorrelationTable correlations(const Scenario& s) {
  s.validate();
  const int settings = static_cast<int>(s.alice.size());
  const int alice_outcomes = settings == 0 ? 0 : static_cast<int>(s.alice.front().size());
  for (const auto& m : s.alice)
    if (static_cast<int>(m.size()) != alice_outcomes) fail(ErrorKind::kDimension, "correlations: Alice settings differ in outcome count");
  const int bob_outcomes = static_cast<int>(s.bob.size());
  CorrelationTable table(settings, alice_outcomes, bob_outcomes);
  table.bob_marginal.assign(static_cast<std::size_t>(bob_outcomes), 0.0);

  auto clip = [](double p) { return std::abs(p) < kDust ? 0.0 : p; };
  for (int b = 0; b < bob_outcomes; ++b) {
    const CMatrix sigma = alice_conditional(s.rho1, s.rho2, s.bob[static_cast<std::size_t>(b)]);
    table.bob_marginal[static_cast<std::size_t>(b)] = clip(sigma.trace().real());
    for (int x = 0; x < settings; ++x)
      for (int a = 0; a < alice_outcomes; ++a) {
        const CMatrix& m = s.alice[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
        table.at(x, a, b) = clip(m.transpose().cwiseProduct(sigma).sum().real());
      }
  }
  return table;
}

PostSelection swap_postselect(const DensityMatrix& rho1, const DensityMatrix& rho2, const CMatrix& bob_element) {
  const CMatrix sigma = alice_conditional(rho1, rho2, bob_element);
  const double p = sigma.trace().real();
  if (p < kNullEvent) {
    std::ostringstream os;
    os << "swap_postselect: post-selection on a null event (probability " << p << ")";
    fail(ErrorKind::kPrecondition, os.str());
  }
  CMatrix state = sigma / p;
  state = (state + state.adjoint()).eval() / 2.0;
  return {DensityMatrix(std::move(state), {rho1.dims().a, rho2.dims().a}), p};
}

Povm ideal_bob(const WitnessSpec& spec) {
  const int d = spec.d;
  const CMatrix id = CMatrix::Identity(d * d, d * d);
  switch (spec.family) {
    case WitnessFamily::kNpt: {
      // M0 = V^dagger_{B1} |phi+><phi+| V_{B1}
      const CMatrix vb = kron(spec.provenance.v, CMatrix::Identity(d, d));
      const CMatrix m0 = vb.adjoint() * max_entangled(d).projector() * vb;
      return Povm({m0, id - m0}, {"0", "1"});
    }
    case WitnessFamily::kCcn: {
      // Complex-conjugate Bell measurement, rotated by V' on B1.
      std::vector<CMatrix> elements;
      const Povm bell = bell_measurement(d);
      for (const auto& e : bell.elements()) elements.push_back(e.conjugate());
      return Povm(std::move(elements), bell.labels()).conjugated(kron(spec.provenance.vprime, CMatrix::Identity(d, d)));
    }
    case WitnessFamily::kUniversal: {
      const CMatrix m0 = max_entangled(d).projector();
      return Povm({m0, id - m0}, {"0", "1"});
    }
  }
  fail(ErrorKind::kPrecondition, "ideal_bob: unknown family");
}

IdealStrategy ideal_strategy(const WitnessSpec& spec, const DensityMatrix& rho) {
  require_square(spec, rho, "ideal_strategy");
  const int d = spec.d;
  const double d2 = static_cast<double>(d) * d;
  Scenario scenario{rho, to_density(max_entangled(d)), spec.alice, ideal_bob(spec)};
  double predicted = 0.0;
  switch (spec.family) {
    case WitnessFamily::kNpt: {
      const CVector& eta = spec.provenance.eta;
      const CMatrix w = partial_transpose(CMatrix(eta * eta.adjoint()), rho.dims(), Subsystem::A);
      predicted = -(w * rho.matrix()).trace().real() / d2;
      break;
    }
    case WitnessFamily::kCcn: {
      const CMatrix uv = kron(spec.provenance.uprime, spec.provenance.vprime);
      const CMatrix rotated = uv * rho.matrix() * uv.adjoint();
      predicted = (max_entangled(d).projector() * rotated).trace().real();
      break;
    }
    case WitnessFamily::kUniversal:
      predicted = -(spec.provenance.w * rho.matrix()).trace().real() / d2;
      break;
  }
  return {std::move(scenario), predicted};
}

double simulate_value(const WitnessSpec& spec, const Scenario& s) { return eval_witness(spec, correlations(s)); }

double separable_source_check(const WitnessSpec& spec, const DensityMatrix& sep_state, SourceSlot which,
                              const DensityMatrix& other_state, const Povm& bob) {
  require_square(spec, sep_state, "separable_source_check");
  require_square(spec, other_state, "separable_source_check");
  if (static_cast<int>(bob.size()) != spec.bob_outcomes) {
    fail(ErrorKind::kDimension, "separable_source_check: Bob POVM outcome count does not match the witness");
  }
  const bool first = which == SourceSlot::kFirst;
  Scenario s{first ? sep_state : other_state, first ? other_state : sep_state, spec.alice, bob};
  return simulate_value(spec, s);
}

}  // namespace swapsteer
