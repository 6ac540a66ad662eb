#include "swapsteer/witnesses.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "swapsteer/criteria.hpp"

namespace swapsteer {
namespace {

// Coefficients below this magnitude are left out of the sparse table.
constexpr double kCoefficientFloor = 1e-14;
constexpr double kRealityTol = 1e-9;
constexpr double kGammaTol = 1e-8;

void require_square_dims(const DensityMatrix& rho, const char* what) {
  if (rho.dims().a != rho.dims().b) {
    fail(ErrorKind::kDimension, std::string(what) + ": requires equal local dimensions, got " +
                                    detail::dims_str(rho.dims()));
  }
}

CVector basis_ket(int dim, int k) {
  CVector v = CVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

// Eigenbasis of a unitary through the Hermitian pencil Re(B) + alpha Im(B).
CMatrix unitary_eigenbasis(const CMatrix& b) {
  const double alpha = 1.0 / std::numbers::pi;
  const CMatrix re = (b + b.adjoint()) / 2.0;
  const CMatrix im = (b - b.adjoint()) / Complex(0.0, 2.0);
  const HermEig eig = hermitian_eig(CMatrix(re + alpha * im));
  for (Eigen::Index k = 0; k < eig.eigenvectors.cols(); ++k) {
    const CVector v = eig.eigenvectors.col(k);
    const Complex mu = v.dot(b * v);
    if ((b * v - mu * v).norm() > 1e-9) fail(ErrorKind::kNumerical, "unitary_eigenbasis: eigenpair residual too large");
  }
  return eig.eigenvectors;
}

int gcd_label(int i, int j, int dim) { return std::gcd(std::gcd(i, j), dim); }

}  // namespace

std::string to_string(WitnessFamily family) {
  switch (family) {
    case WitnessFamily::kNpt: return "npt";
    case WitnessFamily::kCcn: return "ccn";
    case WitnessFamily::kUniversal: return "universal";
  }
  return "unknown";
}

WitnessFamily family_from_string(const std::string& name) {
  if (name == "npt" || name == "NPT") return WitnessFamily::kNpt;
  if (name == "ccn" || name == "CCN") return WitnessFamily::kCcn;
  if (name == "universal" || name == "UNIVERSAL") return WitnessFamily::kUniversal;
  fail(ErrorKind::kParse, "unknown witness family '" + name + "'");
}

CorrelationTable::CorrelationTable(int settings_, int alice_outcomes_, int bob_outcomes_)
    : settings(settings_),
      alice_outcomes(alice_outcomes_),
      bob_outcomes(bob_outcomes_),
      probabilities(static_cast<std::size_t>(settings_) * alice_outcomes_ * bob_outcomes_, 0.0) {}

void CorrelationTable::validate(double tol) const {
  if (probabilities.size() != static_cast<std::size_t>(settings) * alice_outcomes * bob_outcomes) {
    fail(ErrorKind::kValidation, "correlation table: entry count does not match its shape");
  }
  for (double p : probabilities)
    if (p < -1e-12) fail(ErrorKind::kValidation, "correlation table: negative probability " + std::to_string(p));
  for (int x = 0; x < settings; ++x) {
    double total = 0.0;
    std::vector<double> marginal(static_cast<std::size_t>(bob_outcomes), 0.0);
    for (int a = 0; a < alice_outcomes; ++a)
      for (int b = 0; b < bob_outcomes; ++b) {
        total += at(x, a, b);
        marginal[static_cast<std::size_t>(b)] += at(x, a, b);
      }
    if (std::abs(total - 1.0) > tol) {
      fail(ErrorKind::kValidation, "correlation table: setting " + std::to_string(x) + " sums to " + std::to_string(total));
    }
    if (!bob_marginal.empty()) {
      if (bob_marginal.size() != static_cast<std::size_t>(bob_outcomes)) fail(ErrorKind::kValidation, "correlation table: marginal size mismatch");
      for (int b = 0; b < bob_outcomes; ++b)
        if (std::abs(marginal[static_cast<std::size_t>(b)] - bob_marginal[static_cast<std::size_t>(b)]) > tol) {
          fail(ErrorKind::kValidation, "correlation table: Bob marginal inconsistent in setting " + std::to_string(x));
        }
    }
  }
}

// ---------------------------------------------------------------------------
// NPT family

std::vector<CVector> npt_measurement_basis(int d) {
  const int dim = d * d;
  std::vector<CVector> out;
  for (int m = 0; m < d; ++m) out.push_back(basis_ket(dim, m * d + m));
  const double r = 1.0 / std::sqrt(2.0);
  for (double sign : {1.0, -1.0})
    for (int m = 0; m < d; ++m)
      for (int n = m + 1; n < d; ++n) out.push_back(r * (basis_ket(dim, m * d + n) + sign * basis_ket(dim, n * d + m)));
  return out;
}

std::vector<std::string> npt_outcome_labels(int d) {
  std::vector<std::string> out;
  for (int m = 0; m < d; ++m) out.push_back(std::to_string(m));
  for (const char* sign : {"+", "-"})
    for (int m = 0; m < d; ++m)
      for (int n = m + 1; n < d; ++n) out.push_back(std::string(sign) + std::to_string(m) + std::to_string(n));
  return out;
}

WitnessSpec build_npt_witness(const DensityMatrix& rho) {
  require_square_dims(rho, "build_npt_witness");
  const int d = rho.dims().a;
  const int dim = d * d;
  const PptReport ppt = ppt_test(rho);
  if (!ppt.is_npt) {
    std::ostringstream os;
    os << "build_npt_witness: state is PPT (min PT eigenvalue " << ppt.min_eigenvalue << ")";
    fail(ErrorKind::kPrecondition, os.str());
  }

  const SchmidtResult sd = schmidt(ppt.eta, rho.dims());
  WitnessSpec spec;
  spec.family = WitnessFamily::kNpt;
  spec.d = d;
  spec.bob_outcomes = 2;
  spec.sohs_bound = 0.0;
  auto& prov = spec.provenance;
  prov.alpha = sd.coefficients;
  prov.u = sd.left.adjoint();
  prov.v = sd.right.adjoint();
  prov.eta = ppt.eta;
  prov.min_pt_eigenvalue = ppt.min_eigenvalue;
  // The partial transpose acts on A1, so Alice undoes the conjugate of U there.
  prov.alice_unitary = prov.u.conjugate();

  const auto basis = npt_measurement_basis(d);
  CMatrix columns(dim, dim);
  for (int k = 0; k < dim; ++k) columns.col(k) = basis[static_cast<std::size_t>(k)];
  const Povm canonical = projective(columns, npt_outcome_labels(d));
  spec.alice.push_back(canonical.conjugated(kron(prov.alice_unitary, CMatrix::Identity(d, d))));

  const RVector& alpha = prov.alpha;
  int a = 0;
  std::vector<double> table(static_cast<std::size_t>(dim), 0.0);
  for (int m = 0; m < d; ++m) table[static_cast<std::size_t>(a++)] = -alpha(m) * alpha(m);
  for (double sign : {-1.0, 1.0})  // (+, m, n) carries -alpha_m alpha_n, (-, m, n) carries +alpha_m alpha_n
    for (int m = 0; m < d; ++m)
      for (int n = m + 1; n < d; ++n) table[static_cast<std::size_t>(a++)] = sign * alpha(m) * alpha(n);
  for (int k = 0; k < dim; ++k) {
    const double c = table[static_cast<std::size_t>(k)];
    if (std::abs(c) > kCoefficientFloor) spec.coefficients.push_back({0, k, 0, c});
  }

  // sum_a c_a |delta_a><delta_a| must equal -PT_A(|eta~><eta~|), eta~ = sum alpha_i |ii>.
  CVector eta_aligned = CVector::Zero(dim);
  for (int i = 0; i < d; ++i) eta_aligned(i * d + i) = alpha(i);
  CMatrix gamma = partial_transpose(CMatrix(eta_aligned * eta_aligned.adjoint()), rho.dims(), Subsystem::A);
  for (const auto& c : spec.coefficients) gamma += c.c * canonical[static_cast<std::size_t>(c.a)];
  prov.gamma_residual = max_abs(gamma);
  if (prov.gamma_residual > kGammaTol) fail(ErrorKind::kNumerical, "build_npt_witness: coefficient identity residual too large");
  return spec;
}

// ---------------------------------------------------------------------------
// CCN family

WitnessSpec build_ccn_witness(int d, const CMatrix& uprime, const CMatrix& vprime) {
  if (d < 2) fail(ErrorKind::kPrecondition, "build_ccn_witness: d must be >= 2");
  const CMatrix u = uprime.size() == 0 ? CMatrix::Identity(d, d) : uprime;
  const CMatrix v = vprime.size() == 0 ? CMatrix::Identity(d, d) : vprime;
  if (u.rows() != d || u.cols() != d || v.rows() != d || v.cols() != d) {
    fail(ErrorKind::kDimension, "build_ccn_witness: U' and V' must be d x d");
  }
  if (!is_unitary(u) || !is_unitary(v)) fail(ErrorKind::kPrecondition, "build_ccn_witness: U' and V' must be unitary");

  WitnessSpec spec;
  spec.family = WitnessFamily::kCcn;
  spec.d = d;
  spec.bob_outcomes = d * d;
  spec.sohs_bound = 1.0 / d;
  spec.provenance.uprime = u;
  spec.provenance.vprime = v;
  spec.provenance.alice_unitary = u;
  spec.alice.push_back(bell_measurement(d).conjugated(kron(u, CMatrix::Identity(d, d))));
  for (int k = 0; k < d * d; ++k) spec.coefficients.push_back({0, k, k, 1.0});
  return spec;
}

// ---------------------------------------------------------------------------
// Universal family

std::vector<std::pair<int, int>> hw_generating_labels(int dim) {
  std::vector<std::pair<int, int>> candidates;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (i != 0 || j != 0) candidates.emplace_back(i, j);
  // Larger cyclic subgroups first (smaller gcd), then lexicographic.
  std::stable_sort(candidates.begin(), candidates.end(), [dim](const auto& x, const auto& y) {
    return gcd_label(x.first, x.second, dim) < gcd_label(y.first, y.second, dim);
  });
  std::vector<char> covered(static_cast<std::size_t>(dim) * dim, 0);
  std::vector<std::pair<int, int>> chosen;
  for (const auto& [i, j] : candidates) {
    if (covered[static_cast<std::size_t>(i * dim + j)]) continue;
    chosen.emplace_back(i, j);
    for (int k = 1; k < dim; ++k) covered[static_cast<std::size_t>((k * i % dim) * dim + (k * j % dim))] = 1;
  }
  return chosen;
}

WitnessSpec build_universal_witness(const CMatrix& w, int d) {
  if (d < 2) fail(ErrorKind::kPrecondition, "build_universal_witness: d must be >= 2");
  const int dim = d * d;
  if (w.rows() != dim || w.cols() != dim) {
    fail(ErrorKind::kDimension, "build_universal_witness: W must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  const double herm = max_abs(w - w.adjoint());
  if (herm > 1e-9) fail(ErrorKind::kPrecondition, "build_universal_witness: W is not Hermitian (" + std::to_string(herm) + ")");

  WitnessSpec spec;
  spec.family = WitnessFamily::kUniversal;
  spec.d = d;
  spec.bob_outcomes = 2;
  spec.sohs_bound = 0.0;
  auto& prov = spec.provenance;
  prov.w = w;
  prov.hw_lambda = hw_expand(w);
  prov.alice_unitary = CMatrix::Identity(d, d);
  prov.setting_labels = hw_generating_labels(dim);
  spec.c00 = -prov.hw_lambda(0, 0).real();
  prov.max_imag_residue = std::abs(prov.hw_lambda(0, 0).imag());

  // Each nonzero label belongs to the first setting whose cyclic subgroup holds it.
  std::vector<int> owner(static_cast<std::size_t>(dim) * dim, -1);
  for (std::size_t x = 0; x < prov.setting_labels.size(); ++x) {
    const auto [i, j] = prov.setting_labels[x];
    for (int k = 1; k < dim; ++k) {
      auto& o = owner[static_cast<std::size_t>((k * i % dim) * dim + (k * j % dim))];
      if (o < 0) o = static_cast<int>(x);
    }
  }

  std::vector<std::string> labels;
  for (int a = 0; a < dim; ++a) labels.push_back(std::to_string(a));
  CMatrix gamma = spec.c00 * CMatrix::Identity(dim, dim) + w;
  for (std::size_t x = 0; x < prov.setting_labels.size(); ++x) {
    const auto [gi, gj] = prov.setting_labels[x];
    const CMatrix basis = unitary_eigenbasis(hw_element(dim, gi, gj));
    const Povm setting = projective(basis, labels);
    // Diagonal of sum_{L owned by x} lambda_L B_L in this eigenbasis.
    CVector diag = CVector::Zero(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        if (owner[static_cast<std::size_t>(i * dim + j)] != static_cast<int>(x)) continue;
        const Complex lambda = prov.hw_lambda(i, j);
        if (lambda == Complex(0.0)) continue;
        const CMatrix rotated = basis.adjoint() * hw_element(dim, i, j) * basis;
        diag += lambda * rotated.diagonal();
      }
    for (int a = 0; a < dim; ++a) {
      prov.max_imag_residue = std::max(prov.max_imag_residue, std::abs(diag(a).imag()));
      const double c = -diag(a).real();
      if (std::abs(c) > kCoefficientFloor) {
        spec.coefficients.push_back({static_cast<int>(x), a, 0, c});
        gamma += c * setting[static_cast<std::size_t>(a)];
      }
    }
    spec.alice.push_back(setting);
  }
  if (prov.max_imag_residue > kRealityTol) {
    fail(ErrorKind::kNumerical, "build_universal_witness: coefficient imaginary residue " + std::to_string(prov.max_imag_residue));
  }
  // gamma = c00 I + sum c P + W must vanish entrywise (matrix-unit basis).
  prov.gamma_residual = max_abs(gamma);
  if (prov.gamma_residual > kGammaTol) {
    fail(ErrorKind::kNumerical, "build_universal_witness: Gamma identity residual " + std::to_string(prov.gamma_residual));
  }
  return spec;
}

PrintedMapReport printed_map_report(const CMatrix& w, int d) {
  const int dim = d * d;
  if (w.rows() != dim || w.cols() != dim) fail(ErrorKind::kDimension, "printed_map_report: W has the wrong size");
  const CMatrix lambda = hw_expand(w);
  const double two_pi = 2.0 * std::numbers::pi;
  auto omega = [&](long long e) { return std::polar(1.0, two_pi * static_cast<double>(e % dim) / dim); };

  PrintedMapReport report;
  CMatrix gamma = -lambda(0, 0) * CMatrix::Identity(dim, dim) + w;
  report.max_imag_residue = std::abs(lambda(0, 0).imag());

  // Setting list: (0, 1) followed by (1, k), k = 0 ... dim - 1.
  std::vector<std::pair<int, int>> observables{{0, 1}};
  for (int k = 0; k < dim; ++k) observables.emplace_back(1, k);
  report.settings = static_cast<int>(observables.size());
  for (std::size_t s = 0; s < observables.size(); ++s) {
    const auto [oi, ok] = observables[s];
    const CMatrix obs = hw_element(dim, oi, ok);
    const CMatrix basis = unitary_eigenbasis(obs);
    for (int col = 0; col < dim; ++col) {
      const CVector v = basis.col(col);
      const Complex mu = v.dot(obs * v);
      // Outcome a carries eigenvalue omega^a.
      long long a = std::llround(std::arg(mu) * dim / two_pi);
      a = ((a % dim) + dim) % dim;
      Complex c(0.0);
      for (int j = 1; j < dim; ++j) {
        const Complex l = s == 0 ? lambda(0, j) : lambda(ok, static_cast<int>((static_cast<long long>(ok) * j) % dim));
        c -= l * omega(a * j);
      }
      report.max_imag_residue = std::max(report.max_imag_residue, std::abs(c.imag()));
      gamma += c * v * v.adjoint();
    }
  }
  report.gamma_residual = max_abs(gamma);

  std::vector<char> reachable(static_cast<std::size_t>(dim) * dim, 0);
  reachable[0] = 1;
  for (const auto& [oi, ok] : observables)
    for (int j = 1; j < dim; ++j) reachable[static_cast<std::size_t>((j * oi % dim) * dim + (j * ok % dim))] = 1;
  for (char r : reachable) report.unreachable_labels += r ? 0 : 1;
  return report;
}

// ---------------------------------------------------------------------------

double eval_witness(const WitnessSpec& spec, const CorrelationTable& table) {
  if (table.settings != spec.settings() || table.alice_outcomes != spec.alice_outcomes() ||
      table.bob_outcomes != spec.bob_outcomes) {
    fail(ErrorKind::kDimension, "eval_witness: correlation table shape does not match the witness");
  }
  double value = 0.0;
  if (spec.c00 != 0.0) {
    if (table.bob_marginal.empty()) fail(ErrorKind::kPrecondition, "eval_witness: witness needs Bob's marginal");
    value += spec.c00 * table.bob_marginal[0];
  }
  for (const auto& c : spec.coefficients) value += c.c * table.at(c.x, c.a, c.b);
  return value;
}

std::vector<CMatrix> outcome_operators(const WitnessSpec& spec) {
  const int dim = spec.d * spec.d;
  std::vector<CMatrix> out(static_cast<std::size_t>(spec.bob_outcomes), CMatrix::Zero(dim, dim));
  out[0] += spec.c00 * CMatrix::Identity(dim, dim);
  for (const auto& c : spec.coefficients) {
    out[static_cast<std::size_t>(c.b)] += c.c * spec.alice[static_cast<std::size_t>(c.x)][static_cast<std::size_t>(c.a)];
  }
  for (auto& m : out) m = (m + m.adjoint()).eval() / 2.0;
  return out;
}

}  // namespace swapsteer
