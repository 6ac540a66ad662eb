#include "swapsteer/io.hpp"

#include <fstream>
#include <sstream>

namespace swapsteer {
namespace {

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(ErrorKind::kParse, "complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::kParse, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) fail(ErrorKind::kParse, std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

double number_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) fail(ErrorKind::kParse, std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

Dims dims_from_json(const Json& j) {
  const Json& d = field(j, "dims");
  if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer()) {
    fail(ErrorKind::kParse, "\"dims\" must be [dA, dB]");
  }
  const Dims dims{d[0].get<int>(), d[1].get<int>()};
  if (dims.a < 1 || dims.b < 1) fail(ErrorKind::kValidation, "dims must be positive");
  return dims;
}

// Optional matrices in provenance blocks are omitted when empty.
void put(Json& j, const char* key, const CMatrix& m) {
  if (m.size() > 0) j[key] = to_json(m);
}
void put(Json& j, const char* key, const CVector& v) {
  if (v.size() > 0) j[key] = to_json(v);
}
void put(Json& j, const char* key, const RVector& v) {
  if (v.size() > 0) j[key] = to_json(v);
}
CMatrix get_matrix(const Json& j, const char* key) { return j.contains(key) ? cmatrix_from_json(j.at(key)) : CMatrix(); }
CVector get_vector(const Json& j, const char* key) { return j.contains(key) ? cvector_from_json(j.at(key)) : CVector(); }
RVector get_rvector(const Json& j, const char* key) { return j.contains(key) ? rvector_from_json(j.at(key)) : RVector(); }

}  // namespace

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v(k)));
  return out;
}

Json to_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

CMatrix cmatrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::kParse, "matrix must be a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) fail(ErrorKind::kParse, "matrix rows must be non-empty lists");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) fail(ErrorKind::kParse, "matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

CVector cvector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::kParse, "vector must be a non-empty list of [re, im]");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
  return v;
}

RVector rvector_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::kParse, "real vector must be a list of numbers");
  RVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) fail(ErrorKind::kParse, "real vector entries must be numbers");
    v(static_cast<Eigen::Index>(k)) = j[k].get<double>();
  }
  return v;
}

Json state_to_json(const DensityMatrix& rho) {
  Json j;
  j["dims"] = {rho.dims().a, rho.dims().b};
  j["matrix"] = to_json(rho.matrix());
  return j;
}

DensityMatrix state_from_json(const Json& j) {
  const Dims dims = dims_from_json(j);
  if (j.contains("matrix")) return DensityMatrix(cmatrix_from_json(j.at("matrix")), dims);
  if (j.contains("vector")) return to_density(Ket(cvector_from_json(j.at("vector")), dims));
  fail(ErrorKind::kParse, "state file needs a \"matrix\" or a \"vector\" field");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kParse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::kParse, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kResource, "cannot write " + path);
  out << j.dump(2) << '\n';
}

DensityMatrix load_state(const std::string& path) { return state_from_json(read_json_file(path)); }

void save_state(const std::string& path, const DensityMatrix& rho) { write_json_file(path, state_to_json(rho)); }

CMatrix load_matrix(const std::string& path) { return cmatrix_from_json(field(read_json_file(path), "matrix")); }

Json povm_to_json(const Povm& p) {
  Json j;
  j["labels"] = p.labels();
  Json elements = Json::array();
  for (const auto& e : p.elements()) elements.push_back(to_json(e));
  j["elements"] = std::move(elements);
  return j;
}

Povm povm_from_json(const Json& j) {
  std::vector<CMatrix> elements;
  const Json& es = field(j, "elements");
  if (!es.is_array()) fail(ErrorKind::kParse, "\"elements\" must be a list of matrices");
  for (const auto& e : es) elements.push_back(cmatrix_from_json(e));
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return Povm(std::move(elements), std::move(labels));
}

Json to_json(const PptReport& r) {
  Json j;
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["is_npt"] = r.is_npt;
  j["eta"] = to_json(r.eta);
  return j;
}

Json to_json(const CcnReport& r) {
  Json j;
  j["coefficient_sum"] = r.coefficient_sum;
  j["violates"] = r.violates;
  j["coefficients"] = to_json(r.coefficients);
  return j;
}

Json to_json(const WitnessSpec& spec) {
  Json j;
  j["family"] = to_string(spec.family);
  j["d"] = spec.d;
  j["sohs_bound"] = spec.sohs_bound;
  Json measurements = Json::array();
  for (const auto& m : spec.alice) measurements.push_back(povm_to_json(m));
  j["measurements"] = std::move(measurements);
  j["bob_outcomes"] = spec.bob_outcomes;
  Json coefficients = Json::array();
  for (const auto& c : spec.coefficients) coefficients.push_back({{"x", c.x}, {"a", c.a}, {"b", c.b}, {"c", c.c}});
  j["coefficients"] = std::move(coefficients);
  j["c00"] = spec.c00;

  const WitnessProvenance& p = spec.provenance;
  Json prov = Json::object();
  put(prov, "u", p.u);
  put(prov, "v", p.v);
  put(prov, "alpha", p.alpha);
  put(prov, "eta", p.eta);
  if (spec.family == WitnessFamily::kNpt) prov["min_pt_eigenvalue"] = p.min_pt_eigenvalue;
  put(prov, "uprime", p.uprime);
  put(prov, "vprime", p.vprime);
  put(prov, "w", p.w);
  put(prov, "hw_lambda", p.hw_lambda);
  if (!p.setting_labels.empty()) {
    Json labels = Json::array();
    for (const auto& [i, k] : p.setting_labels) labels.push_back({i, k});
    prov["setting_labels"] = std::move(labels);
    prov["gamma_residual"] = p.gamma_residual;
  }
  put(prov, "alice_unitary", p.alice_unitary);
  prov["max_imag_residue"] = p.max_imag_residue;
  j["provenance"] = std::move(prov);
  return j;
}

WitnessSpec witness_from_json(const Json& j) {
  WitnessSpec spec;
  try {
    spec.family = family_from_string(field(j, "family").get<std::string>());
  } catch (const Json::exception& e) {
    fail(ErrorKind::kParse, std::string("\"family\": ") + e.what());
  }
  spec.d = int_field(j, "d");
  if (spec.d < 2) fail(ErrorKind::kValidation, "witness dimension d must be at least 2");
  spec.sohs_bound = number_field(j, "sohs_bound");
  spec.bob_outcomes = int_field(j, "bob_outcomes");
  spec.c00 = j.contains("c00") ? number_field(j, "c00") : 0.0;
  const Json& ms = field(j, "measurements");
  if (!ms.is_array() || ms.empty()) fail(ErrorKind::kParse, "\"measurements\" must be a non-empty list");
  for (const auto& m : ms) spec.alice.push_back(povm_from_json(m));
  for (const auto& m : spec.alice) {
    if (m.dim() != spec.d * spec.d) fail(ErrorKind::kDimension, "measurement size does not match d^2");
    if (m.size() != spec.alice.front().size()) fail(ErrorKind::kValidation, "measurement settings differ in outcome count");
  }
  const Json& cs = field(j, "coefficients");
  if (!cs.is_array()) fail(ErrorKind::kParse, "\"coefficients\" must be a list");
  for (const auto& c : cs) {
    Coefficient k{int_field(c, "x"), int_field(c, "a"), int_field(c, "b"), number_field(c, "c")};
    if (k.x < 0 || k.x >= spec.settings() || k.a < 0 || k.a >= spec.alice_outcomes() || k.b < 0 || k.b >= spec.bob_outcomes) {
      fail(ErrorKind::kValidation, "coefficient index out of range");
    }
    spec.coefficients.push_back(k);
  }
  if (j.contains("provenance")) {
    const Json& p = j.at("provenance");
    WitnessProvenance& out = spec.provenance;
    out.u = get_matrix(p, "u");
    out.v = get_matrix(p, "v");
    out.alpha = get_rvector(p, "alpha");
    out.eta = get_vector(p, "eta");
    if (p.contains("min_pt_eigenvalue")) out.min_pt_eigenvalue = number_field(p, "min_pt_eigenvalue");
    out.uprime = get_matrix(p, "uprime");
    out.vprime = get_matrix(p, "vprime");
    out.w = get_matrix(p, "w");
    out.hw_lambda = get_matrix(p, "hw_lambda");
    if (p.contains("setting_labels")) {
      for (const auto& l : p.at("setting_labels")) out.setting_labels.emplace_back(l.at(0).get<int>(), l.at(1).get<int>());
    }
    if (p.contains("gamma_residual")) out.gamma_residual = number_field(p, "gamma_residual");
    out.alice_unitary = get_matrix(p, "alice_unitary");
    if (p.contains("max_imag_residue")) out.max_imag_residue = number_field(p, "max_imag_residue");
  }
  return spec;
}

Json to_json(const CorrelationTable& t) {
  Json j;
  j["settings"] = t.settings;
  j["alice_outcomes"] = t.alice_outcomes;
  j["bob_outcomes"] = t.bob_outcomes;
  j["order"] = "x, a, b with b fastest";
  j["probabilities"] = t.probabilities;
  j["bob_marginal"] = t.bob_marginal;
  return j;
}

Json to_json(const Scenario& s) {
  Json j;
  j["rho1"] = state_to_json(s.rho1);
  j["rho2"] = state_to_json(s.rho2);
  Json alice = Json::array();
  for (const auto& m : s.alice) alice.push_back(povm_to_json(m));
  j["alice"] = std::move(alice);
  j["bob"] = povm_to_json(s.bob);
  return j;
}

Json to_json(const ProductStrategy& s) {
  Json j;
  j["psi1"] = to_json(s.psi1);
  j["psi2"] = to_json(s.psi2);
  j["bob_response"] = s.bob_response;
  return j;
}

Json to_json(const BoundResult& r) {
  Json j;
  j["method"] = r.method;
  j["value"] = r.value;
  if (r.strategy.psi1.size() > 0) j["strategy"] = to_json(r.strategy);
  j["restarts_used"] = r.restarts_used;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["history"] = r.history;
  j["per_outcome"] = r.per_outcome;
  return j;
}

}  // namespace swapsteer
