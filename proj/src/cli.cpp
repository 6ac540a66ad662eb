#include "swapsteer/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "swapsteer/io.hpp"

namespace swapsteer {
namespace {

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--out", c.out, "Output path (stdout when omitted)");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kValidation:
      return 2;
    case ErrorKind::kPrecondition:
      return 3;
    case ErrorKind::kDimension:
      return 4;
    case ErrorKind::kResource:
      return 5;
    case ErrorKind::kNumerical:
      return 1;
  }
  return 1;
}

std::string csv_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

// Rows of a CSV body with a header line.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string str() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << csv_number(r[k]);
      os << '\n';
    }
    return os.str();
  }
};

class Reporter {
 public:
  Reporter(std::string command, const Common& common, std::ostream& out)
      : command_(std::move(command)), common_(common), out_(out), start_(std::chrono::steady_clock::now()) {}

  Json inputs = Json::object();
  Json results = Json::object();

  Json report() const {
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    Json j;
    j["command"] = command_;
    j["inputs"] = inputs;
    j["results"] = results;
    j["timings"] = {{"total_seconds", seconds}};
    j["seed"] = common_.seed;
    j["version"] = SWAPSTEER_VERSION;
    return j;
  }

  // JSON report, or the CSV body when asked for and available.
  void emit(const std::optional<Csv>& csv, bool out_is_report = true) const {
    std::string text;
    if (common_.format == "csv") {
      if (!csv) fail(ErrorKind::kValidation, command_ + ": no CSV form for this command");
      text = csv->str();
    } else {
      text = report().dump(2) + "\n";
    }
    if (out_is_report && !common_.out.empty()) {
      std::ofstream f(common_.out);
      if (!f) fail(ErrorKind::kResource, "cannot write " + common_.out);
      f << text;
    } else {
      out_ << text;
    }
  }

 private:
  std::string command_;
  const Common& common_;
  std::ostream& out_;
  std::chrono::steady_clock::time_point start_;
};

int dim_from_square(const CMatrix& m, const char* what) {
  const auto d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m.rows()))));
  if (m.rows() != m.cols() || d * d != m.rows()) {
    fail(ErrorKind::kDimension, std::string(what) + ": expected a d^2 x d^2 operator");
  }
  return d;
}

CMatrix load_w(const std::string& path) {
  const Json j = read_json_file(path);
  return cmatrix_from_json(j.contains("matrix") ? j.at("matrix") : j);
}

// ---------------------------------------------------------------------------

void cmd_check(const std::string& state_path, const Common& c, std::ostream& out) {
  Reporter r("check", c, out);
  r.inputs["state"] = state_path;
  const DensityMatrix rho = load_state(state_path);
  r.results["dims"] = {rho.dims().a, rho.dims().b};
  r.results["ppt"] = to_json(ppt_test(rho));
  r.results["ccn"] = to_json(ccn_test(rho));
  r.emit(std::nullopt);
}

struct WitnessArgs {
  std::string family;
  std::string state;
  std::string w;
  std::string uprime;
  std::string vprime;
  int d = 0;
  bool printed_map = false;
};

void cmd_witness(const WitnessArgs& a, const Common& c, std::ostream& out) {
  Reporter r("witness", c, out);
  r.inputs["family"] = a.family;
  const WitnessFamily family = family_from_string(a.family);
  std::optional<DensityMatrix> rho;
  if (!a.state.empty()) {
    r.inputs["state"] = a.state;
    rho = load_state(a.state);
  }
  WitnessSpec spec;
  std::optional<double> predicted;
  switch (family) {
    case WitnessFamily::kNpt: {
      if (!rho) fail(ErrorKind::kValidation, "witness npt: --state is required");
      spec = build_npt_witness(*rho);
      predicted = ideal_strategy(spec, *rho).predicted_value;
      break;
    }
    case WitnessFamily::kCcn: {
      int d = a.d;
      if (rho) {
        if (rho->dims().a != rho->dims().b) fail(ErrorKind::kDimension, "witness ccn: state must be on C^d (x) C^d");
        if (d != 0 && d != rho->dims().a) fail(ErrorKind::kDimension, "witness ccn: --d disagrees with the state");
        d = rho->dims().a;
      }
      if (d < 2) fail(ErrorKind::kValidation, "witness ccn: give --d >= 2 or --state");
      const CMatrix up = a.uprime.empty() ? CMatrix() : load_matrix(a.uprime);
      const CMatrix vp = a.vprime.empty() ? CMatrix() : load_matrix(a.vprime);
      r.inputs["d"] = d;
      spec = build_ccn_witness(d, up, vp);
      if (rho) {
        const AlignedForm form = verify_ccn_aligned(*rho, spec.provenance.uprime, spec.provenance.vprime);
        r.results["aligned_lambdas"] = to_json(form.lambdas);
        r.results["aligned_coefficient_sum"] = form.coefficient_sum;
        predicted = ideal_strategy(spec, *rho).predicted_value;
      }
      break;
    }
    case WitnessFamily::kUniversal: {
      CMatrix w;
      if (!a.w.empty()) {
        r.inputs["w"] = a.w;
        w = load_w(a.w);
      } else if (rho) {
        w = npt_entanglement_witness(*rho);
      } else {
        fail(ErrorKind::kValidation, "witness universal: give --w or --state");
      }
      const int d = dim_from_square(w, "witness universal");
      spec = build_universal_witness(w, d);
      if (rho) predicted = ideal_strategy(spec, *rho).predicted_value;
      if (a.printed_map) {
        const PrintedMapReport pm = printed_map_report(w, d);
        r.results["printed_map"] = {{"settings", pm.settings},
                                    {"gamma_residual", pm.gamma_residual},
                                    {"max_imag_residue", pm.max_imag_residue},
                                    {"unreachable_labels", pm.unreachable_labels}};
      }
      break;
    }
  }
  r.results["family"] = to_string(spec.family);
  r.results["d"] = spec.d;
  r.results["settings"] = spec.settings();
  r.results["sohs_bound"] = spec.sohs_bound;
  if (predicted) {
    r.results["predicted_ideal_value"] = *predicted;
    r.results["violation"] = *predicted > spec.sohs_bound + 1e-9;
  }
  if (!c.out.empty()) {
    write_json_file(c.out, to_json(spec));
    r.results["spec_path"] = c.out;
  } else {
    r.results["spec"] = to_json(spec);
  }
  r.emit(std::nullopt, false);
}

struct SimulateArgs {
  std::string spec;
  std::string rho1;
  std::string rho2;
  std::string bob;
  bool ideal = false;
};

void cmd_simulate(const SimulateArgs& a, const Common& c, std::ostream& out) {
  Reporter r("simulate", c, out);
  r.inputs["spec"] = a.spec;
  r.inputs["rho1"] = a.rho1;
  r.inputs["ideal"] = a.ideal;
  const WitnessSpec spec = witness_from_json(read_json_file(a.spec));
  const DensityMatrix rho1 = load_state(a.rho1);
  std::optional<Scenario> scenario;
  if (a.ideal) {
    if (!a.rho2.empty() || !a.bob.empty()) fail(ErrorKind::kValidation, "simulate: --ideal fixes S2 and Bob");
    const IdealStrategy ideal = ideal_strategy(spec, rho1);
    r.results["predicted_value"] = ideal.predicted_value;
    scenario = ideal.scenario;
  } else {
    const DensityMatrix rho2 = a.rho2.empty() ? to_density(max_entangled(spec.d)) : load_state(a.rho2);
    const Povm bob = a.bob.empty() ? ideal_bob(spec) : povm_from_json(read_json_file(a.bob));
    if (!a.rho2.empty()) r.inputs["rho2"] = a.rho2;
    if (!a.bob.empty()) r.inputs["bob"] = a.bob;
    if (static_cast<int>(bob.size()) != spec.bob_outcomes) fail(ErrorKind::kDimension, "simulate: Bob outcome count does not match the witness");
    scenario = Scenario{rho1, rho2, spec.alice, bob};
  }
  const CorrelationTable table = correlations(*scenario);
  const double value = eval_witness(spec, table);
  r.results["value"] = value;
  r.results["sohs_bound"] = spec.sohs_bound;
  r.results["violation"] = value > spec.sohs_bound + 1e-9;
  r.results["correlations"] = to_json(table);

  Csv csv{{"x", "a", "b", "p"}, {}};
  for (int x = 0; x < table.settings; ++x)
    for (int aa = 0; aa < table.alice_outcomes; ++aa)
      for (int b = 0; b < table.bob_outcomes; ++b) csv.rows.push_back({double(x), double(aa), double(b), table.at(x, aa, b)});
  r.emit(csv);
}

struct BoundArgs {
  std::string spec;
  std::string method = "seesaw";
  int restarts = 32;
  int resolution = 48;
  int max_iter = 500;
  double tol = 1e-10;
};

void cmd_bound(const BoundArgs& a, const Common& c, std::ostream& out) {
  Reporter r("bound", c, out);
  r.inputs["spec"] = a.spec;
  r.inputs["method"] = a.method;
  const WitnessSpec spec = witness_from_json(read_json_file(a.spec));
  double value = 0.0;
  if (a.method == "grid") {
    r.inputs["resolution"] = a.resolution;
    value = grid_bound(spec, a.resolution);
    r.results["bound"] = {{"method", "grid"}, {"value", value}, {"resolution", a.resolution}};
  } else {
    r.inputs["restarts"] = a.restarts;
    const BoundResult b = seesaw_bound(spec, {a.restarts, a.tol, a.max_iter, c.seed});
    value = b.value;
    r.results["bound"] = to_json(b);
  }
  r.results["analytic_bound"] = spec.sohs_bound;
  r.results["discrepancy"] = value > spec.sohs_bound + 1e-6;
  if (spec.family == WitnessFamily::kCcn) r.results["saturating_model_value"] = ccn_saturating_value(spec);
  r.emit(std::nullopt);
}

void cmd_gap_scan(int dmax, const Common& c, std::ostream& out) {
  if (dmax < 2 || dmax > 8) fail(ErrorKind::kValidation, "gap-scan: --dmax must lie in 2..8");
  Reporter r("gap-scan", c, out);
  r.inputs["dmax"] = dmax;
  Csv csv{{"d", "quantum_value", "sohs_bound", "ratio"}, {}};
  Json rows = Json::array();
  for (int d = 2; d <= dmax; ++d) {
    const WitnessSpec spec = build_ccn_witness(d);
    const IdealStrategy ideal = ideal_strategy(spec, to_density(max_entangled(d)));
    const double q = simulate_value(spec, ideal.scenario);
    const double ratio = q / spec.sohs_bound;
    csv.rows.push_back({double(d), q, spec.sohs_bound, ratio});
    rows.push_back({{"d", d}, {"quantum_value", q}, {"sohs_bound", spec.sohs_bound}, {"ratio", ratio}});
  }
  r.results["rows"] = std::move(rows);
  r.emit(csv);
}

struct RobustnessArgs {
  std::string family = "ccn";
  int d = 2;
  int steps = 11;
};

void cmd_robustness(const RobustnessArgs& a, const Common& c, std::ostream& out) {
  if (family_from_string(a.family) != WitnessFamily::kCcn) fail(ErrorKind::kValidation, "robustness: only --family ccn is supported");
  if (a.d < 2) fail(ErrorKind::kValidation, "robustness: --d must be at least 2");
  if (a.steps < 2) fail(ErrorKind::kValidation, "robustness: --steps must be at least 2");
  Reporter r("robustness", c, out);
  r.inputs["family"] = a.family;
  r.inputs["d"] = a.d;
  r.inputs["steps"] = a.steps;
  const WitnessSpec spec = build_ccn_witness(a.d);
  const DensityMatrix phi = to_density(max_entangled(a.d));
  const Povm bob = ideal_bob(spec);
  auto value_at = [&](double v) { return simulate_value(spec, Scenario{isotropic(a.d, v), phi, spec.alice, bob}); };

  Csv csv{{"v", "value"}, {}};
  Json sweep = Json::array();
  for (int k = 0; k < a.steps; ++k) {
    const double v = static_cast<double>(k) / (a.steps - 1);
    const double w = value_at(v);
    csv.rows.push_back({v, w});
    sweep.push_back({{"v", v}, {"value", w}});
  }
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (value_at(mid) > spec.sohs_bound ? hi : lo) = mid;
  }
  r.results["sweep"] = std::move(sweep);
  r.results["critical_visibility"] = 0.5 * (lo + hi);
  r.results["sohs_bound"] = spec.sohs_bound;
  r.emit(csv);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Swap-steering witnesses: construction, simulation and SOHS bound certification", "swapsteer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SWAPSTEER_VERSION);
  Common common;

  std::string state_path;
  auto* check = app.add_subcommand("check", "PPT and CCN criteria for a state file");
  check->add_option("--state,state", state_path, "State file")->required();
  add_common(check, common);

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "Build a witness spec");
  witness->add_option("family", wa.family, "npt | ccn | universal")->required()->check(CLI::IsMember({"npt", "ccn", "universal"}));
  witness->add_option("--state", wa.state, "State file");
  witness->add_option("--w", wa.w, "Entanglement witness matrix file (universal)");
  witness->add_option("--d", wa.d, "Local dimension (ccn)");
  witness->add_option("--uprime", wa.uprime, "Aligning unitary on A (ccn)");
  witness->add_option("--vprime", wa.vprime, "Aligning unitary on B (ccn)");
  witness->add_flag("--printed-map", wa.printed_map, "Report the {Z, XZ^k} coefficient map (universal)");
  add_common(witness, common);

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Simulate the two-source network");
  simulate->add_option("--spec", sa.spec, "Witness spec")->required();
  simulate->add_option("--rho1", sa.rho1, "Source 1 state")->required();
  simulate->add_option("--rho2", sa.rho2, "Source 2 state (default |phi+>)");
  simulate->add_option("--bob", sa.bob, "Bob POVM file (default: ideal measurement)");
  simulate->add_flag("--ideal", sa.ideal, "Use the ideal quantum strategy");
  add_common(simulate, common);

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Numerical SOHS bound");
  bound->add_option("--spec", ba.spec, "Witness spec")->required();
  bound->add_option("--method", ba.method, "seesaw | grid")->check(CLI::IsMember({"seesaw", "grid"}));
  bound->add_option("--restarts", ba.restarts, "See-saw restarts")->check(CLI::PositiveNumber);
  bound->add_option("--resolution", ba.resolution, "Grid points per angle");
  bound->add_option("--max-iter", ba.max_iter, "See-saw iteration cap");
  bound->add_option("--tol", ba.tol, "See-saw improvement tolerance");
  add_common(bound, common);

  int dmax = 6;
  auto* gap = app.add_subcommand("gap-scan", "Quantum value over SOHS bound for the CCN family");
  gap->add_option("--dmax", dmax, "Largest local dimension (<= 8)");
  add_common(gap, common);

  RobustnessArgs ra;
  auto* robust = app.add_subcommand("robustness", "Isotropic-noise sweep and critical visibility");
  robust->add_option("--family", ra.family, "Witness family")->check(CLI::IsMember({"ccn"}));
  robust->add_option("--d", ra.d, "Local dimension");
  robust->add_option("--steps", ra.steps, "Sweep points");
  add_common(robust, common);

  std::vector<const char*> argv{"swapsteer"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) cmd_check(state_path, common, out);
    else if (*witness) cmd_witness(wa, common, out);
    else if (*simulate) cmd_simulate(sa, common, out);
    else if (*bound) cmd_bound(ba, common, out);
    else if (*gap) cmd_gap_scan(dmax, common, out);
    else if (*robust) cmd_robustness(ra, common, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace swapsteer
