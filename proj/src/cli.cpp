#include "ctrlfree/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ctrlfree/construction.hpp"
#include "ctrlfree/hadamard.hpp"
#include "ctrlfree/io.hpp"
#include "ctrlfree/resources.hpp"

namespace ctrlfree::cli {

namespace {

using io::json;

// Operator-level checks build 2*4^n dense matrices; keep them at test scale.
constexpr int kMaxMatrixCheckN = 3;
constexpr double kMatrixIdentityTolerance = 1e-10;
constexpr double kRobustnessTolerance = 1e-9;
constexpr double kSchemeAgreementTolerance = 1e-9;

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ArgumentError("invalid seed '" + text + "'");
  }
  return v;
}

ComplexMatrix tensor_power(const ComplexMatrix& single, int n) {
  ComplexMatrix out = single;
  for (int k = 1; k < n; ++k) out = tensor(out, single);
  return out;
}

// Options shared by the commands that need a unitary and an eigenpair.
struct TargetOptions {
  std::string u = "haar";
  int n = 1;
  CLI::Option* n_opt = nullptr;
  std::uint64_t seed = 0;
  std::size_t eig_index = 0;
  std::string eig_file;
  bool decomposed = false;

  void add_to(CLI::App* app) {
    app->add_option("--u", u,
                    "Unitary: haar, haar:<seed>, preset:<X|Z|S|T|I|QFT> or a "
                    "matrix JSON file")
        ->capture_default_str();
    n_opt = app->add_option("--n", n, "System qubits")
                ->check(CLI::Range(1, caps::kMaxSystemQubits))
                ->capture_default_str();
    app->add_option("--seed", seed, "Master seed")->capture_default_str();
    app->add_option("--eig-index", eig_index,
                    "Eigenpair index in ascending eigenphase order")
        ->capture_default_str();
    app->add_option("--eig-file", eig_file, "Eigenpair JSON file");
    app->add_flag("--decomposed", decomposed,
                  "Expand CSWAPs into CNOT-TOFFOLI-CNOT");
  }

  ComplexMatrix unitary() const {
    ComplexMatrix m = resolve_unitary(u, n, seed);
    const int dim_n = qubits_for_dim(m.rows());
    if (n_opt->count() > 0 && dim_n != n) {
      throw ArgumentError("--n " + std::to_string(n) +
                          " does not match the unitary's " +
                          std::to_string(dim_n) + " qubits");
    }
    return m;
  }

  Eigenpair eigenpair(const ComplexMatrix& m) const {
    if (!eig_file.empty()) {
      Eigenpair p = io::eigenpair_from_json(io::read_json_file(eig_file));
      require_eigenpair(m, p);
      return p;
    }
    auto pairs = eig_unitary(m);
    if (eig_index >= pairs.size()) {
      throw ArgumentError("--eig-index " + std::to_string(eig_index) +
                          " out of range (" + std::to_string(pairs.size()) +
                          " eigenpairs)");
    }
    return pairs[eig_index];
  }

  std::string eig_label() const {
    return eig_file.empty() ? std::to_string(eig_index) : eig_file;
  }
};

struct OutputOptions {
  std::string out;
  std::string format;

  void add_to(CLI::App* app, const std::string& default_format) {
    format = default_format;
    app->add_option("--out", out, "Output file (default stdout)");
    app->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }

  void emit(const std::string& text, std::ostream& stdout_stream) const {
    if (out.empty()) {
      stdout_stream << text;
      return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + out + "'");
    f << text;
  }
};

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// One flat record rendered as JSON object or a two-line CSV.
std::string flat_record(const std::vector<std::pair<std::string, json>>& fields,
                        const std::string& format) {
  if (format == "json") {
    json j = json::object();
    for (const auto& [k, v] : fields) j[k] = v;
    return json_text(j);
  }
  std::vector<std::string> header, row;
  for (const auto& [k, v] : fields) {
    header.push_back(k);
    if (v.is_number_float()) {
      row.push_back(io::format_double(v.get<double>()));
    } else if (v.is_string()) {
      row.push_back(v.get<std::string>());
    } else if (v.is_null()) {
      row.push_back("");
    } else {
      row.push_back(v.dump());
    }
  }
  return io::csv_row(header) + io::csv_row(row);
}


// ---------------------------------------------------------------------------

int cmd_verify(const TargetOptions& t, int trials, const OutputOptions& o,
               std::ostream& out) {
  const ComplexMatrix u = t.unitary();
  const Eigenpair pair = t.eigenpair(u);
  const int n = qubits_for_dim(u.rows());
  const GadgetSpec spec{n, u, pair, true, t.decomposed};
  const EquivalenceReport eq = check_equivalence(spec, trials, t.seed);

  json closed_vs_network = nullptr;
  json closed_vs_circuit = nullptr;
  json sector = nullptr;
  bool matrix_pass = true;
  if (n <= kMaxMatrixCheckN) {
    const ComplexMatrix w = closed_form_W(u);
    const double d1 = max_abs(w - swap_network_W(u));
    const double d2 = max_abs(
        w - circuit_unitary(gadget_circuit(u, std::nullopt, t.decomposed)));
    const double d3 = eigen_sector_deviation(u, pair);
    closed_vs_network = d1;
    closed_vs_circuit = d2;
    sector = d3;
    matrix_pass = d1 <= kMatrixIdentityTolerance &&
                  d2 <= kMatrixIdentityTolerance &&
                  d3 <= kMatrixIdentityTolerance;
  }
  const bool pass = eq.pass && matrix_pass;

  o.emit(flat_record({{"command", "verify"},
                      {"u", t.u},
                      {"n", n},
                      {"seed", t.seed},
                      {"trials", trials},
                      {"eig", t.eig_label()},
                      {"lambda_re", pair.eigenvalue.real()},
                      {"lambda_im", pair.eigenvalue.imag()},
                      {"eigenphase", pair.eigenphase},
                      {"decomposed", t.decomposed},
                      {"equivalence_max_deviation", eq.max_deviation},
                      {"w_closed_vs_swap_network", closed_vs_network},
                      {"w_closed_vs_circuit", closed_vs_circuit},
                      {"eigen_sector_deviation", sector},
                      {"pass", pass}},
                     o.format),
         out);
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_robustness(const TargetOptions& t, const std::vector<double>& eps_list,
                   int trials, const OutputOptions& o, std::ostream& out) {
  for (double e : eps_list) {
    if (!(e >= 0.0 && e <= 1.0)) throw ArgumentError("--eps values must lie in [0, 1]");
  }
  if (trials < 1) throw ArgumentError("--trials must be >= 1");
  const ComplexMatrix u = t.unitary();
  const Eigenpair pair = t.eigenpair(u);
  const int n = qubits_for_dim(u.rows());
  const GadgetSpec spec{n, u, pair, true, t.decomposed};

  bool pass = true;
  std::string csv = io::csv_row({"eps", "trial", "fidelity", "predicted", "abs_diff", "seed"});
  json rows = json::array();
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    const double eps = eps_list[k];
    for (int trial = 0; trial < trials; ++trial) {
      Rng rng = make_rng(t.seed + static_cast<std::uint64_t>(trial), 2 + k);
      const ControlState c = random_control(rng);
      const StateVector psi = haar_random_state(n, rng);
      const double phase =
          std::uniform_real_distribution<double>(0.0, 2 * std::numbers::pi)(rng);
      const auto perturbed = perturb_eigenstate(pair.vector, eps, phase, rng());
      const double f = robustness_fidelity(spec, perturbed, psi, c.alpha, c.beta);
      const double predicted = 1.0 - eps;
      const double diff = std::abs(f - predicted);
      pass = pass && diff <= kRobustnessTolerance;
      csv += io::csv_row({io::format_double(eps), std::to_string(trial),
                          io::format_double(f), io::format_double(predicted),
                          io::format_double(diff), std::to_string(t.seed)});
      rows.push_back(json{{"eps", eps},
                          {"trial", trial},
                          {"fidelity", f},
                          {"predicted", predicted},
                          {"abs_diff", diff},
                          {"seed", t.seed}});
    }
  }
  o.emit(o.format == "json" ? json_text(rows) : csv, out);
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_hadamard(const TargetOptions& t, const std::string& psi_source,
                 const std::string& mode, int shots, const OutputOptions& o,
                 std::ostream& out) {
  const ComplexMatrix u = t.unitary();
  const Eigenpair pair = t.eigenpair(u);
  const int n = qubits_for_dim(u.rows());
  const StateVector psi = resolve_state(psi_source, n);

  EstimatorConfig cfg;
  cfg.seed = t.seed;
  if (mode == "shots") {
    if (shots < 1) throw ArgumentError("--shots must be >= 1 in shot mode");
    cfg.mode = EstimationMode::Shots;
    cfg.shots = shots;
  }
  const std::vector<HadamardTestResult> rows{
      standard_test(u, psi, cfg),
      control_free_test(u, pair, psi, Correction::Gate, cfg),
      control_free_test(u, pair, psi, Correction::Postprocess, cfg)};

  // The exact estimators of all schemes must coincide, whatever mode was
  // requested for the emitted rows.
  const EstimatorConfig exact;
  const std::vector<HadamardTestResult> ref{
      standard_test(u, psi, exact),
      control_free_test(u, pair, psi, Correction::Gate, exact),
      control_free_test(u, pair, psi, Correction::Postprocess, exact)};
  bool pass = true;
  for (const auto& r : ref) {
    pass = pass && std::abs(r.re - ref[0].re) <= kSchemeAgreementTolerance &&
           std::abs(r.im - ref[0].im) <= kSchemeAgreementTolerance;
  }

  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(io::hadamard_to_json(r));
    o.emit(json_text(arr), out);
  } else {
    std::string csv = io::csv_row(io::kHadamardCsvColumns);
    for (const auto& r : rows) csv += io::csv_row(io::hadamard_csv_fields(r));
    o.emit(csv, out);
  }
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_resources(const std::vector<int>& ns, const std::vector<int>& dus,
                  std::optional<int> s, int toffoli_cost, double c,
                  std::optional<int> layers, const OutputOptions& o,
                  std::ostream& out) {
  CompareOptions options;
  options.toffoli_cost = toffoli_cost;
  options.barenco_c = c;
  options.ansatz_layers = layers;
  std::vector<ResourceReport> rows;
  for (int n : ns) {
    const ResourceReport gadget = gadget_cost(n, toffoli_cost);
    options.s = s.value_or(n);
    for (int du : dus) rows.push_back(apply_models(gadget, du, options));
  }
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(io::resource_report_to_json(r));
    o.emit(json_text(arr), out);
  } else {
    std::string csv = io::csv_row(io::kResourceCsvColumns);
    for (const auto& r : rows) csv += io::csv_row(io::resource_csv_fields(r));
    o.emit(csv, out);
  }
  return kExitOk;
}

int cmd_gadget(const TargetOptions& t, bool no_correction, const OutputOptions& o,
               std::ostream& out) {
  const ComplexMatrix u = t.unitary();
  const Eigenpair pair = t.eigenpair(u);
  const GadgetSpec spec{qubits_for_dim(u.rows()), u, pair, !no_correction,
                        t.decomposed};
  o.emit(json_text(json{{"spec", io::gadget_spec_to_json(spec)},
                        {"circuit", io::circuit_to_json(build_gadget(spec))}}),
         out);
  return kExitOk;
}

}  // namespace

ComplexMatrix qft_matrix(int n) {
  if (n < 1 || n > caps::kMaxMatrixQubits) throw ArgumentError("QFT size out of range");
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexMatrix f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      // Reduce jk mod d first so the angle stays exact for large indices.
      const auto r = static_cast<double>((j * k) % d);
      f(j, k) = std::polar(scale, 2.0 * std::numbers::pi * r / static_cast<double>(d));
    }
  }
  return f;
}

ComplexMatrix resolve_unitary(const std::string& source, int n,
                              std::uint64_t seed) {
  if (source == "haar") return haar_random_unitary(n, seed);
  if (source.rfind("haar:", 0) == 0) {
    return haar_random_unitary(n, parse_seed(source.substr(5)));
  }
  if (source.rfind("preset:", 0) == 0) {
    const std::string name = source.substr(7);
    if (name == "QFT") return qft_matrix(n);
    static const std::map<std::string, ComplexMatrix (*)()> singles{
        {"X", gates::pauli_x}, {"Z", gates::pauli_z}, {"S", gates::s},
        {"T", gates::t},       {"I", [] { return identity(2); }}};
    auto it = singles.find(name);
    if (it == singles.end()) throw ArgumentError("unknown preset '" + name + "'");
    return tensor_power(it->second(), n);
  }
  return io::matrix_from_json(io::read_json_file(source), true);
}

StateVector resolve_state(const std::string& source, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  if (source == "zero") return StateVector::basis(n, 0);
  if (source == "plus") {
    return StateVector(ComplexVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d))));
  }
  if (source.rfind("haar:", 0) == 0) {
    return haar_random_state(n, parse_seed(source.substr(5)));
  }
  StateVector s = io::state_from_json(io::read_json_file(source));
  if (s.num_qubits() != n) {
    throw ArgumentError("state file has " + std::to_string(s.num_qubits()) +
                        " qubits, expected " + std::to_string(n));
  }
  return s;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenstate-assisted controlled-unitary compiler and verifier"};
  app.require_subcommand(1);

  TargetOptions verify_t, robust_t, had_t, gadget_t;
  OutputOptions verify_o, robust_o, had_o, res_o, gadget_o;

  auto* verify = app.add_subcommand("verify", "Check gadget equivalence with C(U)");
  verify_t.add_to(verify);
  int verify_trials = 20;
  verify->add_option("--trials", verify_trials, "Random control/state trials")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify_o.add_to(verify, "json");

  auto* robust = app.add_subcommand("robustness", "Fidelity under perturbed eigenstates");
  robust_t.add_to(robust);
  std::vector<double> eps_list{0.0, 0.01, 0.1, 0.25, 0.5, 1.0};
  int robust_trials = 10;
  robust->add_option("--eps", eps_list, "Comma-separated epsilon values")
      ->delimiter(',')
      ->capture_default_str();
  robust->add_option("--trials", robust_trials, "Trials per epsilon")
      ->capture_default_str();
  robust_o.add_to(robust, "csv");

  auto* had = app.add_subcommand("hadamard", "Standard vs control-free Hadamard test");
  had_t.add_to(had);
  std::string psi = "plus";
  std::string mode = "exact";
  int shots = 100000;
  had->add_option("--psi", psi, "State: zero, plus, haar:<seed> or a state file")
      ->capture_default_str();
  had->add_option("--mode", mode, "exact or shots")
      ->check(CLI::IsMember({"exact", "shots"}))
      ->capture_default_str();
  had->add_option("--shots", shots, "Shots per observable")->capture_default_str();
  had_o.add_to(had, "csv");

  auto* res = app.add_subcommand("resources", "Gadget cost vs synthesis models");
  std::vector<int> ns{1, 2, 3, 4};
  std::vector<int> dus{1};
  std::optional<int> s_opt;
  std::optional<int> layers;
  int toffoli_cost = kDefaultToffoliCost;
  double barenco_c = 1.0;
  res->add_option("--n", ns, "Comma-separated system sizes")
      ->delimiter(',')
      ->check(CLI::Range(1, caps::kMaxSystemQubits))
      ->capture_default_str();
  res->add_option("--du", dus, "Comma-separated depths d_U of U")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  res->add_option("--s", s_opt, "Ancillas s of the depth model (default n)");
  res->add_option("--toffoli-cost", toffoli_cost, "CNOT equivalents per Toffoli")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  res->add_option("--c", barenco_c, "Constant of the c*n*d_U model")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  res->add_option("--ansatz-layers", layers, "Report n*L eigenstate-prep line item");
  res_o.add_to(res, "csv");

  auto* gadget = app.add_subcommand("gadget", "Emit the gadget circuit as JSON");
  gadget_t.add_to(gadget);
  bool no_correction = false;
  gadget->add_flag("--no-correction", no_correction, "Omit the ancilla phase correction");
  gadget_o.add_to(gadget, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*verify) return cmd_verify(verify_t, verify_trials, verify_o, out);
    if (*robust) return cmd_robustness(robust_t, eps_list, robust_trials, robust_o, out);
    if (*had) return cmd_hadamard(had_t, psi, mode, shots, had_o, out);
    if (*res) {
      return cmd_resources(ns, dus, s_opt, toffoli_cost, barenco_c, layers, res_o, out);
    }
    if (*gadget) return cmd_gadget(gadget_t, no_correction, gadget_o, out);
  } catch (const ValidationError& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace ctrlfree::cli
