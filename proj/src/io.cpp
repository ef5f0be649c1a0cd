#include "ctrlfree/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ctrlfree::io {

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(where + ": expected [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(where + ": missing field '" + key + "'");
  }
  return j.at(key);
}

WireList wires_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected wire array");
  WireList w;
  for (const auto& x : j) {
    if (!x.is_string()) throw ValidationError(where + ": wire labels are strings");
    w.push_back(x.get<std::string>());
  }
  return w;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      entries.push_back(complex_to_json(m(i, k)));
    }
  }
  return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j, bool require_unitary_matrix) {
  const json& dim_j = field(j, "dim", "matrix");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) {
    throw ValidationError("matrix: 'dim' must be a positive integer");
  }
  const auto dim = dim_j.get<long long>();
  if (dim > (1LL << caps::kMaxMatrixQubits)) {
    throw ResourceLimitError("matrix: dim exceeds matrix cap");
  }
  const json& entries = field(j, "entries", "matrix");
  if (!entries.is_array() || static_cast<long long>(entries.size()) != dim * dim) {
    throw ValidationError("matrix: 'entries' must hold dim*dim = " +
                          std::to_string(dim * dim) + " values (square matrix)");
  }
  ComplexMatrix m(dim, dim);
  for (long long i = 0; i < dim; ++i) {
    for (long long k = 0; k < dim; ++k) {
      m(i, k) = complex_from_json(entries[i * dim + k], "matrix entry");
    }
  }
  if (require_unitary_matrix) require_unitary(m, "matrix");
  return m;
}

json state_to_json(const StateVector& s) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < s.dim(); ++i) amps.push_back(complex_to_json(s[i]));
  return json{{"num_qubits", s.num_qubits()},
              {"layout", s.layout()},
              {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const json& j) {
  const json& nq = field(j, "num_qubits", "state");
  if (!nq.is_number_integer() || nq.get<int>() < 0 ||
      nq.get<int>() > caps::kMaxStateQubits) {
    throw ValidationError("state: 'num_qubits' out of range");
  }
  const int n = nq.get<int>();
  const json& amps = field(j, "amplitudes", "state");
  if (!amps.is_array() || amps.size() != (std::size_t{1} << n)) {
    throw ValidationError("state: 'amplitudes' must hold 2^num_qubits values");
  }
  ComplexVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = complex_from_json(amps[i], "amplitude");
  }
  WireList layout =
      j.contains("layout") ? wires_from_json(j["layout"], "state") : default_wires(n);
  return StateVector(std::move(layout), std::move(v));
}

json eigenpair_to_json(const Eigenpair& p) {
  return json{{"lambda", complex_to_json(p.eigenvalue)},
              {"phase", p.eigenphase},
              {"vector", state_to_json(p.vector)}};
}

Eigenpair eigenpair_from_json(const json& j) {
  const Complex lambda = complex_from_json(field(j, "lambda", "eigenpair"), "lambda");
  if (std::abs(std::abs(lambda) - 1.0) > tol::kUnitaryInput) {
    throw ValidationError("eigenpair: |lambda| must be 1");
  }
  return make_eigenpair(lambda, state_from_json(field(j, "vector", "eigenpair")));
}

json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates()) {
    json params = json::object();
    switch (g.kind()) {
      case GateKind::RZ:
        params["theta"] = g.theta();
        break;
      case GateKind::PhaseDiag:
        params["lambda"] = complex_to_json(g.lambda());
        break;
      case GateKind::UBLOCK:
        params["label"] = g.label();
        params["matrix"] = matrix_to_json(g.matrix());
        break;
      default:
        break;
    }
    gates.push_back(json{{"kind", std::string(kind_name(g.kind()))},
                         {"wires", g.wires()},
                         {"params", std::move(params)}});
  }
  return json{{"wires", c.wires()}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const json& j, const std::filesystem::path& base_dir) {
  Circuit c(wires_from_json(field(j, "wires", "circuit"), "circuit"));
  const json& gates = field(j, "gates", "circuit");
  if (!gates.is_array()) throw ValidationError("circuit: 'gates' must be an array");
  for (const auto& gj : gates) {
    const json& kind_j = field(gj, "kind", "gate");
    if (!kind_j.is_string()) throw ValidationError("gate: 'kind' must be a string");
    const GateKind kind = parse_kind(kind_j.get<std::string>());
    WireList w = wires_from_json(field(gj, "wires", "gate"), "gate");
    const json params = gj.value("params", json::object());

    auto need = [&](std::size_t arity) {
      if (w.size() != arity) {
        throw ValidationError("gate " + kind_j.get<std::string>() + " needs " +
                              std::to_string(arity) + " wires");
      }
    };
    switch (kind) {
      case GateKind::H: need(1); c.append(Gate::h(w[0])); break;
      case GateKind::S: need(1); c.append(Gate::s(w[0])); break;
      case GateKind::Sdg: need(1); c.append(Gate::sdg(w[0])); break;
      case GateKind::X: need(1); c.append(Gate::x(w[0])); break;
      case GateKind::RZ: {
        need(1);
        const json& t = field(params, "theta", "RZ params");
        if (!t.is_number()) throw ValidationError("RZ: 'theta' must be a number");
        c.append(Gate::rz(t.get<double>(), w[0]));
        break;
      }
      case GateKind::PhaseDiag:
        need(1);
        c.append(Gate::phase_diag(
            complex_from_json(field(params, "lambda", "PhaseDiag params"), "lambda"),
            w[0]));
        break;
      case GateKind::CNOT: need(2); c.append(Gate::cnot(w[0], w[1])); break;
      case GateKind::TOFFOLI: need(3); c.append(Gate::toffoli(w[0], w[1], w[2])); break;
      case GateKind::CSWAP: need(3); c.append(Gate::cswap(w[0], w[1], w[2])); break;
      case GateKind::UBLOCK: {
        ComplexMatrix m;
        if (params.contains("matrix")) {
          m = matrix_from_json(params["matrix"], true);
        } else if (params.contains("matrix_file")) {
          std::filesystem::path p = params["matrix_file"].get<std::string>();
          if (p.is_relative()) p = base_dir / p;
          m = matrix_from_json(read_json_file(p), true);
        } else {
          throw ValidationError("UBLOCK: needs 'matrix' or 'matrix_file'");
        }
        c.append(Gate::ublock(std::move(m), params.value("label", "U"), std::move(w)));
        break;
      }
    }
  }
  return c;
}

json gadget_spec_to_json(const GadgetSpec& spec) {
  return json{{"n", spec.n},
              {"u", matrix_to_json(spec.u)},
              {"eigenpair", eigenpair_to_json(spec.eigenpair)},
              {"apply_phase_correction", spec.apply_phase_correction},
              {"decomposed", spec.decomposed}};
}

GadgetSpec gadget_spec_from_json(const json& j) {
  const json& n = field(j, "n", "gadget spec");
  if (!n.is_number_integer()) throw ValidationError("gadget spec: 'n' must be an integer");
  GadgetSpec spec{n.get<int>(), matrix_from_json(field(j, "u", "gadget spec"), true),
                  eigenpair_from_json(field(j, "eigenpair", "gadget spec")),
                  j.value("apply_phase_correction", true), j.value("decomposed", false)};
  spec.validate();
  return spec;
}

json measurement_to_json(const MeasurementRecord& r) {
  return json{{"observable", std::string(observable_name(r.observable))},
              {"wire", r.wire},
              {"shots", r.shots},
              {"estimate", r.estimate},
              {"std_error", r.std_error},
              {"seed", r.seed}};
}

json hadamard_to_json(const HadamardTestResult& r) {
  return json{{"scheme", std::string(scheme_name(r.scheme))},
              {"mode", std::string(mode_name(r.mode))},
              {"shots", r.shots},
              {"re", r.re},
              {"im", r.im},
              {"se_re", r.std_error_re},
              {"se_im", r.std_error_im},
              {"raw_x", r.raw_x},
              {"raw_y", r.raw_y},
              {"seed", r.seed}};
}

json resource_report_to_json(const ResourceReport& r) {
  json j{{"n", r.n},
         {"d_u", r.d_u},
         {"s", r.s},
         {"toffoli_cost", r.toffoli_cost},
         {"barenco_c", r.barenco_c},
         {"qubits", r.qubits_gadget},
         {"cnot", r.cnot_gadget},
         {"toffoli", r.toffoli_gadget},
         {"two_qubit_effective", r.two_qubit_effective_gadget},
         {"gadget_depth_excl_u", r.gadget_depth_excluding_u},
         {"barenco_two_qubit", r.barenco_two_qubit},
         {"wu_depth", r.wu_depth}};
  j["ansatz_layers"] = r.ansatz_layers ? json(*r.ansatz_layers) : json(nullptr);
  j["ansatz_two_qubit"] = r.ansatz_two_qubit ? json(*r.ansatz_two_qubit) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\n";
  return out;
}

const std::vector<std::string> kHadamardCsvColumns{
    "scheme", "mode", "shots", "re", "im", "se_re", "se_im", "seed"};

std::vector<std::string> hadamard_csv_fields(const HadamardTestResult& r) {
  return {std::string(scheme_name(r.scheme)),
          std::string(mode_name(r.mode)),
          std::to_string(r.shots),
          format_double(r.re),
          format_double(r.im),
          format_double(r.std_error_re),
          format_double(r.std_error_im),
          std::to_string(r.seed)};
}

const std::vector<std::string> kResourceCsvColumns{
    "n",          "d_u",        "s",
    "qubits",     "cnot",       "toffoli",
    "two_qubit_effective",      "gadget_depth_excl_u",
    "toffoli_cost",             "barenco_c",
    "barenco_two_qubit",        "wu_depth",
    "ansatz_layers",            "ansatz_two_qubit"};

std::vector<std::string> resource_csv_fields(const ResourceReport& r) {
  auto opt = [](const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  return {std::to_string(r.n),
          std::to_string(r.d_u),
          std::to_string(r.s),
          std::to_string(r.qubits_gadget),
          std::to_string(r.cnot_gadget),
          std::to_string(r.toffoli_gadget),
          std::to_string(r.two_qubit_effective_gadget),
          std::to_string(r.gadget_depth_excluding_u),
          std::to_string(r.toffoli_cost),
          format_double(r.barenco_c),
          format_double(r.barenco_two_qubit),
          format_double(r.wu_depth),
          opt(r.ansatz_layers),
          opt(r.ansatz_two_qubit)};
}

}  // namespace ctrlfree::io
