#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctrlfree/circuit.hpp"
#include "ctrlfree/construction.hpp"
#include "ctrlfree/hadamard.hpp"
#include "ctrlfree/linalg.hpp"
#include "ctrlfree/resources.hpp"
#include "ctrlfree/simulator.hpp"

namespace ctrlfree::io {

using json = nlohmann::json;

/// Parses a JSON file. Throws ValidationError on I/O or syntax errors.
json read_json_file(const std::filesystem::path& path);

// Matrices: {"dim": d, "entries": [[re, im], ...]} row-major.
json matrix_to_json(const ComplexMatrix& m);
/// Validates shape; with `require_unitary_matrix` also unitarity.
ComplexMatrix matrix_from_json(const json& j, bool require_unitary_matrix);

// States: {"num_qubits": n, "amplitudes": [[re, im], ...], "layout": [...]}
// "layout" is optional on input.
json state_to_json(const StateVector& s);
StateVector state_from_json(const json& j);

// Eigenpairs: {"lambda": [re, im], "vector": {state}}.
json eigenpair_to_json(const Eigenpair& p);
Eigenpair eigenpair_from_json(const json& j);

// Circuits: {"wires": [...], "gates": [{"kind", "wires", "params"}]}.
// UBLOCK params carry "label" and either an inline "matrix" or a
// "matrix_file" path, resolved against `base_dir` when relative.
json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j,
                          const std::filesystem::path& base_dir = {});

// {"n", "u", "eigenpair", "apply_phase_correction", "decomposed"}
json gadget_spec_to_json(const GadgetSpec& spec);
GadgetSpec gadget_spec_from_json(const json& j);

json measurement_to_json(const MeasurementRecord& r);
json hadamard_to_json(const HadamardTestResult& r);
json resource_report_to_json(const ResourceReport& r);

// ---------------------------------------------------------------------------
// CSV

/// Shortest round-trip decimal form; "-0" is normalized to "0".
std::string format_double(double x);
/// RFC-4180 quoting when the field holds a comma, quote or line break.
std::string csv_field(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

extern const std::vector<std::string> kHadamardCsvColumns;
std::vector<std::string> hadamard_csv_fields(const HadamardTestResult& r);

extern const std::vector<std::string> kResourceCsvColumns;
std::vector<std::string> resource_csv_fields(const ResourceReport& r);

}  // namespace ctrlfree::io
