#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ctrlfree/circuit.hpp"
#include "ctrlfree/linalg.hpp"

namespace ctrlfree {

enum class Observable { X, Y, Z };

std::string_view observable_name(Observable obs);
Observable parse_observable(std::string_view name);

/// One single-wire Pauli estimate. shots == 0 marks an exact expectation.
struct MeasurementRecord {
  Observable observable = Observable::Z;
  std::string wire;
  int shots = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
};

/// Applies the circuit gate by gate on a copy of `input`. The input layout
/// must equal the circuit wire list.
StateVector run(const Circuit& circuit, const StateVector& input);

/// <state| O_wire |state>.
double expectation(const StateVector& state, Observable obs,
                   const std::string& wire);

/// Exact mode: estimate = expectation, std_error = 0, shots = 0.
MeasurementRecord measure_exact(const StateVector& state, Observable obs,
                                const std::string& wire);

/// Rotates `wire` into the measurement basis (X: H, Y: Sdg then H), draws
/// `shots` outcomes from the Born probabilities and returns the +/-1 mean.
MeasurementRecord sample(const StateVector& state, Observable obs,
                         const std::string& wire, int shots,
                         std::uint64_t seed);

/// Reduced density matrix of |state><state| on `keep` (kept wires in layout
/// order). Computed straight from the amplitudes.
ComplexMatrix density(const StateVector& state, const WireList& keep);

}  // namespace ctrlfree
