#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctrlfree/circuit.hpp"

namespace ctrlfree {

/// Gate-level cost of the eigenstate-assisted gadget next to the two
/// asymptotic comparators for direct controlled synthesis.
struct ResourceReport {
  int n = 0;
  int d_u = 1;
  int s = 1;
  int toffoli_cost = kDefaultToffoliCost;
  double barenco_c = 1.0;

  int qubits_gadget = 0;
  int cnot_gadget = 0;
  int toffoli_gadget = 0;
  int two_qubit_effective_gadget = 0;
  int gadget_depth_excluding_u = 0;

  double barenco_two_qubit = 0.0;
  double wu_depth = 0.0;

  /// Optional one-off eigenstate-preparation line item n * L for an L-layer
  /// ansatz. Never added to the gadget cost.
  std::optional<int> ansatz_layers;
  std::optional<int> ansatz_two_qubit;
};

/// Gadget counts, taken from the decomposed circuit and cross-checked against
/// 4n CNOT, 2n TOFFOLI, (2 + toffoli_cost) * 2n effective and 2n+1 qubits.
/// Throws std::logic_error if the circuit disagrees with those values.
ResourceReport gadget_cost(int n, int toffoli_cost = kDefaultToffoliCost);

/// c * n * d_U two-qubit gates.
double barenco_cost(int n, int d_u, double c = 1.0);

/// log2(s) + d_U * log2(n / s) + 9 * d_U.
double wu_depth(int n, int s, int d_u);

/// Smallest integer d_U with barenco_cost(n, d_U, c) above the gadget's
/// effective two-qubit count.
int barenco_crossover(int n, int toffoli_cost = kDefaultToffoliCost,
                      double c = 1.0);

struct CompareOptions {
  int toffoli_cost = kDefaultToffoliCost;
  double barenco_c = 1.0;
  std::optional<int> s;  // defaults to n
  std::optional<int> ansatz_layers;
};

/// Fills the model columns of an existing gadget report.
ResourceReport apply_models(ResourceReport gadget, int d_u,
                            const CompareOptions& options = {});

/// gadget_cost + apply_models.
ResourceReport compare(int n, int d_u, const CompareOptions& options = {});

}  // namespace ctrlfree
