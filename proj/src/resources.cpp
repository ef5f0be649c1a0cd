#include "ctrlfree/resources.hpp"

#include <cmath>
#include <stdexcept>

#include "ctrlfree/construction.hpp"

namespace ctrlfree {

namespace {

constexpr double kWuDepthFactor = 9.0;

void require_system_size(int n) {
  if (n < 1 || n > caps::kMaxSystemQubits) {
    throw ArgumentError("n must lie in [1, " +
                        std::to_string(caps::kMaxSystemQubits) + "]");
  }
}

void expect_equal(const char* what, long long counted, long long closed_form) {
  if (counted != closed_form) {
    throw std::logic_error(std::string("gadget ") + what + " count " +
                           std::to_string(counted) + " != expected " +
                           std::to_string(closed_form));
  }
}

}  // namespace

ResourceReport gadget_cost(int n, int toffoli_cost) {
  require_system_size(n);
  if (toffoli_cost < 1) throw ArgumentError("toffoli_cost must be >= 1");

  // U is opaque to the counts, so the identity stands in for it.
  const Circuit circuit =
      gadget_circuit(identity(Eigen::Index{1} << n), std::nullopt, true);
  const GateCounts counts = gate_counts(circuit, toffoli_cost);

  ResourceReport r;
  r.n = n;
  r.toffoli_cost = toffoli_cost;
  r.qubits_gadget = circuit.num_wires();
  r.cnot_gadget = counts.count(GateKind::CNOT);
  r.toffoli_gadget = counts.count(GateKind::TOFFOLI);
  r.two_qubit_effective_gadget = counts.two_qubit_effective;
  // The UBLOCK sits on the critical path and occupies exactly one layer.
  r.gadget_depth_excluding_u = counts.depth - 1;

  expect_equal("qubit", r.qubits_gadget, 2 * n + 1);
  expect_equal("CNOT", r.cnot_gadget, 4 * n);
  expect_equal("TOFFOLI", r.toffoli_gadget, 2 * n);
  expect_equal("effective two-qubit", r.two_qubit_effective_gadget,
               static_cast<long long>(2 + toffoli_cost) * 2 * n);
  expect_equal("CSWAP", counts.count(GateKind::CSWAP), 0);
  expect_equal("UBLOCK", counts.count(GateKind::UBLOCK), 1);
  return r;
}

double barenco_cost(int n, int d_u, double c) {
  if (n < 1 || d_u < 1) throw ArgumentError("barenco_cost: n, d_U must be >= 1");
  if (!(c > 0.0)) throw ArgumentError("barenco_cost: c must be positive");
  return c * n * d_u;
}

double wu_depth(int n, int s, int d_u) {
  if (n < 1 || d_u < 1) throw ArgumentError("wu_depth: n, d_U must be >= 1");
  if (s < 1 || s > n) throw ArgumentError("wu_depth: need 1 <= s <= n");
  return std::log2(static_cast<double>(s)) +
         d_u * std::log2(static_cast<double>(n) / s) + kWuDepthFactor * d_u;
}

int barenco_crossover(int n, int toffoli_cost, double c) {
  const int gadget = gadget_cost(n, toffoli_cost).two_qubit_effective_gadget;
  int d_u = 1;
  while (barenco_cost(n, d_u, c) <= gadget) ++d_u;
  return d_u;
}

ResourceReport apply_models(ResourceReport r, int d_u,
                            const CompareOptions& options) {
  const int n = r.n;
  if (r.toffoli_cost != options.toffoli_cost) {
    throw ArgumentError("apply_models: toffoli_cost differs from the gadget report");
  }
  r.d_u = d_u;
  r.s = options.s.value_or(n);
  r.barenco_c = options.barenco_c;
  r.barenco_two_qubit = barenco_cost(n, d_u, options.barenco_c);
  r.wu_depth = wu_depth(n, r.s, d_u);
  if (options.ansatz_layers) {
    if (*options.ansatz_layers < 0) {
      throw ArgumentError("ansatz layers must be non-negative");
    }
    r.ansatz_layers = options.ansatz_layers;
    r.ansatz_two_qubit = n * *options.ansatz_layers;
  }
  return r;
}

ResourceReport compare(int n, int d_u, const CompareOptions& options) {
  return apply_models(gadget_cost(n, options.toffoli_cost), d_u, options);
}

}  // namespace ctrlfree
