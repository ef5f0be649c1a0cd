#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ctrlfree/linalg.hpp"

namespace ctrlfree {

enum class GateKind {
  H,
  S,
  Sdg,
  RZ,         // diag(e^{-i theta/2}, e^{i theta/2})
  PhaseDiag,  // diag(conj(lambda), 1)
  X,
  CNOT,
  TOFFOLI,
  CSWAP,
  UBLOCK,  // opaque dense unitary
};

std::string_view kind_name(GateKind kind);
/// Throws ArgumentError on unknown names.
GateKind parse_kind(std::string_view name);

/// One gate over named wires. Controls come first in `wires()`. The first
/// wire is the most significant bit of the gate's local matrix.
class Gate {
 public:
  static Gate h(std::string wire);
  static Gate s(std::string wire);
  static Gate sdg(std::string wire);
  static Gate rz(double theta, std::string wire);
  static Gate phase_diag(Complex lambda, std::string wire);
  static Gate x(std::string wire);
  static Gate cnot(std::string control, std::string target);
  static Gate toffoli(std::string c1, std::string c2, std::string target);
  static Gate cswap(std::string control, std::string a, std::string b);
  /// `matrix` must be unitary with dimension 2^wires.size().
  static Gate ublock(ComplexMatrix matrix, std::string label, WireList wires);

  GateKind kind() const { return kind_; }
  const WireList& wires() const { return wires_; }
  std::size_t arity() const { return wires_.size(); }
  double theta() const { return theta_; }
  Complex lambda() const { return lambda_; }
  const std::string& label() const { return label_; }
  /// Only meaningful for UBLOCK.
  const ComplexMatrix& matrix() const { return *matrix_; }

  /// Dense 2^arity matrix in wire order.
  ComplexMatrix local_matrix() const;

 private:
  Gate(GateKind kind, WireList wires);

  GateKind kind_;
  WireList wires_;
  double theta_ = 0.0;
  Complex lambda_{1.0, 0.0};
  std::string label_;
  std::shared_ptr<const ComplexMatrix> matrix_;
};

class Circuit {
 public:
  explicit Circuit(WireList wires);
  /// Validates every gate against the wire list.
  Circuit(WireList wires, std::vector<Gate> gates);

  const WireList& wires() const { return wires_; }
  const std::vector<Gate>& gates() const { return gates_; }
  int num_wires() const { return static_cast<int>(wires_.size()); }
  bool empty() const { return gates_.empty(); }
  /// Throws ArgumentError for unknown wires.
  int wire_index(const std::string& wire) const;

  /// Builder; throws ArgumentError if the gate references unknown wires or
  /// repeats a wire.
  Circuit& append(Gate gate);
  Circuit& append(const Circuit& other);

 private:
  void check_gate(const Gate& gate) const;

  WireList wires_;
  std::vector<Gate> gates_;
};

/// Concatenation `first` then `second`; wire lists must be identical.
Circuit concatenate(const Circuit& first, const Circuit& second);

/// Replaces each CSWAP(c, a, b) with CNOT(b->a), TOFFOLI(c, a -> b),
/// CNOT(b->a). Other gates are kept in order.
Circuit decompose_cswap(const Circuit& circuit);

inline constexpr int kDefaultToffoliCost = 6;

struct GateCounts {
  std::map<GateKind, int> per_kind;
  /// CNOT + toffoli_cost * TOFFOLI + (2 + toffoli_cost) * CSWAP. UBLOCKs are
  /// opaque and never contribute.
  int two_qubit_effective = 0;
  int depth = 0;

  int count(GateKind kind) const {
    auto it = per_kind.find(kind);
    return it == per_kind.end() ? 0 : it->second;
  }
};

/// Throws ArgumentError if toffoli_cost < 1. Depth is the greedy layer count
/// with every gate (UBLOCK included) occupying one layer.
GateCounts gate_counts(const Circuit& circuit,
                       int toffoli_cost = kDefaultToffoliCost);

/// Full 2^wires matrix, built by embedding each gate and multiplying. Meant
/// as a test-scale oracle; throws ResourceLimitError above the matrix cap.
ComplexMatrix circuit_unitary(const Circuit& circuit);

/// Standard single-qubit matrices.
namespace gates {
ComplexMatrix hadamard();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix s();
ComplexMatrix t();
ComplexMatrix rz(double theta);
ComplexMatrix projector(int bit);
/// SWAP between two registers of `qubits` wires each.
ComplexMatrix register_swap(int qubits);
}  // namespace gates

}  // namespace ctrlfree
